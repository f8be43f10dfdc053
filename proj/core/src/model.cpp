#include "mgahhn/model.hpp"

#include <cmath>
#include <limits>

#include "mgahhn/error.hpp"
#include "mgahhn/log.hpp"

namespace mgahhn {

AttentionMode parse_attention_mode(const std::string& s) {
  if (s == "hadamard") return AttentionMode::kHadamard;
  if (s == "masked") return AttentionMode::kMasked;
  fail(Errc::ConfigInvalid, "unknown attention_mode '" + s + "'");
}

FusionMode parse_fusion_mode(const std::string& s) {
  if (s == "attention") return FusionMode::kAttention;
  if (s == "concat") return FusionMode::kConcat;
  if (s == "single_view") return FusionMode::kSingleView;
  fail(Errc::ConfigInvalid, "unknown fusion_mode '" + s + "'");
}

ResidualMode parse_residual_mode(const std::string& s) {
  if (s == "project_x") return ResidualMode::kProjectX;
  if (s == "concat_x") return ResidualMode::kConcatX;
  fail(Errc::ConfigInvalid, "unknown residual_mode '" + s + "'");
}

std::string to_string(AttentionMode m) {
  return m == AttentionMode::kHadamard ? "hadamard" : "masked";
}
std::string to_string(FusionMode m) {
  switch (m) {
    case FusionMode::kAttention: return "attention";
    case FusionMode::kConcat: return "concat";
    default: return "single_view";
  }
}
std::string to_string(ResidualMode m) {
  return m == ResidualMode::kProjectX ? "project_x" : "concat_x";
}

void ModelConfig::validate() const {
  if (d < 1) fail(Errc::ConfigInvalid, "feature dim d must be positive");
  if (d_prime < 1) fail(Errc::ConfigInvalid, "hidden dim must be positive");
  if (heads < 1) fail(Errc::ConfigInvalid, "heads must be positive");
  if (d_prime % heads != 0)
    fail(Errc::ConfigInvalid, "hidden dim " + std::to_string(d_prime) +
                                  " is not divisible by heads " +
                                  std::to_string(heads));
  if (num_views < 1) fail(Errc::ConfigInvalid, "need at least one view");
  if (num_classes < 2) fail(Errc::ConfigInvalid, "need at least two classes");
  if (fusion_mode == FusionMode::kSingleView &&
      (single_view_index < 0 || single_view_index >= num_views))
    fail(Errc::ConfigInvalid, "single_view_index out of range");
  if (dropout < 0.0 || dropout >= 1.0)
    fail(Errc::ConfigInvalid, "dropout must lie in [0, 1)");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Column selector: d_prime x head_dim constant picking head h's block.
Tensor head_selector(int d_prime, int head_dim, int h) {
  Tensor s = make_tensor(d_prime, head_dim);
  for (int j = 0; j < head_dim; ++j) s->at(h * head_dim + j, j) = 1.0;
  return s;
}

}  // namespace

Model::Model(const ModelConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
  cfg_.validate();
  const int hd = cfg_.head_dim();

  auto add_param = [this](const std::string& name, int rows, int cols) {
    params_.push_back(make_parameter(name, rows, cols));
  };

  add_param("in_proj.w", cfg_.d, cfg_.d_prime);
  add_param("in_proj.b", 1, cfg_.d_prime);
  for (int v = 0; v < cfg_.num_views; ++v) {
    std::string base = "view" + std::to_string(v) + ".";
    for (int h = 0; h < cfg_.heads; ++h) {
      std::string hb = base + "head" + std::to_string(h) + ".";
      add_param(hb + "wq", hd, hd);
      add_param(hb + "wk", hd, hd);
      add_param(hb + "wv", hd, hd);
    }
    int out_in = cfg_.residual_mode == ResidualMode::kConcatX
                     ? cfg_.d_prime + cfg_.d
                     : cfg_.d_prime;
    add_param(base + "out.w", out_in, cfg_.d_prime);
    add_param(base + "out.b", 1, cfg_.d_prime);
  }
  if (cfg_.residual_mode == ResidualMode::kProjectX)
    add_param("res_proj.w", cfg_.d, cfg_.d_prime);
  if (cfg_.fusion_mode == FusionMode::kAttention) {
    add_param("fusion.w", cfg_.d_prime, cfg_.d_prime);
    add_param("fusion.b", 1, cfg_.d_prime);
    add_param("fusion.q", 1, cfg_.d_prime);
  } else if (cfg_.fusion_mode == FusionMode::kConcat) {
    add_param("fusion.cat.w", cfg_.num_views * cfg_.d_prime, cfg_.d_prime);
    add_param("fusion.cat.b", 1, cfg_.d_prime);
  }
  add_param("cls.w", cfg_.d_prime, cfg_.num_classes);
  add_param("cls.b", 1, cfg_.num_classes);

  // Weights Glorot-uniform, biases zero, fusion query small-uniform.
  for (Parameter& p : params_) {
    if (p.name == "fusion.q") {
      init_uniform(p, rng_, -0.1, 0.1);
    } else if (p.value->rows == 1) {
      init_zero(p);
    } else {
      init_glorot(p, rng_);
    }
  }
}

Parameter& Model::param(const std::string& name) {
  for (Parameter& p : params_)
    if (p.name == name) return p;
  fail(Errc::ConfigInvalid, "no parameter named '" + name + "'");
}

std::vector<Parameter*> Model::params() {
  std::vector<Parameter*> out;
  out.reserve(params_.size());
  for (Parameter& p : params_) out.push_back(&p);
  return out;
}

std::vector<const Parameter*> Model::params() const {
  std::vector<const Parameter*> out;
  out.reserve(params_.size());
  for (const Parameter& p : params_) out.push_back(&p);
  return out;
}

ForwardResult Model::forward(Tape& tape, const Tensor& x,
                             const std::vector<Matrix>& a_norm, bool training) {
  if (static_cast<int>(a_norm.size()) != cfg_.num_views)
    fail(Errc::ShapeMismatch,
         "model expects " + std::to_string(cfg_.num_views) + " views, got " +
             std::to_string(a_norm.size()));
  if (x->cols != cfg_.d)
    fail(Errc::ShapeMismatch, "feature width " + std::to_string(x->cols) +
                                  " does not match configured d " +
                                  std::to_string(cfg_.d));
  const int n = x->rows;
  for (const Matrix& a : a_norm)
    if (a.rows != n || a.cols != n)
      fail(Errc::ShapeMismatch, "adjacency must be " + std::to_string(n) + "x" +
                                    std::to_string(n));

  const int hd = cfg_.head_dim();
  const double inv_sqrt_hd = 1.0 / std::sqrt(static_cast<double>(hd));

  ForwardResult res;

  Tensor xp = add(tape, matmul(tape, x, param("in_proj.w").value),
                  param("in_proj.b").value);
  if (training && cfg_.dropout > 0.0) {
    // Inverted dropout as a constant 0 / 1/(1-p) mask.
    Tensor mask = make_tensor(xp->rows, xp->cols);
    double keep = 1.0 - cfg_.dropout;
    for (double& v : mask->data) v = rng_.uniform() < keep ? 1.0 / keep : 0.0;
    xp = hadamard(tape, xp, mask);
  }

  std::vector<Tensor> z_views;
  z_views.reserve(cfg_.num_views);
  for (int v = 0; v < cfg_.num_views; ++v) {
    std::string base = "view" + std::to_string(v) + ".";
    Tensor a_const = make_tensor(a_norm[v]);

    std::vector<Tensor> heads;
    heads.reserve(cfg_.heads);
    for (int h = 0; h < cfg_.heads; ++h) {
      std::string hb = base + "head" + std::to_string(h) + ".";
      Tensor xh = matmul(tape, xp, head_selector(cfg_.d_prime, hd, h));
      Tensor q = matmul(tape, xh, param(hb + "wq").value);
      Tensor k = matmul(tape, xh, param(hb + "wk").value);
      Tensor vv = matmul(tape, xh, param(hb + "wv").value);
      Tensor scores =
          scale(tape, matmul(tape, q, transpose(tape, k)), inv_sqrt_hd);
      Tensor weights;
      if (cfg_.attention_mode == AttentionMode::kHadamard) {
        weights = row_softmax(tape, hadamard(tape, scores, a_const));
      } else {
        std::vector<int> isolated;
        weights = row_softmax(
            tape, masked_fill(tape, scores, a_norm[v], kNegInf), &isolated);
        if (!isolated.empty()) {
          res.all_masked_rows += static_cast<int>(isolated.size());
          log::debug("view " + std::to_string(v) + " head " + std::to_string(h) +
                     ": " + std::to_string(isolated.size()) +
                     " fully masked rows got zero attention output");
        }
      }
      heads.push_back(matmul(tape, weights, vv));
    }

    Tensor cat = cfg_.heads == 1 ? heads[0] : concat_cols(tape, heads);
    Tensor pre;
    if (cfg_.residual_mode == ResidualMode::kProjectX) {
      pre = add(tape, cat, matmul(tape, x, param("res_proj.w").value));
    } else {
      pre = concat_cols(tape, {cat, x});
    }
    Tensor zr = relu(tape, add(tape, matmul(tape, pre, param(base + "out.w").value),
                               param(base + "out.b").value));
    z_views.push_back(zr);
  }

  const int kv = cfg_.num_views;
  res.beta.assign(kv, 0.0);
  Tensor z;
  if (cfg_.fusion_mode == FusionMode::kSingleView) {
    z = z_views[cfg_.single_view_index];
    res.beta[cfg_.single_view_index] = 1.0;
  } else if (cfg_.fusion_mode == FusionMode::kConcat) {
    Tensor cat = kv == 1 ? z_views[0] : concat_cols(tape, z_views);
    z = add(tape, matmul(tape, cat, param("fusion.cat.w").value),
            param("fusion.cat.b").value);
    for (int r = 0; r < kv; ++r) res.beta[r] = 1.0 / kv;
  } else {
    Tensor wf_t = transpose(tape, param("fusion.w").value);
    Tensor q_t = transpose(tape, param("fusion.q").value);
    std::vector<Tensor> scores;
    scores.reserve(kv);
    for (int r = 0; r < kv; ++r) {
      Tensor phi = mean_rows(
          tape, tanh(tape, add(tape, matmul(tape, z_views[r], wf_t),
                               param("fusion.b").value)));
      scores.push_back(matmul(tape, phi, q_t));  // 1x1
    }
    Tensor beta = row_softmax(
        tape, kv == 1 ? scores[0] : concat_cols(tape, scores));  // 1xK
    for (int r = 0; r < kv; ++r) res.beta[r] = beta->at(0, r);

    // Z = sum_r beta_r * Z_r, with the scalar broadcast to N x d_prime
    // through constant ones so everything stays inside the primitive set.
    Tensor ones_n = make_tensor(n, 1, 1.0);
    Tensor ones_d = make_tensor(1, cfg_.d_prime, 1.0);
    for (int r = 0; r < kv; ++r) {
      Tensor pick = make_tensor(kv, 1);
      pick->at(r, 0) = 1.0;
      Tensor beta_r = matmul(tape, beta, pick);  // 1x1
      Tensor sheet =
          matmul(tape, matmul(tape, ones_n, beta_r), ones_d);  // N x d_prime
      Tensor term = hadamard(tape, sheet, z_views[r]);
      z = r == 0 ? term : add(tape, z, term);
    }
  }

  res.z = z;
  res.logits = add(tape, matmul(tape, z, param("cls.w").value),
                   param("cls.b").value);
  return res;
}

}  // namespace mgahhn
