#include "mgahhn/optimizer.hpp"

#include <cmath>

#include "mgahhn/error.hpp"

namespace mgahhn {

Parameter make_parameter(const std::string& name, int rows, int cols) {
  Parameter p;
  p.name = name;
  p.value = make_tensor(rows, cols, 0.0, /*requires_grad=*/true);
  p.adam_m.assign(p.value->size(), 0.0);
  p.adam_v.assign(p.value->size(), 0.0);
  return p;
}

void init_glorot(Parameter& p, Rng& rng) {
  double bound = std::sqrt(6.0 / (p.value->rows + p.value->cols));
  for (double& v : p.value->data) v = rng.uniform(-bound, bound);
}

void init_uniform(Parameter& p, Rng& rng, double lo, double hi) {
  for (double& v : p.value->data) v = rng.uniform(lo, hi);
}

void init_zero(Parameter& p) {
  for (double& v : p.value->data) v = 0.0;
}

void adam_step(std::vector<Parameter*>& params, const AdamConfig& cfg, int t) {
  double bc1 = 1.0 - std::pow(cfg.beta1, t);
  double bc2 = 1.0 - std::pow(cfg.beta2, t);
  for (Parameter* p : params) {
    if (p->value->grad.empty())
      fail(Errc::MissingGrad, "parameter '" + p->name + "' has no gradient");
    auto& val = p->value->data;
    auto& g = p->value->grad;
    for (size_t i = 0; i < val.size(); ++i) {
      p->adam_m[i] = cfg.beta1 * p->adam_m[i] + (1.0 - cfg.beta1) * g[i];
      p->adam_v[i] = cfg.beta2 * p->adam_v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      double mhat = p->adam_m[i] / bc1;
      double vhat = p->adam_v[i] / bc2;
      val[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.eps);
      g[i] = 0.0;
    }
  }
}

void zero_grads(std::vector<Parameter*>& params) {
  for (Parameter* p : params)
    if (!p->value->grad.empty())
      std::fill(p->value->grad.begin(), p->value->grad.end(), 0.0);
}

}  // namespace mgahhn
