#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mgahhn/matrix.hpp"
#include "mgahhn/optimizer.hpp"
#include "mgahhn/rng.hpp"
#include "mgahhn/tensor.hpp"

namespace mgahhn {

enum class AttentionMode {
  kHadamard,  // softmax(scores * A_norm elementwise); zero entries keep
              // uniform leakage weight after softmax
  kMasked     // scores at A_norm == 0 forced to -inf before softmax
};

enum class FusionMode {
  kAttention,   // softmax-weighted sum over views
  kConcat,      // column-concat of views + affine back to d_prime
  kSingleView   // pass one view through unchanged
};

enum class ResidualMode {
  kProjectX,  // add X * W_res (learned d -> d_prime map) to the head concat
  kConcatX    // concat raw X columns onto the head concat
};

AttentionMode parse_attention_mode(const std::string& s);
FusionMode parse_fusion_mode(const std::string& s);
ResidualMode parse_residual_mode(const std::string& s);
std::string to_string(AttentionMode m);
std::string to_string(FusionMode m);
std::string to_string(ResidualMode m);

struct ModelConfig {
  int d = 0;            // input feature width
  int d_prime = 64;     // hidden width, must be divisible by heads
  int heads = 4;
  int num_views = 1;
  int num_classes = 2;
  AttentionMode attention_mode = AttentionMode::kHadamard;
  FusionMode fusion_mode = FusionMode::kAttention;
  int single_view_index = 0;  // used when fusion_mode == kSingleView
  ResidualMode residual_mode = ResidualMode::kProjectX;
  double dropout = 0.0;
  std::uint64_t seed = 1;

  int head_dim() const { return d_prime / heads; }
  void validate() const;  // ConfigInvalid on any violation
};

struct ForwardResult {
  Tensor z;                  // fused node representations, N x d_prime
  Tensor logits;             // N x num_classes
  std::vector<double> beta;  // per-view fusion weight (one-hot / uniform in
                             // the ablation fusion modes)
  int all_masked_rows = 0;   // isolated-row count seen by masked attention
};

// Multi-view hypergraph attention network. Construction registers and
// initializes every parameter; forward() rebuilds the graph on the given
// tape so one tape serves exactly one step.
class Model {
 public:
  Model(const ModelConfig& cfg);

  // x: N x d constant tensor; a_norm: one normalized adjacency per view.
  // training=true applies dropout (advances the model's RNG).
  ForwardResult forward(Tape& tape, const Tensor& x,
                        const std::vector<Matrix>& a_norm, bool training);

  std::vector<Parameter*> params();
  std::vector<const Parameter*> params() const;
  const ModelConfig& config() const { return cfg_; }

 private:
  Parameter& param(const std::string& name);

  ModelConfig cfg_;
  std::vector<Parameter> params_;
  Rng rng_;
};

}  // namespace mgahhn
