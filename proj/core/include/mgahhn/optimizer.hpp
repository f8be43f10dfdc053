#pragma once

#include <string>
#include <vector>

#include "mgahhn/rng.hpp"
#include "mgahhn/tensor.hpp"

namespace mgahhn {

// A named trainable tensor with Adam state. m and v start at zero and are
// shaped with the value.
struct Parameter {
  std::string name;
  Tensor value;
  std::vector<double> adam_m;
  std::vector<double> adam_v;
};

Parameter make_parameter(const std::string& name, int rows, int cols);

// uniform(-sqrt(6/(fan_in+fan_out)), +sqrt(6/(fan_in+fan_out)))
void init_glorot(Parameter& p, Rng& rng);
void init_uniform(Parameter& p, Rng& rng, double lo, double hi);
void init_zero(Parameter& p);

struct AdamConfig {
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam, applied in place; gradients are zeroed afterwards.
// t counts steps from 1. A parameter whose gradient buffer was never
// allocated raises MissingGrad.
void adam_step(std::vector<Parameter*>& params, const AdamConfig& cfg, int t);

void zero_grads(std::vector<Parameter*>& params);

}  // namespace mgahhn
