#pragma once

#include <functional>
#include <vector>

#include "mgahhn/tensor.hpp"

namespace mgahhn {

// Compares reverse-mode gradients of a scalar-valued function against
// central finite differences, coordinate by coordinate over every leaf.
// The function must rebuild its graph from the leaves on each call.
// Returns max over coordinates of |analytic - numeric| / max(1, |analytic|).
double grad_check(const std::function<Tensor(Tape&)>& f,
                  const std::vector<Tensor>& leaves, double h = 1e-6);

}  // namespace mgahhn
