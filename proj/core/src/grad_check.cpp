#include "mgahhn/grad_check.hpp"

#include <cmath>

#include "mgahhn/error.hpp"

namespace mgahhn {

double grad_check(const std::function<Tensor(Tape&)>& f,
                  const std::vector<Tensor>& leaves, double h) {
  for (const Tensor& leaf : leaves) leaf->grad.clear();

  Tape tape;
  Tensor loss = f(tape);
  tape.backward(loss);

  std::vector<std::vector<double>> analytic;
  analytic.reserve(leaves.size());
  for (const Tensor& leaf : leaves) {
    leaf->ensure_grad();
    analytic.push_back(leaf->grad);
  }

  auto eval = [&]() {
    Tape t;
    Tensor out = f(t);
    t.clear();
    return out->data[0];
  };

  double worst = 0.0;
  for (size_t li = 0; li < leaves.size(); ++li) {
    const Tensor& leaf = leaves[li];
    for (size_t i = 0; i < leaf->data.size(); ++i) {
      double saved = leaf->data[i];
      leaf->data[i] = saved + h;
      double up = eval();
      leaf->data[i] = saved - h;
      double down = eval();
      leaf->data[i] = saved;
      double numeric = (up - down) / (2.0 * h);
      double a = analytic[li][i];
      double err = std::fabs(a - numeric) / std::max(1.0, std::fabs(a));
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace mgahhn
