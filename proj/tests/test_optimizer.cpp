#include <doctest.h>

#include <cmath>

#include "mgahhn/error.hpp"
#include "mgahhn/optimizer.hpp"

using namespace mgahhn;

namespace {

// Scalar Adam reference, written independently of the production routine.
struct ScalarAdam {
  double m = 0.0, v = 0.0;
  double step(double x, double g, const AdamConfig& c, int t) {
    m = c.beta1 * m + (1.0 - c.beta1) * g;
    v = c.beta2 * v + (1.0 - c.beta2) * g * g;
    double mh = m / (1.0 - std::pow(c.beta1, t));
    double vh = v / (1.0 - std::pow(c.beta2, t));
    return x - c.lr * mh / (std::sqrt(vh) + c.eps);
  }
};

}  // namespace

TEST_CASE("adam_step follows the scalar reference trace on g = 2x") {
  Parameter p = make_parameter("w", 1, 1);
  p.value->data[0] = 3.0;
  std::vector<Parameter*> params = {&p};
  AdamConfig cfg;
  cfg.lr = 0.1;

  ScalarAdam ref;
  double x = 3.0;
  for (int t = 1; t <= 25; ++t) {
    double g = 2.0 * p.value->data[0];
    p.value->ensure_grad();
    p.value->grad[0] = g;
    adam_step(params, cfg, t);
    x = ref.step(x, 2.0 * x, cfg, t);
    CHECK(p.value->data[0] == doctest::Approx(x).epsilon(1e-14));
    CHECK(p.value->grad[0] == 0.0);  // gradients are consumed by the step
  }
  CHECK(std::abs(p.value->data[0]) < 3.0);  // heading toward the minimum of x^2
}

TEST_CASE("the first adam step moves by almost exactly lr") {
  // With bias correction, mhat/sqrt(vhat) = g/|g| at t = 1 up to eps.
  Parameter p = make_parameter("w", 2, 2);
  for (auto& v : p.value->data) v = 5.0;
  p.value->ensure_grad();
  p.value->grad = {0.3, -0.7, 1e3, -1e-3};
  std::vector<Parameter*> params = {&p};
  AdamConfig cfg;

  adam_step(params, cfg, 1);
  double expected_mag = cfg.lr;  // sign follows the gradient
  CHECK(p.value->data[0] == doctest::Approx(5.0 - expected_mag).epsilon(1e-4));
  CHECK(p.value->data[1] == doctest::Approx(5.0 + expected_mag).epsilon(1e-4));
  CHECK(p.value->data[2] == doctest::Approx(5.0 - expected_mag).epsilon(1e-4));
  // Tiny gradients move less because eps dominates.
  CHECK(std::abs(p.value->data[3] - 5.0) < expected_mag);
}

TEST_CASE("a zero gradient leaves the value unchanged") {
  Parameter p = make_parameter("w", 1, 3);
  p.value->data = {1.0, -2.0, 0.5};
  p.value->ensure_grad();
  std::vector<Parameter*> params = {&p};
  AdamConfig cfg;
  adam_step(params, cfg, 1);
  CHECK(p.value->data[0] == 1.0);
  CHECK(p.value->data[1] == -2.0);
  CHECK(p.value->data[2] == 0.5);
}

TEST_CASE("stepping a parameter without a gradient buffer fails") {
  Parameter p = make_parameter("w", 1, 1);
  std::vector<Parameter*> params = {&p};
  AdamConfig cfg;
  try {
    adam_step(params, cfg, 1);
    FAIL("expected MissingGrad");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingGrad);
  }
}

TEST_CASE("zero_grads clears allocated buffers") {
  Parameter p = make_parameter("w", 1, 2);
  p.value->ensure_grad();
  p.value->grad = {3.0, 4.0};
  std::vector<Parameter*> params = {&p};
  zero_grads(params);
  CHECK(p.value->grad[0] == 0.0);
  CHECK(p.value->grad[1] == 0.0);
}

TEST_CASE("glorot initialization respects the fan bound and is seed-stable") {
  Parameter p = make_parameter("w", 20, 30);
  Rng rng(42);
  init_glorot(p, rng);
  double bound = std::sqrt(6.0 / (20 + 30));
  double mn = 1e9, mx = -1e9;
  for (double v : p.value->data) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  CHECK(mx <= bound);
  CHECK(mn >= -bound);
  CHECK(mx > 0.5 * bound);   // actually spreads across the range
  CHECK(mn < -0.5 * bound);

  Parameter q = make_parameter("w", 20, 30);
  Rng rng2(42);
  init_glorot(q, rng2);
  CHECK(p.value->data == q.value->data);
}

TEST_CASE("make_parameter starts with zeroed adam state and grad tracking") {
  Parameter p = make_parameter("bias", 1, 4);
  CHECK(p.name == "bias");
  CHECK(p.value->requires_grad);
  CHECK(p.adam_m.size() == 4);
  CHECK(p.adam_v.size() == 4);
  for (double v : p.adam_m) CHECK(v == 0.0);

  Parameter z = make_parameter("b2", 2, 2);
  Rng rng(3);
  init_uniform(z, rng, -0.1, 0.1);
  init_zero(z);
  for (double v : z.value->data) CHECK(v == 0.0);
}
