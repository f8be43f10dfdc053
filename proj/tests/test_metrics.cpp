#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mgahhn/error.hpp"
#include "mgahhn/metrics.hpp"
#include "mgahhn/rng.hpp"

using namespace mgahhn;

namespace {

std::vector<int> random_labels(Rng& rng, int n, int k) {
  std::vector<int> v(n);
  for (int& x : v) x = static_cast<int>(rng.uniform_int(k));
  return v;
}

// Pair-counting ARI oracle: walks all point pairs directly instead of the
// contingency-table formula.
double ari_pairs(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool sa = a[i] == a[j];
      bool sb = b[i] == b[j];
      if (sa && sb) ++n11;
      else if (sa) ++n10;
      else if (sb) ++n01;
      else ++n00;
    }
  double denom = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
  if (denom == 0.0) return 1.0;
  return 2.0 * (n11 * n00 - n10 * n01) / denom;
}

}  // namespace

TEST_CASE("f1 scores match the hand confusion matrix") {
  // class 0: tp=1 fp=0 fn=1 -> F1 = 2/3; class 1: tp=2 fp=1 fn=0 -> F1 = 4/5.
  std::vector<int> truth = {0, 0, 1, 1};
  std::vector<int> pred = {0, 1, 1, 1};
  F1Scores s = f1_scores(pred, truth);
  CHECK(s.macro == doctest::Approx(11.0 / 15.0).epsilon(1e-15));
  CHECK(s.macro == doctest::Approx(0.73333).epsilon(1e-4));
  CHECK(s.micro == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("perfect and inverted predictions hit the extremes") {
  std::vector<int> truth = {0, 1, 2, 0, 1, 2};
  F1Scores perfect = f1_scores(truth, truth);
  CHECK(perfect.macro == 1.0);
  CHECK(perfect.micro == 1.0);

  std::vector<int> wrong = {1, 2, 0, 1, 2, 0};
  F1Scores zero = f1_scores(wrong, truth);
  CHECK(zero.macro == 0.0);
  CHECK(zero.micro == 0.0);
}

TEST_CASE("micro f1 equals accuracy for single-label prediction") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + static_cast<int>(rng.uniform_int(50));
    int k = 2 + static_cast<int>(rng.uniform_int(4));
    std::vector<int> truth = random_labels(rng, n, k);
    std::vector<int> pred = random_labels(rng, n, k);
    int correct = 0;
    for (int i = 0; i < n; ++i)
      if (truth[i] == pred[i]) ++correct;
    F1Scores s = f1_scores(pred, truth, k);
    CHECK(s.micro ==
          doctest::Approx(static_cast<double>(correct) / n).epsilon(1e-12));
  }
}

TEST_CASE("undefined per-class f1 counts as zero") {
  // Class 2 exists in the truth but is never predicted.
  std::vector<int> truth = {0, 1, 2};
  std::vector<int> pred = {0, 1, 1};
  F1Scores s = f1_scores(pred, truth);
  CHECK(s.macro == doctest::Approx((1.0 + 2.0 / 3.0 + 0.0) / 3.0).epsilon(1e-15));

  // A class absent from both sides still divides the macro average when
  // num_classes says it exists.
  F1Scores padded = f1_scores({0, 1}, {0, 1}, 3);
  CHECK(padded.macro == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(padded.micro == 1.0);
}

TEST_CASE("f1 validates input lengths and label ranges") {
  try {
    f1_scores({0, 1}, {0});
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LengthMismatch);
  }
  CHECK_THROWS_AS(f1_scores({0, 5}, {0, 1}, 2), Error);
  CHECK_THROWS_AS(f1_scores({0, -1}, {0, 1}), Error);
}

TEST_CASE("nmi hits the documented conventions") {
  // Identical up to relabeling: 1.
  CHECK(nmi({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
  // Independent: 0.
  CHECK(nmi({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  // Both trivial: defined as 1.
  CHECK(nmi({0, 0, 0}, {0, 0, 0}) == 1.0);
  // One trivial, one split: no shared information.
  CHECK(nmi({0, 0, 0, 0}, {0, 0, 1, 1}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("nmi matches a hand-computed contingency") {
  // a = [0,0,0,1], b = [0,0,1,1]; counts: (0,0)=2 (0,1)=1 (1,1)=1.
  double ha = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  double hb = std::log(2.0);
  double mi = 0.5 * std::log(0.5 / (0.75 * 0.5)) +
              0.25 * std::log(0.25 / (0.75 * 0.5)) +
              0.25 * std::log(0.25 / (0.25 * 0.5));
  double want = mi / (0.5 * (ha + hb));
  CHECK(nmi({0, 0, 0, 1}, {0, 0, 1, 1}) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("nmi is symmetric, relabel-invariant, and bounded") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng.uniform_int(40));
    std::vector<int> a = random_labels(rng, n, 3);
    std::vector<int> b = random_labels(rng, n, 4);
    double ab = nmi(a, b);
    CHECK(nmi(b, a) == doctest::Approx(ab).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);

    // Swap label names 0 <-> 2 in a.
    std::vector<int> relabel = a;
    for (int& v : relabel) v = v == 0 ? 2 : (v == 2 ? 0 : v);
    CHECK(nmi(relabel, b) == doctest::Approx(ab).epsilon(1e-12));
    CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ari matches known values") {
  CHECK(ari({0, 0, 1, 1}, {0, 0, 1, 1}) == doctest::Approx(1.0));
  CHECK(ari({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
  // Maximally disagreeing pair structure on four points.
  CHECK(ari({0, 1, 0, 1}, {0, 0, 1, 1}) == doctest::Approx(-0.5).epsilon(1e-12));
  // Both trivial: denominator convention.
  CHECK(ari({0, 0, 0}, {0, 0, 0}) == 1.0);
  // One trivial against an even split.
  CHECK(ari({0, 0, 0, 0}, {0, 0, 1, 1}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("ari equals the direct pair-counting oracle") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng.uniform_int(30));
    std::vector<int> a = random_labels(rng, n, 2 + static_cast<int>(rng.uniform_int(3)));
    std::vector<int> b = random_labels(rng, n, 2 + static_cast<int>(rng.uniform_int(3)));
    CHECK(ari(a, b) == doctest::Approx(ari_pairs(a, b)).epsilon(1e-10).scale(1.0));
    CHECK(ari(a, b) == doctest::Approx(ari(b, a)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("nmi and ari validate lengths") {
  try {
    nmi({0, 1}, {0});
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LengthMismatch);
  }
  CHECK_THROWS_AS(ari({0, 1}, {0, 1, 1}), Error);
}
