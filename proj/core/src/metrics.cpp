#include "mgahhn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mgahhn/error.hpp"

namespace mgahhn {

namespace {

void check_lengths(const std::vector<int>& a, const std::vector<int>& b,
                   const char* what) {
  if (a.size() != b.size())
    fail(Errc::LengthMismatch, std::string(what) + ": " +
                                   std::to_string(a.size()) + " vs " +
                                   std::to_string(b.size()));
}

// Contingency counts keyed by (label_a, label_b), plus marginals.
struct Contingency {
  std::map<std::pair<int, int>, long long> cells;
  std::map<int, long long> row;  // marginals of a
  std::map<int, long long> col;  // marginals of b
  long long n = 0;
};

Contingency contingency(const std::vector<int>& a, const std::vector<int>& b) {
  Contingency c;
  for (size_t i = 0; i < a.size(); ++i) {
    ++c.cells[{a[i], b[i]}];
    ++c.row[a[i]];
    ++c.col[b[i]];
  }
  c.n = static_cast<long long>(a.size());
  return c;
}

double pairs(long long n) { return 0.5 * static_cast<double>(n) * (n - 1); }

}  // namespace

F1Scores f1_scores(const std::vector<int>& pred, const std::vector<int>& truth,
                   int num_classes) {
  check_lengths(pred, truth, "f1_scores");
  if (pred.empty()) fail(Errc::LengthMismatch, "f1_scores: empty input");
  int c = num_classes;
  if (c < 0) {
    c = 0;
    for (int v : pred) c = std::max(c, v + 1);
    for (int v : truth) c = std::max(c, v + 1);
  }
  for (size_t i = 0; i < pred.size(); ++i)
    if (pred[i] < 0 || pred[i] >= c || truth[i] < 0 || truth[i] >= c)
      fail(Errc::LengthMismatch, "f1_scores: class id outside [0, " +
                                     std::to_string(c) + ")");

  std::vector<long long> tp(c, 0), fp(c, 0), fn(c, 0);
  for (size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] == truth[i]) {
      ++tp[pred[i]];
    } else {
      ++fp[pred[i]];
      ++fn[truth[i]];
    }
  }

  F1Scores out;
  long long tp_all = 0, fp_all = 0, fn_all = 0;
  for (int k = 0; k < c; ++k) {
    double denom = 2.0 * tp[k] + fp[k] + fn[k];
    out.macro += denom > 0.0 ? 2.0 * tp[k] / denom : 0.0;
    tp_all += tp[k];
    fp_all += fp[k];
    fn_all += fn[k];
  }
  out.macro /= c;
  double denom = 2.0 * tp_all + fp_all + fn_all;
  out.micro = denom > 0.0 ? 2.0 * tp_all / denom : 0.0;
  return out;
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
  check_lengths(a, b, "nmi");
  if (a.empty()) fail(Errc::LengthMismatch, "nmi: empty input");
  Contingency c = contingency(a, b);
  const double n = static_cast<double>(c.n);

  double ha = 0.0, hb = 0.0;
  for (const auto& [_, cnt] : c.row) {
    double p = cnt / n;
    ha -= p * std::log(p);
  }
  for (const auto& [_, cnt] : c.col) {
    double p = cnt / n;
    hb -= p * std::log(p);
  }
  double mi = 0.0;
  for (const auto& [key, cnt] : c.cells) {
    double pij = cnt / n;
    double pi = c.row.at(key.first) / n;
    double pj = c.col.at(key.second) / n;
    mi += pij * std::log(pij / (pi * pj));
  }

  double mean_h = 0.5 * (ha + hb);
  if (mean_h <= 0.0) return 1.0;  // both partitions trivial and identical
  double v = mi / mean_h;
  return std::min(1.0, std::max(0.0, v));
}

double ari(const std::vector<int>& a, const std::vector<int>& b) {
  check_lengths(a, b, "ari");
  if (a.empty()) fail(Errc::LengthMismatch, "ari: empty input");
  Contingency c = contingency(a, b);

  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [_, cnt] : c.cells) index += pairs(cnt);
  for (const auto& [_, cnt] : c.row) sum_a += pairs(cnt);
  for (const auto& [_, cnt] : c.col) sum_b += pairs(cnt);

  double total = pairs(c.n);
  if (total <= 0.0) return 1.0;  // single element
  double expected = sum_a * sum_b / total;
  double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;  // both trivial partitions
  return (index - expected) / (max_index - expected);
}

}  // namespace mgahhn
