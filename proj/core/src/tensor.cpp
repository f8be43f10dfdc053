#include "mgahhn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mgahhn/error.hpp"

namespace mgahhn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string shape_str(const Tensor& t) {
  return std::to_string(t->rows) + "x" + std::to_string(t->cols);
}

[[noreturn]] void shape_fail(const char* op, const std::string& detail) {
  fail(Errc::ShapeMismatch, std::string(op) + ": " + detail);
}

// allow_neg_inf covers masked_fill's sentinel; NaN and +inf always trap.
void check_finite(const TensorData& t, const char* op, bool allow_neg_inf = false) {
  for (double v : t.data) {
    if (std::isfinite(v)) continue;
    if (allow_neg_inf && v == kNegInf) continue;
    fail(Errc::NonFinite, std::string(op) + " produced a non-finite value");
  }
}

bool any_grad(const std::vector<Tensor>& inputs) {
  for (const auto& t : inputs)
    if (t->requires_grad) return true;
  return false;
}

}  // namespace

Tensor make_tensor(int rows, int cols, double fill, bool requires_grad) {
  if (rows < 0 || cols < 0) fail(Errc::ShapeMismatch, "negative tensor dimension");
  auto t = std::make_shared<TensorData>();
  t->rows = rows;
  t->cols = cols;
  t->data.assign(static_cast<size_t>(rows) * cols, fill);
  t->requires_grad = requires_grad;
  return t;
}

Tensor make_tensor(const Matrix& m, bool requires_grad) {
  auto t = make_tensor(m.rows, m.cols, 0.0, requires_grad);
  t->data = m.data;
  return t;
}

Matrix to_matrix(const Tensor& t) {
  Matrix m(t->rows, t->cols, 0.0);
  m.data = t->data;
  return m;
}

void Tape::record(Tensor out, std::vector<Tensor> hold, std::function<void()> fn) {
  out->requires_grad = true;
  out->producer = this;
  entries_.push_back(Entry{std::move(out), std::move(hold), std::move(fn)});
}

void Tape::backward(const Tensor& loss) {
  if (loss->rows != 1 || loss->cols != 1)
    fail(Errc::NotScalar, "backward expects a 1x1 loss, got " + shape_str(loss));
  if (!loss->requires_grad || loss->producer != this)
    fail(Errc::DetachedLoss, "loss was not produced by an op on this tape");

  // Intermediates recorded here start from zero; leaves keep accumulating.
  for (auto& e : entries_) e.out->grad.assign(e.out->data.size(), 0.0);
  loss->grad[0] = 1.0;
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) it->fn();
  clear();
}

void Tape::clear() { entries_.clear(); }

Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b) {
  if (a->cols != b->rows)
    shape_fail("matmul", shape_str(a) + " * " + shape_str(b));
  const int m = a->rows, k = a->cols, n = b->cols;
  Tensor out = make_tensor(m, n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double* orow = &out->data[static_cast<size_t>(i) * n];
    const double* arow = &a->data[static_cast<size_t>(i) * k];
    for (int p = 0; p < k; ++p) {
      double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = &b->data[static_cast<size_t>(p) * n];
      for (int j = 0; j < n; ++j) orow[j] += av * brow[j];
    }
  }
  check_finite(*out, "matmul");
  if (any_grad({a, b})) {
    tape.record(out, {a, b}, [a, b, out, m, k, n] {
      const std::vector<double>& g = out->grad;
      if (a->requires_grad) {
        a->ensure_grad();
        for (int i = 0; i < m; ++i)
          for (int p = 0; p < k; ++p) {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
              s += g[static_cast<size_t>(i) * n + j] *
                   b->data[static_cast<size_t>(p) * n + j];
            a->grad[static_cast<size_t>(i) * k + p] += s;
          }
      }
      if (b->requires_grad) {
        b->ensure_grad();
        for (int i = 0; i < m; ++i)
          for (int p = 0; p < k; ++p) {
            double av = a->data[static_cast<size_t>(i) * k + p];
            if (av == 0.0) continue;
            for (int j = 0; j < n; ++j)
              b->grad[static_cast<size_t>(p) * n + j] +=
                  av * g[static_cast<size_t>(i) * n + j];
          }
      }
    });
  }
  return out;
}

Tensor add(Tape& tape, const Tensor& a, const Tensor& b) {
  const bool same = a->rows == b->rows && a->cols == b->cols;
  const bool b_bias = b->rows == 1 && a->cols == b->cols && a->rows > 1;
  const bool a_bias = a->rows == 1 && a->cols == b->cols && b->rows > 1;
  if (!same && !b_bias && !a_bias)
    shape_fail("add", shape_str(a) + " + " + shape_str(b));

  const Tensor& big = a_bias ? b : a;
  Tensor out = make_tensor(big->rows, big->cols);
  for (int i = 0; i < out->rows; ++i)
    for (int j = 0; j < out->cols; ++j) {
      double av = a->rows == 1 && !same ? a->at(0, j) : a->at(i, j);
      double bv = b->rows == 1 && !same ? b->at(0, j) : b->at(i, j);
      out->at(i, j) = av + bv;
    }
  check_finite(*out, "add");
  if (any_grad({a, b})) {
    tape.record(out, {a, b}, [a, b, out, same] {
      auto accumulate = [&](const Tensor& t) {
        t->ensure_grad();
        if (same || t->rows == out->rows) {
          for (size_t i = 0; i < t->grad.size(); ++i) t->grad[i] += out->grad[i];
        } else {  // 1xN bias: column sums
          for (int i = 0; i < out->rows; ++i)
            for (int j = 0; j < out->cols; ++j)
              t->grad[j] += out->grad[static_cast<size_t>(i) * out->cols + j];
        }
      };
      if (a->requires_grad) accumulate(a);
      if (b->requires_grad) accumulate(b);
    });
  }
  return out;
}

Tensor hadamard(Tape& tape, const Tensor& a, const Tensor& b) {
  if (a->rows != b->rows || a->cols != b->cols)
    shape_fail("hadamard", shape_str(a) + " vs " + shape_str(b));
  Tensor out = make_tensor(a->rows, a->cols);
  for (size_t i = 0; i < out->data.size(); ++i)
    out->data[i] = a->data[i] * b->data[i];
  check_finite(*out, "hadamard");
  if (any_grad({a, b})) {
    tape.record(out, {a, b}, [a, b, out] {
      if (a->requires_grad) {
        a->ensure_grad();
        for (size_t i = 0; i < out->grad.size(); ++i)
          a->grad[i] += out->grad[i] * b->data[i];
      }
      if (b->requires_grad) {
        b->ensure_grad();
        for (size_t i = 0; i < out->grad.size(); ++i)
          b->grad[i] += out->grad[i] * a->data[i];
      }
    });
  }
  return out;
}

Tensor scale(Tape& tape, const Tensor& a, double c) {
  if (!std::isfinite(c)) fail(Errc::NonFinite, "scale factor is not finite");
  Tensor out = make_tensor(a->rows, a->cols);
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = c * a->data[i];
  check_finite(*out, "scale");
  if (a->requires_grad) {
    tape.record(out, {a}, [a, out, c] {
      a->ensure_grad();
      for (size_t i = 0; i < out->grad.size(); ++i) a->grad[i] += c * out->grad[i];
    });
  }
  return out;
}

Tensor concat_cols(Tape& tape, const std::vector<Tensor>& parts) {
  if (parts.empty()) shape_fail("concat_cols", "no inputs");
  int rows = parts[0]->rows, total = 0;
  for (const auto& p : parts) {
    if (p->rows != rows)
      shape_fail("concat_cols", "row counts differ: " + shape_str(parts[0]) +
                                    " vs " + shape_str(p));
    total += p->cols;
  }
  Tensor out = make_tensor(rows, total);
  int off = 0;
  for (const auto& p : parts) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < p->cols; ++j) out->at(i, off + j) = p->at(i, j);
    off += p->cols;
  }
  check_finite(*out, "concat_cols");
  if (any_grad(parts)) {
    tape.record(out, parts, [parts, out, rows] {
      int off2 = 0;
      for (const auto& p : parts) {
        if (p->requires_grad) {
          p->ensure_grad();
          for (int i = 0; i < rows; ++i)
            for (int j = 0; j < p->cols; ++j)
              p->grad[static_cast<size_t>(i) * p->cols + j] +=
                  out->grad[static_cast<size_t>(i) * out->cols + off2 + j];
        }
        off2 += p->cols;
      }
    });
  }
  return out;
}

Tensor row_softmax(Tape& tape, const Tensor& a, std::vector<int>* all_masked_rows) {
  Tensor out = make_tensor(a->rows, a->cols);
  for (int i = 0; i < a->rows; ++i) {
    double mx = kNegInf;
    for (int j = 0; j < a->cols; ++j) mx = std::max(mx, a->at(i, j));
    if (mx == kNegInf) {
      // Fully masked row: emit zeros rather than NaN and report it.
      if (all_masked_rows) all_masked_rows->push_back(i);
      continue;
    }
    double sum = 0.0;
    for (int j = 0; j < a->cols; ++j) {
      double e = std::exp(a->at(i, j) - mx);
      out->at(i, j) = e;
      sum += e;
    }
    for (int j = 0; j < a->cols; ++j) out->at(i, j) /= sum;
  }
  check_finite(*out, "row_softmax");
  if (a->requires_grad) {
    tape.record(out, {a}, [a, out] {
      a->ensure_grad();
      for (int i = 0; i < out->rows; ++i) {
        double dot = 0.0;
        for (int j = 0; j < out->cols; ++j)
          dot += out->grad[static_cast<size_t>(i) * out->cols + j] * out->at(i, j);
        for (int j = 0; j < out->cols; ++j) {
          size_t idx = static_cast<size_t>(i) * out->cols + j;
          a->grad[idx] += out->at(i, j) * (out->grad[idx] - dot);
        }
      }
    });
  }
  return out;
}

Tensor tanh(Tape& tape, const Tensor& a) {
  Tensor out = make_tensor(a->rows, a->cols);
  for (size_t i = 0; i < out->data.size(); ++i) out->data[i] = std::tanh(a->data[i]);
  check_finite(*out, "tanh");
  if (a->requires_grad) {
    tape.record(out, {a}, [a, out] {
      a->ensure_grad();
      for (size_t i = 0; i < out->grad.size(); ++i)
        a->grad[i] += out->grad[i] * (1.0 - out->data[i] * out->data[i]);
    });
  }
  return out;
}

Tensor relu(Tape& tape, const Tensor& a) {
  Tensor out = make_tensor(a->rows, a->cols);
  for (size_t i = 0; i < out->data.size(); ++i)
    out->data[i] = a->data[i] > 0.0 ? a->data[i] : 0.0;
  check_finite(*out, "relu");
  if (a->requires_grad) {
    tape.record(out, {a}, [a, out] {
      a->ensure_grad();
      for (size_t i = 0; i < out->grad.size(); ++i)
        if (a->data[i] > 0.0) a->grad[i] += out->grad[i];
    });
  }
  return out;
}

Tensor mean_rows(Tape& tape, const Tensor& a) {
  if (a->rows < 1) shape_fail("mean_rows", "empty input");
  Tensor out = make_tensor(1, a->cols);
  for (int i = 0; i < a->rows; ++i)
    for (int j = 0; j < a->cols; ++j) out->at(0, j) += a->at(i, j);
  for (int j = 0; j < a->cols; ++j) out->at(0, j) /= a->rows;
  check_finite(*out, "mean_rows");
  if (a->requires_grad) {
    tape.record(out, {a}, [a, out] {
      a->ensure_grad();
      double inv = 1.0 / a->rows;
      for (int i = 0; i < a->rows; ++i)
        for (int j = 0; j < a->cols; ++j)
          a->grad[static_cast<size_t>(i) * a->cols + j] += inv * out->grad[j];
    });
  }
  return out;
}

Tensor transpose(Tape& tape, const Tensor& a) {
  Tensor out = make_tensor(a->cols, a->rows);
  for (int i = 0; i < a->rows; ++i)
    for (int j = 0; j < a->cols; ++j) out->at(j, i) = a->at(i, j);
  if (a->requires_grad) {
    tape.record(out, {a}, [a, out] {
      a->ensure_grad();
      for (int i = 0; i < a->rows; ++i)
        for (int j = 0; j < a->cols; ++j)
          a->grad[static_cast<size_t>(i) * a->cols + j] += out->grad[
              static_cast<size_t>(j) * out->cols + i];
    });
  }
  return out;
}

Tensor masked_fill(Tape& tape, const Tensor& a, const Matrix& keep_mask,
                   double value) {
  if (a->rows != keep_mask.rows || a->cols != keep_mask.cols)
    shape_fail("masked_fill", shape_str(a) + " vs mask " +
                                  std::to_string(keep_mask.rows) + "x" +
                                  std::to_string(keep_mask.cols));
  Tensor out = make_tensor(a->rows, a->cols);
  for (size_t i = 0; i < out->data.size(); ++i)
    out->data[i] = keep_mask.data[i] != 0.0 ? a->data[i] : value;
  check_finite(*out, "masked_fill", /*allow_neg_inf=*/true);
  if (a->requires_grad) {
    tape.record(out, {a}, [a, out, keep_mask] {
      a->ensure_grad();
      for (size_t i = 0; i < out->grad.size(); ++i)
        if (keep_mask.data[i] != 0.0) a->grad[i] += out->grad[i];
    });
  }
  return out;
}

Tensor cross_entropy_logits(Tape& tape, const Tensor& logits,
                            const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != logits->rows)
    fail(Errc::LengthMismatch,
         "cross_entropy_logits: " + std::to_string(labels.size()) +
             " labels for " + std::to_string(logits->rows) + " rows");
  if (logits->rows < 1) shape_fail("cross_entropy_logits", "no rows");
  for (int y : labels)
    if (y < 0 || y >= logits->cols)
      fail(Errc::ShapeMismatch, "cross_entropy_logits: label " +
                                    std::to_string(y) + " outside [0, " +
                                    std::to_string(logits->cols) + ")");

  const int m = logits->rows, c = logits->cols;
  std::vector<double> lse(m);
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    double mx = logits->at(i, 0);
    for (int j = 1; j < c; ++j) mx = std::max(mx, logits->at(i, j));
    double s = 0.0;
    for (int j = 0; j < c; ++j) s += std::exp(logits->at(i, j) - mx);
    lse[i] = mx + std::log(s);
    total += lse[i] - logits->at(i, labels[i]);
  }
  Tensor out = make_tensor(1, 1, total / m);
  check_finite(*out, "cross_entropy_logits");
  if (logits->requires_grad) {
    tape.record(out, {logits}, [logits, out, labels, lse, m, c] {
      logits->ensure_grad();
      double g = out->grad[0] / m;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < c; ++j) {
          double p = std::exp(logits->at(i, j) - lse[i]);
          logits->grad[static_cast<size_t>(i) * c + j] +=
              g * (p - (j == labels[i] ? 1.0 : 0.0));
        }
    });
  }
  return out;
}

}  // namespace mgahhn
