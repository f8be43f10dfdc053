#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mgahhn/matrix.hpp"

namespace mgahhn {

class Tape;

// Dense 2-D float64 tensor. Gradient buffer is allocated on first use and
// always matches the value shape once present.
struct TensorData {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;
  bool requires_grad = false;
  std::vector<double> grad;
  const Tape* producer = nullptr;  // tape that recorded the producing op

  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  size_t size() const { return data.size(); }
  void ensure_grad() {
    if (grad.empty()) grad.assign(data.size(), 0.0);
  }
};

using Tensor = std::shared_ptr<TensorData>;

Tensor make_tensor(int rows, int cols, double fill = 0.0, bool requires_grad = false);
Tensor make_tensor(const Matrix& m, bool requires_grad = false);
Matrix to_matrix(const Tensor& t);

// Records primitive applications in execution order and replays their
// adjoint closures in reverse. One tape per training step; backward clears.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Seeds d(loss)/d(loss) = 1 and propagates to every recorded input.
  // Gradients of intermediates recorded on this tape are reset first;
  // leaf gradients accumulate until explicitly zeroed.
  void backward(const Tensor& loss);

  void clear();
  size_t size() const { return entries_.size(); }

  void record(Tensor out, std::vector<Tensor> hold, std::function<void()> fn);

 private:
  struct Entry {
    Tensor out;
    std::vector<Tensor> hold;  // keeps inputs alive for the closure
    std::function<void()> fn;
  };
  std::vector<Entry> entries_;
};

// Primitive ops. Each validates shapes, traps non-finite outputs
// (masked_fill's sentinel excepted), and records itself on the tape when
// any input carries requires_grad.
Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b);
// Elementwise when shapes match; a 1xN operand against an MxN one is
// broadcast across rows (bias addition). No other broadcasting.
Tensor add(Tape& tape, const Tensor& a, const Tensor& b);
Tensor hadamard(Tape& tape, const Tensor& a, const Tensor& b);
Tensor scale(Tape& tape, const Tensor& a, double c);
Tensor concat_cols(Tape& tape, const std::vector<Tensor>& parts);
// Rows that are entirely -inf come out all-zero instead of NaN; their
// indices are appended to *all_masked_rows when given.
Tensor row_softmax(Tape& tape, const Tensor& a,
                   std::vector<int>* all_masked_rows = nullptr);
Tensor tanh(Tape& tape, const Tensor& a);
Tensor relu(Tape& tape, const Tensor& a);
Tensor mean_rows(Tape& tape, const Tensor& a);  // MxN -> 1xN column means
Tensor transpose(Tape& tape, const Tensor& a);
// Entries where mask is zero are replaced by `value`; others pass through.
// Gradient flows only through kept entries.
Tensor masked_fill(Tape& tape, const Tensor& a, const Matrix& keep_mask,
                   double value);
// Mean negative log-likelihood of labels under row-wise softmax(logits).
// Returns 1x1. labels[i] in [0, cols).
Tensor cross_entropy_logits(Tape& tape, const Tensor& logits,
                            const std::vector<int>& labels);

}  // namespace mgahhn
