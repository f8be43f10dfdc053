#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mgahhn/matrix.hpp"
#include "mgahhn/model.hpp"

namespace mgahhn {

struct SplitSpec {
  double train_ratio = 0.8;  // in (0, 1); remainder splits 50/50 val/test
  std::uint64_t seed = 0;
};

struct Splits {
  std::vector<int> train, val, test;  // disjoint target indices, sorted
};

// Stratified per-class split of the labeled nodes (label >= 0). Every class
// needs at least 3 labeled nodes so each part can hold one. Deterministic
// under spec.seed.
Splits make_splits(const std::vector<int>& labels, const SplitSpec& spec);

// Tracks best validation loss. An epoch improves only when the loss drops
// below the best seen by more than tol; `patience` consecutive
// non-improvements request a stop.
struct EarlyStopper {
  int patience = 10;
  double tol = 1e-6;
  double best = std::numeric_limits<double>::infinity();
  int best_epoch = -1;
  int bad = 0;

  // Returns true when training should stop after this epoch.
  bool update(double val_loss, int epoch) {
    if (val_loss < best - tol) {
      best = val_loss;
      best_epoch = epoch;
      bad = 0;
      return false;
    }
    ++bad;
    return bad >= patience;
  }
};

struct TrainOptions {
  int max_epochs = 100;
  double lr = 0.001;
  int patience = 10;
  double min_decrease = 1e-6;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_macro_f1 = 0.0;
  std::vector<double> beta;
};

struct TrainResult {
  std::vector<EpochStats> history;
  int best_epoch = -1;
  double best_val_loss = 0.0;
  int epochs_run = 0;
  bool early_stopped = false;
};

// Full-graph training: one forward/backward/Adam step per epoch, loss over
// the train indices only. The model is left holding the parameters of the
// best-validation epoch. Throws NonFiniteLoss if the loss or an update
// stops being finite.
TrainResult train(Model& model, const Tensor& x, const std::vector<Matrix>& a_norm,
                  const std::vector<int>& labels, const Splits& splits,
                  const TrainOptions& opts);

// Row-argmax class predictions.
std::vector<int> argmax_rows(const Matrix& logits);

// Mean cross-entropy of softmax(logits[idx]) against labels[idx], off-tape.
double subset_cross_entropy(const Matrix& logits, const std::vector<int>& labels,
                            const std::vector<int>& idx);

}  // namespace mgahhn
