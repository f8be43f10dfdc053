#include "mgahhn/trainer.hpp"

#include <algorithm>
#include <cmath>

#include "mgahhn/error.hpp"
#include "mgahhn/log.hpp"
#include "mgahhn/metrics.hpp"
#include "mgahhn/optimizer.hpp"
#include "mgahhn/rng.hpp"

namespace mgahhn {

Splits make_splits(const std::vector<int>& labels, const SplitSpec& spec) {
  if (!(spec.train_ratio > 0.0 && spec.train_ratio < 1.0))
    fail(Errc::ConfigInvalid, "train_ratio must lie in (0, 1)");

  int num_classes = 0;
  for (int l : labels) num_classes = std::max(num_classes, l + 1);
  if (num_classes == 0) fail(Errc::ClassTooSmall, "no labeled nodes");

  std::vector<std::vector<int>> by_class(num_classes);
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    if (labels[i] >= 0) by_class[labels[i]].push_back(i);

  Rng rng(spec.seed);
  Splits out;
  for (int c = 0; c < num_classes; ++c) {
    auto& idx = by_class[c];
    const int n = static_cast<int>(idx.size());
    if (n < 3)
      fail(Errc::ClassTooSmall, "class " + std::to_string(c) + " has " +
                                    std::to_string(n) +
                                    " labeled nodes; need at least 3");
    rng.shuffle(idx);
    int n_train = static_cast<int>(std::llround(n * spec.train_ratio));
    n_train = std::clamp(n_train, 1, n - 2);
    int n_val = (n - n_train) / 2;
    for (int i = 0; i < n_train; ++i) out.train.push_back(idx[i]);
    for (int i = n_train; i < n_train + n_val; ++i) out.val.push_back(idx[i]);
    for (int i = n_train + n_val; i < n; ++i) out.test.push_back(idx[i]);
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.val.begin(), out.val.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::vector<int> argmax_rows(const Matrix& logits) {
  std::vector<int> out(logits.rows);
  for (int i = 0; i < logits.rows; ++i) {
    int best = 0;
    for (int j = 1; j < logits.cols; ++j)
      if (logits.at(i, j) > logits.at(i, best)) best = j;
    out[i] = best;
  }
  return out;
}

double subset_cross_entropy(const Matrix& logits, const std::vector<int>& labels,
                            const std::vector<int>& idx) {
  if (idx.empty()) fail(Errc::LengthMismatch, "cross-entropy over empty subset");
  double total = 0.0;
  for (int i : idx) {
    double mx = logits.at(i, 0);
    for (int j = 1; j < logits.cols; ++j) mx = std::max(mx, logits.at(i, j));
    double s = 0.0;
    for (int j = 0; j < logits.cols; ++j) s += std::exp(logits.at(i, j) - mx);
    total += mx + std::log(s) - logits.at(i, labels[i]);
  }
  return total / idx.size();
}

namespace {

// 0/1 selector with one row per picked index; matmul(S, M) gathers rows.
Tensor row_selector(const std::vector<int>& idx, int n) {
  Tensor s = make_tensor(static_cast<int>(idx.size()), n);
  for (int r = 0; r < static_cast<int>(idx.size()); ++r) s->at(r, idx[r]) = 1.0;
  return s;
}

std::vector<int> gather(const std::vector<int>& values, const std::vector<int>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(values[i]);
  return out;
}

}  // namespace

TrainResult train(Model& model, const Tensor& x, const std::vector<Matrix>& a_norm,
                  const std::vector<int>& labels, const Splits& splits,
                  const TrainOptions& opts) {
  if (static_cast<int>(labels.size()) != x->rows)
    fail(Errc::LengthMismatch, "labels / feature row count mismatch");
  if (splits.train.empty() || splits.val.empty() || splits.test.empty())
    fail(Errc::ConfigInvalid, "every split must be non-empty");

  const int n = x->rows;
  Tensor s_train = row_selector(splits.train, n);
  std::vector<int> y_train = gather(labels, splits.train);
  std::vector<int> y_val = gather(labels, splits.val);

  std::vector<Parameter*> params = model.params();
  AdamConfig adam;
  adam.lr = opts.lr;

  EarlyStopper stopper;
  stopper.patience = opts.patience;
  stopper.tol = opts.min_decrease;

  std::vector<std::vector<double>> best_values;
  auto snapshot = [&] {
    best_values.clear();
    best_values.reserve(params.size());
    for (Parameter* p : params) best_values.push_back(p->value->data);
  };

  TrainResult res;
  for (int epoch = 1; epoch <= opts.max_epochs; ++epoch) {
    EpochStats stats;
    stats.epoch = epoch;
    bool stop = false;
    try {
      Tape tape;
      ForwardResult fwd = model.forward(tape, x, a_norm, /*training=*/true);
      Matrix logits = to_matrix(fwd.logits);
      Tensor loss = cross_entropy_logits(
          tape, matmul(tape, s_train, fwd.logits), y_train);
      stats.train_loss = loss->data[0];
      stats.beta = fwd.beta;

      stats.val_loss = subset_cross_entropy(logits, labels, splits.val);
      std::vector<int> val_pred = gather(argmax_rows(logits), splits.val);
      stats.val_macro_f1 =
          f1_scores(val_pred, y_val, model.config().num_classes).macro;

      // The parameters being validated here are the pre-update ones, so
      // snapshot before the optimizer touches them.
      bool improved = stats.val_loss < stopper.best - stopper.tol;
      stop = stopper.update(stats.val_loss, epoch);
      if (improved) snapshot();

      if (!stop) {
        tape.backward(loss);
        adam_step(params, adam, epoch);
      }
    } catch (const Error& e) {
      if (e.code() == Errc::NonFinite)
        fail(Errc::NonFiniteLoss,
             "epoch " + std::to_string(epoch) + ": " + e.what());
      throw;
    }

    res.history.push_back(stats);
    res.epochs_run = epoch;
    log::debug("epoch " + std::to_string(epoch) + " train_loss " +
               std::to_string(stats.train_loss) + " val_loss " +
               std::to_string(stats.val_loss));
    if (stop) {
      res.early_stopped = true;
      break;
    }
  }

  res.best_epoch = stopper.best_epoch;
  res.best_val_loss = stopper.best;
  if (!best_values.empty())
    for (size_t i = 0; i < params.size(); ++i)
      params[i]->value->data = best_values[i];
  return res;
}

}  // namespace mgahhn
