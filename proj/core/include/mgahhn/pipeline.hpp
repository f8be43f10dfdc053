#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mgahhn/het_graph.hpp"
#include "mgahhn/hypergraph.hpp"
#include "mgahhn/model.hpp"
#include "mgahhn/run_config.hpp"
#include "mgahhn/trainer.hpp"

namespace mgahhn {

// Everything derived from the dataset that is shared across seeds: the
// loaded graph, one hypergraph view per meta-path, and their normalized
// adjacencies.
struct PreparedData {
  HeteroGraph graph;
  std::vector<SymmetricMetaPath> paths;
  std::vector<HypergraphView> views;
  std::vector<Matrix> a_norm;
  std::vector<int> labels;  // per target node, -1 unlabeled
  Tensor x;                 // constant N x d feature tensor

  int num_targets() const { return graph.num_targets(); }
};

// Loads, validates, and builds all views. require_features=false lets
// build-hypergraph operate on graphs without feature files.
PreparedData prepare_data(const RunConfig& cfg, bool require_features = true);

ModelConfig model_config_for(const RunConfig& cfg, const PreparedData& data,
                             std::uint64_t seed);

struct SeedRunResult {
  std::uint64_t seed = 0;
  int epochs_run = 0;
  int best_epoch = -1;
  double test_macro_f1 = 0.0;
  double test_micro_f1 = 0.0;
  double cluster_nmi = 0.0;
  double cluster_ari = 0.0;
  std::vector<double> beta;
};

// One full training run: train with early stopping, restore the best
// parameters, score the test split and a k-means clustering of the
// embeddings. Writes checkpoint.bin, metrics.csv (epoch,loss,val_f1,
// beta_1..beta_K) and summary.json into seed_dir when it is non-empty.
SeedRunResult run_single_seed(const RunConfig& cfg, const PreparedData& data,
                              std::uint64_t seed,
                              const std::filesystem::path& seed_dir);

struct MultiSeedResult {
  std::vector<SeedRunResult> runs;
  double mean_test_macro_f1 = 0.0;
  double mean_test_micro_f1 = 0.0;
  double mean_cluster_nmi = 0.0;
  double mean_cluster_ari = 0.0;
};

// Runs every seed in cfg.seeds under cfg.out_dir/seed_<s>/ and writes the
// aggregate cfg.out_dir/summary.json.
MultiSeedResult run_training(const RunConfig& cfg, const PreparedData& data);

struct EvalReport {
  double test_macro_f1 = 0.0;
  double test_micro_f1 = 0.0;
  double cluster_nmi = 0.0;
  double cluster_ari = 0.0;
  std::vector<double> beta;
  std::string to_json() const;
};

// Restores a checkpoint into a freshly built model and scores it. seed
// drives k-means only. embeddings_csv non-empty also exports embeddings
// (with 2-D projection columns).
EvalReport evaluate_checkpoint(const RunConfig& cfg, const PreparedData& data,
                               const std::filesystem::path& checkpoint,
                               std::uint64_t seed,
                               const std::filesystem::path& embeddings_csv);

// Inference-only embedding export from a checkpoint.
void export_checkpoint_embeddings(const RunConfig& cfg, const PreparedData& data,
                                  const std::filesystem::path& checkpoint,
                                  const std::filesystem::path& out_csv,
                                  bool project2d);

// build-hypergraph artifacts: per view a sparse incidence file
// (first line "N<TAB>M", then "target_index<TAB>column" pairs), a centers
// file (column -> identifier original id), and optionally the normalized
// adjacency as CSV.
void write_hypergraph_artifacts(const PreparedData& data,
                                const std::filesystem::path& out_dir,
                                Normalization mode, bool with_adjacency);

// Finite-difference check of the full model on a tiny two-view instance.
// Returns the max relative error over every parameter coordinate.
double full_model_grad_check(std::uint64_t seed);

struct BenchPoint {
  int n = 0;
  double seconds = 0.0;
};

// Times the per-view attention forward pass at the given node counts
// (median of reps runs each).
std::vector<BenchPoint> bench_attention_scaling(const std::vector<int>& sizes,
                                                std::uint64_t seed, int reps);

}  // namespace mgahhn
