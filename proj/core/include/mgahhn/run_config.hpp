#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mgahhn/hypergraph.hpp"
#include "mgahhn/model.hpp"
#include "mgahhn/synth.hpp"
#include "mgahhn/trainer.hpp"

namespace mgahhn {

struct DataPaths {
  std::filesystem::path schema;
  std::filesystem::path nodes;
  std::filesystem::path edges;
  std::filesystem::path features;  // optional, empty = absent
  std::filesystem::path labels;    // optional, empty = absent
};

// One JSON file drives a whole run. Unknown keys are rejected so typos
// surface immediately instead of silently using defaults.
//
// {
//   "data": {"schema": ..., "nodes": ..., "edges": ...,
//            "features": ..., "labels": ...},
//   "meta_paths": ["APA", "APVPA"],
//   "hypergraph": {"min_hyperedge_size": 1, "hyperedge_weight": 1.0,
//                  "normalization": "symmetric"},
//   "model": {"hidden_dim": 64, "heads": 4, "attention_mode": "hadamard",
//             "fusion_mode": "attention", "single_view_index": 0,
//             "residual_mode": "project_x", "dropout": 0.0},
//   "split": {"train_ratio": 0.8, "seed": 7},
//   "trainer": {"max_epochs": 100, "lr": 0.001, "patience": 10,
//               "seeds": [1, 2, 3, 4, 5]},
//   "out_dir": "out"
// }
struct RunConfig {
  DataPaths data;
  std::vector<std::string> meta_paths;

  HypergraphBuildOptions hypergraph;
  Normalization normalization = Normalization::kSymmetric;

  int hidden_dim = 64;
  int heads = 4;
  AttentionMode attention_mode = AttentionMode::kHadamard;
  FusionMode fusion_mode = FusionMode::kAttention;
  int single_view_index = 0;
  ResidualMode residual_mode = ResidualMode::kProjectX;
  double dropout = 0.0;

  SplitSpec split;
  TrainOptions trainer;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};

  std::filesystem::path out_dir = "out";

  static RunConfig from_json_text(const std::string& text,
                                  const std::filesystem::path& base_dir = {});
  static RunConfig from_json_file(const std::filesystem::path& file);
};

// Synthetic-dataset config, same strict key policy. All fields optional:
// num_classes, authors_per_class, papers, venues, terms, p_in, p_out,
// feature_dim, feature_noise, seed.
SynthConfig parse_synth_config_text(const std::string& text);
SynthConfig parse_synth_config_file(const std::filesystem::path& file);

}  // namespace mgahhn
