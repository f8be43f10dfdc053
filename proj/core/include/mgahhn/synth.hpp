#pragma once

#include <cstdint>

#include "mgahhn/het_graph.hpp"

namespace mgahhn {

// Planted-class bibliographic generator: authors (A) carry class labels,
// papers (P) draw 2-4 authors mostly within one class, venues (V) lean
// toward the majority class of a paper's authors, and optional terms (T)
// behave like venues. Author features are a class indicator plus Gaussian
// noise, so structure has to carry most of the signal at high noise.
struct SynthConfig {
  int num_classes = 3;
  int authors_per_class = 100;
  int papers = 600;
  int venues = 6;
  int terms = 0;  // 0 leaves the T node type out entirely
  // Relative weights of in-class vs out-of-class choices (coauthor draws,
  // venue/term bias); the in-class probability is p_in / (p_in + p_out).
  double p_in = 0.9;
  double p_out = 0.1;
  int feature_dim = 16;
  double feature_noise = 1.5;  // sigma of the per-dimension Gaussian
  std::uint64_t seed = 1;

  void validate() const;  // InfeasibleConfig on any violation
};

// Deterministic under seed; the result always passes HeteroGraph::validate().
// Labels are stored on the graph (labels[i] = class of author i).
HeteroGraph generate_synthetic(const SynthConfig& cfg);

}  // namespace mgahhn
