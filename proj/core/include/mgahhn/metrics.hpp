#pragma once

#include <vector>

namespace mgahhn {

struct F1Scores {
  double macro = 0.0;
  double micro = 0.0;
};

// Per-class F1 averaged unweighted (macro) and from pooled counts (micro).
// A class with undefined precision/recall/F1 contributes 0. num_classes < 0
// means infer max(label)+1 from both sequences.
F1Scores f1_scores(const std::vector<int>& pred, const std::vector<int>& truth,
                   int num_classes = -1);

// Normalized mutual information with arithmetic-mean normalization. Two
// trivial one-cluster partitions score 1; one trivial against a split
// partition scores 0.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

// Adjusted Rand index from the pair-counting contingency formula. Both
// arguments trivial (denominator zero) scores 1.
double ari(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace mgahhn
