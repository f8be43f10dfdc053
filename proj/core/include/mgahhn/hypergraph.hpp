#pragma once

#include <string>
#include <vector>

#include "mgahhn/het_graph.hpp"
#include "mgahhn/matrix.hpp"
#include "mgahhn/meta_path.hpp"

namespace mgahhn {

enum class Normalization {
  kSymmetric,       // D_v^{-1/2} A D_v^{-1/2}
  kPaperAsWritten   // D_v^{-1/2} A D_v^{+1/2}
};

Normalization parse_normalization(const std::string& s);

// One view of the heterogeneous hypergraph: hyperedges are reach-sets of
// target nodes, one per identifier node of the meta-path's center type.
struct HypergraphView {
  std::string name;
  int num_nodes = 0;        // target nodes, dense target indexing
  int num_hyperedges = 0;
  std::vector<std::vector<int>> hyperedges;  // sorted target indices per edge
  std::vector<int> hyperedge_center;         // global id of the identifier node
  std::vector<double> edge_weights;          // W_e, uniform by default
  std::vector<double> edge_degrees;          // delta(e) = |e|
  std::vector<double> node_degrees;          // d(v) = sum_e w_e H[v,e]

  Matrix incidence() const;                  // dense 0/1, nodes x hyperedges
  Matrix adjacency() const;                  // H W_e D_e^{-1} H^T
  Matrix normalized_adjacency(Normalization mode) const;
};

struct HypergraphBuildOptions {
  int min_hyperedge_size = 1;   // reach-sets smaller than this are dropped
  double hyperedge_weight = 1.0;
};

// Builds one view per symmetric meta-path. A view with no surviving
// hyperedges raises EmptyView. Hyperedges are ordered by the dense index of
// their identifier node, so construction is deterministic.
HypergraphView build_view(const HeteroGraph& g, const SymmetricMetaPath& smp,
                          const HypergraphBuildOptions& opts);

std::vector<HypergraphView> build_views(const HeteroGraph& g,
                                        const std::vector<SymmetricMetaPath>& paths,
                                        const HypergraphBuildOptions& opts);

}  // namespace mgahhn
