#pragma once

#include <string>
#include <vector>

#include "mgahhn/het_graph.hpp"

namespace mgahhn {

// A typed path schema: l+1 node types joined by l edge types.
struct MetaPath {
  std::vector<int> node_types;
  std::vector<int> edge_types;

  int length() const { return static_cast<int>(edge_types.size()); }
  MetaPath reversed() const;
  bool operator==(const MetaPath&) const = default;
};

// A palindromic meta-path whose endpoints are the target type. The node type
// at center_index identifies the hyperedge type; half_edge_types walks from
// the center to either end (the two directions are identical by symmetry).
struct SymmetricMetaPath {
  MetaPath base;
  int center_index = 0;
  std::vector<int> half_edge_types;
  std::string name;

  int center_type() const { return base.node_types[center_index]; }
};

// Parses a meta-path spec string against the schema. Accepted forms:
//   "APA"                      concatenated type names (tokenized against the
//                              declared names; unique for single-letter types)
//   "A-P-A"                    hyphen-separated node type names
//   "A-writes-P-writes-A"      alternating node and edge type names, for
//                              schemas where two edge types connect the same
//                              node-type pair
// Edge types are inferred per consecutive pair when not given explicitly;
// a pair served by more than one declared edge type raises AmbiguousEdgeType.
MetaPath parse_metapath(const std::string& spec, const TypeSchema& schema);

// Verifies the palindrome property and locates the center. Throws
// EvenLength / NotSymmetric / EndpointNotTarget.
SymmetricMetaPath check_symmetric(const MetaPath& mp, int target_type,
                                  const std::string& name = "");

// All target nodes reachable from `center_node` (a global node id of the
// center type) by following half_edge_types outward, one edge per step,
// direction-agnostic. Set semantics: each node appears once however many
// path instances reach it. Returns sorted global ids.
std::vector<int> reach_targets(const HeteroGraph& g, const SymmetricMetaPath& smp,
                               int center_node);

}  // namespace mgahhn
