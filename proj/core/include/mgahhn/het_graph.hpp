#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mgahhn/matrix.hpp"

namespace mgahhn {

struct EdgeTypeDef {
  std::string name;
  std::string src;
  std::string dst;
};

// Declares the node and edge types a dataset may use. Loaded from the schema
// JSON ({"node_types": [...], "edge_types": [{"name","src","dst"}],
// "target_type": "..."}) or built directly in code.
struct TypeSchema {
  std::vector<std::string> node_types;
  std::vector<EdgeTypeDef> edge_types;
  std::string target_type;

  int node_type_id(const std::string& name) const;  // -1 when unknown
  int edge_type_id(const std::string& name) const;  // -1 when unknown

  // Checks name uniqueness and that every edge type references declared node
  // types. Throws Error(UnknownType / ConfigInvalid).
  void validate() const;

  static TypeSchema from_json_file(const std::filesystem::path& file);
  static TypeSchema from_json_text(const std::string& text);
  std::string to_json_text() const;
  void to_json_file(const std::filesystem::path& file) const;
};

// A typed graph, immutable once loaded. Node ids from the input files are
// re-indexed densely: every node gets a global id (0..num_nodes()-1) and a
// dense index within its type, both in node-file order. The original id
// strings are kept so outputs can refer back to the source ids.
//
// Edges are stored directed as read, but neighbors() is direction-agnostic:
// traversal treats every edge as usable both ways.
struct HeteroGraph {
  TypeSchema schema;
  int target_type = -1;  // node-type id

  std::vector<int> node_type;                  // global id -> type id
  std::vector<int> type_index;                 // global id -> index within type
  std::vector<std::vector<int>> nodes_of_type; // type id -> global ids
  std::vector<std::string> original_ids;       // global id -> source id string

  struct Edge {
    int src;
    int dst;
    int type;
  };
  std::vector<Edge> edges;

  Matrix features;          // num_targets() x d, target type only
  std::vector<int> labels;  // per target type index; -1 = unlabeled
  int num_classes = 0;

  int num_nodes() const { return static_cast<int>(node_type.size()); }
  int num_targets() const {
    return target_type < 0 ? 0 : static_cast<int>(nodes_of_type[target_type].size());
  }
  bool has_labels() const { return num_classes > 0; }
  int global_id(int type, int index_in_type) const {
    return nodes_of_type[type][index_in_type];
  }

  // One-hop neighbors over one edge type: sorted, deduplicated, symmetric
  // (u in neighbors(v) iff v in neighbors(u)). Throws UnknownNode /
  // UnknownEdgeType.
  const std::vector<int>& neighbors(int node, int edge_type) const;

  // Rebuilds the per-(node, edge type) adjacency lists. Must be called after
  // any direct mutation of nodes/edges; load_graph and the synthesizer call
  // it for you.
  void finalize();

  // Full invariant check; throws the specific Error for the first violation.
  void validate() const;

 private:
  // adjacency_[node][edge_type] -> sorted unique neighbor globals
  std::vector<std::vector<std::vector<int>>> adjacency_;
};

// Loads and validates a graph from the four data files. feature_file and
// label_file may be empty paths when a dataset has no features/labels.
// Throws Error(MalformedLine / UnknownType / DanglingEdge /
// FeatureDimMismatch / IoError).
HeteroGraph load_graph(const std::filesystem::path& node_file,
                       const std::filesystem::path& edge_file,
                       const std::filesystem::path& feature_file,
                       const std::filesystem::path& label_file,
                       const TypeSchema& schema,
                       const std::string& target_type);

// Writes nodes/edges back in the input format using the original id strings.
void write_graph(const HeteroGraph& g,
                 const std::filesystem::path& node_file,
                 const std::filesystem::path& edge_file);

// Persists the dense re-indexing: original_id <TAB> type <TAB> dense_index.
void write_id_remap(const HeteroGraph& g, const std::filesystem::path& file);

// Re-emit features (CSV, one row per target node in node-file order, full
// float64 round-trip precision) and labels (original_id <TAB> class).
void write_features(const HeteroGraph& g, const std::filesystem::path& file);
void write_labels(const HeteroGraph& g, const std::filesystem::path& file);

}  // namespace mgahhn
