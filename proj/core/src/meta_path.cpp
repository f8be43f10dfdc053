#include "mgahhn/meta_path.hpp"

#include <algorithm>

#include "mgahhn/error.hpp"

namespace mgahhn {

MetaPath MetaPath::reversed() const {
  MetaPath r;
  r.node_types.assign(node_types.rbegin(), node_types.rend());
  r.edge_types.assign(edge_types.rbegin(), edge_types.rend());
  return r;
}

namespace {

int find_node_type(const TypeSchema& schema, const std::string& tok) {
  for (int i = 0; i < static_cast<int>(schema.node_types.size()); ++i)
    if (schema.node_types[i] == tok) return i;
  return -1;
}

int find_edge_type_by_name(const TypeSchema& schema, const std::string& tok) {
  for (int i = 0; i < static_cast<int>(schema.edge_types.size()); ++i)
    if (schema.edge_types[i].name == tok) return i;
  return -1;
}

// Edge type joining node types a and b, either orientation.
int infer_edge_type(const TypeSchema& schema, int a, int b, const std::string& spec) {
  int found = -1;
  for (int i = 0; i < static_cast<int>(schema.edge_types.size()); ++i) {
    const auto& et = schema.edge_types[i];
    int s = find_node_type(schema, et.src);
    int d = find_node_type(schema, et.dst);
    if ((s == a && d == b) || (s == b && d == a)) {
      if (found >= 0)
        fail(Errc::AmbiguousEdgeType,
             "meta-path '" + spec + "': more than one edge type connects " +
                 schema.node_types[a] + " and " + schema.node_types[b] +
                 "; spell edge types explicitly");
      found = i;
    }
  }
  if (found < 0)
    fail(Errc::NoEdgeType, "meta-path '" + spec + "': no edge type connects " +
                               schema.node_types[a] + " and " + schema.node_types[b]);
  return found;
}

// Splits a concatenated spec like "APVPA" into declared node type names.
// Backtracking with longest-first matching handles multi-character names.
bool tokenize_concat(const std::string& s, size_t pos,
                     const std::vector<std::string>& names, std::vector<int>* out) {
  if (pos == s.size()) return !out->empty();
  std::vector<int> order(names.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return names[a].size() > names[b].size();
  });
  for (int id : order) {
    const std::string& n = names[id];
    if (n.empty() || s.compare(pos, n.size(), n) != 0) continue;
    out->push_back(id);
    if (tokenize_concat(s, pos + n.size(), names, out)) return true;
    out->pop_back();
  }
  return false;
}

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> toks;
  size_t start = 0;
  while (start <= s.size()) {
    size_t dash = s.find('-', start);
    if (dash == std::string::npos) {
      toks.push_back(s.substr(start));
      break;
    }
    toks.push_back(s.substr(start, dash - start));
    start = dash + 1;
  }
  return toks;
}

}  // namespace

MetaPath parse_metapath(const std::string& spec, const TypeSchema& schema) {
  if (spec.empty()) fail(Errc::UnknownTypeName, "empty meta-path spec");

  std::vector<int> node_ids;
  std::vector<int> edge_ids;  // explicit edge tokens, empty if inferred

  if (spec.find('-') != std::string::npos) {
    std::vector<std::string> toks = split_tokens(spec);
    for (const auto& t : toks)
      if (t.empty())
        fail(Errc::UnknownTypeName, "meta-path '" + spec + "': empty token");

    bool all_nodes = true;
    for (const auto& t : toks)
      if (find_node_type(schema, t) < 0) { all_nodes = false; break; }

    if (all_nodes) {
      for (const auto& t : toks) node_ids.push_back(find_node_type(schema, t));
    } else {
      // Alternating node-edge-node form.
      if (toks.size() % 2 == 0 || toks.size() < 3)
        fail(Errc::UnknownTypeName,
             "meta-path '" + spec + "': unknown node type in token list");
      for (size_t i = 0; i < toks.size(); ++i) {
        if (i % 2 == 0) {
          int id = find_node_type(schema, toks[i]);
          if (id < 0)
            fail(Errc::UnknownTypeName,
                 "meta-path '" + spec + "': unknown node type '" + toks[i] + "'");
          node_ids.push_back(id);
        } else {
          int id = find_edge_type_by_name(schema, toks[i]);
          if (id < 0)
            fail(Errc::UnknownTypeName,
                 "meta-path '" + spec + "': unknown edge type '" + toks[i] + "'");
          edge_ids.push_back(id);
        }
      }
    }
  } else {
    if (!tokenize_concat(spec, 0, schema.node_types, &node_ids))
      fail(Errc::UnknownTypeName,
           "meta-path '" + spec + "' does not tokenize into declared node types");
  }

  MetaPath mp;
  mp.node_types = node_ids;
  if (!edge_ids.empty()) {
    // Validate explicit edge types against their endpoints.
    for (size_t i = 0; i < edge_ids.size(); ++i) {
      const auto& et = schema.edge_types[edge_ids[i]];
      int s = find_node_type(schema, et.src);
      int d = find_node_type(schema, et.dst);
      int a = node_ids[i], b = node_ids[i + 1];
      if (!((s == a && d == b) || (s == b && d == a)))
        fail(Errc::NoEdgeType, "meta-path '" + spec + "': edge type '" +
                                   et.name + "' does not connect " +
                                   schema.node_types[a] + " and " +
                                   schema.node_types[b]);
    }
    mp.edge_types = edge_ids;
  } else {
    for (size_t i = 0; i + 1 < node_ids.size(); ++i)
      mp.edge_types.push_back(infer_edge_type(schema, node_ids[i], node_ids[i + 1], spec));
  }
  return mp;
}

SymmetricMetaPath check_symmetric(const MetaPath& mp, int target_type,
                                  const std::string& name) {
  const int n = static_cast<int>(mp.node_types.size());
  const int l = static_cast<int>(mp.edge_types.size());
  if (n < 3)
    fail(Errc::ConfigInvalid, "meta-path must span at least three node types");
  if (n % 2 == 0)
    fail(Errc::EvenLength,
         "meta-path has an even number of node types; no single center exists");
  for (int i = 0; i < n / 2; ++i)
    if (mp.node_types[i] != mp.node_types[n - 1 - i])
      fail(Errc::NotSymmetric, "meta-path node types are not palindromic");
  for (int j = 0; j < l / 2; ++j)
    if (mp.edge_types[j] != mp.edge_types[l - 1 - j])
      fail(Errc::NotSymmetric, "meta-path edge types are not palindromic");
  if (mp.node_types.front() != target_type)
    fail(Errc::EndpointNotTarget,
         "meta-path endpoints are not the target node type");

  SymmetricMetaPath smp;
  smp.base = mp;
  smp.center_index = n / 2;
  smp.half_edge_types.assign(mp.edge_types.begin() + smp.center_index,
                             mp.edge_types.end());
  smp.name = name;
  return smp;
}

std::vector<int> reach_targets(const HeteroGraph& g, const SymmetricMetaPath& smp,
                               int center_node) {
  if (center_node < 0 || center_node >= g.num_nodes())
    fail(Errc::UnknownNode, "reach: node id out of range");
  if (g.node_type[center_node] != smp.center_type())
    fail(Errc::WrongCenterType,
         "reach: node " + std::to_string(center_node) + " is not of the center type");

  std::vector<int> frontier = {center_node};
  for (int et : smp.half_edge_types) {
    std::vector<int> next;
    for (int v : frontier) {
      const auto& nb = g.neighbors(v, et);
      next.insert(next.end(), nb.begin(), nb.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace mgahhn
