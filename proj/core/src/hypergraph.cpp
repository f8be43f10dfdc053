#include "mgahhn/hypergraph.hpp"

#include <cmath>

#include "mgahhn/error.hpp"
#include "mgahhn/log.hpp"

namespace mgahhn {

Normalization parse_normalization(const std::string& s) {
  if (s == "symmetric") return Normalization::kSymmetric;
  if (s == "paper_as_written") return Normalization::kPaperAsWritten;
  fail(Errc::ConfigInvalid, "unknown normalization mode '" + s +
                                "' (expected symmetric or paper_as_written)");
}

Matrix HypergraphView::incidence() const {
  Matrix h(num_nodes, num_hyperedges, 0.0);
  for (int e = 0; e < num_hyperedges; ++e)
    for (int v : hyperedges[e]) h.at(v, e) = 1.0;
  return h;
}

Matrix HypergraphView::adjacency() const {
  for (int e = 0; e < num_hyperedges; ++e)
    if (edge_degrees[e] <= 0.0)
      fail(Errc::SingularDegree,
           "hyperedge " + std::to_string(e) + " in view '" + name +
               "' has zero degree; its inverse is undefined");
  Matrix h = incidence();
  // Scale columns by w_e / delta(e), then A = scaled * H^T.
  Matrix scaled = h;
  for (int e = 0; e < num_hyperedges; ++e) {
    double f = edge_weights[e] / edge_degrees[e];
    for (int v = 0; v < num_nodes; ++v) scaled.at(v, e) *= f;
  }
  Matrix a(num_nodes, num_nodes, 0.0);
  for (int i = 0; i < num_nodes; ++i)
    for (int e = 0; e < num_hyperedges; ++e) {
      double s = scaled.at(i, e);
      if (s == 0.0) continue;
      for (int j = 0; j < num_nodes; ++j) a.at(i, j) += s * h.at(j, e);
    }
  return a;
}

Matrix HypergraphView::normalized_adjacency(Normalization mode) const {
  Matrix a = adjacency();
  std::vector<double> inv_sqrt(num_nodes), pos_sqrt(num_nodes);
  for (int v = 0; v < num_nodes; ++v) {
    double d = node_degrees[v];
    // Isolated nodes contribute nothing: 0^{-1/2} is taken as 0.
    inv_sqrt[v] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
    pos_sqrt[v] = d > 0.0 ? std::sqrt(d) : 0.0;
  }
  const std::vector<double>& right =
      mode == Normalization::kSymmetric ? inv_sqrt : pos_sqrt;
  for (int i = 0; i < num_nodes; ++i)
    for (int j = 0; j < num_nodes; ++j) a.at(i, j) *= inv_sqrt[i] * right[j];
  return a;
}

HypergraphView build_view(const HeteroGraph& g, const SymmetricMetaPath& smp,
                          const HypergraphBuildOptions& opts) {
  HypergraphView view;
  view.name = smp.name;
  view.num_nodes = g.num_targets();

  const auto& centers = g.nodes_of_type.at(smp.center_type());
  for (int c : centers) {
    std::vector<int> reach = reach_targets(g, smp, c);
    if (static_cast<int>(reach.size()) < opts.min_hyperedge_size) continue;
    std::vector<int> members;
    members.reserve(reach.size());
    for (int global : reach) members.push_back(g.type_index[global]);
    std::sort(members.begin(), members.end());
    view.hyperedges.push_back(std::move(members));
    view.hyperedge_center.push_back(c);
  }
  view.num_hyperedges = static_cast<int>(view.hyperedges.size());
  if (view.num_hyperedges == 0)
    fail(Errc::EmptyView, "meta-path '" + smp.name + "' produced no hyperedges");

  view.edge_weights.assign(view.num_hyperedges, opts.hyperedge_weight);
  view.edge_degrees.resize(view.num_hyperedges);
  view.node_degrees.assign(view.num_nodes, 0.0);
  for (int e = 0; e < view.num_hyperedges; ++e) {
    view.edge_degrees[e] = static_cast<double>(view.hyperedges[e].size());
    if (view.edge_degrees[e] == 0.0)
      fail(Errc::ZeroDegreeHyperedge,
           "hyperedge for center node " +
               std::to_string(view.hyperedge_center[e]) + " in view '" +
               view.name + "' is empty (min_hyperedge_size = 0)");
    for (int v : view.hyperedges[e]) view.node_degrees[v] += view.edge_weights[e];
  }
  log::info("view '" + view.name + "': " + std::to_string(view.num_hyperedges) +
            " hyperedges over " + std::to_string(view.num_nodes) + " nodes");
  return view;
}

std::vector<HypergraphView> build_views(const HeteroGraph& g,
                                        const std::vector<SymmetricMetaPath>& paths,
                                        const HypergraphBuildOptions& opts) {
  std::vector<HypergraphView> views;
  views.reserve(paths.size());
  for (const auto& p : paths) views.push_back(build_view(g, p, opts));
  return views;
}

}  // namespace mgahhn
