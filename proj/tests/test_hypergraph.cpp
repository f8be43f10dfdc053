#include <doctest.h>

#include <cmath>

#include "mgahhn/error.hpp"
#include "mgahhn/hypergraph.hpp"
#include "mgahhn/linalg.hpp"
#include "mgahhn/rng.hpp"
#include "test_util.hpp"

using namespace mgahhn;

namespace {

HypergraphView make_view(int num_nodes, std::vector<std::vector<int>> edges,
                         std::vector<double> weights = {}) {
  HypergraphView v;
  v.name = "test";
  v.num_nodes = num_nodes;
  v.num_hyperedges = static_cast<int>(edges.size());
  v.hyperedges = std::move(edges);
  v.hyperedge_center.assign(v.num_hyperedges, 0);
  if (weights.empty()) weights.assign(v.num_hyperedges, 1.0);
  v.edge_weights = std::move(weights);
  v.edge_degrees.resize(v.num_hyperedges);
  v.node_degrees.assign(num_nodes, 0.0);
  for (int e = 0; e < v.num_hyperedges; ++e) {
    v.edge_degrees[e] = static_cast<double>(v.hyperedges[e].size());
    for (int n : v.hyperedges[e]) v.node_degrees[n] += v.edge_weights[e];
  }
  return v;
}

// Independent oracle: A = sum_e (w_e / delta_e) h_e h_e^T over incidence
// columns, accumulated one rank-1 term at a time.
Matrix outer_product_adjacency(const HypergraphView& v) {
  Matrix a(v.num_nodes, v.num_nodes, 0.0);
  for (int e = 0; e < v.num_hyperedges; ++e) {
    double f = v.edge_weights[e] / v.edge_degrees[e];
    for (int i : v.hyperedges[e])
      for (int j : v.hyperedges[e]) a.at(i, j) += f;
  }
  return a;
}

HypergraphView random_view(Rng& rng) {
  int n = 2 + static_cast<int>(rng.uniform_int(9));
  int m = 1 + static_cast<int>(rng.uniform_int(8));
  std::vector<std::vector<int>> edges;
  std::vector<double> weights;
  for (int e = 0; e < m; ++e) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (rng.uniform() < 0.5) members.push_back(v);
    if (members.empty()) members.push_back(static_cast<int>(rng.uniform_int(n)));
    edges.push_back(members);
    weights.push_back(rng.uniform(0.1, 2.0));
  }
  return make_view(n, edges, weights);
}

}  // namespace

TEST_CASE("adjacency matches hand-computed values on a 3-node view") {
  // e0 = {0,1}, e1 = {0,1,2}, unit weights.
  HypergraphView v = make_view(3, {{0, 1}, {0, 1, 2}});
  CHECK(v.edge_degrees == std::vector<double>{2.0, 3.0});
  CHECK(v.node_degrees == std::vector<double>{2.0, 2.0, 1.0});

  Matrix a = v.adjacency();
  CHECK(a.at(0, 0) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(a.at(0, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(a.at(0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(a.at(2, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  Matrix sym = v.normalized_adjacency(Normalization::kSymmetric);
  CHECK(sym.at(0, 0) == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
  CHECK(sym.at(0, 2) == doctest::Approx(1.0 / (3.0 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(sym.at(2, 0) == doctest::Approx(sym.at(0, 2)).epsilon(1e-15));
  CHECK(sym.at(2, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  Matrix paw = v.normalized_adjacency(Normalization::kPaperAsWritten);
  CHECK(paw.at(0, 2) == doctest::Approx(1.0 / (3.0 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(paw.at(2, 0) == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-15));
  CHECK_FALSE(is_symmetric(paw, 1e-12));
  // Scaling the columns of the symmetric form by d_j recovers it.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(paw.at(i, j) ==
            doctest::Approx(sym.at(i, j) * v.node_degrees[j]).epsilon(1e-13));
}

TEST_CASE("adjacency equals the rank-1 outer-product oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    HypergraphView v = random_view(rng);
    Matrix got = v.adjacency();
    Matrix want = outer_product_adjacency(v);
    for (int i = 0; i < v.num_nodes; ++i)
      for (int j = 0; j < v.num_nodes; ++j)
        CHECK(std::abs(got.at(i, j) - want.at(i, j)) <= 1e-12);
  }
}

TEST_CASE("degree handshake: sum of node degrees equals weighted edge sizes") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    HypergraphView v = random_view(rng);
    double node_sum = 0.0, edge_sum = 0.0;
    for (double d : v.node_degrees) node_sum += d;
    for (int e = 0; e < v.num_hyperedges; ++e)
      edge_sum += v.edge_weights[e] * v.edge_degrees[e];
    CHECK(node_sum == doctest::Approx(edge_sum).epsilon(1e-12));
  }
}

TEST_CASE("normalized adjacency is symmetric and positive semidefinite") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    HypergraphView v = random_view(rng);
    Matrix norm = v.normalized_adjacency(Normalization::kSymmetric);
    CHECK(is_symmetric(norm, 1e-12));
    CHECK(min_eigenvalue_symmetric(norm) >= -1e-9);
  }
}

TEST_CASE("isolated nodes get zero rows under the 0^{-1/2} := 0 convention") {
  // Node 2 is in no hyperedge.
  HypergraphView v = make_view(3, {{0, 1}});
  CHECK(v.node_degrees[2] == 0.0);
  Matrix norm = v.normalized_adjacency(Normalization::kSymmetric);
  for (int j = 0; j < 3; ++j) {
    CHECK(norm.at(2, j) == 0.0);
    CHECK(norm.at(j, 2) == 0.0);
  }
  CHECK(norm.at(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("zero edge degree is rejected when inverting") {
  HypergraphView v = make_view(2, {{0, 1}});
  v.edge_degrees[0] = 0.0;
  CHECK_THROWS_AS(v.adjacency(), Error);
  try {
    v.adjacency();
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularDegree);
  }
}

TEST_CASE("build_view orders hyperedges by identifier node and applies the size floor") {
  // a0,a1,a2 authors; p0 = {a0,a1}, p1 = {a1,a2}, p2 = {a2}.
  TypeSchema s;
  s.node_types = {"A", "P"};
  s.edge_types = {{"writes", "A", "P"}};
  s.target_type = "A";

  HeteroGraph g;
  g.schema = s;
  g.target_type = 0;
  g.nodes_of_type.assign(2, {});
  auto add_node = [&](const std::string& id, int type) {
    int global = g.num_nodes();
    g.original_ids.push_back(id);
    g.node_type.push_back(type);
    g.type_index.push_back(static_cast<int>(g.nodes_of_type[type].size()));
    g.nodes_of_type[type].push_back(global);
    return global;
  };
  int a0 = add_node("a0", 0), a1 = add_node("a1", 0), a2 = add_node("a2", 0);
  int p0 = add_node("p0", 1), p1 = add_node("p1", 1), p2 = add_node("p2", 1);
  g.edges = {{a0, p0, 0}, {a1, p0, 0}, {a1, p1, 0}, {a2, p1, 0}, {a2, p2, 0}};
  g.finalize();
  g.validate();

  SymmetricMetaPath apa = check_symmetric(parse_metapath("APA", s), 0, "apa");

  HypergraphBuildOptions opts;
  HypergraphView all = build_view(g, apa, opts);
  CHECK(all.num_hyperedges == 3);
  CHECK(all.hyperedge_center == std::vector<int>{p0, p1, p2});
  CHECK(all.hyperedges[0] == std::vector<int>{0, 1});
  CHECK(all.hyperedges[1] == std::vector<int>{1, 2});
  CHECK(all.hyperedges[2] == std::vector<int>{2});
  CHECK(all.node_degrees == std::vector<double>{1.0, 2.0, 2.0});

  opts.min_hyperedge_size = 2;
  HypergraphView pruned = build_view(g, apa, opts);
  CHECK(pruned.num_hyperedges == 2);
  CHECK(pruned.hyperedge_center == std::vector<int>{p0, p1});

  opts.min_hyperedge_size = 10;
  CHECK_THROWS_AS(build_view(g, apa, opts), Error);
  try {
    build_view(g, apa, opts);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyView);
  }

  // With the floor disabled, a paper with no authors yields an empty
  // hyperedge and a degree failure at build time.
  int p3 = add_node("p3", 1);
  (void)p3;
  g.finalize();
  opts.min_hyperedge_size = 0;
  try {
    build_view(g, apa, opts);
    FAIL("expected ZeroDegreeHyperedge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroDegreeHyperedge);
  }
}

TEST_CASE("hyperedge weights scale adjacency linearly") {
  HypergraphView unit = make_view(3, {{0, 1}, {1, 2}});
  HypergraphView scaled = make_view(3, {{0, 1}, {1, 2}}, {2.5, 2.5});
  Matrix a = unit.adjacency();
  Matrix b = scaled.adjacency();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(b.at(i, j) == doctest::Approx(2.5 * a.at(i, j)).epsilon(1e-14));
  // Symmetric normalization cancels a uniform weight scale.
  Matrix na = unit.normalized_adjacency(Normalization::kSymmetric);
  Matrix nb = scaled.normalized_adjacency(Normalization::kSymmetric);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(nb.at(i, j) == doctest::Approx(na.at(i, j)).epsilon(1e-13));
}

TEST_CASE("incidence matches hyperedge membership") {
  Rng rng(77);
  HypergraphView v = random_view(rng);
  Matrix h = v.incidence();
  REQUIRE(h.rows == v.num_nodes);
  REQUIRE(h.cols == v.num_hyperedges);
  for (int e = 0; e < v.num_hyperedges; ++e) {
    double col_sum = 0.0;
    for (int n = 0; n < v.num_nodes; ++n) col_sum += h.at(n, e);
    CHECK(col_sum == doctest::Approx(v.edge_degrees[e]));
  }
}

TEST_CASE("parse_normalization accepts both documented modes") {
  CHECK(parse_normalization("symmetric") == Normalization::kSymmetric);
  CHECK(parse_normalization("paper_as_written") == Normalization::kPaperAsWritten);
  CHECK_THROWS_AS(parse_normalization("other"), Error);
}
