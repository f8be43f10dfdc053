#include <doctest.h>

#include <algorithm>
#include <set>

#include "mgahhn/error.hpp"
#include "mgahhn/hypergraph.hpp"
#include "mgahhn/meta_path.hpp"
#include "mgahhn/synth.hpp"

using namespace mgahhn;

namespace {

SynthConfig small_config() {
  SynthConfig cfg;
  cfg.num_classes = 3;
  cfg.authors_per_class = 20;
  cfg.papers = 120;
  cfg.venues = 6;
  cfg.feature_dim = 8;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("the default configuration yields the documented shape") {
  SynthConfig cfg;  // defaults
  HeteroGraph g = generate_synthetic(cfg);
  CHECK(g.num_targets() == 300);
  CHECK(g.nodes_of_type[1].size() == 600);  // papers
  CHECK(g.nodes_of_type[2].size() == 6);    // venues
  CHECK(g.schema.node_types == std::vector<std::string>{"A", "P", "V"});
  CHECK(g.num_classes == 3);
  CHECK(g.features.rows == 300);
  CHECK(g.features.cols == 16);

  // 100 labels of each class.
  std::vector<int> counts(3, 0);
  for (int l : g.labels) {
    REQUIRE(l >= 0);
    ++counts[l];
  }
  CHECK(counts == std::vector<int>{100, 100, 100});

  // Both standard views exist on the default graph.
  SymmetricMetaPath apa = check_symmetric(parse_metapath("APA", g.schema), 0, "apa");
  SymmetricMetaPath apvpa =
      check_symmetric(parse_metapath("APVPA", g.schema), 0, "apvpa");
  HypergraphBuildOptions opts;
  auto views = build_views(g, {apa, apvpa}, opts);
  CHECK(views[0].num_hyperedges > 0);
  CHECK(views[1].num_hyperedges == 6);  // one per venue
}

TEST_CASE("generation is deterministic in the seed") {
  SynthConfig cfg = small_config();
  HeteroGraph a = generate_synthetic(cfg);
  HeteroGraph b = generate_synthetic(cfg);
  CHECK(a.original_ids == b.original_ids);
  REQUIRE(a.edges.size() == b.edges.size());
  for (size_t i = 0; i < a.edges.size(); ++i) {
    CHECK(a.edges[i].src == b.edges[i].src);
    CHECK(a.edges[i].dst == b.edges[i].dst);
    CHECK(a.edges[i].type == b.edges[i].type);
  }
  CHECK(a.features.data == b.features.data);  // bit-identical
  CHECK(a.labels == b.labels);

  cfg.seed = 6;
  HeteroGraph c = generate_synthetic(cfg);
  bool same_edges = a.edges.size() == c.edges.size();
  if (same_edges)
    for (size_t i = 0; i < a.edges.size(); ++i)
      same_edges = same_edges && a.edges[i].src == c.edges[i].src &&
                   a.edges[i].dst == c.edges[i].dst;
  CHECK_FALSE(same_edges);
}

TEST_CASE("papers have two to four distinct authors") {
  HeteroGraph g = generate_synthetic(small_config());
  std::vector<std::vector<int>> authors_of(g.nodes_of_type[1].size());
  for (const auto& e : g.edges)
    if (e.type == 0) authors_of[g.type_index[e.dst]].push_back(e.src);
  for (auto& a : authors_of) {
    std::set<int> uniq(a.begin(), a.end());
    CHECK(uniq.size() == a.size());  // no duplicate authorship edges
    CHECK(a.size() >= 2);
    CHECK(a.size() <= 4);
  }
}

TEST_CASE("pure in-class wiring yields class-pure hyperedges") {
  SynthConfig cfg = small_config();
  cfg.p_in = 1.0;
  cfg.p_out = 0.0;
  HeteroGraph g = generate_synthetic(cfg);

  SymmetricMetaPath apa = check_symmetric(parse_metapath("APA", g.schema), 0, "apa");
  SymmetricMetaPath apvpa =
      check_symmetric(parse_metapath("APVPA", g.schema), 0, "apvpa");
  HypergraphBuildOptions opts;
  for (const auto& view : build_views(g, {apa, apvpa}, opts)) {
    for (const auto& edge : view.hyperedges) {
      REQUIRE(!edge.empty());
      int label = g.labels[edge.front()];
      for (int member : edge) CHECK(g.labels[member] == label);
    }
  }
}

TEST_CASE("zero noise makes features an exact scaled class indicator") {
  SynthConfig cfg = small_config();
  cfg.feature_noise = 0.0;
  HeteroGraph g = generate_synthetic(cfg);
  for (int a = 0; a < g.num_targets(); ++a)
    for (int j = 0; j < g.features.cols; ++j)
      CHECK(g.features.at(a, j) == (j == g.labels[a] ? 2.0 : 0.0));
}

TEST_CASE("term nodes appear only when requested") {
  SynthConfig cfg = small_config();
  HeteroGraph without = generate_synthetic(cfg);
  CHECK(without.schema.node_types.size() == 3);

  cfg.terms = 9;
  HeteroGraph with = generate_synthetic(cfg);
  CHECK(with.schema.node_types == std::vector<std::string>{"A", "P", "V", "T"});
  CHECK(with.schema.edge_types.size() == 3);
  CHECK(with.nodes_of_type[3].size() == 9);

  // Every paper carries 1..3 distinct term edges.
  std::vector<int> term_edges(with.nodes_of_type[1].size(), 0);
  for (const auto& e : with.edges)
    if (e.type == 2) ++term_edges[with.type_index[e.src]];
  for (int n : term_edges) {
    CHECK(n >= 1);
    CHECK(n <= 3);
  }
}

TEST_CASE("infeasible configurations are rejected with the specific code") {
  auto expect_bad = [](SynthConfig cfg) {
    try {
      cfg.validate();
      FAIL("expected InfeasibleConfig");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InfeasibleConfig);
    }
  };

  SynthConfig cfg = small_config();
  cfg.num_classes = 1;
  expect_bad(cfg);

  cfg = small_config();
  cfg.authors_per_class = 1;
  expect_bad(cfg);

  cfg = small_config();
  cfg.papers = 0;
  expect_bad(cfg);

  cfg = small_config();
  cfg.venues = 2;  // fewer than classes
  expect_bad(cfg);

  cfg = small_config();
  cfg.terms = 2;  // nonzero but fewer than classes
  expect_bad(cfg);

  cfg = small_config();
  cfg.p_in = 0.0;
  cfg.p_out = 0.0;
  expect_bad(cfg);

  cfg = small_config();
  cfg.p_in = 1.5;
  expect_bad(cfg);

  cfg = small_config();
  cfg.feature_dim = 2;  // below num_classes
  expect_bad(cfg);

  cfg = small_config();
  cfg.feature_noise = -0.1;
  expect_bad(cfg);

  small_config().validate();  // the baseline itself is fine
}

TEST_CASE("the generated graph always passes full validation") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    SynthConfig cfg = small_config();
    cfg.seed = seed;
    cfg.terms = 6;
    HeteroGraph g = generate_synthetic(cfg);
    g.validate();  // throws on any inconsistency
    CHECK(g.num_nodes() ==
          60 + cfg.papers + cfg.venues + cfg.terms);
  }
}
