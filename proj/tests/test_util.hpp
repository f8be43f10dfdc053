#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mgahhn/het_graph.hpp"
#include "mgahhn/rng.hpp"

namespace testutil {

// Self-deleting scratch directory under the build tree.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("mgahhn_test_" + tag + "_" + std::to_string(++counter) + "_" +
            std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path file(const std::string& name) const { return dir_ / name; }

 private:
  std::filesystem::path dir_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random small heterogeneous graph over up to 3 node types (X, Y, Z with
// edge types xy: X-Y and yz: Y-Z), used by construction property tests.
inline mgahhn::HeteroGraph random_graph(mgahhn::Rng& rng, int max_nodes = 50) {
  using namespace mgahhn;
  HeteroGraph g;
  g.schema.node_types = {"X", "Y", "Z"};
  g.schema.edge_types = {{"xy", "X", "Y"}, {"yz", "Y", "Z"}};
  g.schema.target_type = "X";
  g.target_type = 0;
  g.nodes_of_type.assign(3, {});

  int total = 6 + static_cast<int>(rng.uniform_int(max_nodes - 5));
  for (int i = 0; i < total; ++i) {
    int type = static_cast<int>(rng.uniform_int(3));
    int global = g.num_nodes();
    g.original_ids.push_back("n" + std::to_string(i));
    g.node_type.push_back(type);
    g.type_index.push_back(static_cast<int>(g.nodes_of_type[type].size()));
    g.nodes_of_type[type].push_back(global);
  }
  // Guarantee at least one node of each type.
  for (int t = 0; t < 3; ++t) {
    if (!g.nodes_of_type[t].empty()) continue;
    int global = g.num_nodes();
    g.original_ids.push_back("extra" + std::to_string(t));
    g.node_type.push_back(t);
    g.type_index.push_back(0);
    g.nodes_of_type[t].push_back(global);
  }

  auto link = [&](int type_a, int type_b, int edge_type, double density) {
    for (int a : g.nodes_of_type[type_a])
      for (int b : g.nodes_of_type[type_b])
        if (rng.uniform() < density) g.edges.push_back({a, b, edge_type});
  };
  link(0, 1, 0, 0.25);
  link(1, 2, 1, 0.25);

  g.finalize();
  g.validate();
  return g;
}

}  // namespace testutil
