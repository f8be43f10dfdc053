// Scaling probes for the dense attention forward pass and hypergraph
// adjacency assembly. The forward pass should scale ~quadratically in the
// node count (dense N x N score matrices); bench-scaling in the CLI wraps
// the same measurement for a quick pass/fail ratio check.

#include <benchmark/benchmark.h>

#include "mgahhn/hypergraph.hpp"
#include "mgahhn/model.hpp"
#include "mgahhn/rng.hpp"
#include "mgahhn/tensor.hpp"

namespace {

using namespace mgahhn;

HypergraphView banded_view(int n, int width) {
  HypergraphView view;
  view.name = "bench";
  view.num_nodes = n;
  for (int i = 0; i < n; ++i) {
    std::vector<int> edge;
    for (int k = 0; k < width; ++k) edge.push_back((i + k) % n);
    std::sort(edge.begin(), edge.end());
    view.hyperedges.push_back(std::move(edge));
    view.hyperedge_center.push_back(i);
  }
  view.num_hyperedges = n;
  view.edge_weights.assign(n, 1.0);
  view.edge_degrees.assign(n, static_cast<double>(width));
  view.node_degrees.assign(n, static_cast<double>(width));
  return view;
}

void BM_AttentionForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = 32;

  Matrix a = banded_view(n, 8).normalized_adjacency(Normalization::kSymmetric);
  Rng rng(7);
  Tensor x = make_tensor(n, d);
  for (double& v : x->data) v = rng.uniform(-1.0, 1.0);

  ModelConfig mc;
  mc.d = d;
  mc.d_prime = 64;
  mc.heads = 4;
  mc.num_views = 1;
  mc.num_classes = 2;
  mc.seed = 7;
  Model model(mc);

  for (auto _ : state) {
    Tape tape;
    ForwardResult fwd = model.forward(tape, x, {a}, false);
    benchmark::DoNotOptimize(fwd.logits->data.data());
    tape.clear();
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_AttentionForward)->Arg(256)->Arg(512)->Arg(1024)->Complexity();

void BM_AdjacencyBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  HypergraphView view = banded_view(n, 8);
  for (auto _ : state) {
    Matrix a = view.normalized_adjacency(Normalization::kSymmetric);
    benchmark::DoNotOptimize(a.data.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_AdjacencyBuild)->Arg(256)->Arg(512)->Arg(1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
