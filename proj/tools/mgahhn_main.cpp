// mgahhn: meta-path hypergraph attention networks from the command line.
//
// Subcommands: synth | build-hypergraph | train | evaluate | embed |
// grad-check | bench-scaling. Every subcommand is deterministic under a
// fixed --seed. MGAHHN_LOG=error|info|debug controls stderr verbosity.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "mgahhn/error.hpp"
#include "mgahhn/pipeline.hpp"
#include "mgahhn/run_config.hpp"
#include "mgahhn/synth.hpp"

namespace fs = std::filesystem;
using namespace mgahhn;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void set_threads(int threads) {
#ifdef _OPENMP
  omp_set_num_threads(threads > 0 ? threads : 1);
#else
  (void)threads;
#endif
}

int run_synth(const std::string& config_path, const std::string& out_dir,
              bool seed_given, std::uint64_t seed) {
  SynthConfig cfg;
  if (!config_path.empty()) cfg = parse_synth_config_file(config_path);
  if (seed_given) cfg.seed = seed;

  HeteroGraph g = generate_synthetic(cfg);
  fs::path out(out_dir);
  fs::create_directories(out);
  g.schema.to_json_file(out / "schema.json");
  write_graph(g, out / "nodes.tsv", out / "edges.tsv");
  write_features(g, out / "features.csv");
  write_labels(g, out / "labels.tsv");
  std::cout << "wrote schema.json nodes.tsv edges.tsv features.csv labels.tsv to "
            << out.string() << "\n";
  return 0;
}

int run_build_hypergraph(const std::string& config_path, const std::string& out_dir,
                         bool with_adjacency) {
  RunConfig cfg = RunConfig::from_json_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  PreparedData data = prepare_data(cfg, /*require_features=*/false);
  write_hypergraph_artifacts(data, cfg.out_dir, cfg.normalization, with_adjacency);
  for (const HypergraphView& v : data.views)
    std::cout << "view " << v.name << ": " << v.num_nodes << " nodes, "
              << v.num_hyperedges << " hyperedges\n";
  std::cout << "artifacts in " << cfg.out_dir.string() << "\n";
  return 0;
}

int run_train(const std::string& config_path, const std::string& out_dir,
              bool seed_given, std::uint64_t seed) {
  RunConfig cfg = RunConfig::from_json_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed_given) cfg.seeds = {seed};

  PreparedData data = prepare_data(cfg);
  MultiSeedResult res = run_training(cfg, data);
  std::cout << "seeds: " << res.runs.size() << "\n";
  for (const SeedRunResult& r : res.runs)
    std::cout << "  seed " << r.seed << ": test macro-F1 " << fmt(r.test_macro_f1)
              << ", micro-F1 " << fmt(r.test_micro_f1) << ", NMI "
              << fmt(r.cluster_nmi) << ", epochs " << r.epochs_run << "\n";
  std::cout << "mean test macro-F1 " << fmt(res.mean_test_macro_f1)
            << ", micro-F1 " << fmt(res.mean_test_micro_f1) << ", NMI "
            << fmt(res.mean_cluster_nmi) << "\n";
  std::cout << "summary: " << (cfg.out_dir / "summary.json").string() << "\n";
  return 0;
}

int run_evaluate(const std::string& config_path, const std::string& checkpoint,
                 const std::string& out_dir, std::uint64_t seed) {
  RunConfig cfg = RunConfig::from_json_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  PreparedData data = prepare_data(cfg);
  fs::create_directories(cfg.out_dir);
  fs::path emb = cfg.out_dir / "embeddings.csv";
  EvalReport rep = evaluate_checkpoint(cfg, data, checkpoint, seed, emb);
  std::cout << rep.to_json() << "\n";
  std::cout << "embeddings: " << emb.string() << "\n";
  return 0;
}

int run_embed(const std::string& config_path, const std::string& checkpoint,
              const std::string& out_dir, bool no_pca) {
  RunConfig cfg = RunConfig::from_json_file(config_path);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  PreparedData data = prepare_data(cfg);
  fs::create_directories(cfg.out_dir);
  fs::path emb = cfg.out_dir / "embeddings.csv";
  export_checkpoint_embeddings(cfg, data, checkpoint, emb, !no_pca);
  std::cout << "embeddings: " << emb.string() << "\n";
  return 0;
}

int run_grad_check_cmd(std::uint64_t seed) {
  double err = full_model_grad_check(seed);
  std::cout << "max_rel_error " << fmt(err) << "\n";
  return err <= 1e-4 ? 0 : 1;
}

int run_bench(std::vector<int> sizes, std::uint64_t seed, int reps) {
  if (sizes.empty()) sizes = {256, 512, 1024};
  std::vector<BenchPoint> pts = bench_attention_scaling(sizes, seed, reps);
  for (const BenchPoint& p : pts)
    std::cout << "n=" << p.n << " forward_seconds=" << fmt(p.seconds) << "\n";
  for (size_t i = 1; i < pts.size(); ++i) {
    double ratio = pts[i].seconds / pts[i - 1].seconds;
    std::cout << "ratio t(" << pts[i].n << ")/t(" << pts[i - 1].n << ") = "
              << fmt(ratio) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meta-path hypergraph attention networks"};
  app.require_subcommand(1);

  std::string config_path, out_dir, checkpoint;
  std::uint64_t seed = 1;
  int threads = 1, reps = 5;
  bool adjacency = false, no_pca = false;
  std::vector<int> sizes;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* c = cmd->add_option("--config", config_path, "config JSON path");
    if (needs_config) c->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--threads", threads, "worker threads (default 1)");
  };

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  add_common(synth, false);
  synth->get_option("--out")->required();

  CLI::App* build = app.add_subcommand(
      "build-hypergraph", "construct hypergraph views and write artifacts");
  add_common(build, true);
  build->add_flag("--adjacency", adjacency,
                  "also write normalized adjacencies as CSV");

  CLI::App* train_cmd =
      app.add_subcommand("train", "train over the configured seeds");
  add_common(train_cmd, true);

  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "score a checkpoint (classification, clustering)");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--checkpoint", checkpoint, "checkpoint file")->required();

  CLI::App* embed = app.add_subcommand("embed", "export node embeddings");
  add_common(embed, true);
  embed->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  embed->add_flag("--no-pca", no_pca, "skip the 2-D projection columns");

  CLI::App* gc = app.add_subcommand(
      "grad-check", "finite-difference check of the full model");
  add_common(gc, false);

  CLI::App* bench = app.add_subcommand(
      "bench-scaling", "time the attention forward pass across node counts");
  add_common(bench, false);
  bench->add_option("--sizes", sizes, "node counts to time");
  bench->add_option("--reps", reps, "repetitions per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  set_threads(threads);
  bool seed_given = app.count_all() &&
                    app.get_subcommands()[0]->count("--seed") > 0;

  try {
    CLI::App* cmd = app.get_subcommands()[0];
    if (cmd == synth) return run_synth(config_path, out_dir, seed_given, seed);
    if (cmd == build) return run_build_hypergraph(config_path, out_dir, adjacency);
    if (cmd == train_cmd) return run_train(config_path, out_dir, seed_given, seed);
    if (cmd == eval_cmd) return run_evaluate(config_path, checkpoint, out_dir, seed);
    if (cmd == embed) return run_embed(config_path, checkpoint, out_dir, no_pca);
    if (cmd == gc) return run_grad_check_cmd(seed);
    if (cmd == bench) return run_bench(sizes, seed, reps);
  } catch (const Error& e) {
    std::cerr << "error: " << e.code_name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Unexpected: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
