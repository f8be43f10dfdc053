#include "mgahhn/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mgahhn/checkpoint.hpp"
#include "mgahhn/embedding.hpp"
#include "mgahhn/error.hpp"
#include "mgahhn/grad_check.hpp"
#include "mgahhn/kmeans.hpp"
#include "mgahhn/log.hpp"
#include "mgahhn/metrics.hpp"
#include "mgahhn/rng.hpp"
#include "mgahhn/tensor.hpp"

namespace mgahhn {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> target_original_ids(const HeteroGraph& g) {
  std::vector<std::string> ids;
  ids.reserve(g.num_targets());
  for (int global : g.nodes_of_type[g.target_type])
    ids.push_back(g.original_ids[global]);
  return ids;
}

struct ClusterScores {
  double nmi_score = 0.0;
  double ari_score = 0.0;
};

// k-means over the embeddings of labeled nodes, scored against the labels.
ClusterScores cluster_scores(const Matrix& z, const std::vector<int>& labels,
                             int num_classes, std::uint64_t seed) {
  std::vector<int> rows, truth;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i)
    if (labels[i] >= 0) {
      rows.push_back(i);
      truth.push_back(labels[i]);
    }
  Matrix sub(static_cast<int>(rows.size()), z.cols);
  for (int r = 0; r < sub.rows; ++r)
    for (int c = 0; c < sub.cols; ++c) sub.at(r, c) = z.at(rows[r], c);

  KMeansResult km = kmeans(sub, num_classes, seed);
  ClusterScores s;
  s.nmi_score = nmi(km.assignment, truth);
  s.ari_score = ari(km.assignment, truth);
  return s;
}

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<EpochStats>& history, int num_views) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + path.string());
  out << "epoch,loss,val_f1";
  for (int r = 0; r < num_views; ++r) out << ",beta_" << (r + 1);
  out << '\n';
  for (const EpochStats& e : history) {
    out << e.epoch << ',' << fmt_double(e.train_loss) << ','
        << fmt_double(e.val_macro_f1);
    for (double b : e.beta) out << ',' << fmt_double(b);
    out << '\n';
  }
}

nlohmann::json seed_summary_json(const SeedRunResult& r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  j["epochs_run"] = r.epochs_run;
  j["best_epoch"] = r.best_epoch;
  j["test_macro_f1"] = r.test_macro_f1;
  j["test_micro_f1"] = r.test_micro_f1;
  j["cluster_nmi"] = r.cluster_nmi;
  j["cluster_ari"] = r.cluster_ari;
  j["beta"] = r.beta;
  return j;
}

}  // namespace

PreparedData prepare_data(const RunConfig& cfg, bool require_features) {
  PreparedData data;
  TypeSchema schema = TypeSchema::from_json_file(cfg.data.schema);
  if (schema.target_type.empty())
    fail(Errc::ConfigInvalid, "schema must declare a target_type");
  data.graph = load_graph(cfg.data.nodes, cfg.data.edges, cfg.data.features,
                          cfg.data.labels, schema, schema.target_type);
  if (require_features && data.graph.features.rows == 0)
    fail(Errc::ConfigInvalid,
         "this command needs node features; none were configured");

  for (const std::string& spec : cfg.meta_paths) {
    MetaPath mp = parse_metapath(spec, data.graph.schema);
    data.paths.push_back(check_symmetric(mp, data.graph.target_type, spec));
  }
  data.views = build_views(data.graph, data.paths, cfg.hypergraph);
  data.a_norm.reserve(data.views.size());
  for (const HypergraphView& v : data.views)
    data.a_norm.push_back(v.normalized_adjacency(cfg.normalization));

  data.labels = data.graph.labels;
  if (data.graph.features.rows > 0) data.x = make_tensor(data.graph.features);
  return data;
}

ModelConfig model_config_for(const RunConfig& cfg, const PreparedData& data,
                             std::uint64_t seed) {
  ModelConfig mc;
  mc.d = data.graph.features.cols;
  mc.d_prime = cfg.hidden_dim;
  mc.heads = cfg.heads;
  mc.num_views = static_cast<int>(data.views.size());
  mc.num_classes = data.graph.num_classes;
  mc.attention_mode = cfg.attention_mode;
  mc.fusion_mode = cfg.fusion_mode;
  mc.single_view_index = cfg.single_view_index;
  mc.residual_mode = cfg.residual_mode;
  mc.dropout = cfg.dropout;
  mc.seed = seed;
  return mc;
}

SeedRunResult run_single_seed(const RunConfig& cfg, const PreparedData& data,
                              std::uint64_t seed,
                              const std::filesystem::path& seed_dir) {
  SplitSpec split = cfg.split;
  Splits splits = make_splits(data.labels, split);

  Model model(model_config_for(cfg, data, seed));
  TrainResult tr =
      train(model, data.x, data.a_norm, data.labels, splits, cfg.trainer);

  // Score with the restored best parameters on a clean forward pass.
  Tape tape;
  ForwardResult fwd = model.forward(tape, data.x, data.a_norm, false);
  tape.clear();
  Matrix logits = to_matrix(fwd.logits);
  Matrix z = to_matrix(fwd.z);

  std::vector<int> pred = argmax_rows(logits);
  std::vector<int> test_pred, test_truth;
  for (int i : splits.test) {
    test_pred.push_back(pred[i]);
    test_truth.push_back(data.labels[i]);
  }
  F1Scores f1 = f1_scores(test_pred, test_truth, data.graph.num_classes);
  ClusterScores cs = cluster_scores(z, data.labels, data.graph.num_classes, seed);

  SeedRunResult res;
  res.seed = seed;
  res.epochs_run = tr.epochs_run;
  res.best_epoch = tr.best_epoch;
  res.test_macro_f1 = f1.macro;
  res.test_micro_f1 = f1.micro;
  res.cluster_nmi = cs.nmi_score;
  res.cluster_ari = cs.ari_score;
  res.beta = fwd.beta;

  if (!seed_dir.empty()) {
    std::filesystem::create_directories(seed_dir);
    std::vector<const Parameter*> cparams;
    for (const Parameter* p : static_cast<const Model&>(model).params())
      cparams.push_back(p);
    save_checkpoint(seed_dir / "checkpoint.bin", cparams);
    write_metrics_csv(seed_dir / "metrics.csv", tr.history,
                      static_cast<int>(data.views.size()));
    std::ofstream out(seed_dir / "summary.json", std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot write summary.json");
    out << seed_summary_json(res).dump(2) << '\n';
  }

  log::info("seed " + std::to_string(seed) + ": test macro-F1 " +
            fmt_double(res.test_macro_f1) + ", NMI " +
            fmt_double(res.cluster_nmi) + ", epochs " +
            std::to_string(res.epochs_run));
  return res;
}

MultiSeedResult run_training(const RunConfig& cfg, const PreparedData& data) {
  MultiSeedResult all;
  for (std::uint64_t seed : cfg.seeds) {
    std::filesystem::path dir =
        cfg.out_dir / ("seed_" + std::to_string(seed));
    all.runs.push_back(run_single_seed(cfg, data, seed, dir));
  }
  for (const SeedRunResult& r : all.runs) {
    all.mean_test_macro_f1 += r.test_macro_f1;
    all.mean_test_micro_f1 += r.test_micro_f1;
    all.mean_cluster_nmi += r.cluster_nmi;
    all.mean_cluster_ari += r.cluster_ari;
  }
  const double n = static_cast<double>(all.runs.size());
  all.mean_test_macro_f1 /= n;
  all.mean_test_micro_f1 /= n;
  all.mean_cluster_nmi /= n;
  all.mean_cluster_ari /= n;

  std::filesystem::create_directories(cfg.out_dir);
  nlohmann::json j;
  j["seeds"] = cfg.seeds;
  j["runs"] = nlohmann::json::array();
  for (const SeedRunResult& r : all.runs) j["runs"].push_back(seed_summary_json(r));
  j["mean"] = {{"test_macro_f1", all.mean_test_macro_f1},
               {"test_micro_f1", all.mean_test_micro_f1},
               {"cluster_nmi", all.mean_cluster_nmi},
               {"cluster_ari", all.mean_cluster_ari}};
  std::ofstream out(cfg.out_dir / "summary.json", std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write aggregate summary.json");
  out << j.dump(2) << '\n';
  return all;
}

std::string EvalReport::to_json() const {
  nlohmann::json j;
  j["test_macro_f1"] = test_macro_f1;
  j["test_micro_f1"] = test_micro_f1;
  j["cluster_nmi"] = cluster_nmi;
  j["cluster_ari"] = cluster_ari;
  j["beta"] = beta;
  return j.dump(2);
}

EvalReport evaluate_checkpoint(const RunConfig& cfg, const PreparedData& data,
                               const std::filesystem::path& checkpoint,
                               std::uint64_t seed,
                               const std::filesystem::path& embeddings_csv) {
  Model model(model_config_for(cfg, data, seed));
  std::vector<Parameter*> params = model.params();
  load_checkpoint(checkpoint, params);

  Tape tape;
  ForwardResult fwd = model.forward(tape, data.x, data.a_norm, false);
  tape.clear();
  Matrix logits = to_matrix(fwd.logits);
  Matrix z = to_matrix(fwd.z);

  Splits splits = make_splits(data.labels, cfg.split);
  std::vector<int> pred = argmax_rows(logits);
  std::vector<int> test_pred, test_truth;
  for (int i : splits.test) {
    test_pred.push_back(pred[i]);
    test_truth.push_back(data.labels[i]);
  }
  F1Scores f1 = f1_scores(test_pred, test_truth, data.graph.num_classes);
  ClusterScores cs = cluster_scores(z, data.labels, data.graph.num_classes, seed);

  EvalReport rep;
  rep.test_macro_f1 = f1.macro;
  rep.test_micro_f1 = f1.micro;
  rep.cluster_nmi = cs.nmi_score;
  rep.cluster_ari = cs.ari_score;
  rep.beta = fwd.beta;

  if (!embeddings_csv.empty())
    export_embeddings(z, embeddings_csv, true, target_original_ids(data.graph));
  return rep;
}

void export_checkpoint_embeddings(const RunConfig& cfg, const PreparedData& data,
                                  const std::filesystem::path& checkpoint,
                                  const std::filesystem::path& out_csv,
                                  bool project2d) {
  Model model(model_config_for(cfg, data, 0));
  std::vector<Parameter*> params = model.params();
  load_checkpoint(checkpoint, params);
  Tape tape;
  ForwardResult fwd = model.forward(tape, data.x, data.a_norm, false);
  tape.clear();
  export_embeddings(to_matrix(fwd.z), out_csv, project2d,
                    target_original_ids(data.graph));
}

void write_hypergraph_artifacts(const PreparedData& data,
                                const std::filesystem::path& out_dir,
                                Normalization mode, bool with_adjacency) {
  std::filesystem::create_directories(out_dir);
  for (const HypergraphView& view : data.views) {
    std::string stem = "view_" + view.name;
    {
      std::ofstream out(out_dir / (stem + ".incidence.tsv"), std::ios::binary);
      if (!out) fail(Errc::IoError, "cannot write incidence file");
      out << view.num_nodes << '\t' << view.num_hyperedges << '\n';
      for (int e = 0; e < view.num_hyperedges; ++e)
        for (int v : view.hyperedges[e]) out << v << '\t' << e << '\n';
    }
    {
      std::ofstream out(out_dir / (stem + ".centers.tsv"), std::ios::binary);
      if (!out) fail(Errc::IoError, "cannot write centers file");
      for (int e = 0; e < view.num_hyperedges; ++e)
        out << e << '\t' << data.graph.original_ids[view.hyperedge_center[e]]
            << '\n';
    }
    if (with_adjacency) {
      Matrix a = view.normalized_adjacency(mode);
      std::ofstream out(out_dir / (stem + ".a_norm.csv"), std::ios::binary);
      if (!out) fail(Errc::IoError, "cannot write adjacency file");
      for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j)
          out << (j ? "," : "") << fmt_double(a.at(i, j));
        out << '\n';
      }
    }
  }
}

double full_model_grad_check(std::uint64_t seed) {
  const int n = 6, d = 4;
  Rng rng(seed);

  auto make_view = [&](std::vector<std::vector<int>> edges, const char* name) {
    HypergraphView v;
    v.name = name;
    v.num_nodes = n;
    v.hyperedges = std::move(edges);
    v.num_hyperedges = static_cast<int>(v.hyperedges.size());
    v.hyperedge_center.assign(v.num_hyperedges, 0);
    v.edge_weights.assign(v.num_hyperedges, 1.0);
    v.edge_degrees.resize(v.num_hyperedges);
    v.node_degrees.assign(n, 0.0);
    for (int e = 0; e < v.num_hyperedges; ++e) {
      v.edge_degrees[e] = static_cast<double>(v.hyperedges[e].size());
      for (int node : v.hyperedges[e]) v.node_degrees[node] += 1.0;
    }
    return v;
  };

  HypergraphView v1 = make_view({{0, 1, 2}, {2, 3}, {3, 4, 5}, {5, 0}}, "t1");
  HypergraphView v2 = make_view({{0, 3}, {1, 4}, {2, 5}, {0, 1, 4}}, "t2");
  std::vector<Matrix> a_norm = {v1.normalized_adjacency(Normalization::kSymmetric),
                                v2.normalized_adjacency(Normalization::kSymmetric)};

  Tensor x = make_tensor(n, d);
  for (double& v : x->data) v = rng.uniform(-1.0, 1.0);
  std::vector<int> labels = {0, 1, 0, 1, 0, 1};

  ModelConfig mc;
  mc.d = d;
  mc.d_prime = 4;
  mc.heads = 2;
  mc.num_views = 2;
  mc.num_classes = 2;
  mc.seed = seed;
  Model model(mc);

  std::vector<Tensor> leaves;
  for (Parameter* p : model.params()) leaves.push_back(p->value);

  auto f = [&](Tape& tape) {
    ForwardResult fwd = model.forward(tape, x, a_norm, false);
    return cross_entropy_logits(tape, fwd.logits, labels);
  };
  return grad_check(f, leaves, 1e-6);
}

std::vector<BenchPoint> bench_attention_scaling(const std::vector<int>& sizes,
                                                std::uint64_t seed, int reps) {
  const int d = 32;
  std::vector<BenchPoint> points;
  for (int n : sizes) {
    // Banded overlapping hyperedges give a realistic non-trivial adjacency.
    HypergraphView view;
    view.name = "bench";
    view.num_nodes = n;
    for (int i = 0; i < n; ++i) {
      std::vector<int> edge;
      for (int k = 0; k < 8; ++k) edge.push_back((i + k) % n);
      std::sort(edge.begin(), edge.end());
      view.hyperedges.push_back(std::move(edge));
      view.hyperedge_center.push_back(i);
    }
    view.num_hyperedges = n;
    view.edge_weights.assign(n, 1.0);
    view.edge_degrees.assign(n, 8.0);
    view.node_degrees.assign(n, 8.0);
    Matrix a = view.normalized_adjacency(Normalization::kSymmetric);

    Rng rng(seed);
    Tensor x = make_tensor(n, d);
    for (double& v : x->data) v = rng.uniform(-1.0, 1.0);

    ModelConfig mc;
    mc.d = d;
    mc.d_prime = 64;
    mc.heads = 4;
    mc.num_views = 1;
    mc.num_classes = 2;
    mc.seed = seed;
    Model model(mc);

    std::vector<double> times;
    for (int r = 0; r < reps; ++r) {
      auto start = std::chrono::steady_clock::now();
      Tape tape;
      ForwardResult fwd = model.forward(tape, x, {a}, false);
      (void)fwd;
      tape.clear();
      auto stop = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    points.push_back(BenchPoint{n, times[times.size() / 2]});
    log::info("bench n=" + std::to_string(n) + " median " +
              fmt_double(times[times.size() / 2]) + " s");
  }
  return points;
}

}  // namespace mgahhn
