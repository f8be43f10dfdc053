#include "mgahhn/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mgahhn/error.hpp"

namespace mgahhn {

namespace {

using nlohmann::json;

json parse_doc(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ConfigInvalid, std::string(what) + ": " + e.what());
  }
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok)
      fail(Errc::ConfigInvalid, "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(Errc::ConfigInvalid, "bad value for '" + std::string(key) + "' in " + where);
  }
}

std::string required_string(const json& obj, const char* key,
                            const std::string& where) {
  if (!obj.contains(key))
    fail(Errc::ConfigInvalid, "missing required '" + std::string(key) + "' in " + where);
  try {
    return obj.at(key).get<std::string>();
  } catch (const json::exception&) {
    fail(Errc::ConfigInvalid, "bad value for '" + std::string(key) + "' in " + where);
  }
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open: " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  if (path.is_absolute() || base.empty()) return path;
  return base / path;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text,
                                    const std::filesystem::path& base_dir) {
  json doc = parse_doc(text, "run config");
  if (!doc.is_object()) fail(Errc::ConfigInvalid, "run config must be a JSON object");
  reject_unknown(doc, "run config",
                 {"data", "meta_paths", "hypergraph", "model", "split",
                  "trainer", "out_dir"});

  RunConfig cfg;

  if (!doc.contains("data") || !doc["data"].is_object())
    fail(Errc::ConfigInvalid, "run config needs a 'data' object");
  const json& data = doc["data"];
  reject_unknown(data, "data", {"schema", "nodes", "edges", "features", "labels"});
  cfg.data.schema = resolve(base_dir, required_string(data, "schema", "data"));
  cfg.data.nodes = resolve(base_dir, required_string(data, "nodes", "data"));
  cfg.data.edges = resolve(base_dir, required_string(data, "edges", "data"));
  cfg.data.features = resolve(base_dir, field<std::string>(data, "features", "data", ""));
  cfg.data.labels = resolve(base_dir, field<std::string>(data, "labels", "data", ""));

  if (!doc.contains("meta_paths") || !doc["meta_paths"].is_array() ||
      doc["meta_paths"].empty())
    fail(Errc::ConfigInvalid, "run config needs a non-empty 'meta_paths' array");
  for (const auto& mp : doc["meta_paths"]) {
    if (!mp.is_string())
      fail(Errc::ConfigInvalid, "meta_paths entries must be strings");
    cfg.meta_paths.push_back(mp.get<std::string>());
  }

  if (doc.contains("hypergraph")) {
    const json& hg = doc["hypergraph"];
    reject_unknown(hg, "hypergraph",
                   {"min_hyperedge_size", "hyperedge_weight", "normalization"});
    cfg.hypergraph.min_hyperedge_size =
        field<int>(hg, "min_hyperedge_size", "hypergraph", 1);
    cfg.hypergraph.hyperedge_weight =
        field<double>(hg, "hyperedge_weight", "hypergraph", 1.0);
    cfg.normalization =
        parse_normalization(field<std::string>(hg, "normalization", "hypergraph",
                                               "symmetric"));
    if (cfg.hypergraph.min_hyperedge_size < 0)
      fail(Errc::ConfigInvalid, "min_hyperedge_size must be >= 0");
    if (cfg.hypergraph.hyperedge_weight <= 0.0)
      fail(Errc::ConfigInvalid, "hyperedge_weight must be positive");
  }

  if (doc.contains("model")) {
    const json& m = doc["model"];
    reject_unknown(m, "model",
                   {"hidden_dim", "heads", "attention_mode", "fusion_mode",
                    "single_view_index", "residual_mode", "dropout"});
    cfg.hidden_dim = field<int>(m, "hidden_dim", "model", cfg.hidden_dim);
    cfg.heads = field<int>(m, "heads", "model", cfg.heads);
    cfg.attention_mode = parse_attention_mode(
        field<std::string>(m, "attention_mode", "model", "hadamard"));
    cfg.fusion_mode = parse_fusion_mode(
        field<std::string>(m, "fusion_mode", "model", "attention"));
    cfg.single_view_index = field<int>(m, "single_view_index", "model", 0);
    cfg.residual_mode = parse_residual_mode(
        field<std::string>(m, "residual_mode", "model", "project_x"));
    cfg.dropout = field<double>(m, "dropout", "model", 0.0);
    if (cfg.hidden_dim < 1) fail(Errc::ConfigInvalid, "hidden_dim must be positive");
    if (cfg.heads < 1) fail(Errc::ConfigInvalid, "heads must be positive");
    if (cfg.hidden_dim % cfg.heads != 0)
      fail(Errc::ConfigInvalid, "hidden_dim must be divisible by heads");
    if (cfg.dropout < 0.0 || cfg.dropout >= 1.0)
      fail(Errc::ConfigInvalid, "dropout must lie in [0, 1)");
  }

  if (doc.contains("split")) {
    const json& s = doc["split"];
    reject_unknown(s, "split", {"train_ratio", "seed"});
    cfg.split.train_ratio = field<double>(s, "train_ratio", "split", 0.8);
    cfg.split.seed = field<std::uint64_t>(s, "seed", "split", 0);
    if (!(cfg.split.train_ratio > 0.0 && cfg.split.train_ratio < 1.0))
      fail(Errc::ConfigInvalid, "train_ratio must lie in (0, 1)");
  }

  if (doc.contains("trainer")) {
    const json& t = doc["trainer"];
    reject_unknown(t, "trainer", {"max_epochs", "lr", "patience", "seeds"});
    cfg.trainer.max_epochs = field<int>(t, "max_epochs", "trainer", 100);
    cfg.trainer.lr = field<double>(t, "lr", "trainer", 0.001);
    cfg.trainer.patience = field<int>(t, "patience", "trainer", 10);
    if (cfg.trainer.max_epochs < 1)
      fail(Errc::ConfigInvalid, "max_epochs must be positive");
    if (cfg.trainer.lr < 0.0) fail(Errc::ConfigInvalid, "lr must be non-negative");
    if (cfg.trainer.patience < 1)
      fail(Errc::ConfigInvalid, "patience must be positive");
    if (t.contains("seeds")) {
      if (!t["seeds"].is_array() || t["seeds"].empty())
        fail(Errc::ConfigInvalid, "trainer.seeds must be a non-empty array");
      cfg.seeds.clear();
      for (const auto& s : t["seeds"]) {
        if (!s.is_number_unsigned() && !s.is_number_integer())
          fail(Errc::ConfigInvalid, "trainer.seeds entries must be integers");
        cfg.seeds.push_back(s.get<std::uint64_t>());
      }
    }
  }

  cfg.out_dir = resolve(base_dir, field<std::string>(doc, "out_dir", "run config",
                                                     cfg.out_dir.string()));
  return cfg;
}

RunConfig RunConfig::from_json_file(const std::filesystem::path& file) {
  return from_json_text(read_file(file), file.parent_path());
}

SynthConfig parse_synth_config_text(const std::string& text) {
  json doc = parse_doc(text, "synth config");
  if (!doc.is_object())
    fail(Errc::ConfigInvalid, "synth config must be a JSON object");
  reject_unknown(doc, "synth config",
                 {"num_classes", "authors_per_class", "papers", "venues", "terms",
                  "p_in", "p_out", "feature_dim", "feature_noise", "seed"});
  SynthConfig cfg;
  cfg.num_classes = field<int>(doc, "num_classes", "synth config", cfg.num_classes);
  cfg.authors_per_class =
      field<int>(doc, "authors_per_class", "synth config", cfg.authors_per_class);
  cfg.papers = field<int>(doc, "papers", "synth config", cfg.papers);
  cfg.venues = field<int>(doc, "venues", "synth config", cfg.venues);
  cfg.terms = field<int>(doc, "terms", "synth config", cfg.terms);
  cfg.p_in = field<double>(doc, "p_in", "synth config", cfg.p_in);
  cfg.p_out = field<double>(doc, "p_out", "synth config", cfg.p_out);
  cfg.feature_dim = field<int>(doc, "feature_dim", "synth config", cfg.feature_dim);
  cfg.feature_noise =
      field<double>(doc, "feature_noise", "synth config", cfg.feature_noise);
  cfg.seed = field<std::uint64_t>(doc, "seed", "synth config", cfg.seed);
  cfg.validate();
  return cfg;
}

SynthConfig parse_synth_config_file(const std::filesystem::path& file) {
  return parse_synth_config_text(read_file(file));
}

}  // namespace mgahhn
