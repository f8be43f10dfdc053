#include "mgahhn/het_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "mgahhn/error.hpp"
#include "mgahhn/log.hpp"

namespace mgahhn {

namespace {

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Splits file content into lines; strips one trailing '\r'. Keeps empty
// lines out (blank lines are tolerated, not errors).
struct Line {
  int number;  // 1-based
  std::string_view text;
};

std::vector<Line> split_lines(const std::string& content) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= content.size()) {
    size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    ++number;
    std::string_view text(content.data() + pos, end - pos);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (!text.empty()) lines.push_back({number, text});
    if (end == content.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (true) {
    size_t end = text.find(sep, pos);
    if (end == std::string::npos) {
      fields.push_back(text.substr(pos));
      break;
    }
    fields.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return fields;
}

[[noreturn]] void malformed(const std::filesystem::path& file, int row, int col,
                            const std::string& what) {
  fail(Errc::MalformedLine,
       file.filename().string() + ":" + std::to_string(row) + ":" +
           std::to_string(col) + ": " + what);
}

double parse_double(std::string_view field, const std::filesystem::path& file,
                    int row, int col) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    malformed(file, row, col, "expected a decimal number, got '" + std::string(field) + "'");
  return value;
}

int parse_int(std::string_view field, const std::filesystem::path& file,
              int row, int col) {
  int value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    malformed(file, row, col, "expected an integer, got '" + std::string(field) + "'");
  return value;
}

}  // namespace

int TypeSchema::node_type_id(const std::string& name) const {
  for (size_t i = 0; i < node_types.size(); ++i)
    if (node_types[i] == name) return static_cast<int>(i);
  return -1;
}

int TypeSchema::edge_type_id(const std::string& name) const {
  for (size_t i = 0; i < edge_types.size(); ++i)
    if (edge_types[i].name == name) return static_cast<int>(i);
  return -1;
}

void TypeSchema::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& name : node_types) {
    if (name.empty()) fail(Errc::ConfigInvalid, "empty node type name");
    if (!seen.insert(name).second)
      fail(Errc::ConfigInvalid, "duplicate node type name '" + name + "'");
  }
  std::unordered_set<std::string> edge_seen;
  for (const auto& et : edge_types) {
    if (et.name.empty()) fail(Errc::ConfigInvalid, "empty edge type name");
    if (!edge_seen.insert(et.name).second)
      fail(Errc::ConfigInvalid, "duplicate edge type name '" + et.name + "'");
    if (node_type_id(et.src) < 0)
      fail(Errc::UnknownType, "edge type '" + et.name + "' references undeclared node type '" + et.src + "'");
    if (node_type_id(et.dst) < 0)
      fail(Errc::UnknownType, "edge type '" + et.name + "' references undeclared node type '" + et.dst + "'");
  }
  if (!target_type.empty() && node_type_id(target_type) < 0)
    fail(Errc::UnknownType, "target type '" + target_type + "' is not a declared node type");
}

TypeSchema TypeSchema::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigInvalid, std::string("schema JSON: ") + e.what());
  }
  TypeSchema schema;
  try {
    for (const auto& name : doc.at("node_types"))
      schema.node_types.push_back(name.get<std::string>());
    for (const auto& et : doc.at("edge_types")) {
      schema.edge_types.push_back({et.at("name").get<std::string>(),
                                   et.at("src").get<std::string>(),
                                   et.at("dst").get<std::string>()});
    }
    if (doc.contains("target_type"))
      schema.target_type = doc.at("target_type").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ConfigInvalid, std::string("schema JSON: ") + e.what());
  }
  schema.validate();
  return schema;
}

TypeSchema TypeSchema::from_json_file(const std::filesystem::path& file) {
  return from_json_text(read_file(file));
}

std::string TypeSchema::to_json_text() const {
  nlohmann::json doc;
  doc["node_types"] = node_types;
  doc["edge_types"] = nlohmann::json::array();
  for (const auto& et : edge_types)
    doc["edge_types"].push_back(
        {{"name", et.name}, {"src", et.src}, {"dst", et.dst}});
  doc["target_type"] = target_type;
  return doc.dump(2) + "\n";
}

void TypeSchema::to_json_file(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + file.string());
  out << to_json_text();
}

const std::vector<int>& HeteroGraph::neighbors(int node, int edge_type) const {
  if (node < 0 || node >= num_nodes())
    fail(Errc::UnknownNode, "node id " + std::to_string(node) + " out of range");
  if (edge_type < 0 || edge_type >= static_cast<int>(schema.edge_types.size()))
    fail(Errc::UnknownEdgeType, "edge type id " + std::to_string(edge_type) + " out of range");
  return adjacency_[node][edge_type];
}

void HeteroGraph::finalize() {
  const int n = num_nodes();
  const int num_edge_types = static_cast<int>(schema.edge_types.size());
  adjacency_.assign(n, std::vector<std::vector<int>>(num_edge_types));
  for (const Edge& e : edges) {
    adjacency_[e.src][e.type].push_back(e.dst);
    adjacency_[e.dst][e.type].push_back(e.src);
  }
  for (auto& per_node : adjacency_) {
    for (auto& list : per_node) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }
}

void HeteroGraph::validate() const {
  schema.validate();
  const int n = num_nodes();
  for (int v = 0; v < n; ++v) {
    if (node_type[v] < 0 || node_type[v] >= static_cast<int>(schema.node_types.size()))
      fail(Errc::UnknownType, "node " + std::to_string(v) + " has undeclared type");
  }
  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      fail(Errc::DanglingEdge, "edge endpoint out of range");
    if (e.type < 0 || e.type >= static_cast<int>(schema.edge_types.size()))
      fail(Errc::UnknownType, "edge with undeclared type id " + std::to_string(e.type));
    const EdgeTypeDef& def = schema.edge_types[e.type];
    if (schema.node_types[node_type[e.src]] != def.src ||
        schema.node_types[node_type[e.dst]] != def.dst)
      fail(Errc::UnknownType,
           "edge type '" + def.name + "' expects " + def.src + "->" + def.dst +
               " but connects " + schema.node_types[node_type[e.src]] + "->" +
               schema.node_types[node_type[e.dst]]);
  }
  if (features.rows > 0 && features.rows != num_targets())
    fail(Errc::FeatureDimMismatch,
         "feature rows (" + std::to_string(features.rows) + ") != target nodes (" +
             std::to_string(num_targets()) + ")");
  for (int label : labels) {
    if (label < -1 || label >= num_classes)
      fail(Errc::MalformedLine, "label out of range [0, " + std::to_string(num_classes) + ")");
  }
}

HeteroGraph load_graph(const std::filesystem::path& node_file,
                       const std::filesystem::path& edge_file,
                       const std::filesystem::path& feature_file,
                       const std::filesystem::path& label_file,
                       const TypeSchema& schema,
                       const std::string& target_type) {
  schema.validate();

  HeteroGraph g;
  g.schema = schema;
  g.target_type = schema.node_type_id(target_type);
  if (g.target_type < 0)
    fail(Errc::UnknownType, "target type '" + target_type + "' is not declared in the schema");
  g.nodes_of_type.resize(schema.node_types.size());

  // nodes: node_id <TAB> type_name
  std::unordered_map<std::string, int> id_to_global;
  {
    const std::string content = read_file(node_file);
    for (const Line& line : split_lines(content)) {
      auto fields = split(line.text, '\t');
      if (fields.size() != 2)
        malformed(node_file, line.number, static_cast<int>(fields.size()),
                  "expected 'node_id<TAB>type_name'");
      std::string id(fields[0]);
      std::string type_name(fields[1]);
      if (id.empty()) malformed(node_file, line.number, 1, "empty node id");
      const int type = schema.node_type_id(type_name);
      if (type < 0)
        fail(Errc::UnknownType, node_file.filename().string() + ":" +
                                    std::to_string(line.number) +
                                    ": undeclared node type '" + type_name + "'");
      if (id_to_global.count(id))
        malformed(node_file, line.number, 1, "duplicate node id '" + id + "'");
      const int global = g.num_nodes();
      id_to_global.emplace(id, global);
      g.node_type.push_back(type);
      g.type_index.push_back(static_cast<int>(g.nodes_of_type[type].size()));
      g.nodes_of_type[type].push_back(global);
      g.original_ids.push_back(std::move(id));
    }
  }

  // edges: src_id <TAB> dst_id <TAB> edge_type_name
  {
    const std::string content = read_file(edge_file);
    for (const Line& line : split_lines(content)) {
      auto fields = split(line.text, '\t');
      if (fields.size() != 3)
        malformed(edge_file, line.number, static_cast<int>(fields.size()),
                  "expected 'src_id<TAB>dst_id<TAB>edge_type_name'");
      const std::string src(fields[0]);
      const std::string dst(fields[1]);
      const std::string type_name(fields[2]);
      const int type = schema.edge_type_id(type_name);
      if (type < 0)
        fail(Errc::UnknownType, edge_file.filename().string() + ":" +
                                    std::to_string(line.number) +
                                    ": undeclared edge type '" + type_name + "'");
      auto src_it = id_to_global.find(src);
      if (src_it == id_to_global.end())
        fail(Errc::DanglingEdge, edge_file.filename().string() + ":" +
                                     std::to_string(line.number) +
                                     ": edge references unknown node '" + src + "'");
      auto dst_it = id_to_global.find(dst);
      if (dst_it == id_to_global.end())
        fail(Errc::DanglingEdge, edge_file.filename().string() + ":" +
                                     std::to_string(line.number) +
                                     ": edge references unknown node '" + dst + "'");
      const EdgeTypeDef& def = schema.edge_types[type];
      const std::string& src_type = schema.node_types[g.node_type[src_it->second]];
      const std::string& dst_type = schema.node_types[g.node_type[dst_it->second]];
      if (src_type != def.src || dst_type != def.dst)
        fail(Errc::UnknownType, edge_file.filename().string() + ":" +
                                     std::to_string(line.number) + ": edge type '" +
                                     def.name + "' expects " + def.src + "->" + def.dst +
                                     " but got " + src_type + "->" + dst_type);
      g.edges.push_back({src_it->second, dst_it->second, type});
    }
  }

  // features: CSV, one row per target node in node-file order
  if (!feature_file.empty()) {
    const std::string content = read_file(feature_file);
    const auto lines = split_lines(content);
    if (static_cast<int>(lines.size()) != g.num_targets())
      fail(Errc::FeatureDimMismatch,
           feature_file.filename().string() + ": " + std::to_string(lines.size()) +
               " rows for " + std::to_string(g.num_targets()) + " target nodes");
    int dim = -1;
    for (size_t r = 0; r < lines.size(); ++r) {
      auto fields = split(lines[r].text, ',');
      if (dim < 0) {
        dim = static_cast<int>(fields.size());
        g.features = Matrix(g.num_targets(), dim);
      } else if (static_cast<int>(fields.size()) != dim) {
        fail(Errc::FeatureDimMismatch,
             feature_file.filename().string() + ":" + std::to_string(lines[r].number) +
                 ": expected " + std::to_string(dim) + " columns, got " +
                 std::to_string(fields.size()));
      }
      for (int c = 0; c < dim; ++c)
        g.features.at(static_cast<int>(r), c) =
            parse_double(fields[c], feature_file, lines[r].number, c + 1);
    }
  }

  // labels: node_id <TAB> class_index
  if (!label_file.empty()) {
    g.labels.assign(g.num_targets(), -1);
    const std::string content = read_file(label_file);
    int max_class = -1;
    for (const Line& line : split_lines(content)) {
      auto fields = split(line.text, '\t');
      if (fields.size() != 2)
        malformed(label_file, line.number, static_cast<int>(fields.size()),
                  "expected 'node_id<TAB>class_index'");
      auto it = id_to_global.find(std::string(fields[0]));
      if (it == id_to_global.end())
        fail(Errc::UnknownNode, label_file.filename().string() + ":" +
                                    std::to_string(line.number) +
                                    ": label for unknown node '" + std::string(fields[0]) + "'");
      if (g.node_type[it->second] != g.target_type)
        malformed(label_file, line.number, 1,
                  "label for non-target node '" + std::string(fields[0]) + "'");
      const int cls = parse_int(fields[1], label_file, line.number, 2);
      if (cls < 0) malformed(label_file, line.number, 2, "negative class index");
      g.labels[g.type_index[it->second]] = cls;
      max_class = std::max(max_class, cls);
    }
    g.num_classes = max_class + 1;
  }

  g.finalize();
  g.validate();
  log::debug("loaded graph: " + std::to_string(g.num_nodes()) + " nodes, " +
             std::to_string(g.edges.size()) + " edges, " +
             std::to_string(g.num_targets()) + " targets");
  return g;
}

void write_graph(const HeteroGraph& g,
                 const std::filesystem::path& node_file,
                 const std::filesystem::path& edge_file) {
  std::ofstream nodes(node_file, std::ios::binary);
  if (!nodes) fail(Errc::IoError, "cannot write " + node_file.string());
  for (int v = 0; v < g.num_nodes(); ++v)
    nodes << g.original_ids[v] << '\t' << g.schema.node_types[g.node_type[v]] << '\n';

  std::ofstream edges(edge_file, std::ios::binary);
  if (!edges) fail(Errc::IoError, "cannot write " + edge_file.string());
  for (const auto& e : g.edges)
    edges << g.original_ids[e.src] << '\t' << g.original_ids[e.dst] << '\t'
          << g.schema.edge_types[e.type].name << '\n';
}

void write_features(const HeteroGraph& g, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + file.string());
  char buf[40];
  for (int r = 0; r < g.features.rows; ++r) {
    for (int c = 0; c < g.features.cols; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", g.features.at(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

void write_labels(const HeteroGraph& g, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + file.string());
  for (int global : g.nodes_of_type[g.target_type]) {
    int label = g.labels[g.type_index[global]];
    if (label >= 0) out << g.original_ids[global] << '\t' << label << '\n';
  }
}

void write_id_remap(const HeteroGraph& g, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write " + file.string());
  out << "original_id\ttype\tdense_index\n";
  for (int v = 0; v < g.num_nodes(); ++v)
    out << g.original_ids[v] << '\t' << g.schema.node_types[g.node_type[v]] << '\t'
        << g.type_index[v] << '\n';
}

}  // namespace mgahhn
