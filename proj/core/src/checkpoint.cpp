#include "mgahhn/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include "mgahhn/error.hpp"

namespace mgahhn {

namespace {

constexpr char kMagic[4] = {'M', 'G', 'H', 'H'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::string& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) fail(Errc::IoError, "truncated checkpoint: " + path);
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<const Parameter*>& params) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::IoError, "cannot open for writing: " + path);
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint64_t>(out, params.size());
  for (const Parameter* p : params) {
    put<std::uint64_t>(out, p->name.size());
    out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    put<std::int32_t>(out, p->value->rows);
    put<std::int32_t>(out, p->value->cols);
    out.write(reinterpret_cast<const char*>(p->value->data.data()),
              static_cast<std::streamsize>(p->value->data.size() * sizeof(double)));
  }
  if (!out) fail(Errc::IoError, "write failed: " + path);
}

std::vector<CheckpointEntry> read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    fail(Errc::IoError, "not a checkpoint file: " + path);
  auto version = get<std::uint32_t>(in, path);
  if (version != kVersion)
    fail(Errc::IoError, "unsupported checkpoint version " + std::to_string(version));
  auto count = get<std::uint64_t>(in, path);

  std::vector<CheckpointEntry> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto name_len = get<std::uint64_t>(in, path);
    std::string name(name_len, '\0');
    in.read(name.data(), static_cast<std::streamsize>(name_len));
    if (!in) fail(Errc::IoError, "truncated checkpoint: " + path);
    auto rows = get<std::int32_t>(in, path);
    auto cols = get<std::int32_t>(in, path);
    if (rows < 0 || cols < 0)
      fail(Errc::IoError, "corrupt shape in checkpoint: " + path);
    Matrix m(rows, cols, 0.0);
    in.read(reinterpret_cast<char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size() * sizeof(double)));
    if (!in) fail(Errc::IoError, "truncated checkpoint: " + path);
    entries.push_back(CheckpointEntry{std::move(name), std::move(m)});
  }
  return entries;
}

void load_checkpoint(const std::string& path, std::vector<Parameter*>& params) {
  auto entries = read_checkpoint(path);
  std::unordered_map<std::string, const CheckpointEntry*> by_name;
  for (const auto& e : entries) by_name[e.name] = &e;
  for (Parameter* p : params) {
    auto it = by_name.find(p->name);
    if (it == by_name.end())
      fail(Errc::IoError, "checkpoint lacks parameter '" + p->name + "'");
    const Matrix& m = it->second->value;
    if (m.rows != p->value->rows || m.cols != p->value->cols)
      fail(Errc::ShapeMismatch,
           "checkpoint shape for '" + p->name + "' is " + std::to_string(m.rows) +
               "x" + std::to_string(m.cols) + ", expected " +
               std::to_string(p->value->rows) + "x" +
               std::to_string(p->value->cols));
    p->value->data = m.data;
  }
}

}  // namespace mgahhn
