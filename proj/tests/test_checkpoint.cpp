#include <doctest.h>

#include <fstream>

#include "mgahhn/checkpoint.hpp"
#include "mgahhn/error.hpp"
#include "mgahhn/rng.hpp"
#include "test_util.hpp"

using namespace mgahhn;
using testutil::TempDir;

namespace {

std::vector<Parameter> sample_params(uint64_t seed) {
  Rng rng(seed);
  std::vector<Parameter> ps;
  ps.push_back(make_parameter("layer.w", 3, 4));
  ps.push_back(make_parameter("layer.b", 1, 4));
  ps.push_back(make_parameter("q", 5, 1));
  for (auto& p : ps)
    for (auto& v : p.value->data) v = rng.uniform(-10.0, 10.0);
  // Exercise values that lose precision in decimal round trips.
  ps[0].value->data[0] = 0.1 + 0.2;
  ps[0].value->data[1] = 1.0 / 3.0;
  ps[0].value->data[2] = -0.0;
  return ps;
}

std::vector<const Parameter*> const_view(const std::vector<Parameter>& ps) {
  std::vector<const Parameter*> out;
  for (const auto& p : ps) out.push_back(&p);
  return out;
}

}  // namespace

TEST_CASE("checkpoints round-trip bit-exactly") {
  TempDir dir("ckpt");
  auto params = sample_params(1);
  save_checkpoint(dir.file("m.bin").string(), const_view(params));

  auto entries = read_checkpoint(dir.file("m.bin").string());
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].name == "layer.w");
  CHECK(entries[1].name == "layer.b");
  CHECK(entries[2].name == "q");
  for (size_t i = 0; i < entries.size(); ++i) {
    REQUIRE(entries[i].value.rows == params[i].value->rows);
    REQUIRE(entries[i].value.cols == params[i].value->cols);
    CHECK(entries[i].value.data == params[i].value->data);  // bitwise, not approx
  }
}

TEST_CASE("saving twice produces identical bytes") {
  TempDir dir("ckpt_det");
  auto params = sample_params(7);
  save_checkpoint(dir.file("a.bin").string(), const_view(params));
  save_checkpoint(dir.file("b.bin").string(), const_view(params));
  CHECK(testutil::read_file(dir.file("a.bin")) == testutil::read_file(dir.file("b.bin")));
}

TEST_CASE("load_checkpoint restores by name regardless of declaration order") {
  TempDir dir("ckpt_load");
  auto params = sample_params(3);
  save_checkpoint(dir.file("m.bin").string(), const_view(params));

  // Fresh parameters in a different order, zero-valued.
  Parameter q = make_parameter("q", 5, 1);
  Parameter w = make_parameter("layer.w", 3, 4);
  Parameter b = make_parameter("layer.b", 1, 4);
  std::vector<Parameter*> dst = {&q, &w, &b};
  load_checkpoint(dir.file("m.bin").string(), dst);
  CHECK(w.value->data == params[0].value->data);
  CHECK(b.value->data == params[1].value->data);
  CHECK(q.value->data == params[2].value->data);
}

TEST_CASE("shape mismatches and missing names are rejected") {
  TempDir dir("ckpt_bad");
  auto params = sample_params(4);
  save_checkpoint(dir.file("m.bin").string(), const_view(params));

  Parameter wrong_shape = make_parameter("layer.w", 4, 3);
  std::vector<Parameter*> dst = {&wrong_shape};
  try {
    load_checkpoint(dir.file("m.bin").string(), dst);
    FAIL("expected shape error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ShapeMismatch);
  }

  Parameter absent = make_parameter("no_such", 1, 1);
  std::vector<Parameter*> dst2 = {&absent};
  CHECK_THROWS_AS(load_checkpoint(dir.file("m.bin").string(), dst2), Error);
}

TEST_CASE("corrupt and missing files raise IoError") {
  TempDir dir("ckpt_corrupt");
  try {
    read_checkpoint(dir.file("absent.bin").string());
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IoError);
  }

  testutil::write_file(dir.file("junk.bin"), "not a checkpoint");
  CHECK_THROWS_AS(read_checkpoint(dir.file("junk.bin").string()), Error);

  // Truncate a valid file mid-payload.
  auto params = sample_params(5);
  save_checkpoint(dir.file("m.bin").string(), const_view(params));
  std::string bytes = testutil::read_file(dir.file("m.bin"));
  testutil::write_file(dir.file("trunc.bin"), bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(read_checkpoint(dir.file("trunc.bin").string()), Error);
}
