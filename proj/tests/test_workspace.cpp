#include <doctest.h>

#include <filesystem>

#include "dgw/errors.hpp"
#include "dgw/instances.hpp"
#include "dgw/workspace.hpp"

using namespace dgw;

namespace {

const std::string corpus = std::string(DGW_SOURCE_DIR) + "/corpus";

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus))
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string load_error(const json& j) {
  try {
    load_workspace(j);
  } catch (const StructuralError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("corpus round trip") {
  const auto files = corpus_files();
  CHECK(files.size() >= 5);
  for (const auto& f : files) {
    INFO(f);
    const auto ws = load_workspace_file(f);
    const json once = serialize(ws);
    const json twice = serialize(load_workspace(once));
    CHECK(once == twice);
    CHECK(ws.object_count() > 0);
  }
}

TEST_CASE("codecs round trip") {
  for (const auto& [name, c] : complex_corpus()) {
    INFO(name);
    const auto back = complex_from_json(complex_to_json(c));
    CHECK(back.dim() == c.dim());
    CHECK(complex_to_json(back) == complex_to_json(c));
  }
  gen::Rng rng(3);
  const auto m = gen::random_graded(rng, GradedSpace::from_dims({{0, 3}, {1, 2}}), GradedSpace::from_dims({{1, 4}}), 1);
  CHECK(sparse_from_json(sparse_to_json(m), m.rows(), m.cols()) == m);
}

TEST_CASE("minimal workspaces") {
  const auto ws = load_workspace(json::parse(R"({"dgw_version": 1,
    "complexes": {"z": {"support": [], "dims": {}, "d": {}}}})"));
  CHECK(ws.complex("z").dim() == 0);
  CHECK(ws.tasks.empty());
  CHECK_FALSE(load_error(json::parse(R"({"dgw_version": 2})")).empty());
  CHECK_FALSE(load_error(json::parse(R"({"dgw_version": 1, "surprise": {}})")).empty());
}

TEST_CASE("structural errors name the object and degree") {
  const auto j = json::parse(R"({"dgw_version": 1, "complexes": {"broken": {
    "support": [0, 1, 2], "dims": {"0": 1, "1": 2, "2": 1},
    "d": {"0": [["1"], ["1"]], "1": [["1", "1"]]}}}})");
  const std::string msg = load_error(j);
  CHECK(msg.find("broken") != std::string::npos);
  CHECK(msg.find("d^2 != 0 at degree 0") != std::string::npos);
  // Shape mismatches and bad rationals are structural too.
  auto shape = j;
  shape["complexes"]["broken"]["d"]["1"] = json::array({json::array({"1"})});
  CHECK_FALSE(load_error(shape).empty());
  auto bad = j;
  bad["complexes"]["broken"]["d"]["1"] = json::array({json::array({"1", "x/2"})});
  CHECK_FALSE(load_error(bad).empty());
  auto dangling = json::parse(R"({"dgw_version": 1, "tasks": {"t": {"kind": "cohomology", "object": "nowhere"}}})");
  CHECK_NOTHROW(load_workspace(dangling));
}
