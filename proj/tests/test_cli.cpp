#include <doctest.h>

#include <json.hpp>

#include "cli_harness.hpp"

namespace {

const std::string binary = DGW_BINARY;
const std::string fixtures = std::string(DGW_SOURCE_DIR) + "/tests/cli";
const std::string corpus = std::string(DGW_SOURCE_DIR) + "/corpus";

}  // namespace

TEST_CASE("exit codes") {
  for (const auto& c : cli::matrix(fixtures, corpus)) {
    INFO(c.label);
    CHECK(cli::run(binary, c.args).status == c.expected);
  }
}

TEST_CASE("error reports name the problem") {
  const auto d2 = cli::run(binary, {"run", fixtures + "/bad_d2.json", "--task", "h_two_step", "--format", "json"});
  const auto j = nlohmann::json::parse(d2.out);
  CHECK(j.at("verdict") == "error");
  const std::string msg = j.at("error");
  CHECK(msg.find("two_step") != std::string::npos);
  CHECK(msg.find("degree 0") != std::string::npos);
  const auto fail = cli::run(binary, {"run", fixtures + "/fail.json", "--task", "h_point", "--format", "json"});
  const auto jf = nlohmann::json::parse(fail.out);
  CHECK(jf.at("verdict") == "fail");
  CHECK_FALSE(jf.at("witness").get<std::string>().empty());
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"run", fixtures + "/good.json", "--task", "h_two_step", "--format", "json"},
           {"run", fixtures + "/fail.json", "--task", "h_point"},
           {"run", fixtures + "/bad_d2.json", "--task", "h_two_step"},
           {"suite", fixtures, "--format", "json"}}) {
    const auto a = cli::run(binary, args), b = cli::run(binary, args);
    CHECK(a.status == b.status);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("timing is opt-in") {
  const auto plain = cli::run(binary, {"run", fixtures + "/good.json", "--task", "h_point"});
  const auto timed = cli::run(binary, {"run", fixtures + "/good.json", "--task", "h_point", "--timing"});
  CHECK(plain.out.find("seconds") == std::string::npos);
  CHECK(timed.out.size() > plain.out.size());
}
