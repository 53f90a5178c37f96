#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ellsec/pipeline.hpp"

using namespace ellsec;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config validation") {
  PipelineConfig c;
  CHECK_NOTHROW(c.validate());
  c.prime = 2305843009213693953ULL;  // 2^61 + 1 is divisible by 3
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = PipelineConfig{};
  c.n = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.n = 9;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = PipelineConfig{};
  c.a = 0;
  c.b = 0;
  CHECK_THROWS(c.validate());
  c = PipelineConfig{};
  c.trials = 0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("config file overrides and hashing") {
  const PipelineConfig base;
  const auto c = PipelineConfig::from_json({{"a", 2}, {"b", 3}, {"prime", "2305843009213693907"}, {"seed", 11}}, base);
  CHECK(c.a == 2);
  CHECK(c.prime == kSecondaryPrime);
  CHECK(c.seed == 11);
  CHECK(c.n == base.n);
  CHECK(c.hash() != base.hash());
  PipelineConfig d = base;
  d.out = "/tmp/elsewhere";
  CHECK(d.hash() == base.hash());
  CHECK_THROWS_AS(PipelineConfig::from_json({{"seed", -1}}, base), io::SchemaError);
}

TEST_CASE("n = 5 pipeline passes with dims (5, 1, 1, 1)") {
  PipelineConfig c;
  const RunReport rep = run_pipeline(c);
  CHECK(rep.pass());
  CHECK(rep.dims["ideal"] == 5);
  CHECK(rep.dims["secant"] == 1);
  CHECK(rep.dims["phi"] == 1);
  CHECK(rep.dims["omega"] == 1);
  CHECK(rep.stages.size() == stage_names(5).size());
  REQUIRE(rep.cremona.has_value());
  CHECK(rep.cremona->factor_proportional_to_secant == std::optional<bool>(true));
}

TEST_CASE("n = 6 pipeline passes with dims (2, 1)") {
  PipelineConfig c;
  c.n = 6;
  const RunReport rep = run_pipeline(c);
  CHECK(rep.pass());
  CHECK(rep.dims["secant"] == 2);
  CHECK(rep.dims["omega"] == 1);
  CHECK_FALSE(rep.dims.contains("phi"));
}

TEST_CASE("determinism: identical reports modulo timings, seed-free canonical artifacts") {
  PipelineConfig c;
  c.seed = 7;
  const auto a = run_pipeline(c), b = run_pipeline(c);
  CHECK(a.to_json(false) == b.to_json(false));
  c.seed = 8;
  const auto other = run_pipeline(c);
  CHECK(other.omega == a.omega);
  CHECK(other.forward == a.forward);
  CHECK(other.inverse == a.inverse);
  CHECK(other.ideal->basis == a.ideal->basis);
}

TEST_CASE("artifacts and stop-after") {
  const auto dir = std::filesystem::temp_directory_path() / "ellsec_pipeline_test";
  std::filesystem::remove_all(dir);
  PipelineConfig c;
  c.out = dir;
  c.stop_after = "klein";
  const auto rep = run_pipeline(c);
  CHECK(rep.pass());
  CHECK(rep.stages.back().name == "klein");
  CHECK(std::filesystem::exists(dir / "phi.json"));
  CHECK_FALSE(std::filesystem::exists(dir / "omega.json"));
  CHECK(std::filesystem::exists(dir / "manifest.json"));

  // Rerunning a stage on its persisted input is byte-identical.
  const auto ideal = io::read_artifact(dir / "ideal.json");
  ScopedModulus guard(io::artifact_prime(ideal));
  const auto ctx = StageContext::from_artifact(ideal);
  const auto phi = stages::klein_json(ctx, stages::klein(io::space_from_json(ideal)));
  CHECK(phi.dump(2) + "\n" == slurp(dir / "phi.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("stage order") {
  CHECK(stage_names(5).front() == "curve-sample");
  CHECK(stage_names(5).size() == 10);
  CHECK(stage_names(6).size() == 5);
}
