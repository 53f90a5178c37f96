#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellsec/cremona.hpp"
#include "ellsec/interpolate.hpp"
#include "ellsec/poisson.hpp"
#include "ellsec/serialize.hpp"
#include "ellsec/szego.hpp"

namespace ellsec {

/// A stage ran but one of its identities or dimension checks failed.
class StageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxPipelineN = 8;

struct PipelineConfig {
  std::size_t n = 5;
  std::uint64_t prime = kDefaultPrime;
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::uint64_t seed = 7;
  std::size_t margin = kDefaultMargin;
  std::size_t trials = 20;
  std::filesystem::path out;  // empty: keep artifacts in memory only
  std::string stop_after;     // empty: run every stage

  /// Throws std::invalid_argument on a composite prime, n out of range, etc.
  void validate() const;
  io::json to_json() const;
  /// Overrides fields of base from a config file object.
  static PipelineConfig from_json(const io::json& j, PipelineConfig base);
  /// FNV-1a of the canonical config, output directory excluded.
  std::string hash() const;
};

/// Stage names in pipeline order; the even branch skips the Cremona stages.
std::vector<std::string> stage_names(std::size_t n);

/// Shared context carried by every artifact.
struct StageContext {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t margin = kDefaultMargin;
  std::size_t trials = 20;
  Fp a, b;

  Curve curve() const { return Curve(a, b); }
  Rng rng(const std::string& stage) const { return Rng::derive(seed, stage); }
  /// Adds prime, n, seed, margin, trials and the curve to an artifact.
  io::json tag(io::json j) const;
  static StageContext from_artifact(const io::json& j);
};

// Each stage is a pure function of its inputs and the context; the json
// builders are shared by the pipeline and the standalone stage commands.
namespace stages {

io::json curve_sample(const StageContext& ctx);

VanishingSpace ideal(const StageContext& ctx);
io::json ideal_json(const StageContext& ctx, const VanishingSpace& s);

VanishingSpace secant_eq(const StageContext& ctx);
io::json secant_json(const StageContext& ctx, const VanishingSpace& s);

SkewPolyMatrix klein(const VanishingSpace& ideal);
io::json klein_json(const StageContext& ctx, const SkewPolyMatrix& phi);

PolyMap pfaffians(const SkewPolyMatrix& phi, const VanishingSpace* ideal);
io::json pfaffians_json(const StageContext& ctx, const PolyMap& p, bool span_checked);

PolyMap sigma(const SkewPolyMatrix& phi);
io::json sigma_json(const StageContext& ctx, const PolyMap& f);

struct CremonaCheck {
  Composition forward_then_inverse;
  Composition inverse_then_forward;
  std::optional<bool> factor_proportional_to_secant;
  bool pointwise = false;
  bool forward_no_common_factor = false;
  bool inverse_no_common_factor = false;
  RankProfile ranks;
};
CremonaCheck cremona_check(const StageContext& ctx, const PolyMap& p, const PolyMap& f, const SkewPolyMatrix& phi,
                           const VanishingSpace* secant);
io::json cremona_json(const StageContext& ctx, const CremonaCheck& c);

struct OmegaResult {
  SkewPolyMatrix omega;
  std::optional<bool> subpfaffians_match_gradient;  // odd n
  std::optional<bool> euler_integral_matches;       // odd n
};
OmegaResult omega(const VanishingSpace& secant);
io::json omega_json(const StageContext& ctx, const OmegaResult& r);

struct PoissonCheck {
  PoissonReport report;
  bool engine_identity = false;
};
PoissonCheck poisson_check(const StageContext& ctx, const SkewPolyMatrix& omega, const VanishingSpace& secant);
io::json poisson_json(const StageContext& ctx, const PoissonCheck& r);

SzegoReport szego_check(const StageContext& ctx, const SkewPolyMatrix& omega);
io::json szego_json(const StageContext& ctx, const SzegoReport& r);

}  // namespace stages

struct StageResult {
  std::string name;
  bool pass = false;
  double seconds = 0;
  io::json summary;
};

struct RunReport {
  PipelineConfig config;
  std::vector<StageResult> stages;
  io::json dims = io::json::object();
  std::optional<std::string> failure;
  std::vector<std::string> artifacts;

  // Results kept for callers that inspect them directly.
  std::optional<VanishingSpace> ideal, secant;
  std::optional<SkewPolyMatrix> phi, omega;
  std::optional<PolyMap> forward, inverse;
  std::optional<stages::CremonaCheck> cremona;
  std::optional<PoissonReport> poisson;
  std::optional<SzegoReport> szego;

  bool pass() const;
  io::json to_json(bool with_timings = true) const;
};

/// Runs every stage in order, halting at the first failure. Writes the
/// artifacts, manifest.json and report.json when config.out is set.
RunReport run_pipeline(const PipelineConfig& config);

}  // namespace ellsec
