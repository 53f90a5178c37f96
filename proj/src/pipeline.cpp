#include "ellsec/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "ellsec/pfaffian.hpp"

namespace ellsec {

namespace {

constexpr std::size_t kPointwiseSamples = 20;
constexpr std::size_t kRankSamples = 20;
constexpr std::size_t kCurveSamplePoints = 16;

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << v;
  return s.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

PolyMap gradient(const MultiPoly& f) {
  std::vector<MultiPoly> g;
  for (std::size_t i = 0; i < f.nvars(); ++i) g.push_back(f.derivative(i));
  return PolyMap(std::move(g), static_cast<unsigned>(f.degree() - 1));
}

}  // namespace

void PipelineConfig::validate() const {
  if (n < 5) throw std::invalid_argument("n must be at least 5");
  if (n > kMaxPipelineN)
    throw std::invalid_argument("n above " + std::to_string(kMaxPipelineN) + " is beyond the dense interpolation range");
  if (prime < 5 || prime >= (1ULL << 62)) throw std::invalid_argument("prime must lie in [5, 2^62)");
  if (!is_prime(prime)) throw std::invalid_argument(std::to_string(prime) + " is not prime");
  if (margin == 0) throw std::invalid_argument("margin must be at least 1");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  ScopedModulus guard(prime);
  Curve check{Fp(a), Fp(b)};  // throws on a singular curve
}

io::json PipelineConfig::to_json() const {
  return {{"n", n},           {"prime", std::to_string(prime)}, {"a", a},        {"b", b},
          {"seed", seed},     {"margin", margin},               {"trials", trials}};
}

PipelineConfig PipelineConfig::from_json(const io::json& j, PipelineConfig base) {
  if (!j.is_object()) throw io::SchemaError("", "config must be an object");
  auto get_uint = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    if (!(j[key].is_number_unsigned() || (j[key].is_number_integer() && j[key].get<std::int64_t>() >= 0))) throw io::SchemaError(std::string("/") + key, "expected a non-negative integer");
    field = j[key].get<std::remove_reference_t<decltype(field)>>();
  };
  auto get_int = [&](const char* key, std::int64_t& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw io::SchemaError(std::string("/") + key, "expected an integer");
    field = j[key].get<std::int64_t>();
  };
  get_uint("n", base.n);
  get_int("a", base.a);
  get_int("b", base.b);
  get_uint("seed", base.seed);
  get_uint("margin", base.margin);
  get_uint("trials", base.trials);
  if (j.contains("prime")) {
    const auto& p = j["prime"];
    if (p.is_number_integer() && p.get<std::int64_t>() > 0) {
      base.prime = p.get<std::uint64_t>();
    } else if (p.is_string()) {
      const std::string s = p.get<std::string>();
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw io::SchemaError("/prime", "expected a decimal string");
      try {
        base.prime = std::stoull(s);
      } catch (const std::out_of_range&) {
        throw io::SchemaError("/prime", "does not fit in 64 bits");
      }
    } else {
      throw io::SchemaError("/prime", "expected an integer or decimal string");
    }
  }
  return base;
}

std::string PipelineConfig::hash() const { return hex64(fnv1a(to_json().dump())); }

std::vector<std::string> stage_names(std::size_t n) {
  if (n % 2 == 1)
    return {"curve-sample", "ideal", "secant-eq", "klein", "pfaffians", "sigma",
            "cremona-check", "omega", "poisson-check", "szego-check"};
  return {"curve-sample", "secant-eq", "omega", "poisson-check", "szego-check"};
}

io::json StageContext::tag(io::json j) const {
  j = io::with_prime(std::move(j));
  j["n"] = n;
  j["seed"] = seed;
  j["margin"] = margin;
  j["trials"] = trials;
  j["curve"] = {{"a", io::to_json(a)}, {"b", io::to_json(b)}};
  return j;
}

StageContext StageContext::from_artifact(const io::json& j) {
  if (io::artifact_prime(j) != modulus().value()) throw io::SchemaError("/prime", "differs from the active prime");
  auto need_uint = [&](const char* key) {
    if (!j.contains(key) || !(j[key].is_number_unsigned() || (j[key].is_number_integer() && j[key].get<std::int64_t>() >= 0)))
      throw io::SchemaError(std::string("/") + key, "missing or not a non-negative integer");
    return j[key].get<std::uint64_t>();
  };
  StageContext ctx;
  ctx.n = need_uint("n");
  ctx.seed = need_uint("seed");
  ctx.margin = need_uint("margin");
  ctx.trials = need_uint("trials");
  if (!j.contains("curve") || !j["curve"].is_object()) throw io::SchemaError("/curve", "missing curve");
  ctx.a = io::fp_from_json(j["curve"].value("a", io::json()), "/curve/a");
  ctx.b = io::fp_from_json(j["curve"].value("b", io::json()), "/curve/b");
  return ctx;
}

namespace stages {

io::json curve_sample(const StageContext& ctx) {
  const Curve curve = ctx.curve();
  Rng rng = ctx.rng("curve-sample");
  io::json pts = io::json::array();
  for (std::size_t i = 0; i < kCurveSamplePoints; ++i) {
    const CurvePoint q = curve.random_point(rng);
    pts.push_back({{"x", io::to_json(q.x)}, {"y", io::to_json(q.y)}});
  }
  return ctx.tag({{"points", pts}});
}

VanishingSpace ideal(const StageContext& ctx) {
  Rng rng = ctx.rng("ideal");
  return secant_ideal_generators(ctx.curve(), ctx.n, rng, ctx.margin);
}

io::json ideal_json(const StageContext& ctx, const VanishingSpace& s) { return ctx.tag(io::to_json(s)); }

VanishingSpace secant_eq(const StageContext& ctx) {
  Rng rng = ctx.rng("secant-eq");
  return ctx.n % 2 == 1 ? secant_hypersurface(ctx.curve(), ctx.n, rng, ctx.margin)
                        : secant_ci_pair(ctx.curve(), ctx.n, rng, ctx.margin);
}

io::json secant_json(const StageContext& ctx, const VanishingSpace& s) { return ctx.tag(io::to_json(s)); }

SkewPolyMatrix klein(const VanishingSpace& ideal) {
  const auto space = skew_syzygy({{ideal.as_polymap()}, 1});
  if (space.size() != 1) throw DimensionMismatch("skew linear syzygies of the ideal generators", 1, space.size());
  return space.front();
}

io::json klein_json(const StageContext& ctx, const SkewPolyMatrix& phi) {
  io::json j = io::to_json(phi);
  j["syzygy_dim"] = 1;
  return ctx.tag(std::move(j));
}

PolyMap pfaffians(const SkewPolyMatrix& phi, const VanishingSpace* ideal) {
  const KleinTensor k = KleinTensor::from_matrix(phi);
  std::optional<PolyMap> ref;
  if (ideal) ref = ideal->as_polymap();
  return forward_map(k, ref).normalized();
}

io::json pfaffians_json(const StageContext& ctx, const PolyMap& p, bool span_checked) {
  io::json j = io::to_json(p);
  j["span_matches_ideal"] = span_checked ? io::json(true) : io::json(nullptr);
  return ctx.tag(std::move(j));
}

PolyMap sigma(const SkewPolyMatrix& phi) {
  const KleinTensor k = KleinTensor::from_matrix(phi);
  PolyMap f = ellsec::sigma(k).normalized();
  for (const auto& c : sigma_nu_composite(k, f))
    if (!c.is_zero()) throw StageFailure("sigma composed with nu is not identically zero");
  return f;
}

io::json sigma_json(const StageContext& ctx, const PolyMap& f) {
  io::json j = io::to_json(f);
  j["sigma_nu_zero"] = true;
  return ctx.tag(std::move(j));
}

CremonaCheck cremona_check(const StageContext& ctx, const PolyMap& p, const PolyMap& f, const SkewPolyMatrix& phi,
                           const VanishingSpace* secant) {
  const std::size_t n = ctx.n;
  const std::size_t r = (n - 1) / 2;
  const int expected = static_cast<int>(r * (n - 2) - 1);
  if (p.degree() != r || f.degree() != n - 2) throw StageFailure("forward/inverse degrees are not (r, n-2)");
  CremonaCheck out;
  out.forward_then_inverse = composition_check(p, f);
  out.inverse_then_forward = composition_check(f, p);
  if (out.forward_then_inverse.factor.degree() != expected || out.inverse_then_forward.factor.degree() != expected)
    throw StageFailure("composition factor degree differs from r(n-2)-1 = " + std::to_string(expected));
  if (secant && secant->dim() == 1) {
    const MultiPoly& F = secant->basis.front();
    out.factor_proportional_to_secant =
        F.degree() == expected && proportionality(out.forward_then_inverse.factor, F).has_value();
  }
  Rng rng = ctx.rng("cremona-check");
  out.pointwise = pointwise_inverse(p, f, rng, kPointwiseSamples);
  out.forward_no_common_factor = no_common_factor(p, rng);
  out.inverse_no_common_factor = no_common_factor(f, rng);
  out.ranks = rank_profile(KleinTensor::from_matrix(phi), p, f, ctx.curve(), rng, kRankSamples);
  if (!out.pointwise) throw StageFailure("f(p(x)) is not projectively x at a random point");
  if (!out.forward_no_common_factor || !out.inverse_no_common_factor)
    throw StageFailure("a map has a common factor along a random line");
  if (!out.ranks.pass()) throw StageFailure("rank profile: " + out.ranks.violations.front());
  return out;
}

io::json cremona_json(const StageContext& ctx, const CremonaCheck& c) {
  auto comp = [](const Composition& k) {
    return io::json{{"factor", io::to_json(k.factor)}, {"degree", k.factor.degree()}};
  };
  io::json j = {{"forward_then_inverse", comp(c.forward_then_inverse)},
                {"inverse_then_forward", comp(c.inverse_then_forward)},
                {"pointwise_inverse", c.pointwise},
                {"no_common_factor", {{"forward", c.forward_no_common_factor}, {"inverse", c.inverse_no_common_factor}}},
                {"rank_profile", io::to_json(c.ranks)}};
  j["factor_proportional_to_secant"] =
      c.factor_proportional_to_secant ? io::json(*c.factor_proportional_to_secant) : io::json(nullptr);
  return ctx.tag(std::move(j));
}

OmegaResult omega(const VanishingSpace& secant) {
  SyzygyProblem problem{{}, 2};
  for (const auto& f : secant.basis) problem.rows.push_back(gradient(f));
  const auto space = skew_syzygy(problem);
  if (space.size() != 1) throw DimensionMismatch("skew quadric syzygies of the gradients", 1, space.size());
  OmegaResult out{space.front(), std::nullopt, std::nullopt};
  if (secant.nvars % 2 == 1 && secant.dim() == 1) {
    const MultiPoly& F = secant.basis.front();
    const PolyMap sp = sub_pfaffians(out.omega);
    out.subpfaffians_match_gradient = proportionality(sp, gradient(F)).has_value();
    bool euler = false;
    try {
      euler = proportionality(euler_integrate(sp, static_cast<unsigned>(F.degree())), F).has_value();
    } catch (const IntegrabilityError&) {
      euler = false;
    }
    out.euler_integral_matches = euler;
    if (!*out.subpfaffians_match_gradient) throw StageFailure("sub-pfaffians of Omega are not proportional to grad F");
    if (!euler) throw StageFailure("Euler integral of the sub-pfaffians of Omega is not proportional to F");
  }
  return out;
}

io::json omega_json(const StageContext& ctx, const OmegaResult& r) {
  io::json j = io::to_json(r.omega);
  j["syzygy_dim"] = 1;
  auto opt = [](const std::optional<bool>& b) { return b ? io::json(*b) : io::json(nullptr); };
  j["subpfaffians_proportional_to_gradient"] = opt(r.subpfaffians_match_gradient);
  j["euler_integral_proportional"] = opt(r.euler_integral_matches);
  return ctx.tag(std::move(j));
}

PoissonCheck poisson_check(const StageContext& ctx, const SkewPolyMatrix& omega, const VanishingSpace& secant) {
  const QuadraticBracket b(omega);
  PoissonCheck out;
  out.report = ellsec::poisson_check(b, secant.basis);
  Rng rng = ctx.rng("poisson-check");
  out.engine_identity = power_bracket_identity(b, 2, rng).holds();
  if (!out.engine_identity) throw StageFailure("bracket engine identity fails at d = 2");
  if (!out.report.pass())
    throw StageFailure("Poisson check: " + (out.report.failures.empty() ? std::string("failed") : out.report.failures.front()));
  return out;
}

io::json poisson_json(const StageContext& ctx, const PoissonCheck& r) {
  io::json j = io::to_json(r.report);
  j["engine_identity"] = r.engine_identity;
  return ctx.tag(std::move(j));
}

SzegoReport szego_check(const StageContext& ctx, const SkewPolyMatrix& omega) {
  Rng rng = ctx.rng("szego-check");
  SzegoReport r = compare_brackets(ctx.curve(), omega, ctx.trials, rng);
  if (!r.extension_independent) throw StageFailure("Szego pairing depends on the extension of phi");
  if (!r.constant_ratio) throw StageFailure("Omega / Szego ratio is not constant across trials");
  return r;
}

io::json szego_json(const StageContext& ctx, const SzegoReport& r) { return ctx.tag(io::to_json(r)); }

}  // namespace stages

bool RunReport::pass() const {
  return !failure && std::all_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.pass; });
}

io::json RunReport::to_json(bool with_timings) const {
  io::json st = io::json::array();
  for (const auto& s : stages) {
    io::json e = {{"name", s.name}, {"pass", s.pass}, {"summary", s.summary}};
    if (with_timings) e["seconds"] = s.seconds;
    st.push_back(std::move(e));
  }
  io::json j = {{"pass", pass()},   {"config", config.to_json()}, {"config_hash", config.hash()},
                {"dims", dims},     {"stages", st},               {"artifacts", artifacts}};
  j["failure"] = failure ? io::json(*failure) : io::json(nullptr);
  return j;
}

RunReport run_pipeline(const PipelineConfig& config) {
  config.validate();
  ScopedModulus guard(config.prime);
  StageContext ctx;
  ctx.n = config.n;
  ctx.seed = config.seed;
  ctx.margin = config.margin;
  ctx.trials = config.trials;
  ctx.a = Fp(config.a);
  ctx.b = Fp(config.b);

  RunReport rep;
  rep.config = config;
  bool halted = false;

  auto emit = [&](const std::string& file, const io::json& j) {
    if (!config.out.empty()) io::write_artifact(config.out / file, j);
    rep.artifacts.push_back(file);
  };
  auto run = [&](const std::string& name, const std::function<io::json()>& body) {
    if (halted) return;
    const auto t0 = std::chrono::steady_clock::now();
    StageResult res{name, false, 0, io::json::object()};
    try {
      res.summary = body();
      res.pass = true;
    } catch (const std::exception& e) {
      rep.failure = name + ": " + e.what() + " (seed " + std::to_string(config.seed) +
                    "; rerun with another --seed to rule out an unlucky sample)";
      res.summary = {{"error", e.what()}};
      halted = true;
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.stages.push_back(std::move(res));
    if (name == config.stop_after) halted = true;
  };

  run("curve-sample", [&] {
    emit("curve.json", stages::curve_sample(ctx));
    return io::json{{"a", io::to_json(ctx.a)}, {"b", io::to_json(ctx.b)}};
  });

  const bool odd = config.n % 2 == 1;
  if (odd) {
    run("ideal", [&] {
      rep.ideal = stages::ideal(ctx);
      rep.dims["ideal"] = rep.ideal->dim();
      emit("ideal.json", stages::ideal_json(ctx, *rep.ideal));
      return io::json{{"dim", rep.ideal->dim()}, {"degree", rep.ideal->degree}, {"samples", rep.ideal->samples}};
    });
  }
  run("secant-eq", [&] {
    rep.secant = stages::secant_eq(ctx);
    rep.dims["secant"] = rep.secant->dim();
    emit("secant.json", stages::secant_json(ctx, *rep.secant));
    return io::json{{"dim", rep.secant->dim()}, {"degree", rep.secant->degree}, {"samples", rep.secant->samples}};
  });
  if (odd) {
    run("klein", [&] {
      rep.phi = stages::klein(*rep.ideal);
      rep.dims["phi"] = 1;
      emit("phi.json", stages::klein_json(ctx, *rep.phi));
      return io::json{{"syzygy_dim", 1}};
    });
    run("pfaffians", [&] {
      rep.forward = stages::pfaffians(*rep.phi, &*rep.ideal);
      emit("forward.json", stages::pfaffians_json(ctx, *rep.forward, true));
      return io::json{{"degree", rep.forward->degree()}, {"span_matches_ideal", true}};
    });
    run("sigma", [&] {
      rep.inverse = stages::sigma(*rep.phi);
      emit("inverse.json", stages::sigma_json(ctx, *rep.inverse));
      return io::json{{"degree", rep.inverse->degree()}, {"sigma_nu_zero", true}};
    });
    run("cremona-check", [&] {
      rep.cremona = stages::cremona_check(ctx, *rep.forward, *rep.inverse, *rep.phi, &*rep.secant);
      emit("composition.json", stages::cremona_json(ctx, *rep.cremona));
      io::json s = {{"factor_degree", rep.cremona->forward_then_inverse.factor.degree()},
                    {"reverse_factor_degree", rep.cremona->inverse_then_forward.factor.degree()},
                    {"rank_profile_pass", rep.cremona->ranks.pass()}};
      s["factor_proportional_to_secant"] = rep.cremona->factor_proportional_to_secant
                                               ? io::json(*rep.cremona->factor_proportional_to_secant)
                                               : io::json(nullptr);
      return s;
    });
  }
  run("omega", [&] {
    auto r = stages::omega(*rep.secant);
    rep.omega = r.omega;
    rep.dims["omega"] = 1;
    emit("omega.json", stages::omega_json(ctx, r));
    io::json s = {{"syzygy_dim", 1}};
    if (r.subpfaffians_match_gradient) s["subpfaffians_proportional_to_gradient"] = *r.subpfaffians_match_gradient;
    return s;
  });
  run("poisson-check", [&] {
    auto r = stages::poisson_check(ctx, *rep.omega, *rep.secant);
    rep.poisson = r.report;
    emit("poisson.json", stages::poisson_json(ctx, r));
    return io::json{{"jacobiators", r.report.jacobiators_checked}, {"casimir_pairs", r.report.casimir_pairs_checked}};
  });
  run("szego-check", [&] {
    rep.szego = stages::szego_check(ctx, *rep.omega);
    emit("szego.json", stages::szego_json(ctx, *rep.szego));
    return io::json{{"ratio", io::to_json(rep.szego->ratio)}, {"trials", rep.szego->trials}};
  });

  if (!config.out.empty()) {
    rep.artifacts.push_back("manifest.json");
    rep.artifacts.push_back("report.json");
    io::json manifest = {{"config", config.to_json()}, {"config_hash", config.hash()}, {"artifacts", rep.artifacts}};
    io::write_artifact(config.out / "manifest.json", io::with_prime(manifest));
    io::write_artifact(config.out / "report.json", io::with_prime(rep.to_json()));
  }
  return rep;
}

}  // namespace ellsec
