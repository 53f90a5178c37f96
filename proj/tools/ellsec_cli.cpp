// Command line front end: `verify` runs the whole pipeline, the stage
// subcommands rerun one stage on persisted artifacts.

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

#include "ellsec/pfaffian.hpp"
#include "ellsec/pipeline.hpp"

using namespace ellsec;
using io::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Loaded {
  json doc;
  std::uint64_t prime;
};

Loaded load(const std::string& path) {
  json doc = io::read_artifact(path);
  return {doc, io::artifact_prime(doc)};
}

void require_same_prime(const Loaded& a, const Loaded& b, const std::string& what) {
  if (a.prime != b.prime) throw io::SchemaError("/prime", what + " was computed with a different prime");
}

void save(const std::string& path, const json& j) {
  io::write_artifact(path, j);
  std::cout << "wrote " << path << "\n";
}

int print_report(const RunReport& rep) {
  for (const auto& s : rep.stages)
    std::cout << (s.pass ? "ok   " : "FAIL ") << s.name << " (" << s.seconds << " s) " << s.summary.dump() << "\n";
  if (rep.failure) std::cerr << "failure: " << *rep.failure << "\n";
  std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return rep.pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secant varieties of elliptic normal curves over F_p: interpolation, Cremona maps, Poisson brackets"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::string config_file;
  std::string out_dir = "out";

  auto* verify = app.add_subcommand("verify", "Run every stage and check every identity");
  verify->add_option("--config", config_file, "JSON config with any of n, prime, a, b, seed, margin, trials");
  verify->add_option("--n", cfg.n, "Embedding dimension (5..8)");
  verify->add_option("--prime", cfg.prime, "Field characteristic");
  verify->add_option("--a", cfg.a, "Curve coefficient a in y^2 = x^3 + a x + b");
  verify->add_option("--b", cfg.b, "Curve coefficient b");
  verify->add_option("--seed", cfg.seed, "Random seed");
  verify->add_option("--margin", cfg.margin, "Extra interpolation samples");
  verify->add_option("--trials", cfg.trials, "Szego comparison trials");
  verify->add_option("--out", out_dir, "Artifact directory");
  verify->add_option("--stage", cfg.stop_after, "Stop after this stage");

  auto* curve_cmd = app.add_subcommand("curve-sample", "Fix the curve and sample points");
  std::string out;
  curve_cmd->add_option("--n", cfg.n);
  curve_cmd->add_option("--prime", cfg.prime);
  curve_cmd->add_option("--a", cfg.a);
  curve_cmd->add_option("--b", cfg.b);
  curve_cmd->add_option("--seed", cfg.seed);
  curve_cmd->add_option("--margin", cfg.margin);
  curve_cmd->add_option("--trials", cfg.trials);
  curve_cmd->add_option("--out", out)->required();

  std::string curve_in, ideal_in, secant_in, phi_in, forward_in, inverse_in, omega_in;
  auto* ideal_cmd = app.add_subcommand("ideal", "Degree-r forms through Sec^{r-1} C (odd n)");
  ideal_cmd->add_option("--curve", curve_in)->required();
  ideal_cmd->add_option("--out", out)->required();

  auto* secant_cmd = app.add_subcommand("secant-eq", "Equation(s) of the top secant variety");
  secant_cmd->add_option("--curve", curve_in)->required();
  secant_cmd->add_option("--out", out)->required();

  auto* klein_cmd = app.add_subcommand("klein", "Skew linear syzygy matrix Phi of the ideal generators");
  klein_cmd->add_option("--ideal", ideal_in)->required();
  klein_cmd->add_option("--out", out)->required();

  auto* pf_cmd = app.add_subcommand("pfaffians", "Forward map: signed sub-pfaffians of Phi");
  pf_cmd->add_option("--phi", phi_in)->required();
  pf_cmd->add_option("--ideal", ideal_in, "Check the span against these generators");
  pf_cmd->add_option("--out", out)->required();

  auto* sigma_cmd = app.add_subcommand("sigma", "Inverse map sigma_{n-2}(Phi)");
  sigma_cmd->add_option("--phi", phi_in)->required();
  sigma_cmd->add_option("--out", out)->required();

  auto* cremona_cmd = app.add_subcommand("cremona-check", "Compositions, factors and rank profile");
  cremona_cmd->add_option("--forward", forward_in)->required();
  cremona_cmd->add_option("--inverse", inverse_in)->required();
  cremona_cmd->add_option("--phi", phi_in)->required();
  cremona_cmd->add_option("--secant", secant_in, "Compare the factor with F");
  cremona_cmd->add_option("--out", out)->required();

  auto* omega_cmd = app.add_subcommand("omega", "Skew quadric syzygy matrix Omega of the gradients");
  omega_cmd->add_option("--secant", secant_in)->required();
  omega_cmd->add_option("--out", out)->required();

  auto* poisson_cmd = app.add_subcommand("poisson-check", "Jacobi identity and Casimirs");
  poisson_cmd->add_option("--omega", omega_in)->required();
  poisson_cmd->add_option("--secant", secant_in)->required();
  poisson_cmd->add_option("--out", out)->required();

  auto* szego_cmd = app.add_subcommand("szego-check", "Compare Omega with the Szego kernel bracket");
  szego_cmd->add_option("--omega", omega_in)->required();
  szego_cmd->add_option("--out", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      if (!config_file.empty()) cfg = PipelineConfig::from_json(io::read_artifact(config_file), cfg);
      cfg.out = out_dir;
      if (!cfg.stop_after.empty()) {
        const auto names = stage_names(cfg.n);
        if (std::find(names.begin(), names.end(), cfg.stop_after) == names.end())
          throw std::invalid_argument("unknown stage '" + cfg.stop_after + "' for n = " + std::to_string(cfg.n));
      }
      const RunReport rep = run_pipeline(cfg);
      std::cout << "report: " << (cfg.out / "report.json").string() << "\n";
      return print_report(rep);
    }

    if (curve_cmd->parsed()) {
      cfg.validate();
      ScopedModulus guard(cfg.prime);
      StageContext ctx{cfg.n, cfg.seed, cfg.margin, cfg.trials, Fp(cfg.a), Fp(cfg.b)};
      save(out, stages::curve_sample(ctx));
      return 0;
    }

    // Every other stage reads its context (prime, n, seed, curve) from its first input.
    auto with_context = [](const Loaded& first, auto&& body) {
      ScopedModulus guard(first.prime);
      const StageContext ctx = StageContext::from_artifact(first.doc);
      body(ctx);
    };

    if (ideal_cmd->parsed() || secant_cmd->parsed()) {
      const Loaded c = load(curve_in);
      with_context(c, [&](const StageContext& ctx) {
        if (ideal_cmd->parsed()) {
          save(out, stages::ideal_json(ctx, stages::ideal(ctx)));
        } else {
          save(out, stages::secant_json(ctx, stages::secant_eq(ctx)));
        }
      });
    } else if (klein_cmd->parsed()) {
      const Loaded in = load(ideal_in);
      with_context(in, [&](const StageContext& ctx) {
        save(out, stages::klein_json(ctx, stages::klein(io::space_from_json(in.doc))));
      });
    } else if (pf_cmd->parsed()) {
      const Loaded in = load(phi_in);
      with_context(in, [&](const StageContext& ctx) {
        const SkewPolyMatrix phi = io::skew_from_json(in.doc);
        std::optional<VanishingSpace> ideal;
        if (!ideal_in.empty()) {
          const Loaded id = load(ideal_in);
          require_same_prime(in, id, ideal_in);
          ideal = io::space_from_json(id.doc);
        }
        const PolyMap p = stages::pfaffians(phi, ideal ? &*ideal : nullptr);
        save(out, stages::pfaffians_json(ctx, p, ideal.has_value()));
      });
    } else if (sigma_cmd->parsed()) {
      const Loaded in = load(phi_in);
      with_context(in, [&](const StageContext& ctx) {
        save(out, stages::sigma_json(ctx, stages::sigma(io::skew_from_json(in.doc))));
      });
    } else if (cremona_cmd->parsed()) {
      const Loaded fw = load(forward_in), inv = load(inverse_in), ph = load(phi_in);
      require_same_prime(fw, inv, inverse_in);
      require_same_prime(fw, ph, phi_in);
      with_context(fw, [&](const StageContext& ctx) {
        std::optional<VanishingSpace> secant;
        if (!secant_in.empty()) {
          const Loaded sc = load(secant_in);
          require_same_prime(fw, sc, secant_in);
          secant = io::space_from_json(sc.doc);
        }
        const auto check = stages::cremona_check(ctx, io::polymap_from_json(fw.doc), io::polymap_from_json(inv.doc),
                                                 io::skew_from_json(ph.doc), secant ? &*secant : nullptr);
        save(out, stages::cremona_json(ctx, check));
      });
    } else if (omega_cmd->parsed()) {
      const Loaded in = load(secant_in);
      with_context(in, [&](const StageContext& ctx) {
        save(out, stages::omega_json(ctx, stages::omega(io::space_from_json(in.doc))));
      });
    } else if (poisson_cmd->parsed()) {
      const Loaded om = load(omega_in), sc = load(secant_in);
      require_same_prime(om, sc, secant_in);
      with_context(om, [&](const StageContext& ctx) {
        const auto r = stages::poisson_check(ctx, io::skew_from_json(om.doc), io::space_from_json(sc.doc));
        save(out, stages::poisson_json(ctx, r));
      });
    } else if (szego_cmd->parsed()) {
      const Loaded om = load(omega_in);
      with_context(om, [&](const StageContext& ctx) {
        save(out, stages::szego_json(ctx, stages::szego_check(ctx, io::skew_from_json(om.doc))));
      });
    }
    return 0;
  } catch (const io::SchemaError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitFail;
  }
}
