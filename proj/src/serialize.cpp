#include "ellsec/serialize.hpp"

#include <fstream>
#include <sstream>

namespace ellsec::io {

namespace {

const json& require(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing field");
  return *it;
}

std::uint64_t require_uint(const json& j, const std::string& key, const std::string& ptr) {
  const json& v = require(j, key, ptr);
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0))) throw SchemaError(ptr + "/" + key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

const json& require_array(const json& j, const std::string& key, const std::string& ptr) {
  const json& v = require(j, key, ptr);
  if (!v.is_array()) throw SchemaError(ptr + "/" + key, "expected an array");
  return v;
}

}  // namespace

json to_json(Fp v) { return v.to_string(); }

Fp fp_from_json(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw SchemaError(ptr, "expected a decimal string");
  try {
    return Fp::from_decimal(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(ptr, e.what());
  }
}

json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json e = json::array();
    for (std::size_t i = 0; i < p.nvars(); ++i) e.push_back(static_cast<unsigned>(m[i]));
    terms.push_back({{"exp", e}, {"c", to_json(c)}});
  }
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

MultiPoly poly_from_json(const json& j, const std::string& ptr) {
  const std::size_t nvars = require_uint(j, "nvars", ptr);
  if (nvars == 0 || nvars > kMaxVars) throw SchemaError(ptr + "/nvars", "unsupported number of variables");
  MultiPoly p(nvars);
  const json& terms = require_array(j, "terms", ptr);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tp = ptr + "/terms/" + std::to_string(t);
    const json& e = require_array(terms[t], "exp", tp);
    if (e.size() != nvars) throw SchemaError(tp + "/exp", "exponent length differs from nvars");
    Monomial m;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (!(e[i].is_number_unsigned() || (e[i].is_number_integer() && e[i].get<std::int64_t>() >= 0)) || e[i].get<unsigned>() > kMaxExponent)
        throw SchemaError(tp + "/exp/" + std::to_string(i), "bad exponent");
      m[i] = static_cast<std::uint8_t>(e[i].get<unsigned>());
    }
    p.add_term(m, fp_from_json(require(terms[t], "c", tp), tp + "/c"));
  }
  return p;
}

json to_json(const PolyMap& m) {
  json forms = json::array();
  for (const auto& f : m.forms()) forms.push_back(to_json(f));
  return {{"degree", m.degree()}, {"forms", forms}};
}

PolyMap polymap_from_json(const json& j, const std::string& ptr) {
  const auto degree = static_cast<unsigned>(require_uint(j, "degree", ptr));
  const json& forms = require_array(j, "forms", ptr);
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < forms.size(); ++i) out.push_back(poly_from_json(forms[i], ptr + "/forms/" + std::to_string(i)));
  try {
    return PolyMap(std::move(out), degree);
  } catch (const std::exception& e) {
    throw SchemaError(ptr, e.what());
  }
}

json to_json(const VanishingSpace& s) {
  json basis = json::array();
  for (const auto& f : s.basis) basis.push_back(to_json(f));
  return {{"nvars", s.nvars},   {"degree", s.degree},         {"dim", s.dim()},
          {"basis", basis},     {"samples", s.samples},       {"stabilized", s.stabilized}};
}

VanishingSpace space_from_json(const json& j, const std::string& ptr) {
  VanishingSpace s;
  s.nvars = require_uint(j, "nvars", ptr);
  s.degree = static_cast<unsigned>(require_uint(j, "degree", ptr));
  s.samples = require_uint(j, "samples", ptr);
  const json& st = require(j, "stabilized", ptr);
  if (!st.is_boolean()) throw SchemaError(ptr + "/stabilized", "expected a boolean");
  s.stabilized = st.get<bool>();
  const json& basis = require_array(j, "basis", ptr);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    MultiPoly f = poly_from_json(basis[i], ptr + "/basis/" + std::to_string(i));
    if (f.nvars() != s.nvars) throw SchemaError(ptr + "/basis/" + std::to_string(i), "wrong ring");
    s.basis.push_back(std::move(f));
  }
  if (require_uint(j, "dim", ptr) != s.basis.size()) throw SchemaError(ptr + "/dim", "differs from the basis size");
  return s;
}

json to_json(const SkewPolyMatrix& m) {
  json upper = json::object();
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = i + 1; j < m.n(); ++j)
      upper[std::to_string(i + 1) + "," + std::to_string(j + 1)] = to_json(m.upper(i, j));
  return {{"n", m.n()}, {"nvars", m.nvars()}, {"degree", m.degree()}, {"upper", upper}};
}

SkewPolyMatrix skew_from_json(const json& j, const std::string& ptr) {
  const std::size_t n = require_uint(j, "n", ptr);
  const std::size_t nvars = require_uint(j, "nvars", ptr);
  const auto degree = static_cast<unsigned>(require_uint(j, "degree", ptr));
  if (n < 2 || n > 31) throw SchemaError(ptr + "/n", "unsupported size");
  SkewPolyMatrix m(n, nvars, degree);
  const json& upper = require(j, "upper", ptr);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      const std::string key = std::to_string(i + 1) + "," + std::to_string(k + 1);
      const std::string ep = ptr + "/upper/" + key;
      try {
        m.set(i, k, poly_from_json(require(upper, key, ptr + "/upper"), ep));
      } catch (const SchemaError&) {
        throw;
      } catch (const std::exception& e) {
        throw SchemaError(ep, e.what());
      }
    }
  return m;
}

json to_json(const PoissonReport& r) {
  return {{"jacobi_zero", r.jacobi_zero},
          {"casimirs_zero", r.casimirs_zero},
          {"jacobiators_checked", r.jacobiators_checked},
          {"casimir_pairs_checked", r.casimir_pairs_checked},
          {"failures", r.failures}};
}

json to_json(const SzegoReport& r) {
  json ratio = to_json(r.ratio);
  json out = {{"ratio", ratio},
              {"trials", r.trials},
              {"degenerate", r.degenerate},
              {"extension_independent", r.extension_independent},
              {"pass", r.pass()}};
  if (auto q = rational_reconstruct(r.ratio)) out["ratio_rational"] = q->to_string();
  return out;
}

json to_json(const RankProfile& r) {
  return {{"secant_ranks", r.secant_ranks},
          {"generic_ranks", r.generic_ranks},
          {"nu_ranks", r.nu_ranks},
          {"f_nonvanishing", r.f_nonvanishing},
          {"violations", r.violations},
          {"pass", r.pass()}};
}

json with_prime(json j) {
  j["prime"] = std::to_string(modulus().value());
  return j;
}

std::uint64_t artifact_prime(const json& j) {
  const json& p = require(j, "prime", "");
  if (!p.is_string()) throw SchemaError("/prime", "expected a decimal string");
  try {
    std::size_t used = 0;
    const std::string s = p.get<std::string>();
    const unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception& e) {
    throw SchemaError("/prime", e.what());
  }
}

void write_artifact(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_artifact(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", path.string() + ": " + e.what());
  }
}

}  // namespace ellsec::io
