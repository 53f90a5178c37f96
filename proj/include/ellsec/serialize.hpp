#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ellsec/cremona.hpp"
#include "ellsec/interpolate.hpp"
#include "ellsec/poisson.hpp"
#include "ellsec/skewsolve.hpp"
#include "ellsec/szego.hpp"

namespace ellsec::io {

using json = nlohmann::json;

/// Ill-formed artifact; `pointer` is a JSON pointer to the offending node.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Field elements are decimal strings so 62-bit residues survive any JSON reader.
json to_json(Fp v);
Fp fp_from_json(const json& j, const std::string& ptr);

json to_json(const MultiPoly& p);
MultiPoly poly_from_json(const json& j, const std::string& ptr = "");

json to_json(const PolyMap& m);
PolyMap polymap_from_json(const json& j, const std::string& ptr = "");

json to_json(const VanishingSpace& s);
VanishingSpace space_from_json(const json& j, const std::string& ptr = "");

json to_json(const SkewPolyMatrix& m);
SkewPolyMatrix skew_from_json(const json& j, const std::string& ptr = "");

json to_json(const PoissonReport& r);
json to_json(const SzegoReport& r);
json to_json(const RankProfile& r);

/// Tags an artifact with the active prime.
json with_prime(json j);
/// Reads the "prime" field of an artifact.
std::uint64_t artifact_prime(const json& j);

void write_artifact(const std::filesystem::path& path, const json& j);
json read_artifact(const std::filesystem::path& path);

}  // namespace ellsec::io
