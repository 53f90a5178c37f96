#include <doctest.h>

#include <filesystem>

#include "ellsec/serialize.hpp"
#include "support.hpp"

using namespace ellsec;
using testing_support::random_form;
using testing_support::random_skew;

TEST_CASE("polynomial round trip and term order") {
  Rng rng(100);
  const MultiPoly p = random_form(4, 3, rng, 0.5) + MultiPoly::constant(4, Fp(-1));
  const auto j = io::to_json(p);
  CHECK(io::poly_from_json(j) == p);
  // Terms are written in descending graded-lex order.
  const auto& terms = j["terms"];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    Monomial a, b;
    for (std::size_t v = 0; v < 4; ++v) {
      a[v] = terms[i - 1]["exp"][v].get<std::uint8_t>();
      b[v] = terms[i]["exp"][v].get<std::uint8_t>();
    }
    CHECK(grlex_compare(a, b) > 0);
  }
}

TEST_CASE("structured round trips") {
  Rng rng(101);
  const SkewPolyMatrix m = random_skew(5, 2, rng);
  CHECK(io::skew_from_json(io::to_json(m)) == m);

  std::vector<MultiPoly> forms;
  for (int i = 0; i < 3; ++i) forms.push_back(random_form(3, 2, rng));
  const PolyMap pm(forms, 2);
  CHECK(io::polymap_from_json(io::to_json(pm)) == pm);

  VanishingSpace s;
  s.nvars = 3;
  s.degree = 2;
  s.basis = forms;
  s.samples = 31;
  s.stabilized = true;
  const VanishingSpace back = io::space_from_json(io::to_json(s));
  CHECK(back.basis == s.basis);
  CHECK(back.samples == 31);
  CHECK(back.stabilized);
}

TEST_CASE("schema errors carry a JSON pointer") {
  using io::json;
  const json bad_exp = {{"nvars", 2}, {"terms", {{{"exp", {1}}, {"c", "3"}}}}};
  try {
    io::poly_from_json(bad_exp);
    FAIL("expected a schema error");
  } catch (const io::SchemaError& e) {
    CHECK(e.pointer() == "/terms/0/exp");
  }
  const json bad_coeff = {{"nvars", 1}, {"terms", {{{"exp", {1}}, {"c", 3}}}}};
  CHECK_THROWS_AS(io::poly_from_json(bad_coeff), io::SchemaError);
  CHECK_THROWS_AS(io::poly_from_json(json{{"terms", json::array()}}), io::SchemaError);
  const json missing_entry = {{"n", 3}, {"nvars", 3}, {"degree", 1}, {"upper", json::object()}};
  try {
    io::skew_from_json(missing_entry);
    FAIL("expected a schema error");
  } catch (const io::SchemaError& e) {
    CHECK(e.pointer() == "/upper/1,2");
  }
  CHECK_THROWS_AS(io::artifact_prime(json{{"prime", "12x"}}), io::SchemaError);
}

TEST_CASE("artifact files") {
  const auto dir = std::filesystem::temp_directory_path() / "ellsec_serialize_test";
  std::filesystem::remove_all(dir);
  const auto j = io::with_prime(io::to_json(MultiPoly::variable(2, 1)));
  io::write_artifact(dir / "x.json", j);
  const auto back = io::read_artifact(dir / "x.json");
  CHECK(back == j);
  CHECK(io::artifact_prime(back) == modulus().value());
  CHECK_THROWS(io::read_artifact(dir / "missing.json"));
  std::filesystem::remove_all(dir);
}
