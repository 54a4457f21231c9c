#include <doctest.h>

#include "sphsolve/serialize.hpp"

using namespace sphsolve;

TEST_CASE("system JSON round-trip is bit-exact") {
  PolynomialSystem sys = sample_system(4, {2, 3, 3}, 12345);
  nlohmann::json j = system_to_json(sys);
  // through a text round-trip, as a file would go
  PolynomialSystem back = system_from_json(nlohmann::json::parse(j.dump()));
  REQUIRE(back.dim() == sys.dim());
  REQUIRE(back.degrees() == sys.degrees());
  for (int i = 0; i < sys.num_polys(); ++i) {
    const auto& a = sys.polys()[i].coeffs();
    const auto& b = back.polys()[i].coeffs();
    REQUIRE(a.size() == b.size());
    for (std::size_t t = 0; t < a.size(); ++t) CHECK(a[t] == b[t]);
  }
}

TEST_CASE("generation record regenerates the same system") {
  nlohmann::json rec = generation_record(3, {2, 3}, 777);
  PolynomialSystem regen = load_system(rec);
  PolynomialSystem direct = sample_system(3, {2, 3}, 777);
  for (int i = 0; i < direct.num_polys(); ++i)
    for (std::size_t t = 0; t < direct.polys()[i].coeffs().size(); ++t)
      CHECK(regen.polys()[i].coeffs()[t] == direct.polys()[i].coeffs()[t]);
}

TEST_CASE("unknown rng id is rejected") {
  nlohmann::json rec = generation_record(3, {2}, 1);
  rec["rng"] = "other-rng-v0";
  CHECK_THROWS_AS(load_system(rec), std::invalid_argument);
}

TEST_CASE("schema sanity") {
  nlohmann::json j = system_to_json(sample_system(2, {2}, 0));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["kind"] == "system");
  CHECK_THROWS(system_from_json(nlohmann::json{{"d", 2}}));
}
