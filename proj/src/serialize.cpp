#include "sphsolve/serialize.hpp"

#include <fstream>

namespace sphsolve {

using nlohmann::json;

json system_to_json(const PolynomialSystem& sys) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "system";
  j["d"] = sys.dim();
  j["degrees"] = sys.degrees();
  json polys = json::array();
  for (const auto& p : sys.polys()) {
    json terms = json::array();
    const auto& mons = p.monomials();
    const auto& c = p.coeffs();
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (c[t] == 0.0) continue;
      terms.push_back(json::array({mons[t], c[t]}));
    }
    polys.push_back(std::move(terms));
  }
  j["polys"] = std::move(polys);
  return j;
}

PolynomialSystem system_from_json(const json& j) {
  int d = j.at("d").get<int>();
  auto degrees = j.at("degrees").get<std::vector<int>>();
  const json& polys = j.at("polys");
  if (polys.size() != degrees.size())
    throw std::invalid_argument("system_from_json: degrees/polys length mismatch");
  std::vector<HomogeneousPoly> out;
  out.reserve(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    std::map<MultiIndex, double> terms;
    for (const auto& term : polys[i]) {
      auto mi = term.at(0).get<MultiIndex>();
      double c = term.at(1).get<double>();
      terms[mi] = c;
    }
    out.emplace_back(d, degrees[i], terms);
  }
  return PolynomialSystem(d, std::move(out));
}

json generation_record(int d, const std::vector<int>& degrees,
                       std::uint64_t seed) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "generation";
  j["d"] = d;
  j["degrees"] = degrees;
  j["seed"] = seed;
  j["rng"] = GaussianRng::kAlgorithmId;
  return j;
}

PolynomialSystem load_system(const json& j) {
  std::string kind = j.value("kind", "system");
  if (kind == "generation") {
    std::string rng = j.at("rng").get<std::string>();
    if (rng != GaussianRng::kAlgorithmId)
      throw std::invalid_argument("load_system: unknown rng algorithm id: " + rng);
    return sample_system(j.at("d").get<int>(),
                         j.at("degrees").get<std::vector<int>>(),
                         j.at("seed").get<std::uint64_t>());
  }
  return system_from_json(j);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return json::parse(in);
}

}  // namespace sphsolve
