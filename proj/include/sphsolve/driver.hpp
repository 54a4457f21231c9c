#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "sphsolve/hessdesc.hpp"
#include "sphsolve/mss.hpp"
#include "sphsolve/polysys.hpp"

namespace sphsolve {

enum class Regime { L1, L2, L3, L4 };

const char* regime_name(Regime r);

/// Parameter-regime classification of (d, p_max, delta):
///   L1: p < d^2 and C e^{-d/C} < delta        -> curvature descent
///   L2: p < d^2 and C e^{-d/C} >= delta       -> grid search, fixed u's
///   L3: p >= d^2 and p^{-d} < delta           -> grid search, formula u's
///   L4: p >= d^2 and p^{-d} >= delta          -> grid search, fixed u's
Regime classify_regime(int d, int p_max, double delta, double C);

enum class Algorithm { hd, mss };

struct SolverConfig {
  double delta = 0.1;       // failure-probability target, in (0, delta0)
  double delta0 = 0.2;
  double C = 1.0;           // regime constant
  double C_pp = 1.0;        // the C'' in the u3 formula of the L3 regime
  double mss_C0 = 1.0;
  // fixed u's for the finite regimes L2/L4 (any valid choice is conformant)
  double finite_u1 = 2.0;
  double finite_u2 = 0.25;
  double finite_u3 = 1e3;
  std::optional<Algorithm> mode_override;
  std::optional<int> k0_override;
  std::uint64_t seed = 0;
  int threads = 1;
  HDConfig hd;
  MSSConfig mss;
};

struct RunReport {
  nlohmann::json input;      // system descriptor or generation record
  Regime regime = Regime::L1;
  Algorithm algorithm = Algorithm::hd;
  int d = 0;
  int n = 0;
  int p_max = 0;
  bool solved = false;
  Vec point;
  CertReport certification;
  std::string termination;
  nlohmann::json parameters;  // echo of the effective solver parameters
  double seconds = 0.0;

  nlohmann::json to_json() const;
};

/// Top-level entry point: picks the regime from (d, p_max, delta),
/// chooses n itself (underdetermined for descent, n = d-1 for grid search),
/// samples the system from cfg.seed, and runs the matching solver.
RunReport dispatch_generate(int d, int p_max, const SolverConfig& cfg);

/// Given-system entry point: n is fixed by the input. n <= d-2 forces the
/// descent solver regardless of regime (with a warning in the report);
/// n = d-1 follows the regime.
RunReport dispatch_system(const PolynomialSystem& sys, const SolverConfig& cfg);

/// Effective grid-search parameters for a regime (the L3 u-formulas or the
/// fixed finite-regime u's).
MSSParams regime_mss_params(Regime r, int d, int p_max, const SolverConfig& cfg);

nlohmann::json cert_to_json(const CertReport& rep);

}  // namespace sphsolve
