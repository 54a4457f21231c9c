#include "sphsolve/driver.hpp"

#include <chrono>
#include <cmath>

#include "sphsolve/serialize.hpp"

namespace sphsolve {

using nlohmann::json;

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::L1: return "L1";
    case Regime::L2: return "L2";
    case Regime::L3: return "L3";
    case Regime::L4: return "L4";
  }
  return "?";
}

Regime classify_regime(int d, int p_max, double delta, double C) {
  bool small_p = static_cast<double>(p_max) < static_cast<double>(d) * d;
  if (small_p) {
    // C e^{-d/C} < delta, in logs to survive large d
    bool tail_small = std::log(C) - d / C < std::log(delta);
    return tail_small ? Regime::L1 : Regime::L2;
  }
  bool pd_small = -static_cast<double>(d) * std::log(static_cast<double>(p_max)) <
                  std::log(delta);
  return pd_small ? Regime::L3 : Regime::L4;
}

MSSParams regime_mss_params(Regime r, int d, int p_max,
                            const SolverConfig& cfg) {
  double u1, u2, u3;
  if (r == Regime::L3) {
    double lp = std::log(static_cast<double>(p_max));
    u1 = 1.0 + std::sqrt(cfg.C * (std::log(6.0) / d + lp));
    u2 = std::exp(-static_cast<double>(d) * lp) / (3.0 * cfg.C);
    u3 = cfg.C * std::exp(std::min(d * lp, 690.0)) * (d * lp + cfg.C_pp) / 3.0;
    if (u2 < 1e-300)
      throw std::invalid_argument("regime u2 underflows: parameters out of range");
  } else {
    u1 = cfg.finite_u1;
    u2 = cfg.finite_u2;
    u3 = cfg.finite_u3;
  }
  MSSParams prm = mss_params(d, p_max, u1, u2, u3, cfg.delta, cfg.mss_C0);
  if (cfg.k0_override) prm.k0 = *cfg.k0_override;
  return prm;
}

json cert_to_json(const CertReport& rep) {
  json j;
  j["certified"] = rep.certified;
  j["mode"] = rep.mode == CertMode::analytic ? "heuristic-analytic" : "empirical";
  j["reason"] = rep.reason;
  if (rep.mode == CertMode::analytic) {
    j["B_bound"] = rep.B_bound;
    j["dist_surrogate"] = rep.dist_surrogate;
    j["dist_surrogate_note"] =
        "2||F||/sigma_min stands in for the unknown distance to the nearest "
        "solution";
    j["L_used"] = rep.L_used;
  } else {
    j["residual_trace"] = rep.residual_trace;
    j["contraction_exponents"] = rep.contraction_exponents;
  }
  return j;
}

json RunReport::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["input"] = input;
  j["regime"] = regime_name(regime);
  j["algorithm"] = algorithm == Algorithm::hd ? "hd" : "mss";
  j["d"] = d;
  j["n"] = n;
  j["p_max"] = p_max;
  j["solved"] = solved;
  if (solved) {
    std::vector<double> pt(point.data(), point.data() + point.size());
    j["point"] = pt;
  }
  j["certification"] = cert_to_json(certification);
  j["termination"] = termination;
  j["parameters"] = parameters;
  j["timing_seconds"] = seconds;
  return j;
}

namespace {

void run_hd(const PolynomialSystem& sys, const SolverConfig& cfg,
            RunReport& rep) {
  rep.algorithm = Algorithm::hd;
  HDResult r = hd_run(sys, cfg.hd);
  rep.solved = r.outcome == HDOutcome::point;
  if (rep.solved) rep.point = r.point.coords;
  rep.certification = r.certification;
  rep.termination = r.termination;
  rep.parameters["C1"] = cfg.hd.C1;
  rep.parameters["c0"] = cfg.hd.c0;
  rep.parameters["C0_prime"] = cfg.hd.C0_prime;
  rep.parameters["budget"] = cfg.hd.budget(sys.dim(), sys.max_degree());
  rep.parameters["energy_floor"] = cfg.hd.energy_floor(sys.max_degree(), sys.dim());
  rep.parameters["iterations"] = r.iterations;
  if (!r.energy_trace.empty()) {
    rep.parameters["final_energy"] = r.energy_trace.back();
    // decimated energy trace for diagnostics
    nlohmann::json tr = nlohmann::json::array();
    std::size_t stride = std::max<std::size_t>(1, r.energy_trace.size() / 100);
    for (std::size_t i = 0; i < r.energy_trace.size(); i += stride)
      tr.push_back(r.energy_trace[i]);
    rep.parameters["energy_trace"] = tr;
  }
}

void run_mss(const PolynomialSystem& sys, Regime regime,
             const SolverConfig& cfg, RunReport& rep) {
  rep.algorithm = Algorithm::mss;
  MSSParams prm = regime_mss_params(regime, sys.dim(), sys.max_degree(), cfg);
  MSSResult r = mss_run(sys, prm, cfg.mss);
  rep.solved = r.outcome == MSSOutcome::point;
  if (rep.solved) rep.point = r.point.coords;
  rep.certification = r.certification;
  rep.termination = r.termination;
  rep.parameters["u1"] = prm.u1;
  rep.parameters["u2"] = prm.u2;
  rep.parameters["u3"] = prm.u3;
  rep.parameters["L"] = prm.L;
  rep.parameters["S"] = prm.S;
  rep.parameters["k0"] = prm.k0;
  rep.parameters["kappa"] = prm.kappa;
  rep.parameters["blocks_visited"] = r.blocks_visited;
  rep.parameters["blocks_pruned"] = r.blocks_pruned;
  rep.parameters["terminal_checks"] = r.terminal_checks;
}

}  // namespace

RunReport dispatch_generate(int d, int p_max, const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  rep.d = d;
  rep.p_max = p_max;
  rep.regime = classify_regime(d, p_max, cfg.delta, cfg.C);

  bool use_hd = cfg.mode_override ? *cfg.mode_override == Algorithm::hd
                                  : rep.regime == Regime::L1;
  int n = use_hd ? underdetermined_n(d, cfg.hd.A) : d - 1;
  rep.n = n;
  std::vector<int> degrees(n, p_max);
  rep.input = generation_record(d, degrees, cfg.seed);
  PolynomialSystem sys = sample_system(d, degrees, cfg.seed);
  if (use_hd)
    run_hd(sys, cfg, rep);
  else
    run_mss(sys, rep.regime, cfg, rep);
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

RunReport dispatch_system(const PolynomialSystem& sys, const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  const int d = sys.dim();
  const int n = sys.num_polys();
  RunReport rep;
  rep.d = d;
  rep.n = n;
  rep.p_max = sys.max_degree();
  rep.regime = classify_regime(d, rep.p_max, cfg.delta, cfg.C);
  rep.input = system_to_json(sys);

  bool use_hd;
  if (cfg.mode_override) {
    use_hd = *cfg.mode_override == Algorithm::hd;
    if (!use_hd && n != d - 1)
      throw std::invalid_argument("grid search requires n = d-1");
  } else if (n <= d - 2) {
    use_hd = true;  // grid search needs n = d-1; fall back with a note
    rep.parameters["warning"] =
        "n <= d-2: descent solver used regardless of regime";
  } else if (n == d - 1) {
    use_hd = rep.regime == Regime::L1;
  } else {
    throw std::invalid_argument("dispatch: need n <= d-1");
  }
  if (use_hd)
    run_hd(sys, cfg, rep);
  else
    run_mss(sys, rep.regime, cfg, rep);
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace sphsolve
