#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "sphsolve/driver.hpp"
#include "sphsolve/serialize.hpp"
#include "sphsolve/spectral.hpp"
#include "sphsolve/verify.hpp"

using namespace sphsolve;
using nlohmann::json;

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

Vec parse_vec(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  Vec v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return v;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sphsolve: random homogeneous polynomial systems on the sphere"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "sample a system and write it to JSON");
  int gen_d = 3;
  std::string gen_degrees = "2,3";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool gen_record = false;
  gen->add_option("--d", gen_d, "ambient dimension")->required();
  gen->add_option("--degrees", gen_degrees, "comma-separated degrees")->required();
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "output path (stdout if omitted)");
  gen->add_flag("--record", gen_record,
                "write a seeded generation record instead of coefficients");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "run a solver on a system");
  std::string solve_mode = "auto";
  std::string solve_in, solve_out;
  int solve_d = 0, solve_p = 0;
  std::uint64_t solve_seed = 0;
  double solve_delta = 0.1;
  double opt_C1 = HDConfig{}.C1, opt_A = 1.0, opt_C0p = 4.0;
  double opt_u1 = 2.0, opt_u2 = 0.25, opt_u3 = 1e3, opt_mssC0 = 1.0;
  int opt_k0 = -1;
  long opt_budget = -1;
  int threads = 1;
  solve->add_option("mode", solve_mode, "auto|hd|mss")
      ->check(CLI::IsMember({"auto", "hd", "mss"}));
  solve->add_option("--in", solve_in, "system JSON (document or record)");
  solve->add_option("--d", solve_d, "dimension (generate mode)");
  solve->add_option("--p", solve_p, "degree (generate mode)");
  solve->add_option("--seed", solve_seed, "seed (generate mode)");
  solve->add_option("--delta", solve_delta, "failure-probability target");
  solve->add_option("--C1", opt_C1, "descent step constant");
  solve->add_option("--A", opt_A, "n = floor(d - A sqrt(d log d))");
  solve->add_option("--C0-prime", opt_C0p, "descent budget constant");
  solve->add_option("--u1", opt_u1, "grid-search u1 (manual regimes)");
  solve->add_option("--u2", opt_u2, "grid-search u2");
  solve->add_option("--u3", opt_u3, "grid-search u3");
  solve->add_option("--C0", opt_mssC0, "grid-search C0");
  solve->add_option("--k0", opt_k0, "override terminal level");
  solve->add_option("--budget", opt_budget, "override descent iteration budget");
  solve->add_option("--threads", threads, "worker threads (1 = reference)");
  solve->add_option("--out", solve_out, "report path (stdout if omitted)");

  // ---- certify ----
  auto* cert = app.add_subcommand("certify", "certify a candidate point");
  std::string cert_in, cert_point, cert_mode = "empirical", cert_out;
  cert->add_option("--in", cert_in, "system JSON")->required();
  cert->add_option("--point", cert_point, "comma-separated coordinates")->required();
  cert->add_option("--mode", cert_mode, "empirical|analytic")
      ->check(CLI::IsMember({"empirical", "analytic"}));
  cert->add_option("--out", cert_out, "report path");

  // ---- probe ----
  auto* probe = app.add_subcommand("probe", "spectral sub-routine debugging");
  std::string probe_what, probe_in, probe_point, probe_out;
  double probe_kappa = 16.0;
  probe->add_option("what", probe_what, "smin|smax|direction")
      ->required()
      ->check(CLI::IsMember({"smin", "smax", "direction"}));
  probe->add_option("--in", probe_in, "system JSON")->required();
  probe->add_option("--point", probe_point, "base point coordinates")->required();
  probe->add_option("--kappa", probe_kappa, "power-iteration rounds for smin");
  probe->add_option("--out", probe_out, "report path");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "timing over seeded runs");
  int bench_d = 10, bench_p = 3, bench_seeds = 5;
  std::string bench_out;
  bench->add_option("--d", bench_d, "dimension");
  bench->add_option("--p", bench_p, "degree");
  bench->add_option("--seeds", bench_seeds, "number of seeded runs");
  bench->add_option("--out", bench_out, "report path");

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "Monte Carlo statistics");
  std::string stats_what, stats_in, stats_out, stats_overlaps = "-1,0,0.5,1";
  int stats_d = 2, stats_p = 3, stats_trials = 2000, stats_samples = 100000;
  std::uint64_t stats_seed = 1;
  stats->add_option("what", stats_what, "rootcount|covariance|lipschitz")
      ->required()
      ->check(CLI::IsMember({"rootcount", "covariance", "lipschitz"}));
  stats->add_option("--d", stats_d, "dimension");
  stats->add_option("--p", stats_p, "degree");
  stats->add_option("--trials", stats_trials, "seeded systems (rootcount)");
  stats->add_option("--samples", stats_samples, "Monte Carlo samples");
  stats->add_option("--overlaps", stats_overlaps, "overlaps (covariance)");
  stats->add_option("--seed", stats_seed, "master seed");
  stats->add_option("--in", stats_in, "system JSON (lipschitz)");
  stats->add_option("--out", stats_out, "report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto degrees = parse_int_list(gen_degrees);
      json j = gen_record ? generation_record(gen_d, degrees, gen_seed)
                          : system_to_json(sample_system(gen_d, degrees, gen_seed));
      emit(j, gen_out);
      return 0;
    }

    if (*solve) {
      SolverConfig cfg;
      cfg.delta = solve_delta;
      cfg.seed = solve_seed;
      cfg.threads = threads;
      cfg.hd.C1 = opt_C1;
      cfg.hd.A = opt_A;
      cfg.hd.C0_prime = opt_C0p;
      if (opt_budget >= 0) cfg.hd.max_iters = opt_budget;
      cfg.finite_u1 = opt_u1;
      cfg.finite_u2 = opt_u2;
      cfg.finite_u3 = opt_u3;
      cfg.mss_C0 = opt_mssC0;
      if (opt_k0 >= 0) cfg.k0_override = opt_k0;
      if (solve_mode == "hd") cfg.mode_override = Algorithm::hd;
      if (solve_mode == "mss") cfg.mode_override = Algorithm::mss;

      RunReport rep;
      if (!solve_in.empty()) {
        PolynomialSystem sys = load_system(read_json_file(solve_in));
        rep = dispatch_system(sys, cfg);
      } else {
        if (solve_d <= 0 || solve_p < 2)
          throw CLI::ValidationError("solve", "need --in or both --d and --p");
        rep = dispatch_generate(solve_d, solve_p, cfg);
      }
      emit(rep.to_json(), solve_out);
      return 0;  // solved-or-FALSE are both clean exits
    }

    if (*cert) {
      PolynomialSystem sys = load_system(read_json_file(cert_in));
      Vec x = parse_vec(cert_point);
      if (std::abs(x.norm() - 1.0) > 1e-9)
        throw CLI::ValidationError("certify", "--point must have unit norm");
      CertifyConfig ccfg;
      ccfg.mode = cert_mode == "analytic" ? CertMode::analytic : CertMode::empirical;
      CertReport rep = certify(sys, SpherePoint(x), ccfg);
      emit(cert_to_json(rep), cert_out);
      return 0;
    }

    if (*probe) {
      PolynomialSystem sys = load_system(read_json_file(probe_in));
      Vec x = parse_vec(probe_point);
      SpherePoint sp = project_to_sphere(x);
      Mat M = sys.jacobian(sp.coords) * tangent_basis(sp).columns;
      json j;
      if (probe_what == "smax") {
        j["s_max_sq"] = s_max_sq(M);
        j["sigma_max_est"] = sigma_max_est(M);
      } else if (probe_what == "smin") {
        j["s_min"] = s_min(M, probe_kappa);
        j["kappa"] = probe_kappa;
      } else {
        DirectionResult dir = find_descent_direction(sys, sp);
        j["ok"] = dir.ok;
        if (dir.ok) {
          std::vector<double> v(dir.v.data(), dir.v.data() + dir.v.size());
          j["v"] = v;
          j["rayleigh"] = dir.rayleigh;
          j["squarings"] = dir.squarings;
        }
      }
      emit(j, probe_out);
      return 0;
    }

    if (*bench) {
      json runs = json::array();
      double total = 0.0;
      for (int s = 0; s < bench_seeds; ++s) {
        SolverConfig cfg;
        cfg.seed = s;
        RunReport rep = dispatch_generate(bench_d, bench_p, cfg);
        total += rep.seconds;
        runs.push_back({{"seed", s},
                        {"solved", rep.solved},
                        {"seconds", rep.seconds},
                        {"algorithm", rep.algorithm == Algorithm::hd ? "hd" : "mss"}});
      }
      json j;
      j["runs"] = runs;
      j["total_seconds"] = total;
      emit(j, bench_out);
      return 0;
    }

    if (*stats) {
      json j;
      if (stats_what == "rootcount") {
        if (stats_d != 2)
          throw CLI::ValidationError("stats", "rootcount supports --d 2 only");
        double sum = 0.0, sumsq = 0.0;
        for (int t = 0; t < stats_trials; ++t) {
          auto sys = sample_system(2, {stats_p}, stats_seed * 100003ULL + t);
          auto roots = circle_roots(sys, 20000);
          double c = static_cast<double>(roots.roots.size());
          sum += c;
          sumsq += c * c;
        }
        double mean = sum / stats_trials;
        double var = std::max(0.0, sumsq / stats_trials - mean * mean);
        j["trials"] = stats_trials;
        j["mean_roots"] = mean;
        j["std_error"] = std::sqrt(var / stats_trials);
        j["expected"] = kac_rice_mean(2, {stats_p});
      } else if (stats_what == "covariance") {
        std::vector<double> ov;
        for (auto& tok : parse_vec(stats_overlaps)) ov.push_back(tok);
        auto rep = mc_covariance(stats_d, stats_p, ov, stats_samples, stats_seed);
        json entries = json::array();
        for (const auto& e : rep.entries)
          entries.push_back({{"overlap", e.overlap},
                             {"target", e.target},
                             {"empirical", e.empirical},
                             {"std_error", e.std_error}});
        j["entries"] = entries;
        j["samples"] = rep.samples;
      } else {
        if (stats_in.empty())
          throw CLI::ValidationError("stats", "lipschitz needs --in");
        PolynomialSystem sys = load_system(read_json_file(stats_in));
        auto rep = mc_lipschitz(sys, stats_samples, stats_seed);
        j["sup_f"] = rep.sup_f;
        j["sup_df_op"] = rep.sup_df_op;
        j["lip_f"] = rep.lip_f;
        j["samples"] = rep.samples;
      }
      emit(j, stats_out);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
