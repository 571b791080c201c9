#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sturm/coefficient.hpp"
#include "sturm/errors.hpp"
#include "sturm/experiments.hpp"
#include "sturm/fss.hpp"
#include "sturm/norms.hpp"
#include "sturm/otelbaev.hpp"
#include "sturm/report.hpp"
#include "sturm/solver.hpp"
#include "sturm/test_functions.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitNotSolvable = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitSolverDeviation = 4;
constexpr int kExitUsage = 64;

struct RunConfig {
  std::string q_spec;
  std::vector<std::string> f_specs;
  double p = 2.0;
  std::string domain = "-15:15";
  int n_points = -1;  // per-command default
  double root_tol = 1e-9;
  double wronskian_tol = 1e-6;
  double quad_tol = 1e-10;
  double cross_tol = 1e-4;
  double margin = 1e-8;
  std::string a_list = "0.5,1,2";
  std::string out = "report";
  bool force = false;
  long long seed = -1;
  int centers = 21;
  int workers = 1;
  // reproduce
  std::string example_id;
  std::string theta_list = "0.3,0.5,0.8,1,1.5,2";
  std::string domain_list = "1000,10000";
  double alpha = 1.5;
  double beta = 1.0;
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    if (next > pos) out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

std::pair<double, double> parse_domain(const std::string& text) {
  const std::size_t colon = text.find(':', 1);
  if (colon == std::string::npos) {
    throw std::invalid_argument("domain must be <lo>:<hi>");
  }
  const double lo = std::stod(text.substr(0, colon));
  const double hi = std::stod(text.substr(colon + 1));
  if (!(lo < hi)) throw std::invalid_argument("domain requires lo < hi");
  return {lo, hi};
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("q")) cfg.q_spec = j["q"].get<std::string>();
  if (j.contains("f")) {
    cfg.f_specs.clear();
    if (j["f"].is_array()) {
      for (const auto& e : j["f"]) cfg.f_specs.push_back(e.get<std::string>());
    } else {
      cfg.f_specs.push_back(j["f"].get<std::string>());
    }
  }
  if (j.contains("p")) cfg.p = j["p"].get<double>();
  if (j.contains("domain")) cfg.domain = j["domain"].get<std::string>();
  if (j.contains("n_points")) cfg.n_points = j["n_points"].get<int>();
  if (j.contains("root_tol")) cfg.root_tol = j["root_tol"].get<double>();
  if (j.contains("wronskian_tol")) cfg.wronskian_tol = j["wronskian_tol"].get<double>();
  if (j.contains("quad_tol")) cfg.quad_tol = j["quad_tol"].get<double>();
  if (j.contains("cross_tol")) cfg.cross_tol = j["cross_tol"].get<double>();
  if (j.contains("margin")) cfg.margin = j["margin"].get<double>();
  if (j.contains("a")) cfg.a_list = j["a"].get<std::string>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<long long>();
  if (j.contains("centers")) cfg.centers = j["centers"].get<int>();
  if (j.contains("example")) cfg.example_id = j["example"].get<std::string>();
  if (j.contains("theta")) cfg.theta_list = j["theta"].get<std::string>();
  if (j.contains("domains")) cfg.domain_list = j["domains"].get<std::string>();
  if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
  if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
}

int verdict_exit(sturm::Verdict v) {
  switch (v) {
    case sturm::Verdict::CorrectlySolvable: return kExitOk;
    case sturm::Verdict::NotSolvable: return kExitNotSolvable;
    case sturm::Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

bool tail_fails(sturm::TailStatus s) {
  return s == sturm::TailStatus::FailsLeft ||
         s == sturm::TailStatus::FailsRight ||
         s == sturm::TailStatus::FailsBoth;
}

int cmd_analyze(const RunConfig& cfg) {
  const auto coeff = sturm::Coefficient::parse(cfg.q_spec);
  const auto [lo, hi] = parse_domain(cfg.domain);
  const int n = cfg.n_points > 0 ? cfg.n_points : 201;
  sturm::ProfileOptions opts;
  opts.root_tol = cfg.root_tol;
  opts.positivity_margin = cfg.margin;
  opts.workers = cfg.workers;
  const auto profile =
      sturm::build_profile(coeff, lo, hi, n, parse_list(cfg.a_list), opts);

  sturm::write_file(cfg.out + ".json",
                    sturm::to_json(profile, coeff.describe()).dump(2) + "\n");
  sturm::write_file(cfg.out + ".csv", sturm::profile_csv(profile));
  sturm::write_meta_sidecar(cfg.out + ".meta.json", "analyze", cfg.seed);
  std::cerr << "verdict: " << sturm::to_string(profile.verdict) << " ("
            << profile.evidence.summary << ")\n";
  return verdict_exit(profile.verdict);
}

int cmd_solve(const RunConfig& cfg) {
  const auto coeff = sturm::Coefficient::parse(cfg.q_spec);
  if (cfg.f_specs.empty()) {
    std::cerr << "solve requires at least one --f forcing spec\n";
    return kExitUsage;
  }
  const auto [lo, hi] = parse_domain(cfg.domain);
  const double L = std::max(std::abs(lo), std::abs(hi));
  const int n = cfg.n_points > 0 ? cfg.n_points : 6000;

  const auto tail = sturm::check_tail_positivity(coeff, L);
  if (tail_fails(tail.status) && !cfg.force) {
    std::cerr << "coefficient is not solvable (tail "
              << sturm::to_string(tail.status)
              << "); pass --force to solve anyway\n";
    return kExitNotSolvable;
  }

  sturm::FssOptions fss_opts;
  fss_opts.wronskian_tol = cfg.wronskian_tol;
  const auto fss = sturm::compute_fss(coeff, L, n, fss_opts);
  sturm::write_file(cfg.out + ".fss.csv", sturm::fss_csv(fss));

  sturm::Json report;
  report["schema_version"] = sturm::kReportSchemaVersion;
  report["kind"] = "solve_report";
  report["coefficient"] = coeff.describe();
  report["p"] = cfg.p;
  sturm::Json entries = sturm::Json::array();

  double worst_deviation = 0.0;
  for (std::size_t k = 0; k < cfg.f_specs.size(); ++k) {
    const auto f = sturm::ForcingTerm::parse(cfg.f_specs[k]);
    const auto green = sturm::solve_green(coeff, fss, f, cfg.p);
    const auto fd = sturm::solve_fd(coeff, f, L, n, cfg.p);

    double deviation = 0.0;
    std::size_t i = 0, j = 0;
    while (i < green.grid.size() && j < fd.grid.size()) {
      const double xa = green.grid[i], xb = fd.grid[j];
      if (std::abs(xa - xb) <= 1e-9) {
        if (std::abs(xa) <= 0.8 * L) {
          deviation = std::max(deviation, std::abs(green.y[i] - fd.y[j]));
        }
        ++i;
        ++j;
      } else if (xa < xb) {
        ++i;
      } else {
        ++j;
      }
    }
    worst_deviation = std::max(worst_deviation, deviation);

    const std::string stem = cfg.out + ".f" + std::to_string(k);
    sturm::write_file(stem + ".green.csv", sturm::solution_csv(green));
    sturm::write_file(stem + ".fd.csv", sturm::solution_csv(fd));

    sturm::Json entry;
    entry["forcing"] = f.describe();
    entry["cross_deviation"] = deviation;
    entry["green"] = sturm::to_json(green);
    entry["fd"] = sturm::to_json(fd);
    entries.push_back(entry);
  }
  report["solves"] = entries;
  report["worst_cross_deviation"] = worst_deviation;
  report["cross_tol"] = cfg.cross_tol;
  sturm::write_file(cfg.out + ".json", report.dump(2) + "\n");
  sturm::write_meta_sidecar(cfg.out + ".meta.json", "solve", cfg.seed);

  std::cerr << "worst cross-solver deviation: " << worst_deviation << "\n";
  return worst_deviation <= cfg.cross_tol ? kExitOk : kExitSolverDeviation;
}

int cmd_verify(const RunConfig& cfg) {
  const auto coeff = sturm::Coefficient::parse(cfg.q_spec);
  const auto [lo, hi] = parse_domain(cfg.domain);

  const auto tail = sturm::check_tail_positivity(
      coeff, std::max({std::abs(lo), std::abs(hi), 1.0}));
  if (tail_fails(tail.status)) {
    std::cerr << "hypotheses fail: tail " << sturm::to_string(tail.status)
              << "\n";
    return kExitNotSolvable;
  }

  const double pprime_exponent =
      cfg.p > 1.0 ? 2.0 * (1.0 - 1.0 / cfg.p) : 0.0;  // 2/p', 0 at p = 1

  sturm::Json rows = sturm::Json::array();
  std::ostringstream csv;
  csv << "x,d,y_min,y_max,d_dy_max,f1_norm,z_norm,weighted_z_norm,pass\n";
  bool all_bounds_ok = true;
  double f1_min = 1e300, f1_max = 0.0;
  double z_band_low = 1e300, z_band_high = 0.0;
  double weighted_max = 0.0;
  const auto grid = sturm::linspace(lo, hi, cfg.centers);
  for (double x : grid) {
    double d = 0.0;
    try {
      d = sturm::d_of_x(coeff, x, cfg.root_tol);
    } catch (const sturm::NoFiniteRootError&) {
      std::cerr << "hypotheses fail: no finite d at x = " << x << "\n";
      return kExitNotSolvable;
    }
    const auto bundle = sturm::build_test_bundle(coeff, x, cfg.p, d);
    const auto wb = sturm::verify_window_bounds(bundle, d);
    const bool pass = wb.y_range_ok && wb.dy_bound_ok;
    all_bounds_ok = all_bounds_ok && pass;
    f1_min = std::min(f1_min, bundle.f1_norm);
    f1_max = std::max(f1_max, bundle.f1_norm);
    const double z_ratio = bundle.z_norm / (d * d);
    z_band_low = std::min(z_band_low, z_ratio);
    z_band_high = std::max(z_band_high, z_ratio);
    weighted_max = std::max(
        weighted_max, bundle.weighted_z_norm / std::pow(d, pprime_exponent));

    sturm::Json row;
    row["x"] = x;
    row["d"] = d;
    row["y_min"] = wb.y_min;
    row["y_max"] = wb.y_max;
    row["d_dy_max"] = wb.d_dy_max;
    row["f1_norm"] = bundle.f1_norm;
    row["z_norm"] = bundle.z_norm;
    row["weighted_z_norm"] = bundle.weighted_z_norm;
    row["pass"] = pass;
    rows.push_back(row);
    csv << x << "," << d << "," << wb.y_min << "," << wb.y_max << ","
        << wb.d_dy_max << "," << bundle.f1_norm << "," << bundle.z_norm
        << "," << bundle.weighted_z_norm << "," << (pass ? 1 : 0) << "\n";
  }

  const double f1_factor = f1_min > 0.0 ? f1_max / f1_min : 1e300;
  const double z_band =
      std::max(z_band_high, z_band_low > 0.0 ? 1.0 / z_band_low : 1e300);
  const bool ratios_ok = f1_factor <= 10.0 && z_band <= 10.0 &&
                         weighted_max <= 10.0;

  sturm::Json report;
  report["schema_version"] = sturm::kReportSchemaVersion;
  report["kind"] = "verify_report";
  report["coefficient"] = coeff.describe();
  report["p"] = cfg.p;
  report["rows"] = rows;
  report["f1_uniformity_factor"] = f1_factor;
  report["z_over_d2_band"] = z_band;
  report["weighted_over_dpp_max"] = weighted_max;
  report["bounds_ok"] = all_bounds_ok;
  report["ratios_ok"] = ratios_ok;
  sturm::write_file(cfg.out + ".json", report.dump(2) + "\n");
  sturm::write_file(cfg.out + ".csv", csv.str());
  sturm::write_meta_sidecar(cfg.out + ".meta.json", "verify", cfg.seed);

  std::cerr << "window bounds " << (all_bounds_ok ? "pass" : "FAIL")
            << "; f1 factor " << f1_factor << ", z/d^2 band " << z_band
            << ", weighted cap " << weighted_max << "\n";
  return all_bounds_ok && ratios_ok ? kExitOk : kExitCheckFailed;
}

int cmd_reproduce(const RunConfig& cfg) {
  if (cfg.example_id == "1.7" || cfg.example_id == "cospower") {
    sturm::CosPowerStudyOptions opts;
    const auto study = sturm::cospower_threshold_study(
        parse_list(cfg.theta_list), parse_list(cfg.domain_list), opts);
    sturm::write_file(cfg.out + ".json", sturm::to_json(study).dump(2) + "\n");
    sturm::write_file(cfg.out + ".csv", sturm::cospower_csv(study));
    sturm::write_meta_sidecar(cfg.out + ".meta.json", "reproduce", cfg.seed);
    for (const auto& o : study.outcomes) {
      std::cerr << "theta " << o.theta << ": "
                << (o.matches_threshold ? "matches" : "MISMATCH")
                << " (m change " << o.m_rel_change << ", growth "
                << (o.growth_flag ? "yes" : "no") << ")\n";
    }
    return study.all_match ? kExitOk : kExitCheckFailed;
  }
  if (cfg.example_id == "1.8" || cfg.example_id == "spikes") {
    const auto report = sturm::spike_lattice_study(cfg.alpha, cfg.beta, cfg.p);
    sturm::write_file(cfg.out + ".json", sturm::to_json(report).dump(2) + "\n");
    sturm::write_meta_sidecar(cfg.out + ".meta.json", "reproduce", cfg.seed);
    std::cerr << "verdict " << sturm::to_string(report.verdict)
              << ", embedding estimate " << report.embedding_constant_estimate
              << ", adverse separability trend "
              << (report.adverse_separability_trend ? "yes" : "no") << "\n";
    const bool ok = report.verdict == sturm::Verdict::CorrectlySolvable &&
                    std::isfinite(report.embedding_constant_estimate) &&
                    report.adverse_separability_trend;
    return ok ? kExitOk : kExitCheckFailed;
  }
  std::cerr << "unknown example id: " << cfg.example_id
            << " (expected 1.7 or 1.8)\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("STURMLINE_WORKERS")) {
    cfg.workers = std::max(1, std::atoi(env));
  }

  // Config file first, flags override.
  try {
    for (int i = 1; i + 1 < argc; ++i) {
      if (std::string(argv[i]) == "--config") {
        apply_config_file(argv[i + 1], cfg);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{
      "sturmline: solvability analysis and solvers for -y'' + q y = f on the "
      "real line"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)");

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q_spec, "coefficient spec, kind:params or JSON");
    sub->add_option("--p", cfg.p, "Lebesgue exponent p >= 1");
    sub->add_option("--domain", cfg.domain, "analysis domain lo:hi");
    sub->add_option("--n-points", cfg.n_points, "grid points / steps");
    sub->add_option("--root-tol", cfg.root_tol, "residual tolerance for d(x)");
    sub->add_option("--wronskian-tol", cfg.wronskian_tol,
                    "admissible Wronskian drift");
    sub->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
    sub->add_option("--out", cfg.out, "output path prefix");
    sub->add_option("--seed", cfg.seed, "seed recorded in the meta sidecar");
  };

  auto* analyze = app.add_subcommand("analyze", "Otelbaev profile and verdict");
  add_common(analyze);
  analyze->add_option("--a", cfg.a_list, "window radii for m(a), comma list");

  auto* solve = app.add_subcommand("solve", "solve with both paths and compare");
  add_common(solve);
  solve->add_option("--f", cfg.f_specs, "forcing spec (repeatable)");
  solve->add_option("--cross-tol", cfg.cross_tol,
                    "admissible cross-solver deviation");
  solve->add_flag("--force", cfg.force, "solve even when not solvable");

  auto* verify = app.add_subcommand("verify", "window bounds and ratio checks");
  add_common(verify);
  verify->add_option("--centers", cfg.centers, "number of sweep centers");

  auto* reproduce = app.add_subcommand("reproduce", "packaged studies");
  add_common(reproduce);
  reproduce->add_option("--example", cfg.example_id, "study id: 1.7 or 1.8");
  reproduce->add_option("--theta", cfg.theta_list, "theta sweep, comma list");
  reproduce->add_option("--domains", cfg.domain_list,
                        "domain right ends, comma list");
  reproduce->add_option("--alpha", cfg.alpha, "spike width exponent");
  reproduce->add_option("--beta", cfg.beta, "spike height exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (reproduce->parsed()) return cmd_reproduce(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
