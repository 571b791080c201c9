#include "sturm/report.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace sturm {

namespace {

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Json to_json(const OtelbaevProfile& profile, const std::string& coefficient) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "otelbaev_profile";
  j["coefficient"] = coefficient;
  j["x_grid"] = profile.x_grid;
  j["d_values"] = profile.d_values;
  j["d0_estimate"] = profile.d0_estimate;
  Json m = Json::array();
  for (const auto& entry : profile.m_table) {
    m.push_back({{"a", entry.a}, {"m_estimate", entry.m_estimate}});
  }
  j["m_table"] = m;
  j["root_tol"] = profile.root_tol;
  j["verdict"] = to_string(profile.verdict);

  Json e;
  e["tail_status"] = to_string(profile.evidence.tail.status);
  e["tail_probe_bound"] = profile.evidence.tail.probe_bound;
  e["tail_left_min"] = profile.evidence.tail.left_min;
  e["tail_right_min"] = profile.evidence.tail.right_min;
  e["positivity_margin"] = profile.evidence.positivity_margin;
  if (profile.evidence.margin_a) {
    e["margin_a"] = *profile.evidence.margin_a;
  } else {
    e["margin_a"] = nullptr;
  }
  if (profile.evidence.growth_ratio) {
    e["growth_ratio"] = *profile.evidence.growth_ratio;
  } else {
    e["growth_ratio"] = nullptr;
  }
  e["growth_flag"] = profile.evidence.growth_flag;
  e["failed_x"] = profile.evidence.failed_x;
  e["summary"] = profile.evidence.summary;
  j["evidence"] = e;
  return j;
}

Json to_json(const NormRecord& norms) {
  Json j;
  j["lp"] = norms.lp;
  j["lp_weighted"] = norms.lp_weighted;
  j["lp_ddy"] = norms.lp_ddy;
  j["lp_qy"] = norms.lp_qy;
  j["lp_defect"] = norms.lp_defect;
  j["forcing"] = norms.forcing;
  return j;
}

Json to_json(const SolveResult& result) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "solve_result";
  j["method"] = result.method == SolveMethod::Green ? "green" : "fd";
  j["p"] = result.p;
  j["residual_norm"] = result.residual_norm;
  j["residual_tol"] = result.residual_tol;
  j["norms"] = to_json(result.norms);
  j["warnings"] = result.warnings;
  return j;
}

Json to_json(const DiagnosticsReport& report) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "diagnostics_report";
  j["coefficient"] = report.coefficient;
  j["p"] = report.p;
  j["verdict"] = to_string(report.verdict);
  j["d0_estimate"] = report.d0_estimate;
  j["profile_summary"] = report.profile_summary;
  j["embedding_constant_estimate"] = report.embedding_constant_estimate;
  const auto series_json = [](const std::vector<LabeledRatio>& series) {
    Json out = Json::array();
    for (const auto& e : series) {
      out.push_back({{"label", e.label}, {"ratio", e.ratio}});
    }
    return out;
  };
  j["separability_ratio_series"] = series_json(report.separability_ratio_series);
  j["separability_narrow_series"] =
      series_json(report.separability_narrow_series);
  j["norm_equivalence_series"] = series_json(report.norm_equivalence_series);
  j["window_checks_passed"] = report.window_checks_passed;
  j["window_checks_total"] = report.window_checks_total;
  j["adverse_separability_trend"] = report.adverse_separability_trend;
  j["norm_equivalence_bounded"] = report.norm_equivalence_bounded;
  j["separability_band"] = report.separability_band;
  j["norm_equivalence_band"] = report.norm_equivalence_band;
  return j;
}

Json to_json(const CosPowerStudy& study) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "cospower_study";
  j["a"] = study.a;
  Json rows = Json::array();
  for (const auto& r : study.rows) {
    Json row;
    row["theta"] = r.theta;
    row["x_max"] = r.x_max;
    row["m_estimate"] = r.m_estimate;
    row["d_max"] = r.d_max;
    if (r.growth_ratio) {
      row["growth_ratio"] = *r.growth_ratio;
    } else {
      row["growth_ratio"] = nullptr;
    }
    row["growth_flag"] = r.growth_flag;
    rows.push_back(row);
  }
  j["rows"] = rows;
  Json outcomes = Json::array();
  for (const auto& o : study.outcomes) {
    Json oj;
    oj["theta"] = o.theta;
    oj["m_strictly_decreasing"] = o.m_strictly_decreasing;
    oj["m_rel_change"] = o.m_rel_change;
    oj["stabilized"] = o.stabilized;
    oj["growth_flag"] = o.growth_flag;
    oj["matches_threshold"] = o.matches_threshold;
    outcomes.push_back(oj);
  }
  j["outcomes"] = outcomes;
  j["all_match"] = study.all_match;
  return j;
}

std::string profile_csv(const OtelbaevProfile& profile) {
  std::ostringstream os;
  os << "x,d\n";
  for (std::size_t i = 0; i < profile.x_grid.size(); ++i) {
    os << csv_number(profile.x_grid[i]) << "," << csv_number(profile.d_values[i])
       << "\n";
  }
  return os.str();
}

std::string fss_csv(const FundamentalSystem& fss) {
  std::ostringstream os;
  os << "x,u,du,v,dv\n";
  for (std::size_t i = 0; i < fss.grid.size(); ++i) {
    os << csv_number(fss.grid[i]) << "," << csv_number(fss.u[i]) << ","
       << csv_number(fss.du[i]) << "," << csv_number(fss.v[i]) << ","
       << csv_number(fss.dv[i]) << "\n";
  }
  return os.str();
}

std::string solution_csv(const SolveResult& result) {
  std::ostringstream os;
  os << "x,y,dy,ddy\n";
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    os << csv_number(result.grid[i]) << "," << csv_number(result.y[i]) << ","
       << csv_number(result.dy[i]) << "," << csv_number(result.ddy[i]) << "\n";
  }
  return os.str();
}

std::string cospower_csv(const CosPowerStudy& study) {
  std::ostringstream os;
  os << "theta,x_max,m_estimate,d_max,growth_ratio,growth_flag\n";
  for (const auto& r : study.rows) {
    os << csv_number(r.theta) << "," << csv_number(r.x_max) << ","
       << csv_number(r.m_estimate) << "," << csv_number(r.d_max) << ","
       << (r.growth_ratio ? csv_number(*r.growth_ratio) : std::string("nan"))
       << "," << (r.growth_flag ? 1 : 0) << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_meta_sidecar(const std::string& path, const std::string& tool,
                        long long seed_or_negative) {
  Json j;
  j["tool"] = tool;
  const auto now = std::chrono::system_clock::now();
  j["timestamp_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          now.time_since_epoch())
          .count();
  if (seed_or_negative >= 0) {
    j["seed"] = seed_or_negative;
  } else {
    j["seed"] = nullptr;
  }
  write_file(path, j.dump(2) + "\n");
}

}  // namespace sturm
