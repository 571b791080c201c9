#include "sturm/otelbaev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sturm/errors.hpp"

namespace sturm {

const char* to_string(TailStatus s) {
  switch (s) {
    case TailStatus::Holds: return "holds";
    case TailStatus::FailsLeft: return "fails_left";
    case TailStatus::FailsRight: return "fails_right";
    case TailStatus::FailsBoth: return "fails_both";
    case TailStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CorrectlySolvable: return "correctly_solvable";
    case Verdict::NotSolvable: return "not_solvable";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

TailProbe check_tail_positivity(const Coefficient& coeff, double probe_bound,
                                double fail_eps, double hold_margin) {
  if (!(probe_bound > 0.0)) {
    throw std::invalid_argument("probe_bound must be positive");
  }
  const double b = probe_bound;
  TailProbe probe;
  probe.probe_bound = b;

  // Sweep x over the inner half so each side keeps substance to integrate.
  constexpr int kProbes = 9;
  double left_min = std::numeric_limits<double>::infinity();
  double right_min = left_min;
  for (int i = 0; i < kProbes; ++i) {
    const double x = -0.5 * b + b * static_cast<double>(i) / (kProbes - 1);
    left_min = std::min(left_min, coeff.integrate(-b, x));
    right_min = std::min(right_min, coeff.integrate(x, b));
  }
  probe.left_min = left_min;
  probe.right_min = right_min;

  const bool left_fails = left_min <= fail_eps;
  const bool right_fails = right_min <= fail_eps;
  if (left_fails && right_fails) {
    probe.status = TailStatus::FailsBoth;
  } else if (left_fails) {
    probe.status = TailStatus::FailsLeft;
  } else if (right_fails) {
    probe.status = TailStatus::FailsRight;
  } else if (left_min > hold_margin && right_min > hold_margin) {
    probe.status = TailStatus::Holds;
  } else {
    probe.status = TailStatus::Inconclusive;
  }
  return probe;
}

double d_of_x(const Coefficient& coeff, double x, double root_tol,
              double bracket_cap) {
  if (!(root_tol > 0.0)) throw std::invalid_argument("root_tol must be positive");

  const auto residual = [&](double d) {
    return d * coeff.window_integral(x, d) - 2.0;
  };

  // F(0) = -2; double the upper end until the sign flips.
  double lo = 0.0;
  double hi = 1.0;
  double f_hi = residual(hi);
  while (f_hi < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > bracket_cap) {
      throw NoFiniteRootError(
          "d_of_x: no finite positive root below the bracket cap (tail "
          "positivity effectively fails here)",
          hi);
    }
    f_hi = residual(hi);
  }

  double mid = hi;
  double f_mid = f_hi;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    f_mid = residual(mid);
    if (std::abs(f_mid) <= root_tol) return mid;
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
  }
  if (std::abs(f_mid) <= root_tol) return mid;
  throw ToleranceError("d_of_x: bisection stalled above root_tol", mid);
}

double m_of_a(const Coefficient& coeff, double a,
              const std::vector<double>& x_grid) {
  if (!(a > 0.0)) throw std::invalid_argument("m_of_a: a must be positive");
  if (x_grid.empty()) throw std::invalid_argument("m_of_a: empty grid");
  double best = std::numeric_limits<double>::infinity();
  for (double x : x_grid) {
    best = std::min(best, coeff.window_integral(x, a));
  }
  return best;
}

std::optional<double> growth_ratio(const std::vector<double>& x,
                                   const std::vector<double>& d, double x_lo,
                                   double x_hi) {
  const double outer_from = x_lo + 0.9 * (x_hi - x_lo);
  const double inner_to = x_lo + 0.5 * (x_hi - x_lo);
  double outer_max = 0.0;
  bool outer_seen = false;
  std::vector<double> inner;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= outer_from) {
      outer_max = std::max(outer_max, d[i]);
      outer_seen = true;
    }
    if (x[i] <= inner_to) inner.push_back(d[i]);
  }
  if (!outer_seen || inner.empty()) return std::nullopt;
  std::sort(inner.begin(), inner.end());
  const double inner_median = inner[inner.size() / 2];
  if (inner_median <= 0.0) return std::nullopt;
  return outer_max / inner_median;
}

OtelbaevProfile build_profile(const Coefficient& coeff, double x_lo,
                              double x_hi, int n_points,
                              const std::vector<double>& a_list,
                              const ProfileOptions& opts) {
  if (!(x_lo < x_hi)) throw std::invalid_argument("build_profile: x_lo < x_hi required");
  if (n_points < 2) throw std::invalid_argument("build_profile: n_points >= 2 required");

  OtelbaevProfile profile;
  profile.root_tol = opts.root_tol;
  profile.evidence.positivity_margin = opts.positivity_margin;

  const double probe_bound =
      opts.probe_bound.value_or(std::max({std::abs(x_lo), std::abs(x_hi), 1.0}));
  profile.evidence.tail = check_tail_positivity(coeff, probe_bound);

  std::vector<double> grid(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        x_lo + (x_hi - x_lo) * static_cast<double>(i) / (n_points - 1);
  }

  // d(x) sweep; grid points are independent.  Results land by index so the
  // profile does not depend on scheduling.
  std::vector<double> d_raw(grid.size(),
                            std::numeric_limits<double>::quiet_NaN());
  const auto sweep = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        d_raw[i] = d_of_x(coeff, grid[i], opts.root_tol);
      } catch (const NoFiniteRootError&) {
        // left as NaN; collected below
      } catch (const ToleranceError&) {
      }
    }
  };
  const int workers = std::max(1, opts.workers);
  if (workers == 1 || grid.size() < 2 * static_cast<std::size_t>(workers)) {
    sweep(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (grid.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(grid.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(sweep, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::isnan(d_raw[i])) {
      profile.evidence.failed_x.push_back(grid[i]);
    } else {
      profile.x_grid.push_back(grid[i]);
      profile.d_values.push_back(d_raw[i]);
    }
  }
  profile.d0_estimate =
      profile.d_values.empty()
          ? std::numeric_limits<double>::quiet_NaN()
          : *std::max_element(profile.d_values.begin(), profile.d_values.end());

  for (double a : a_list) {
    profile.m_table.push_back({a, m_of_a(coeff, a, grid)});
  }

  // Evidence: first a whose window mass clears the positivity margin, and
  // the growth trend of d toward the domain boundary.
  for (const auto& entry : profile.m_table) {
    if (entry.m_estimate > opts.positivity_margin) {
      profile.evidence.margin_a = entry.a;
      break;
    }
  }
  profile.evidence.growth_ratio =
      growth_ratio(profile.x_grid, profile.d_values, x_lo, x_hi);
  profile.evidence.growth_flag =
      profile.evidence.growth_ratio.has_value() &&
      *profile.evidence.growth_ratio > opts.growth_ratio_threshold;

  const TailStatus tail = profile.evidence.tail.status;
  if (tail == TailStatus::FailsLeft || tail == TailStatus::FailsRight ||
      tail == TailStatus::FailsBoth) {
    profile.verdict = Verdict::NotSolvable;
  } else if (tail == TailStatus::Holds && profile.evidence.margin_a &&
             !profile.evidence.growth_flag &&
             profile.evidence.failed_x.empty() &&
             profile.evidence.growth_ratio.has_value()) {
    profile.verdict = Verdict::CorrectlySolvable;
  } else {
    profile.verdict = Verdict::Inconclusive;
  }

  std::ostringstream os;
  os << "tail=" << to_string(tail);
  if (profile.evidence.margin_a) {
    os << "; m(" << *profile.evidence.margin_a << ") > margin";
  } else {
    os << "; no a cleared the positivity margin";
  }
  if (profile.evidence.growth_ratio) {
    os << "; d growth ratio " << *profile.evidence.growth_ratio
       << (profile.evidence.growth_flag ? " (growing)" : " (flat)");
  }
  if (!profile.evidence.failed_x.empty()) {
    os << "; " << profile.evidence.failed_x.size()
       << " grid points without a finite d";
  }
  profile.evidence.summary = os.str();
  return profile;
}

}  // namespace sturm
