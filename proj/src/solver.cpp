#include "sturm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sturm/norms.hpp"

namespace sturm {

namespace {

void validate(const GaussianForcing& f) {
  if (!(f.width > 0.0)) throw std::invalid_argument("gaussian forcing: width > 0");
}
void validate(const ExpAbsForcing& f) {
  if (!(f.scale > 0.0)) throw std::invalid_argument("expabs forcing: scale > 0");
}
void validate(const CompactBumpForcing& f) {
  if (!(f.radius > 0.0)) throw std::invalid_argument("bump forcing: radius > 0");
}
void validate(const ZeroForcing&) {}
void validate(const SampledForcing& f) {
  if (f.grid.size() < 2 || f.grid.size() != f.values.size()) {
    throw std::invalid_argument("sampled forcing: >= 2 matching samples");
  }
  for (std::size_t i = 1; i < f.grid.size(); ++i) {
    if (!(f.grid[i - 1] < f.grid[i])) {
      throw std::invalid_argument("sampled forcing: grid must be increasing");
    }
  }
}

}  // namespace

ForcingTerm::ForcingTerm(Spec spec) : spec_(std::move(spec)) {
  std::visit([](const auto& s) { validate(s); }, spec_);
}

ForcingTerm ForcingTerm::gaussian(double center, double width) {
  return ForcingTerm(GaussianForcing{center, width});
}
ForcingTerm ForcingTerm::exp_abs(double scale) {
  return ForcingTerm(ExpAbsForcing{scale});
}
ForcingTerm ForcingTerm::compact_bump(double center, double radius) {
  return ForcingTerm(CompactBumpForcing{center, radius});
}
ForcingTerm ForcingTerm::zero() { return ForcingTerm(ZeroForcing{}); }
ForcingTerm ForcingTerm::sampled(std::vector<double> grid,
                                 std::vector<double> values) {
  return ForcingTerm(SampledForcing{std::move(grid), std::move(values)});
}

double ForcingTerm::eval(double x) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianForcing>) {
          const double t = (x - s.center) / s.width;
          return std::exp(-0.5 * t * t);
        } else if constexpr (std::is_same_v<T, ExpAbsForcing>) {
          return std::exp(-std::abs(x) / s.scale);
        } else if constexpr (std::is_same_v<T, CompactBumpForcing>) {
          const double t = (x - s.center) / s.radius;
          if (std::abs(t) >= 1.0) return 0.0;
          return std::exp(1.0 - 1.0 / (1.0 - t * t));
        } else if constexpr (std::is_same_v<T, ZeroForcing>) {
          return 0.0;
        } else {
          if (x <= s.grid.front() || x >= s.grid.back()) return 0.0;
          const auto it = std::upper_bound(s.grid.begin(), s.grid.end(), x);
          const std::size_t hi = static_cast<std::size_t>(it - s.grid.begin());
          const std::size_t lo = hi - 1;
          const double t = (x - s.grid[lo]) / (s.grid[hi] - s.grid[lo]);
          return s.values[lo] + t * (s.values[hi] - s.values[lo]);
        }
      },
      spec_);
}

std::vector<double> ForcingTerm::kinks_in(double a, double b) const {
  std::vector<double> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExpAbsForcing>) {
          if (a < 0.0 && 0.0 < b) out.push_back(0.0);
        } else if constexpr (std::is_same_v<T, SampledForcing>) {
          for (double e : s.grid) {
            if (a < e && e < b) out.push_back(e);
          }
        }
      },
      spec_);
  return out;
}

std::string ForcingTerm::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianForcing>) {
          os << "gaussian:" << s.center << "," << s.width;
        } else if constexpr (std::is_same_v<T, ExpAbsForcing>) {
          os << "expabs:" << s.scale;
        } else if constexpr (std::is_same_v<T, CompactBumpForcing>) {
          os << "bump:" << s.center << "," << s.radius;
        } else if constexpr (std::is_same_v<T, ZeroForcing>) {
          os << "zero";
        } else {
          os << "sampled:<" << s.grid.size() << " samples>";
        }
      },
      spec_);
  return os.str();
}

ForcingTerm ForcingTerm::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty forcing spec");
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<double> v;
  if (colon != std::string::npos) {
    std::size_t pos = colon + 1;
    while (pos <= text.size() && pos > 0) {
      std::size_t next = text.find(',', pos);
      if (next == std::string::npos) next = text.size();
      if (next > pos) v.push_back(std::stod(text.substr(pos, next - pos)));
      pos = next + 1;
    }
  }
  if (kind == "gaussian") {
    if (v.size() != 2) throw std::invalid_argument("gaussian:<center>,<width>");
    return gaussian(v[0], v[1]);
  }
  if (kind == "expabs") {
    if (v.size() != 1) throw std::invalid_argument("expabs:<scale>");
    return exp_abs(v[0]);
  }
  if (kind == "bump") {
    if (v.size() != 2) throw std::invalid_argument("bump:<center>,<radius>");
    return compact_bump(v[0], v[1]);
  }
  if (kind == "zero") return zero();
  throw std::invalid_argument("unknown forcing kind: " + kind);
}

GridFunction SolveResult::as_grid_function() const {
  GridFunction g;
  g.grid = grid;
  g.values = y;
  g.d1 = dy;
  g.d2 = ddy;
  return g;
}

namespace {

NormRecord compute_norms(const Coefficient& coeff,
                         const std::vector<double>& grid,
                         const std::vector<double>& y,
                         const std::vector<double>& ddy,
                         const std::vector<double>& fv, double p) {
  const std::size_t n = grid.size();
  std::vector<double> weighted(n), qy(n), defect(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = coeff.eval(grid[i]);
    weighted[i] = std::pow(q, 1.0 / p) * y[i];
    qy[i] = q * y[i];
    defect[i] = ddy[i] - qy[i];
  }
  NormRecord r;
  r.lp = lp_norm(grid, y, p);
  r.lp_weighted = lp_norm(grid, weighted, p);
  r.lp_ddy = lp_norm(grid, ddy, p);
  r.lp_qy = lp_norm(grid, qy, p);
  r.lp_defect = lp_norm(grid, defect, p);
  r.forcing = lp_norm(grid, fv, p);
  return r;
}

void attach_truncation_warning(SolveResult& result,
                               const std::vector<double>& fv,
                               const SolveOptions& opts) {
  GridFunction g;
  g.grid = result.grid;
  g.values = fv;
  const double frac = boundary_mass_fraction(g, result.p);
  if (frac > opts.truncation_warn_fraction) {
    std::ostringstream os;
    os << "forcing carries " << frac
       << " of its mass in the outer 5% of the domain; truncation may bias "
          "the solution";
    result.warnings.push_back(os.str());
  }
}

}  // namespace

SolveResult solve_green(const Coefficient& coeff, const FundamentalSystem& fss,
                        const ForcingTerm& f, double p,
                        const SolveOptions& opts) {
  if (!(p >= 1.0)) throw std::invalid_argument("solve_green: p >= 1 required");
  const auto& x = fss.grid;
  const std::size_t n = x.size();

  std::vector<double> fv(n);
  for (std::size_t i = 0; i < n; ++i) fv[i] = f.eval(x[i]);

  // y(x) = u(x) * int_{-L}^{x} v f + v(x) * int_{x}^{L} u f via prefix sums;
  // the derivative drops the product terms exactly.
  std::vector<double> vf_prefix(n, 0.0), uf_prefix(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double h = x[i] - x[i - 1];
    vf_prefix[i] = vf_prefix[i - 1] +
                   0.5 * h * (fss.v[i] * fv[i] + fss.v[i - 1] * fv[i - 1]);
    uf_prefix[i] = uf_prefix[i - 1] +
                   0.5 * h * (fss.u[i] * fv[i] + fss.u[i - 1] * fv[i - 1]);
  }
  const double uf_total = uf_prefix[n - 1];

  SolveResult result;
  result.grid = x;
  result.p = p;
  result.method = SolveMethod::Green;
  result.y.resize(n);
  result.dy.resize(n);
  result.ddy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tail = uf_total - uf_prefix[i];
    result.y[i] = fss.u[i] * vf_prefix[i] + fss.v[i] * tail;
    result.dy[i] = fss.du[i] * vf_prefix[i] + fss.dv[i] * tail;
    result.ddy[i] = coeff.eval(x[i]) * result.y[i] - fv[i];
  }

  // The identity y'' = q y - f closes the equation exactly; the residual is
  // zero by construction and kept as a consistency guard.
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = -result.ddy[i] + coeff.eval(x[i]) * result.y[i] - fv[i];
  }
  result.residual_norm = lp_norm(x, r, p);
  result.norms = compute_norms(coeff, x, result.y, result.ddy, fv, p);
  result.residual_tol = 1e-9 * (1.0 + result.norms.forcing);
  attach_truncation_warning(result, fv, opts);
  return result;
}

SolveResult solve_fd(const Coefficient& coeff, const ForcingTerm& f, double L,
                     int n, double p, const SolveOptions& opts) {
  if (!(p >= 1.0)) throw std::invalid_argument("solve_fd: p >= 1 required");
  if (n < 16) throw std::invalid_argument("solve_fd: n >= 16 required");
  if (!(L > 0.0)) throw std::invalid_argument("solve_fd: L > 0 required");

  // Uniform grid with interior nodes snapped onto coefficient breakpoints and
  // forcing kinks, so jumps land on nodes instead of being smeared.
  const std::size_t nn = static_cast<std::size_t>(n) + 1;
  std::vector<double> x(nn);
  const double h = 2.0 * L / n;
  for (std::size_t i = 0; i < nn; ++i) x[i] = -L + h * static_cast<double>(i);
  x.back() = L;
  std::vector<double> snap = coeff.breakpoints_in(-L, L);
  for (double k : f.kinks_in(-L, L)) snap.push_back(k);
  snap.push_back(0.0);
  std::vector<bool> snapped(nn, false);
  for (double r : snap) {
    if (!(r > -L && r < L)) continue;
    const auto k = static_cast<std::size_t>(std::lround((r + L) / h));
    if (k == 0 || k >= nn - 1 || snapped[k]) continue;
    x[k] = r;
    snapped[k] = true;
  }

  std::vector<double> fv(nn), qbar(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) fv[i] = f.eval(x[i]);
  for (std::size_t i = 1; i + 1 < nn; ++i) {
    const double lo = 0.5 * (x[i - 1] + x[i]);
    const double hi = 0.5 * (x[i] + x[i + 1]);
    qbar[i] = coeff.integrate(lo, hi) / (hi - lo);
  }

  // Tridiagonal system: -D2 y + qbar y = f, zero Dirichlet ends.
  std::vector<double> sub(nn, 0.0), diag(nn, 1.0), sup(nn, 0.0), rhs(nn, 0.0);
  double max_qbar = 0.0;
  for (std::size_t i = 1; i + 1 < nn; ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    sub[i] = -2.0 / (hm * (hm + hp));
    sup[i] = -2.0 / (hp * (hm + hp));
    diag[i] = 2.0 / (hm * hp) + qbar[i];
    rhs[i] = fv[i];
    max_qbar = std::max(max_qbar, qbar[i]);
  }

  // Thomas sweep.
  std::vector<double> c_star(nn, 0.0), d_star(nn, 0.0);
  for (std::size_t i = 1; i + 1 < nn; ++i) {
    const double m = diag[i] - sub[i] * c_star[i - 1];
    c_star[i] = sup[i] / m;
    d_star[i] = (rhs[i] - sub[i] * d_star[i - 1]) / m;
  }
  std::vector<double> y(nn, 0.0);
  for (std::size_t i = nn - 2; i >= 1; --i) {
    y[i] = d_star[i] - c_star[i] * y[i + 1];
    if (i == 1) break;
  }

  SolveResult result;
  result.grid = x;
  result.p = p;
  result.method = SolveMethod::FiniteDifference;
  result.y = y;
  result.dy.assign(nn, 0.0);
  result.ddy.assign(nn, 0.0);
  for (std::size_t i = 0; i < nn; ++i) {
    if (i > 0 && i + 1 < nn) {
      result.dy[i] = (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
    }
    result.ddy[i] = coeff.eval(x[i]) * y[i] - fv[i];
  }
  result.dy[0] = (y[1] - y[0]) / (x[1] - x[0]);
  result.dy[nn - 1] = (y[nn - 1] - y[nn - 2]) / (x[nn - 1] - x[nn - 2]);

  // Residual of the assembled system itself (direct solve: roundoff level).
  std::vector<double> r(nn, 0.0);
  for (std::size_t i = 1; i + 1 < nn; ++i) {
    r[i] = sub[i] * y[i - 1] + diag[i] * y[i] + sup[i] * y[i + 1] - rhs[i];
  }
  result.residual_norm = lp_norm(x, r, p);
  result.norms = compute_norms(coeff, x, result.y, result.ddy, fv, p);
  result.residual_tol = 1e-9 * (1.0 + result.norms.forcing);
  attach_truncation_warning(result, fv, opts);
  if (max_qbar == 0.0) {
    result.warnings.push_back(
        "coefficient vanishes on the whole domain: diagonal dominance margin "
        "is zero and conditioning scales like (L/h)^2");
  }
  return result;
}

double check_correct_solvability_constant(
    const std::vector<SolveResult>& results,
    const std::vector<double>& f_norms) {
  if (results.size() != f_norms.size()) {
    throw std::invalid_argument("results/f_norms size mismatch");
  }
  double best = -1.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (f_norms[i] <= 0.0) continue;  // zero forcing carries no information
    best = std::max(best, results[i].norms.lp / f_norms[i]);
  }
  if (best < 0.0) throw std::invalid_argument("no admissible samples");
  return best;
}

std::optional<double> check_weighted_estimate(const SolveResult& result,
                                              double f_norm) {
  if (f_norm <= 0.0) return std::nullopt;
  return result.norms.lp_weighted / f_norm;
}

}  // namespace sturm
