#include "sturm/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sturm/quadrature.hpp"

#include <json.hpp>

namespace sturm {

namespace {

// Phase above which the oscillatory integral of cos(t^theta) switches to the
// integration-by-parts asymptotic form.
constexpr double kPhaseSplit = 1000.0;

double spike_half_width(int n, double alpha) {
  return std::pow(static_cast<double>(n), -alpha);
}

// Simpson refinement floor that resolves the phase span of cos(|t|^theta)
// before the error estimate is trusted.
int cos_min_depth(double theta, double a, double b, int max_depth) {
  const double pa = std::pow(std::abs(a), theta);
  const double pb = std::pow(std::abs(b), theta);
  const double panels = std::max(1.0, std::abs(pb - pa) / 1.5);
  const int depth = static_cast<int>(std::ceil(std::log2(panels)));
  return std::min(depth, max_depth - 2);
}

// Antiderivative of cos(u) * psi(u) with psi(u) = (1/theta) u^{1/theta - 1}
// (the substituted form of cos(t^theta) dt), by repeated integration by
// parts; valid and accurate once u is large.  Terms follow the cycle
// +sin, +cos, -sin, -cos.
double ibp_antiderivative(double u, double theta) {
  const double p0 = 1.0 / theta - 1.0;
  double coeff = 1.0 / theta;
  double power = p0;
  const double s = std::sin(u);
  const double c = std::cos(u);
  const double trig[4] = {s, c, -s, -c};
  double total = 0.0;
  for (int k = 0; k < 6; ++k) {
    total += trig[k % 4] * coeff * std::pow(u, power);
    coeff *= power;
    power -= 1.0;
  }
  return total;
}

// Bound for the dropped remainder of ibp_antiderivative over [A, inf).
double ibp_remainder_bound(double A, double theta) {
  const double p0 = 1.0 / theta - 1.0;
  if (p0 >= 4.5) return std::numeric_limits<double>::infinity();
  double coeff = 1.0 / theta;
  double power = p0;
  for (int k = 0; k < 6; ++k) {
    coeff *= power;
    power -= 1.0;
  }
  // integral of |c6| u^{p0-6} from A: |c6| A^{p0-5} / (5 - p0)
  return std::abs(coeff) * std::pow(A, p0 - 5.0) / (5.0 - p0);
}

// Overlap length of [a, b] with [lo, hi]; zero when disjoint.
double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

void validate(const Constant& c) {
  if (!(c.q0 >= 0.0) || !std::isfinite(c.q0)) {
    throw std::invalid_argument("constant coefficient requires q0 >= 0");
  }
}

void validate(const CosPower& c) {
  if (!(c.theta > 0.0) || !std::isfinite(c.theta)) {
    throw std::invalid_argument("cospower coefficient requires theta > 0");
  }
}

void validate(const SpikeLattice& c) {
  if (!(c.beta > 0.0) || !(c.alpha > c.beta)) {
    throw std::invalid_argument(
        "spike lattice requires 0 < beta < alpha (the upper bound alpha < "
        "p*beta is an experiment-level constraint)");
  }
  if (c.n_max < 2) {
    throw std::invalid_argument("spike lattice requires n_max >= 2");
  }
  // Disjointness of consecutive intervals is worst at n = 2.
  if (spike_half_width(2, c.alpha) + spike_half_width(3, c.alpha) >= 1.0) {
    throw std::invalid_argument(
        "spike lattice intervals overlap: need 2^-alpha + 3^-alpha < 1");
  }
}

void validate(const PiecewiseConstant& c) {
  if (c.breakpoints.empty() || c.values.size() != c.breakpoints.size() + 1) {
    throw std::invalid_argument(
        "piecewise coefficient requires values.size() == breakpoints.size() + 1");
  }
  for (std::size_t i = 1; i < c.breakpoints.size(); ++i) {
    if (!(c.breakpoints[i - 1] < c.breakpoints[i])) {
      throw std::invalid_argument("piecewise breakpoints must be strictly increasing");
    }
  }
  for (double v : c.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("piecewise values must be nonnegative");
    }
  }
}

void validate(const SampledCoefficient& c) {
  if (c.grid.size() < 2 || c.grid.size() != c.values.size()) {
    throw std::invalid_argument("sampled coefficient requires >= 2 matching samples");
  }
  for (std::size_t i = 1; i < c.grid.size(); ++i) {
    if (!(c.grid[i - 1] < c.grid[i])) {
      throw std::invalid_argument("sampled grid must be strictly increasing");
    }
  }
  for (double v : c.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("sampled values must be nonnegative");
    }
  }
}

}  // namespace

WindowIntegralMethod WindowIntegralMethod::adaptive(double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  WindowIntegralMethod m;
  m.kind = Kind::AdaptiveQuadrature;
  m.abs_tol = abs_tol;
  m.max_depth = max_depth;
  return m;
}

Coefficient::Coefficient(Spec spec) : spec_(std::move(spec)) {
  std::visit([](const auto& s) { validate(s); }, spec_);

  if (const auto* sl = std::get_if<SpikeLattice>(&spec_)) {
    spike_prefix_.assign(static_cast<std::size_t>(sl->n_max) + 1, 0.0);
    for (int n = 2; n <= sl->n_max; ++n) {
      const double w = 2.0 * spike_half_width(n, sl->alpha);
      spike_prefix_[static_cast<std::size_t>(n)] =
          spike_prefix_[static_cast<std::size_t>(n) - 1] +
          (std::pow(static_cast<double>(n), sl->beta) - 1.0) * w;
    }
  } else if (const auto* pc = std::get_if<PiecewiseConstant>(&spec_)) {
    // Antiderivative at each breakpoint, with Q(breakpoints[0]) = 0.
    node_antiderivative_.assign(pc->breakpoints.size(), 0.0);
    for (std::size_t i = 1; i < pc->breakpoints.size(); ++i) {
      node_antiderivative_[i] =
          node_antiderivative_[i - 1] +
          pc->values[i] * (pc->breakpoints[i] - pc->breakpoints[i - 1]);
    }
  } else if (const auto* sc = std::get_if<SampledCoefficient>(&spec_)) {
    node_antiderivative_.assign(sc->grid.size(), 0.0);
    for (std::size_t i = 1; i < sc->grid.size(); ++i) {
      node_antiderivative_[i] =
          node_antiderivative_[i - 1] +
          0.5 * (sc->values[i] + sc->values[i - 1]) *
              (sc->grid[i] - sc->grid[i - 1]);
    }
  }
}

Coefficient Coefficient::constant(double q0) { return Coefficient(Constant{q0}); }

Coefficient Coefficient::cos_power(double theta) {
  return Coefficient(CosPower{theta});
}

Coefficient Coefficient::spike_lattice(double alpha, double beta, int n_max) {
  return Coefficient(SpikeLattice{alpha, beta, n_max});
}

Coefficient Coefficient::piecewise_constant(std::vector<double> breakpoints,
                                            std::vector<double> values) {
  return Coefficient(PiecewiseConstant{std::move(breakpoints), std::move(values)});
}

Coefficient Coefficient::sampled(std::vector<double> grid,
                                 std::vector<double> values) {
  return Coefficient(SampledCoefficient{std::move(grid), std::move(values)});
}

double Coefficient::eval(double x) const {
  if (!std::isfinite(x)) throw std::domain_error("eval: x must be finite");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return s.q0;
        } else if constexpr (std::is_same_v<T, CosPower>) {
          return 1.0 + std::cos(std::pow(std::abs(x), s.theta));
        } else if constexpr (std::is_same_v<T, SpikeLattice>) {
          // Intervals have half-width < 1, so only the two nearest integers
          // can contain x.
          for (int n : {static_cast<int>(std::floor(x)),
                        static_cast<int>(std::ceil(x))}) {
            if (n >= 2 && n <= s.n_max &&
                std::abs(x - n) <= spike_half_width(n, s.alpha)) {
              return std::pow(static_cast<double>(n), s.beta);
            }
          }
          return 1.0;
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          const auto it = std::upper_bound(s.breakpoints.begin(),
                                           s.breakpoints.end(), x);
          return s.values[static_cast<std::size_t>(
              std::distance(s.breakpoints.begin(), it))];
        } else {
          if (x < s.grid.front() || x > s.grid.back()) {
            throw std::domain_error("sampled coefficient evaluated outside hull");
          }
          const auto it =
              std::upper_bound(s.grid.begin(), s.grid.end(), x);
          if (it == s.grid.begin()) return s.values.front();
          if (it == s.grid.end()) return s.values.back();
          const std::size_t hi = static_cast<std::size_t>(
              std::distance(s.grid.begin(), it));
          const std::size_t lo = hi - 1;
          const double t = (x - s.grid[lo]) / (s.grid[hi] - s.grid[lo]);
          return s.values[lo] + t * (s.values[hi] - s.values[lo]);
        }
      },
      spec_);
}

bool Coefficient::has_antiderivative() const {
  return std::visit(
      [](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CosPower>) {
          return s.theta == 1.0;
        } else {
          return true;
        }
      },
      spec_);
}

double Coefficient::antiderivative(double x) const {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return s.q0 * x;
        } else if constexpr (std::is_same_v<T, CosPower>) {
          // Only theta == 1: integral of 1 + cos|t| from 0 is x + sin(x)
          // (cos|t| = cos t, even integrand).
          return x + std::sin(x);
        } else if constexpr (std::is_same_v<T, SpikeLattice>) {
          // Q(x) = x + sum of (n^beta - 1) * |[0, x] ∩ w_n|, all spikes on
          // the positive axis.
          if (x <= 0.0) return x;
          double extra = 0.0;
          // Fully covered spikes: n + half_width <= x.  Half-widths are < 1,
          // so the last full index is floor(x) or floor(x) - 1.
          int n_full = std::min(s.n_max, static_cast<int>(std::floor(x)));
          while (n_full >= 2 &&
                 n_full + spike_half_width(n_full, s.alpha) > x) {
            --n_full;
          }
          if (n_full >= 2) extra += spike_prefix_[static_cast<std::size_t>(n_full)];
          // At most one spike can be partially covered.
          for (int n = std::max(2, n_full + 1);
               n <= std::min(s.n_max, n_full + 2); ++n) {
            const double hw = spike_half_width(n, s.alpha);
            const double part = overlap(0.0, x, n - hw, n + hw);
            if (part > 0.0 && n + hw > x) {
              extra += (std::pow(static_cast<double>(n), s.beta) - 1.0) * part;
            }
          }
          return x + extra;
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          const auto& b = s.breakpoints;
          if (x <= b.front()) {
            return s.values.front() * (x - b.front());
          }
          if (x >= b.back()) {
            return node_antiderivative_.back() +
                   s.values.back() * (x - b.back());
          }
          const auto it = std::upper_bound(b.begin(), b.end(), x);
          const std::size_t hi = static_cast<std::size_t>(std::distance(b.begin(), it));
          return node_antiderivative_[hi - 1] + s.values[hi] * (x - b[hi - 1]);
        } else {
          if (x < s.grid.front() || x > s.grid.back()) {
            throw std::domain_error("sampled coefficient integrated outside hull");
          }
          const auto it = std::upper_bound(s.grid.begin(), s.grid.end(), x);
          if (it == s.grid.end()) return node_antiderivative_.back();
          const std::size_t hi = static_cast<std::size_t>(
              std::distance(s.grid.begin(), it));
          if (hi == 0) return 0.0;
          const std::size_t lo = hi - 1;
          const double h = s.grid[hi] - s.grid[lo];
          const double t = x - s.grid[lo];
          const double slope = (s.values[hi] - s.values[lo]) / h;
          // Exact integral of the linear interpolant over [grid[lo], x].
          return node_antiderivative_[lo] + s.values[lo] * t +
                 0.5 * slope * t * t;
        }
      },
      spec_);
}

// Integral of cos(t^theta) over [a, b], 0 <= a <= b.  Direct Simpson below
// the phase split, integration-by-parts antiderivative beyond it (with its
// remainder checked against the requested tolerance).
double Coefficient::cos_phase_integral(double a, double b, double abs_tol,
                                       int max_depth) const {
  const double theta = std::get<CosPower>(spec_).theta;
  const auto f = [theta](double t) { return std::cos(std::pow(t, theta)); };
  const double split = 1.0 / theta - 1.0 < 4.5
                           ? std::pow(kPhaseSplit, 1.0 / theta)
                           : std::numeric_limits<double>::infinity();
  double total = 0.0;

  const double direct_hi = std::min(b, split);
  if (a < direct_hi) {
    total += adaptive_simpson(f, a, direct_hi, abs_tol, max_depth,
                              cos_min_depth(theta, a, direct_hi, max_depth));
  }
  const double tail_lo = std::max(a, split);
  if (tail_lo < b) {
    const double u_lo = std::pow(tail_lo, theta);
    const double u_hi = std::pow(b, theta);
    if (ibp_remainder_bound(u_lo, theta) <= std::max(abs_tol, 1e-14)) {
      total += ibp_antiderivative(u_hi, theta) -
               ibp_antiderivative(u_lo, theta);
    } else {
      total += adaptive_simpson(f, tail_lo, b, abs_tol, max_depth,
                                cos_min_depth(theta, tail_lo, b, max_depth));
    }
  }
  return total;
}

double Coefficient::quadrature_integral(double a, double b, double abs_tol,
                                        int max_depth) const {
  if (a == b) return 0.0;
  const double sign = a <= b ? 1.0 : -1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);

  // Split at kinks/jumps so each segment is smooth for Simpson.
  std::vector<double> cuts{lo};
  for (double c : breakpoints_in(lo, hi)) cuts.push_back(c);
  cuts.push_back(hi);

  const auto* cp = std::get_if<CosPower>(&spec_);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double sl = cuts[i];
    const double sr = cuts[i + 1];
    if (sr <= sl) continue;
    const double seg_tol =
        std::max(abs_tol * (sr - sl) / (hi - lo), 1e-3 * abs_tol);
    if (cp) {
      // q = 1 + cos(|t|^theta); segments never straddle 0, so evenness maps
      // a negative segment onto the positive axis.
      const double pa = sr <= 0.0 ? -sr : sl;
      const double pb = sr <= 0.0 ? -sl : sr;
      total += (sr - sl) + cos_phase_integral(pa, pb, seg_tol, max_depth);
      continue;
    }
    // One-sided limits at the cut points: pull evaluations into the open
    // segment so a jump sitting exactly on the boundary cannot poison the
    // endpoint samples.
    const double eps = 1e-9 * (sr - sl);
    const auto f = [&](double t) {
      return eval(std::clamp(t, sl + eps, sr - eps));
    };
    total += adaptive_simpson(f, sl, sr, seg_tol, max_depth, 0);
  }
  return sign * total;
}

double Coefficient::integrate(double a, double b) const {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("integrate: bounds must be finite");
  }
  if (has_antiderivative()) {
    return antiderivative(b) - antiderivative(a);
  }
  return quadrature_integral(a, b, 1e-10, 48);
}

double Coefficient::window_integral(double x, double d) const {
  return window_integral(x, d, WindowIntegralMethod::antiderivative());
}

double Coefficient::window_integral(double x, double d,
                                    const WindowIntegralMethod& method) const {
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw std::invalid_argument("window_integral: d must be finite and >= 0");
  }
  if (d == 0.0) return 0.0;
  if (method.kind == WindowIntegralMethod::Kind::Antiderivative) {
    return integrate(x - d, x + d);
  }
  return quadrature_integral(x - d, x + d, method.abs_tol, method.max_depth);
}

std::vector<double> Coefficient::breakpoints_in(double a, double b) const {
  std::vector<double> out;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CosPower>) {
          if (a < 0.0 && 0.0 < b) out.push_back(0.0);  // kink of |x|^theta
        } else if constexpr (std::is_same_v<T, SpikeLattice>) {
          const int n_lo = std::max(2, static_cast<int>(std::floor(a)) - 1);
          const int n_hi = std::min(s.n_max, static_cast<int>(std::ceil(b)) + 1);
          for (int n = n_lo; n <= n_hi; ++n) {
            const double hw = spike_half_width(n, s.alpha);
            for (double e : {n - hw, n + hw}) {
              if (a < e && e < b) out.push_back(e);
            }
          }
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          for (double e : s.breakpoints) {
            if (a < e && e < b) out.push_back(e);
          }
        } else if constexpr (std::is_same_v<T, SampledCoefficient>) {
          for (double e : s.grid) {
            if (a < e && e < b) out.push_back(e);
          }
        }
      },
      spec_);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<double, double>> Coefficient::domain_hull() const {
  if (const auto* sc = std::get_if<SampledCoefficient>(&spec_)) {
    return std::make_pair(sc->grid.front(), sc->grid.back());
  }
  return std::nullopt;
}

std::string Coefficient::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Constant>) {
          os << "constant:" << s.q0;
        } else if constexpr (std::is_same_v<T, CosPower>) {
          os << "cospower:" << s.theta;
        } else if constexpr (std::is_same_v<T, SpikeLattice>) {
          os << "spikes:" << s.alpha << "," << s.beta << "," << s.n_max;
        } else if constexpr (std::is_same_v<T, PiecewiseConstant>) {
          os << "piecewise:";
          for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
            os << (i ? "," : "") << s.breakpoints[i];
          }
          os << ";";
          for (std::size_t i = 0; i < s.values.size(); ++i) {
            os << (i ? "," : "") << s.values[i];
          }
        } else {
          os << "sampled:<" << s.grid.size() << " samples on ["
             << s.grid.front() << ", " << s.grid.back() << "]>";
        }
      },
      spec_);
  return os.str();
}

namespace {

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    out.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

Coefficient from_kind_params(const std::string& kind, const std::string& params) {
  if (kind == "constant") {
    const auto v = parse_number_list(params);
    if (v.size() != 1) throw std::invalid_argument("constant:<q0>");
    return Coefficient::constant(v[0]);
  }
  if (kind == "cospower" || kind == "example17") {
    const auto v = parse_number_list(params);
    if (v.size() != 1) throw std::invalid_argument("cospower:<theta>");
    return Coefficient::cos_power(v[0]);
  }
  if (kind == "spikes" || kind == "spikelattice" || kind == "example18") {
    const auto v = parse_number_list(params);
    if (v.size() < 2 || v.size() > 3) {
      throw std::invalid_argument("spikes:<alpha>,<beta>[,<n_max>]");
    }
    const int n_max = v.size() == 3 ? static_cast<int>(v[2]) : 4096;
    return Coefficient::spike_lattice(v[0], v[1], n_max);
  }
  if (kind == "piecewise") {
    const std::size_t semi = params.find(';');
    if (semi == std::string::npos) {
      throw std::invalid_argument("piecewise:<breaks>;<values>");
    }
    return Coefficient::piecewise_constant(
        parse_number_list(params.substr(0, semi)),
        parse_number_list(params.substr(semi + 1)));
  }
  if (kind == "sampled") {
    const std::size_t semi = params.find(';');
    if (semi == std::string::npos) {
      throw std::invalid_argument("sampled:<grid>;<values>");
    }
    return Coefficient::sampled(parse_number_list(params.substr(0, semi)),
                                parse_number_list(params.substr(semi + 1)));
  }
  throw std::invalid_argument("unknown coefficient kind: " + kind);
}

}  // namespace

Coefficient Coefficient::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty coefficient spec");
  if (text.front() == '{') {
    const auto j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return Coefficient::constant(j.at("q0").get<double>());
    if (kind == "cospower" || kind == "example17") {
      return Coefficient::cos_power(j.at("theta").get<double>());
    }
    if (kind == "spikes" || kind == "spikelattice" || kind == "example18") {
      return Coefficient::spike_lattice(j.at("alpha").get<double>(),
                                        j.at("beta").get<double>(),
                                        j.value("n_max", 4096));
    }
    if (kind == "piecewise") {
      return Coefficient::piecewise_constant(
          j.at("breakpoints").get<std::vector<double>>(),
          j.at("values").get<std::vector<double>>());
    }
    if (kind == "sampled") {
      return Coefficient::sampled(j.at("grid").get<std::vector<double>>(),
                                  j.at("values").get<std::vector<double>>());
    }
    throw std::invalid_argument("unknown coefficient kind: " + kind);
  }
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string params =
      colon == std::string::npos ? std::string{} : text.substr(colon + 1);
  return from_kind_params(kind, params);
}

}  // namespace sturm
