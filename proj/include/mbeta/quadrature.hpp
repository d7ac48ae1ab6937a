#pragma once

// Composite adaptive Gauss-Legendre quadrature. Panels are laid out by the
// caller at known kinks; panels touching an algebraic (square-root) endpoint
// are integrated under the substitution x = end -+ w*u^2, which restores
// smoothness. Error per panel is estimated by comparing two rule orders.

#include <array>
#include <cstdio>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbeta {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quadrature knobs. Tolerances are absolute; refinement_cap bounds the
/// bisection depth per panel.
struct QuadratureConfig {
  int angular_panels = 2;   // initial subdivisions of each smooth angular run
  int radial_panels = 2;    // initial subdivisions per knot-induced panel
  double abs_tol = 1e-10;
  int refinement_cap = 15;

  void validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be > 0");
    if (angular_panels < 2 || radial_panels < 2)
      throw std::invalid_argument("QuadratureConfig: panel counts must be >= 2");
    if (refinement_cap < 1)
      throw std::invalid_argument("QuadratureConfig: refinement cap must be >= 1");
  }
};

namespace detail {

// Nodes/weights on [-1, 1] via Newton on the Legendre recurrence.
template <int N>
struct GaussRule {
  std::array<double, N> node{}, weight{};
  GaussRule() {
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (N + 1) / 2; ++i) {
      double x = std::cos(pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      node[i] = -x;
      node[N - 1 - i] = x;
      weight[i] = weight[N - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

inline const GaussRule<8>& gl8() {
  static const GaussRule<8> r;
  return r;
}
inline const GaussRule<16>& gl16() {
  static const GaussRule<16> r;
  return r;
}

template <int N, class F>
double apply_rule(const GaussRule<N>& rule, const F& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < N; ++i) s += rule.weight[i] * f(mid + half * rule.node[i]);
  return s * half;
}

// integral together with the absolute mass sum |w_i f(x_i)|, which sets the
// roundoff floor of the estimate
template <int N, class F>
std::pair<double, double> apply_rule_abs(const GaussRule<N>& rule, const F& f,
                                         double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0, m = 0.0;
  for (int i = 0; i < N; ++i) {
    const double term = rule.weight[i] * f(mid + half * rule.node[i]);
    s += term;
    m += std::abs(term);
  }
  return {s * half, m * std::abs(half)};
}

template <class F>
double adaptive_panel(const F& f, double a, double b, double tol, int depth_left) {
  const double coarse = apply_rule(gl8(), f, a, b);
  const auto [fine, mass] = apply_rule_abs(gl16(), f, a, b);
  const double err = std::abs(fine - coarse);
  // no rule can resolve the panel below the roundoff of its absolute mass
  if (err <= std::max(tol, 5e-15 * mass) ||
      b - a < 1e-14 * (std::abs(a) + std::abs(b) + 1.0))
    return fine;
  if (depth_left <= 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "quadrature did not converge (refinement cap reached) on "
                  "[%.17g, %.17g] err=%.3e tol=%.3e mass=%.3e",
                  a, b, err, tol, mass);
    throw QuadratureError(buf);
  }
  const double mid = 0.5 * (a + b);
  return adaptive_panel(f, a, mid, 0.5 * tol, depth_left - 1) +
         adaptive_panel(f, mid, b, 0.5 * tol, depth_left - 1);
}

}  // namespace detail

enum class PanelEnd { smooth, cusp_left, cusp_right };

/// Quadrature panel [a, b]. A cusp marker means the integrand behaves like a
/// power series in sqrt(x - anchor) (resp. sqrt(anchor - x)); the anchor may
/// sit at or slightly outside the panel end.
struct Panel {
  double a, b;
  PanelEnd end = PanelEnd::smooth;
  double anchor = 0.0;
};

/// Integrate f over a list of disjoint panels; cusp panels are integrated
/// under the substitution x = anchor +- u^2, which restores smoothness.
template <class F>
double integrate_panels(const F& f, const std::vector<Panel>& panels,
                        const QuadratureConfig& cfg) {
  double width = 0.0;
  for (const Panel& p : panels) width += p.b - p.a;
  if (width <= 0.0) return 0.0;
  double total = 0.0;
  for (const Panel& p : panels) {
    if (!(p.b > p.a)) continue;
    const double tol = cfg.abs_tol * (p.b - p.a) / width;
    switch (p.end) {
      case PanelEnd::smooth:
        total += detail::adaptive_panel(f, p.a, p.b, tol, cfg.refinement_cap);
        break;
      case PanelEnd::cusp_left: {
        const double c = std::min(p.anchor, p.a);
        const double ua = std::sqrt(p.a - c), ub = std::sqrt(p.b - c);
        auto g = [&](double u) { return 2.0 * u * f(c + u * u); };
        total += detail::adaptive_panel(g, ua, ub, tol, cfg.refinement_cap);
        break;
      }
      case PanelEnd::cusp_right: {
        const double c = std::max(p.anchor, p.b);
        const double ua = std::sqrt(c - p.b), ub = std::sqrt(c - p.a);
        auto g = [&](double u) { return 2.0 * u * f(c - u * u); };
        total += detail::adaptive_panel(g, ua, ub, tol, cfg.refinement_cap);
        break;
      }
    }
  }
  return total;
}

/// Split [a, b] at the interior breakpoints into initial panels, n_sub
/// subdivisions each, all smooth.
inline std::vector<Panel> make_panels(double a, double b,
                                      const std::vector<double>& breakpoints,
                                      int n_sub) {
  std::vector<double> cuts{a, b};
  for (double t : breakpoints)
    if (t > a && t < b) cuts.push_back(t);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    for (int j = 0; j < n_sub; ++j) {
      const double pa = lo + (hi - lo) * j / n_sub;
      const double pb = lo + (hi - lo) * (j + 1) / n_sub;
      panels.push_back({pa, pb, PanelEnd::smooth});
    }
  }
  return panels;
}

}  // namespace mbeta
