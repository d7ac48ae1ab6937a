#pragma once

// Averages of radial functions over balls and spheres with off-origin
// centers. A ball B(z, r) acting on f(x) = F(|x|) is described by the scalar
// triple (s = |z|, r, d); every d-dimensional integral reduces to a 1-D
// radial or angular quadrature. The radial route slices the ball by
// origin-centered spheres and weights by the spherical-cap fraction; the
// angular route parametrizes spheres about the ball center.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mbeta/profile.hpp"
#include "mbeta/quadrature.hpp"

namespace mbeta {

struct BallSpec {
  double s;  // distance of the ball center from the origin
  double r;  // radius
  int d;     // ambient dimension

  BallSpec(double center_dist, double radius, int dim)
      : s(center_dist), r(radius), d(dim) {
    if (!(r > 0.0)) throw std::invalid_argument("BallSpec: radius must be > 0");
    if (s < 0.0) throw std::invalid_argument("BallSpec: center distance must be >= 0");
    if (d < 1) throw std::invalid_argument("BallSpec: dimension must be >= 1");
  }

  /// Closed-ball feasibility for a point at distance t from the origin.
  bool contains_point(double t) const { return std::abs(s - t) <= r; }
};

// ---------------------------------------------------------------------------
// Sine-power integrals J_n(theta) = int_0^theta sin^n, closed form.

// below this opening angle the sine-power integrals switch to direct
// quadrature; quadrature panels split at its preimages (branch_switch_radii)
inline constexpr double kSinpowSwitchAngle = 0.6;

inline double sinpow_integral(int n, double theta) {
  if (n == 0) return theta;
  if (theta <= 0.0) return 0.0;
  if (theta < kSinpowSwitchAngle) {
    // J_n(theta) ~ theta^{n+1}/(n+1) is far below the O(theta^2) terms of the
    // recurrence here, which would cancel catastrophically; the integrand is
    // smooth, so direct Gauss-Legendre is accurate in the relative sense.
    const auto& rule = detail::gl16();
    const double mid = 0.5 * theta, half = 0.5 * theta;
    double acc = 0.0;
    for (int i = 0; i < 16; ++i)
      acc += rule.weight[i] *
             std::pow(std::sin(mid + half * rule.node[i]), static_cast<double>(n));
    return acc * half;
  }
  const double c = std::cos(theta), s = std::sin(theta);
  if (n == 1) return 1.0 - c;
  double j0 = theta, j1 = 1.0 - c;  // J_0, J_1
  double sp = 1.0;                  // running sin^{k-1}(theta)
  double jk = 0.0;
  for (int k = 2; k <= n; ++k) {
    sp *= s;
    jk = (-c * sp + (k - 1) * (k % 2 == 0 ? j0 : j1)) / k;
    if (k % 2 == 0)
      j0 = jk;
    else
      j1 = jk;
  }
  return jk;
}

/// Z_d = int_0^pi sin^{d-2}; normalizer of axially symmetric sphere integrals.
inline double sinpow_total(int d) { return sinpow_integral(d - 2, std::acos(-1.0)); }

// ---------------------------------------------------------------------------
// Spherical cap fraction

/// cos of the opening angle of the cap of the origin-sphere of radius rho cut
/// out by the ball, clamped into [-1, 1] to absorb tangency overshoot.
inline double cap_cos(double rho, const BallSpec& ball) {
  const double c = (ball.s * ball.s + rho * rho - ball.r * ball.r) / (2.0 * ball.s * rho);
  return std::clamp(c, -1.0, 1.0);
}

/// Opening angle of the cap together with its sine/cosine, computed from the
/// factored forms 1 -+ cos = (products of side sums/differences) / (2 s rho),
/// which stay accurate at both transition radii where the naive cosine
/// formula cancels catastrophically.
struct CapAngle {
  double theta, sin_t, cos_t;
};

inline CapAngle cap_angle(double rho, const BallSpec& ball) {
  const double s = ball.s, r = ball.r;
  const double u = std::max(0.0, (r - s + rho) * (r + s - rho));  // ~ 1 - cos
  const double v = std::max(0.0, (s + rho - r) * (s + rho + r));  // ~ 1 + cos
  if (u + v <= 0.0) return {0.0, 0.0, 1.0};
  const double su = std::sqrt(u), sv = std::sqrt(v);
  return {2.0 * std::atan2(su, sv), 2.0 * su * sv / (u + v), (v - u) / (u + v)};
}

/// Fraction of the sphere {|y| = rho} lying inside the ball. Requires
/// ball.s > 0 (for s = 0 the fraction is the indicator of rho <= r).
inline double cap_fraction(double rho, const BallSpec& ball) {
  if (rho < 0.0) throw std::invalid_argument("cap_fraction: rho must be >= 0");
  if (!(ball.s > 0.0)) throw std::invalid_argument("cap_fraction: needs s > 0");
  if (rho == 0.0) return ball.s < ball.r ? 1.0 : 0.0;
  if (rho <= ball.r - ball.s) return 1.0;
  if (rho >= ball.r + ball.s) return 0.0;
  if (rho <= ball.s - ball.r) return 0.0;
  return sinpow_integral(ball.d - 2, cap_angle(rho, ball).theta) / sinpow_total(ball.d);
}

namespace detail {

// In the radial variable the cap fraction is 1 on [0, full_hi), lives in
// (0, 1) on (part_lo, part_hi), and vanishes beyond. Both transition radii
// carry square-root behavior of the opening angle.
struct CapZones {
  double full_hi;
  double part_lo, part_hi;
};

inline CapZones cap_zones(const BallSpec& ball) {
  return {std::max(0.0, ball.r - ball.s), std::abs(ball.s - ball.r),
          ball.s + ball.r};
}

// Radii where the cap opening angle crosses the sine-power evaluation-branch
// threshold. The two evaluation branches agree only to machine precision, so
// panels must not straddle the switch: near roots of a cancelling integrand
// the microscopic jump would stall the refinement loop.
inline void append_branch_switch_radii(const BallSpec& ball,
                                       std::vector<double>& cuts) {
  const double c = std::cos(kSinpowSwitchAngle);
  const double disc =
      ball.s * ball.s * (c * c - 1.0) + ball.r * ball.r;
  if (disc > 0.0) {
    const double root = std::sqrt(disc);
    cuts.push_back(ball.s * c + root);
    cuts.push_back(ball.s * c - root);
  }
}

// Panels over [a, b] split at breakpoints, n_sub subdivisions each, with
// cusp markers where [a, b] touches the cap transition radii.
inline std::vector<Panel> cap_panels(double a, double b,
                                     const std::vector<double>& breakpoints,
                                     const CapZones& z, int n_sub) {
  std::vector<double> cuts{a, b};
  for (double k : breakpoints)
    if (k > a && k < b) cuts.push_back(k);
  // When the inner transition radius is tiny relative to the outer one
  // (radius close to center distance), the opening angle sweeps its whole
  // range over rho in [part_lo, ~100 part_lo]; a geometric ladder of panels
  // resolves that layer at any separation.
  if (z.part_lo > 0.0 && a == z.part_lo) {
    for (double g = 2.0 * z.part_lo; g < b && g < 2048.0 * z.part_lo; g *= 2.0)
      if (g > a) cuts.push_back(g);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (int j = 0; j < n_sub; ++j) {
      Panel p{cuts[i] + (cuts[i + 1] - cuts[i]) * j / n_sub,
              cuts[i] + (cuts[i + 1] - cuts[i]) * (j + 1) / n_sub,
              PanelEnd::smooth, 0.0};
      // panels near a transition radius inherit its square-root behavior
      // even when a breakpoint separates them from it slightly
      const double w = p.b - p.a;
      const double dl = p.a - z.part_lo;
      const double dr = z.part_hi - p.b;
      if (z.part_lo > 0.0 && dl >= 0.0 && dl < w && dl <= dr) {
        p.end = PanelEnd::cusp_left;
        p.anchor = z.part_lo;
      } else if (dr >= 0.0 && dr < w) {
        p.end = PanelEnd::cusp_right;
        p.anchor = z.part_hi;
      }
      panels.push_back(p);
    }
  }
  return panels;
}

// Integral over the partial-cap zone (clipped to [0, hi_clip] and optionally
// to a union of intervals) of kernel(rho) * cap_fraction(rho).
template <class Kernel>
double partial_zone_integral(const Kernel& kernel, const BallSpec& ball,
                             const std::vector<double>& breakpoints,
                             const std::vector<std::pair<double, double>>* restrict_to,
                             double hi_clip, const QuadratureConfig& cfg) {
  const CapZones z = cap_zones(ball);
  const double lo = z.part_lo;
  const double hi = std::min(z.part_hi, hi_clip);
  if (!(hi > lo)) return 0.0;

  std::vector<std::pair<double, double>> ranges;
  if (restrict_to) {
    for (const auto& iv : *restrict_to) {
      const double a = std::max(lo, iv.first), b = std::min(hi, iv.second);
      if (b > a) ranges.emplace_back(a, b);
    }
  } else {
    ranges.emplace_back(lo, hi);
  }

  std::vector<double> bps = breakpoints;
  append_branch_switch_radii(ball, bps);

  auto f = [&](double rho) { return kernel(rho) * cap_fraction(rho, ball); };
  double total = 0.0;
  for (const auto& [a, b] : ranges)
    total += integrate_panels(f, cap_panels(a, b, bps, z, cfg.radial_panels), cfg);
  return total;
}

// Angle at which the sphere about the ball center crosses |y| = k.
inline double knot_angle(double k, const BallSpec& ball) {
  const double c =
      (k * k - ball.s * ball.s - ball.r * ball.r) / (2.0 * ball.s * ball.r);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// int_0^pi F(rho(phi)) * w(phi) * sin^{d-2}(phi) dphi with
// rho(phi) = sqrt(s^2 + r^2 + 2 s r cos phi), panels split at the angular
// preimages of the profile knots.
template <class Weight>
double angular_integral(const Profile& F, const BallSpec& ball, const Weight& w,
                        const QuadratureConfig& cfg) {
  const double pi = std::acos(-1.0);
  std::vector<double> cuts;
  for (double k : F.knots)
    if (k > std::abs(ball.s - ball.r) && k < ball.s + ball.r)
      cuts.push_back(knot_angle(k, ball));
  auto rho = [&](double phi) {
    // (s - r)^2 + 4 s r cos^2(phi/2): stable where s ~ r and phi ~ pi
    const double diff = ball.s - ball.r;
    const double c = std::cos(0.5 * phi);
    return std::sqrt(diff * diff + 4.0 * ball.s * ball.r * c * c);
  };
  auto f = [&](double phi) {
    return F.evaluate(rho(phi)) * w(phi) *
           std::pow(std::sin(phi), static_cast<double>(ball.d - 2));
  };
  return integrate_panels(f, make_panels(0.0, pi, cuts, cfg.angular_panels), cfg);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ball and sphere averages

/// Mean value of F(|y|) over the ball. Exact interval arithmetic for d = 1,
/// exact moments for origin-centered balls, cap-fraction quadrature otherwise.
inline double ball_average(const Profile& F, const BallSpec& ball,
                           const QuadratureConfig& cfg = {}) {
  if (ball.d == 1) {
    const Profile line = even_extension(F);
    return Antiderivative(line).interval_average(ball.s - ball.r, ball.s + ball.r);
  }
  const double S = F.knots.back();
  const int d = ball.d;
  const double scale = d / std::pow(ball.r, d);
  if (ball.s == 0.0)
    return scale * moment_integral(F, d - 1, 0.0, std::min(ball.r, S));
  const detail::CapZones z = detail::cap_zones(ball);
  const double full = moment_integral(F, d - 1, 0.0, std::min(z.full_hi, S));
  auto kernel = [&](double rho) {
    return F.evaluate(rho) * std::pow(rho, static_cast<double>(d - 1));
  };
  const double part =
      detail::partial_zone_integral(kernel, ball, F.knots, nullptr, S, cfg);
  return scale * (full + part);
}

/// Mean value of F(|y|) over the boundary sphere of the ball; for d = 1 the
/// two-point rule.
inline double sphere_average(const Profile& F, const BallSpec& ball,
                             const QuadratureConfig& cfg = {}) {
  if (ball.d == 1)
    return 0.5 * (F.evaluate(std::abs(ball.s - ball.r)) + F.evaluate(ball.s + ball.r));
  if (ball.s == 0.0) return F.evaluate(ball.r);
  auto one = [](double) { return 1.0; };
  return detail::angular_integral(F, ball, one, cfg) / sinpow_total(ball.d);
}

/// Signed component along the outward radial direction of the averaged
/// gradient of F(|y|) over the ball, computed as a boundary integral
/// (divergence form). F should be the nonnegative profile of |f|.
inline double boundary_flux(const Profile& F, const BallSpec& ball,
                            const QuadratureConfig& cfg = {}) {
  if (ball.d == 1)
    return (F.evaluate(ball.s + ball.r) - F.evaluate(std::abs(ball.s - ball.r))) /
           (2.0 * ball.r);
  if (ball.s == 0.0) return 0.0;  // odd weight against a radial integrand
  auto cosw = [](double phi) { return std::cos(phi); };
  return ball.d * detail::angular_integral(F, ball, cosw, cfg) /
         (ball.r * sinpow_total(ball.d));
}

/// d * mean over the boundary sphere of F(|y|) (z - x).(y - x) / r^2, where z
/// is the outward boundary point of the ball on the ray from the origin.
inline double weighted_sphere_average(const Profile& F, const BallSpec& ball,
                                      const QuadratureConfig& cfg = {}) {
  if (ball.d == 1)
    return 0.5 * (F.evaluate(ball.s + ball.r) - F.evaluate(std::abs(ball.s - ball.r)));
  if (ball.s == 0.0) return 0.0;
  auto cosw = [](double phi) { return std::cos(phi); };
  return ball.d * detail::angular_integral(F, ball, cosw, cfg) / sinpow_total(ball.d);
}

// ---------------------------------------------------------------------------
// Averaged gradient integrals (radial route)

/// Mean over the ball of grad|f|(y) . (a*xhat - y), where xhat is the unit
/// vector from the origin through the ball center and F_abs the profile of
/// |f|. Runs on the weak derivative against closed-form cap moments, so it is
/// independent of the angular route above.
inline double avg_grad_dot_to_point(const Profile& F_abs, const BallSpec& ball,
                                    double a, const QuadratureConfig& cfg = {}) {
  const int d = ball.d;
  if (d == 1) {
    const Profile line = even_extension(F_abs);
    return gradient_dot_integral(line, ball.s - ball.r, ball.s + ball.r, a) /
           (2.0 * ball.r);
  }
  const StepProfile dF = weak_derivative(F_abs);
  const double S = F_abs.knots.back();
  const double rd = std::pow(ball.r, d);
  if (ball.s == 0.0) {
    // the a-term vanishes by symmetry over full spheres
    return -(d / rd) * moment_integral(dF, d, 0.0, std::min(ball.r, S));
  }
  const detail::CapZones z = detail::cap_zones(ball);
  const double Zd = sinpow_total(d);
  // full-cap zone: angular factor integrates in closed form to -rho * Z_d
  const double full = -Zd * moment_integral(dF, d, 0.0, std::min(z.full_hi, S));
  const double lo = z.part_lo, hi = std::min(z.part_hi, S);
  double part = 0.0;
  if (hi > lo) {
    auto f = [&](double rho) {
      const CapAngle ca = cap_angle(rho, ball);
      const double cterm =
          std::pow(ca.sin_t, static_cast<double>(d - 1)) / (d - 1);
      const double jterm = sinpow_integral(d - 2, ca.theta);
      return dF.value_at(rho) * std::pow(rho, static_cast<double>(d - 1)) *
             (a * cterm - rho * jterm);
    };
    std::vector<double> bps = F_abs.knots;
    detail::append_branch_switch_radii(ball, bps);
    part = integrate_panels(
        f, detail::cap_panels(lo, hi, bps, z, cfg.radial_panels), cfg);
  }
  return d / (rd * Zd) * (full + part);
}

/// Mean over the ball of k(|y|) |y|^m, where k is a step function (a weak
/// derivative or, with use_abs, its absolute value); optionally restricted to
/// a union of radial intervals.
inline double radial_cap_mean(const StepProfile& k, int m, bool use_abs,
                              const BallSpec& ball, const QuadratureConfig& cfg = {},
                              const std::vector<std::pair<double, double>>* restrict_to =
                                  nullptr) {
  const int d = ball.d;
  const int mm = m + d - 1;  // weight exponent plus the polar volume factor
  const double S = k.knots.back();
  const double scale = d / std::pow(ball.r, d);
  auto restricted_moment = [&](double lo, double hi) {
    if (!restrict_to) return moment_integral(k, mm, lo, hi, use_abs);
    double acc = 0.0;
    for (const auto& iv : *restrict_to)
      acc += moment_integral(k, mm, std::max(lo, iv.first), std::min(hi, iv.second),
                             use_abs);
    return acc;
  };
  if (ball.s == 0.0) return scale * restricted_moment(0.0, std::min(ball.r, S));
  const detail::CapZones z = detail::cap_zones(ball);
  const double full = restricted_moment(0.0, std::min(z.full_hi, S));
  auto kernel = [&](double rho) {
    const double v = use_abs ? std::abs(k.value_at(rho)) : k.value_at(rho);
    return v * std::pow(rho, static_cast<double>(mm));
  };
  const double part =
      detail::partial_zone_integral(kernel, ball, k.knots, restrict_to, S, cfg);
  return scale * (full + part);
}

}  // namespace mbeta
