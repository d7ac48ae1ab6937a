#pragma once

// Evaluation of the centered / non-centered / truncated / radius-restricted
// fractional maximal functions of a radial (or line) piecewise-linear
// function at a point, including the set of near-optimal radii.
//
// The scalar objective r -> r^beta * (ball average of |f|) is maximized by a
// deterministic three-stage search: a coarse certification scan, a fine
// log-spaced scan over the certified window, and golden-section refinement of
// every bracketed local maximum. The certification uses the two a priori
// bounds  phi(r) <= r^beta * ||f||_inf  and  phi(r) <= r^{beta-d} ||f||_1 /
// omega_d, which guarantee no near-maximizer lies outside the window.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mbeta/geometry.hpp"
#include "mbeta/profile.hpp"
#include "mbeta/quadrature.hpp"

namespace mbeta {

/// Fractional order together with the ambient dimension; q = d/(d-beta) is
/// the endpoint Lebesgue exponent. 0 < beta < d enforced; beta >= 1 is legal
/// but outside the range the main bounds are stated for.
struct Beta {
  double beta;
  int dim;

  Beta(double b, int d) : beta(b), dim(d) {
    if (d < 1) throw std::invalid_argument("Beta: dimension must be >= 1");
    if (!(b > 0.0) || !(b < static_cast<double>(d)))
      throw std::invalid_argument("Beta: need 0 < beta < d");
  }

  double q() const { return dim / (dim - beta); }
  bool theorem_range() const { return beta < 1.0; }
};

struct SearchConfig {
  int per_decade = 256;      // fine-scan density (log-spaced radii per decade)
  int prescan = 48;          // certification scan points
  double argmax_rel = 1e-9;  // radii within this relative band of the sup are reported
  double cluster_rel = 1e-6; // radii closer than this (relative) merge to one cluster
  double r_min_rel = 1e-8;   // lower radius cutoff relative to the support scale
  int golden_iters = 90;
  int alt_rounds = 24;       // alternating center/radius refinement rounds
  int coarse_r = 48;         // non-centered coarse grid: radii
  int coarse_s = 25;         // non-centered coarse grid: centers per radius

  void validate() const {
    if (per_decade < 8 || prescan < 8) throw std::invalid_argument("SearchConfig: scan too coarse");
    if (!(argmax_rel > 0.0) || !(cluster_rel > 0.0) || !(r_min_rel > 0.0))
      throw std::invalid_argument("SearchConfig: tolerances must be positive");
  }
};

struct EvalConfig {
  SearchConfig search;
  QuadratureConfig quad;
};

/// Result of a centered-type evaluation: the value, all near-optimal radii
/// (one representative per cluster, smallest first), and the objective for
/// diagnostics.
struct GoodRadiusResult {
  double value = 0.0;
  std::vector<double> radii;
  double smallest = 0.0;
  bool degenerate = false;
  std::function<double(double)> objective;

  double objective_at(double r) const {
    return objective ? objective(r) : std::numeric_limits<double>::quiet_NaN();
  }
  bool unique_radius() const { return radii.size() == 1; }
};

struct NoncenteredResult {
  double value = 0.0;
  double s_opt = 0.0;  // center coordinate (distance from origin; signed for line)
  double r_opt = 0.0;
  bool boundary_contact = false;
  bool degenerate = false;
};

namespace detail {

// The scalar pair (s, r) describes the orbit of balls with center distance s;
// the evaluation point lies on the boundary of some ball in the orbit iff
// |s - t| = r (same-side center) or s + t = r (opposite side).
inline bool orbit_contact(double s, double t, double r) {
  return std::min(std::abs(std::abs(s - t) - r), std::abs(s + t - r)) <=
         1e-6 * r;
}

}  // namespace detail

namespace detail {

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (!(hi > lo)) {
    g.push_back(lo);
    return g;
  }
  n = std::max(n, 2);
  g.resize(n);
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

template <class F>
std::pair<double, double> golden_max(const F& f, double a, double b, int iters) {
  const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 >= f2 ? x1 : x2;
  double best_f = std::max(f1, f2);
  for (int it = 0; it < iters && b - a > 1e-14 * (std::abs(a) + std::abs(b) + 1.0); ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
    if (f1 > best_f) best_f = f1, best_x = x1;
    if (f2 > best_f) best_f = f2, best_x = x2;
  }
  return {best_x, best_f};
}

struct Candidate {
  double r, value;
};

// Deterministic global 1-D sup of phi over [lo_hard, hi_hard], where the
// caller guarantees phi is nonincreasing beyond hi_hard (so hi_hard enters as
// an endpoint candidate). linf/l1 feed the certification bounds.
template <class Phi>
GoodRadiusResult solve_radius_sup(const Phi& phi, double lo_hard, double hi_hard,
                                  double beta, int dim, double linf, double l1,
                                  const std::vector<double>& seeds,
                                  const SearchConfig& cfg) {
  GoodRadiusResult out;
  out.objective = phi;
  if (linf <= 0.0 || l1 <= 0.0) {
    out.degenerate = true;
    return out;
  }
  lo_hard = std::min(lo_hard, hi_hard);

  // certification scan
  double v = 0.0;
  auto consider = [&](double r) {
    if (r < lo_hard || r > hi_hard) return;
    v = std::max(v, phi(r));
  };
  for (double r : log_grid(lo_hard, hi_hard, cfg.prescan)) consider(r);
  for (double r : seeds) consider(r);
  if (v <= 0.0) {
    // no feasible radius sees any mass
    out.degenerate = true;
    return out;
  }

  // certified window: near-maximizers satisfy both a priori bounds
  const double wd = unit_ball_volume(dim);
  const double safety = 1.0 - 1e-3;
  const double lo_cert = std::pow(safety * v / linf, 1.0 / beta);
  const double hi_cert = std::pow(l1 / (wd * safety * v), 1.0 / (dim - beta));
  const double lo = std::max(lo_hard, lo_cert);
  const double hi = std::max(lo, std::min(hi_hard, hi_cert));

  const int n = std::clamp(
      static_cast<int>(std::ceil(cfg.per_decade * std::log10(hi / lo))) + 1, 2,
      20000);
  const auto grid = log_grid(lo, hi, n);
  std::vector<double> val(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) val[i] = phi(grid[i]);

  std::vector<Candidate> cands;
  cands.push_back({grid.front(), val.front()});
  cands.push_back({grid.back(), val.back()});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool up = i == 0 || val[i] >= val[i - 1];
    const bool down = i + 1 == grid.size() || val[i] >= val[i + 1];
    if (!(up && down)) continue;
    const double a = grid[i == 0 ? 0 : i - 1];
    const double b = grid[std::min(i + 1, grid.size() - 1)];
    if (b > a) {
      auto [rx, fx] = golden_max(phi, a, b, cfg.golden_iters);
      cands.push_back({rx, fx});
    }
  }

  double value = 0.0;
  for (const auto& c : cands) value = std::max(value, c.value);
  out.value = value;

  // cluster near-optimal radii
  std::vector<double> keep;
  for (const auto& c : cands)
    if (c.value >= value * (1.0 - cfg.argmax_rel)) keep.push_back(c.r);
  std::sort(keep.begin(), keep.end());
  for (double r : keep) {
    if (out.radii.empty() || r - out.radii.back() > cfg.cluster_rel * r)
      out.radii.push_back(r);
  }
  out.smallest = out.radii.empty() ? 0.0 : out.radii.front();
  return out;
}

// Robust 1-D maximization on [a, b]: coarse scan, then golden refinement of
// the best bracket. Handles multimodal slices and endpoint maxima.
template <class F>
std::pair<double, double> scan_golden_max(const F& f, double a, double b,
                                          int n_scan, int golden_iters,
                                          bool log_spaced) {
  if (!(b > a)) return {a, f(a)};
  n_scan = std::max(n_scan, 4);
  std::vector<double> xs =
      log_spaced && a > 0.0
          ? log_grid(a, b, n_scan)
          : [&] {
              std::vector<double> g(n_scan);
              for (int i = 0; i < n_scan; ++i)
                g[i] = a + (b - a) * i / (n_scan - 1);
              return g;
            }();
  double best_x = xs[0], best_f = f(xs[0]);
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v > best_f) best_f = v, best_x = xs[i], best_i = i;
  }
  const double lo = xs[best_i == 0 ? 0 : best_i - 1];
  const double hi = xs[std::min(best_i + 1, xs.size() - 1)];
  if (hi > lo) {
    auto [gx, gf] = golden_max(f, lo, hi, golden_iters);
    if (gf > best_f) return {gx, gf};
  }
  return {best_x, best_f};
}

// Interior 2-D search over center coordinate and radius: certified-window
// coarse grid, then alternating scan+golden refinement. s_range(r) yields the
// feasible center interval for a given radius.
template <class Value, class SRange>
std::array<double, 3> interior_search_2d(const Value& value_of, const SRange& s_range,
                                         double r_lo, double r_hi,
                                         const SearchConfig& cfg) {
  double cs = 0.0, cr = 0.0, cv = 0.0;
  if (!(r_hi > r_lo)) return {cv, cs, cr};
  for (double r : log_grid(r_lo, r_hi, cfg.coarse_r)) {
    const auto [slo, shi] = s_range(r);
    if (!(shi >= slo)) continue;
    for (int j = 0; j < cfg.coarse_s; ++j) {
      const double s = cfg.coarse_s == 1
                           ? 0.5 * (slo + shi)
                           : slo + (shi - slo) * j / (cfg.coarse_s - 1);
      const double v = value_of(s, r);
      if (v > cv) cv = v, cs = s, cr = r;
    }
  }
  if (!(cv > 0.0)) return {cv, cs, cr};
  for (int round = 0; round < cfg.alt_rounds; ++round) {
    bool moved = false;
    const auto [slo, shi] = s_range(cr);
    auto fs = [&](double s) { return value_of(s, cr); };
    auto [s1, vs] = scan_golden_max(fs, slo, shi, 17, cfg.golden_iters, false);
    if (vs > cv) cs = s1, cv = vs, moved = true;
    auto fr = [&](double r) {
      const auto [a, b] = s_range(r);
      return a <= cs && cs <= b ? value_of(cs, r) : 0.0;
    };
    auto [r1, vr] = scan_golden_max(fr, std::max(r_lo, cr / 3.0),
                                    std::min(r_hi, 3.0 * cr), 25,
                                    cfg.golden_iters, true);
    if (vr > cv) cr = r1, cv = vr, moved = true;
    if (!moved) break;
  }
  return {cv, cs, cr};
}

// Shared immutable line-profile state: |f|, its antiderivative, norms.
struct LineContext {
  std::shared_ptr<const Profile> fabs;
  std::shared_ptr<const Antiderivative> anti;
  double linf, l1, lo, hi;

  explicit LineContext(const Profile& f_line)
      : fabs(std::make_shared<Profile>(abs_profile(f_line))),
        anti(std::make_shared<Antiderivative>(*fabs)),
        linf(fabs->max_abs()),
        l1(anti->total()),
        lo(fabs->support_lo()),
        hi(fabs->support_hi()) {}

  double average(double a, double b) const { return ((*anti)(b) - (*anti)(a)) / (b - a); }
};

// Radii that make a centered interval/ball first touch and fully cover the
// support, seeding the certification scan.
inline std::vector<double> touch_seeds(double dist, double cover) {
  std::vector<double> s;
  if (dist <= 0.0) dist = 0.0;
  for (double m : {1.0 + 1e-6, 1.25, 1.7, 2.5, 4.0, 7.0}) {
    const double r = (dist > 0.0 ? dist * m : cover * (m - 1.0) / 6.0);
    if (r > 0.0 && r < cover) s.push_back(r);
  }
  s.push_back(cover);
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Line (d = 1) evaluations at a signed point x

inline GoodRadiusResult centered_value_line(const detail::LineContext& ctx, double x,
                                            double beta, const SearchConfig& cfg,
                                            double lo_constraint = 0.0,
                                            double hi_constraint =
                                                std::numeric_limits<double>::infinity()) {
  auto phi = [ctx, x, beta](double r) {
    return std::pow(r, beta) * ctx.average(x - r, x + r);
  };
  const double cover = std::max({x - ctx.lo, ctx.hi - x, 1e-9});
  const double scale = std::max(cover, ctx.hi - ctx.lo);
  const double dist = std::max({ctx.lo - x, x - ctx.hi, 0.0});
  const double lo_hard = std::max(cfg.r_min_rel * scale, lo_constraint);
  const double hi_hard = std::min(cover, hi_constraint);
  return detail::solve_radius_sup(phi, lo_hard, hi_hard, beta, 1, ctx.linf, ctx.l1,
                                  detail::touch_seeds(dist, cover), cfg);
}

inline GoodRadiusResult centered_value_line(const Profile& f_line, double x,
                                            double beta, const SearchConfig& cfg = {}) {
  return centered_value_line(detail::LineContext(f_line), x, beta, cfg);
}

inline NoncenteredResult noncentered_value_line(const detail::LineContext& ctx,
                                                double x, double beta,
                                                const SearchConfig& cfg) {
  NoncenteredResult out;
  if (ctx.linf <= 0.0) {
    out.degenerate = true;
    return out;
  }
  auto avg = [&](double z, double r) { return ctx.average(z - r, z + r); };
  auto value_of = [&](double z, double r) { return std::pow(r, beta) * avg(z, r); };

  struct Best {
    double v = 0.0, z = 0.0, r = 0.0;
  } best;
  const double tie = 1e-9;
  auto offer = [&](double z, double r, double v) {
    if (v > best.v * (1.0 + tie)) {
      best = {v, z, r};
      return;
    }
    if (v >= best.v * (1.0 - tie)) {
      // tie: prefer smaller radius, then center closer to x
      if (r < best.r * (1.0 - 1e-12) ||
          (std::abs(r - best.r) <= 1e-12 * best.r &&
           std::abs(z - x) < std::abs(best.z - x)))
        best = {std::max(v, best.v), z, r};
    }
  };

  // centered candidate
  const GoodRadiusResult c = centered_value_line(ctx, x, beta, cfg);
  if (!c.degenerate) offer(x, c.smallest, c.value);

  // boundary-contact families z = x +- r
  const double cover = std::max({std::abs(x - ctx.lo), std::abs(ctx.hi - x),
                                 0.5 * (ctx.hi - ctx.lo), 1e-9});
  const double scale = std::max(cover, ctx.hi - ctx.lo);
  for (int sign : {+1, -1}) {
    auto psi = [&, sign](double r) { return value_of(x + sign * r, r); };
    const double dist =
        std::max(0.0, sign > 0 ? ctx.lo - x : x - ctx.hi) / 2.0;
    const GoodRadiusResult g = detail::solve_radius_sup(
        psi, cfg.r_min_rel * scale, cover, beta, 1, ctx.linf, ctx.l1,
        detail::touch_seeds(dist, cover), cfg);
    if (!g.degenerate) offer(x + sign * g.smallest, g.smallest, g.value);
  }

  // interior search over a window certified from the best value so far
  {
    const double v0 = 0.999 * std::max(best.v, 1e-300);
    const double r_lo = std::max(cfg.r_min_rel * scale,
                                 std::pow(v0 / ctx.linf, 1.0 / beta));
    const double r_hi =
        std::min(cover, std::pow(ctx.l1 / (2.0 * v0), 1.0 / (1.0 - beta)));
    auto s_range = [&](double r) {
      return std::pair<double, double>(std::max(x - r, ctx.lo - r),
                                       std::min(x + r, ctx.hi + r));
    };
    const auto [cv, cz, cr] =
        detail::interior_search_2d(value_of, s_range, r_lo, r_hi, cfg);
    if (cv > 0.0) offer(cz, cr, cv);
  }

  if (best.v <= 0.0) {
    out.degenerate = true;
    return out;
  }

  // final polish: re-center, then a certified global radius solve on the
  // final center slice (coordinate refinement alone can stall on
  // multimodal slices)
  for (int round = 0; round < 4; ++round) {
    const double prev = best.v;
    auto fz = [&](double z) { return value_of(z, best.r); };
    auto [z1, vz] = detail::scan_golden_max(fz, x - best.r, x + best.r, 65,
                                            cfg.golden_iters, false);
    if (vz > best.v) best = {vz, z1, best.r};
    auto fr = [&](double r) { return value_of(best.z, r); };
    const double slice_cover =
        std::max({best.z - ctx.lo, ctx.hi - best.z, std::abs(best.z - x), 1e-9});
    const GoodRadiusResult slice = detail::solve_radius_sup(
        fr, std::max(std::abs(best.z - x), cfg.r_min_rel * scale), slice_cover,
        beta, 1, ctx.linf, ctx.l1, {best.r}, cfg);
    if (!slice.degenerate && slice.value > best.v)
      offer(best.z, slice.smallest, slice.value);
    if (best.v <= prev * (1.0 + 1e-13)) break;
  }

  out.value = best.v;
  out.s_opt = best.z;
  out.r_opt = best.r;
  out.boundary_contact = std::abs(std::abs(best.z - x) - best.r) <= 1e-6 * best.r;
  return out;
}

// ---------------------------------------------------------------------------
// Radial evaluations at t = |x| >= 0

namespace detail {

// Radial objective context; routes d = 1 through the exact line machinery.
struct RadialContext {
  std::shared_ptr<const RadialFunction> f;
  QuadratureConfig quad;
  std::shared_ptr<const LineContext> line;  // set when dim == 1
  double linf, l1;

  RadialContext(const RadialFunction& rf, const QuadratureConfig& q)
      : f(std::make_shared<RadialFunction>(rf)), quad(q) {
    linf = rf.F_abs.max_abs();
    l1 = rf.l1();
    if (rf.dim == 1) line = std::make_shared<LineContext>(rf.line_abs);
  }

  double average(double s, double r) const {
    if (f->dim == 1) return line->average(s - r, s + r);
    return ball_average(f->F_abs, BallSpec(s, r, f->dim), quad);
  }
};

}  // namespace detail

inline GoodRadiusResult centered_value(const RadialFunction& f, double t,
                                       const Beta& b, const EvalConfig& cfg = {},
                                       double lo_constraint = 0.0,
                                       double hi_constraint =
                                           std::numeric_limits<double>::infinity()) {
  if (b.dim != f.dim) throw std::invalid_argument("centered_value: dimension mismatch");
  if (t < 0.0) throw std::invalid_argument("centered_value: t must be >= 0");
  detail::RadialContext ctx(f, cfg.quad);
  const double beta = b.beta;
  auto phi = [ctx, t, beta](double r) {
    return std::pow(r, beta) * ctx.average(t, r);
  };
  const double S = f.support_radius();
  const double cover = t + S;  // centered balls beyond this hold the full mass
  const double scale = std::max(cover, S);
  const double dist = std::max(0.0, t - S);  // radius at which the ball touches supp
  const double lo_hard = std::max(cfg.search.r_min_rel * scale, lo_constraint);
  const double hi_hard = std::min(cover, hi_constraint);
  return detail::solve_radius_sup(phi, lo_hard, hi_hard, beta, f.dim, ctx.linf,
                                  ctx.l1, detail::touch_seeds(dist, cover),
                                  cfg.search);
}

/// Truncated variant: search restricted to r >= eps.
inline GoodRadiusResult truncated_value(const RadialFunction& f, double t,
                                        const Beta& b, double eps,
                                        const EvalConfig& cfg = {}) {
  if (!(eps > 0.0)) throw std::invalid_argument("truncated_value: eps must be > 0");
  return centered_value(f, t, b, cfg, eps,
                        std::numeric_limits<double>::infinity());
}

/// Radius-restricted variant: search over r <= t/4 only. Rejects t = 0.
inline GoodRadiusResult mI_value(const RadialFunction& f, double t, const Beta& b,
                                 const EvalConfig& cfg = {}) {
  if (!(t > 0.0)) throw std::invalid_argument("mI_value: t must be > 0");
  return centered_value(f, t, b, cfg, 0.0, 0.25 * t);
}

inline NoncenteredResult noncentered_value(const RadialFunction& f, double t,
                                           const Beta& b, const EvalConfig& cfg = {}) {
  if (b.dim != f.dim) throw std::invalid_argument("noncentered_value: dimension mismatch");
  if (t < 0.0) throw std::invalid_argument("noncentered_value: t must be >= 0");
  detail::RadialContext ctx(f, cfg.quad);
  if (f.dim == 1) {
    // exact line machinery; centers on the opposite ray are dominated by the
    // mirrored same-ray ball
    NoncenteredResult res = noncentered_value_line(*ctx.line, t, b.beta, cfg.search);
    res.s_opt = std::abs(res.s_opt);
    if (!res.degenerate)
      res.boundary_contact = detail::orbit_contact(res.s_opt, t, res.r_opt);
    return res;
  }

  NoncenteredResult out;
  if (ctx.linf <= 0.0) {
    out.degenerate = true;
    return out;
  }
  const double beta = b.beta;
  auto value_of = [&](double s, double r) {
    return std::pow(r, beta) * ctx.average(s, r);
  };

  struct Best {
    double v = 0.0, s = 0.0, r = 0.0;
  } best;
  const double tie = 1e-9;
  auto offer = [&](double s, double r, double v) {
    if (v > best.v * (1.0 + tie)) {
      best = {v, s, r};
      return;
    }
    if (v >= best.v * (1.0 - tie)) {
      if (r < best.r * (1.0 - 1e-12) ||
          (std::abs(r - best.r) <= 1e-12 * best.r &&
           std::abs(s - t) < std::abs(best.s - t)))
        best = {std::max(v, best.v), s, r};
    }
  };

  const GoodRadiusResult c = centered_value(f, t, b, cfg);
  if (!c.degenerate) offer(t, c.smallest, c.value);

  const double S = f.support_radius();
  const double scale = std::max(t + S, S);
  // hard radius ceiling certified from the centered value (a lower bound for
  // the noncentered sup)
  const double wd = unit_ball_volume(f.dim);
  double r_ceiling = t + S + 1.0;
  if (!c.degenerate && c.value > 0.0)
    r_ceiling = std::pow(ctx.l1 / (wd * 0.999 * c.value), 1.0 / (f.dim - beta));

  // boundary-contact families s = t + r and s = |t - r|
  for (int sign : {+1, -1}) {
    auto psi = [&, sign](double r) {
      return value_of(std::abs(t + sign * r), r);
    };
    const GoodRadiusResult g = detail::solve_radius_sup(
        psi, cfg.search.r_min_rel * scale, r_ceiling, beta, f.dim, ctx.linf, ctx.l1,
        detail::touch_seeds(std::max(0.0, (t - S) / 2.0), t + S), cfg.search);
    if (!g.degenerate) offer(std::abs(t + sign * g.smallest), g.smallest, g.value);
  }

  // interior search over a window certified from the best value so far
  {
    const double v0 = 0.999 * std::max(best.v, 1e-300);
    const double r_lo = std::max(cfg.search.r_min_rel * scale,
                                 std::pow(v0 / ctx.linf, 1.0 / beta));
    const double r_hi = std::min(
        r_ceiling, std::pow(ctx.l1 / (wd * v0), 1.0 / (f.dim - beta)));
    auto s_range = [&](double r) {
      return std::pair<double, double>(std::max(0.0, t - r),
                                       std::min(t + r, S + r));
    };
    const auto [cv, cs, cr] =
        detail::interior_search_2d(value_of, s_range, r_lo, r_hi, cfg.search);
    if (cv > 0.0) offer(cs, cr, cv);
  }

  if (best.v <= 0.0) {
    out.degenerate = true;
    return out;
  }

  // final polish: re-center, then a certified global radius solve on the
  // final center slice
  for (int round = 0; round < 4; ++round) {
    const double prev = best.v;
    auto fs = [&](double s) { return value_of(s, best.r); };
    auto [s1, vs] = detail::scan_golden_max(fs, std::max(0.0, t - best.r),
                                            t + best.r, 65, cfg.search.golden_iters,
                                            false);
    if (vs > best.v) best = {vs, s1, best.r};
    auto fr = [&](double r) { return value_of(best.s, r); };
    const double slice_cover =
        std::max({best.s + S, std::abs(best.s - t), 1e-9});
    const GoodRadiusResult slice = detail::solve_radius_sup(
        fr, std::max(std::abs(best.s - t), cfg.search.r_min_rel * scale),
        slice_cover, beta, f.dim, ctx.linf, ctx.l1, {best.r}, cfg.search);
    if (!slice.degenerate && slice.value > best.v)
      offer(best.s, slice.smallest, slice.value);
    if (best.v <= prev * (1.0 + 1e-13)) break;
  }

  out.value = best.v;
  out.s_opt = best.s;
  out.r_opt = best.r;
  out.boundary_contact = detail::orbit_contact(best.s, t, best.r);
  return out;
}

/// Truncated evaluation on a line profile (d = 1) at a signed point.
inline GoodRadiusResult truncated_value_line(const Profile& f_line, double x,
                                             double beta, double eps,
                                             const SearchConfig& cfg = {}) {
  if (!(eps > 0.0)) throw std::invalid_argument("truncated_value_line: eps must be > 0");
  return centered_value_line(detail::LineContext(f_line), x, beta, cfg, eps);
}

inline NoncenteredResult noncentered_value_line(const Profile& f_line, double x,
                                                double beta,
                                                const SearchConfig& cfg = {}) {
  return noncentered_value_line(detail::LineContext(f_line), x, beta, cfg);
}

}  // namespace mbeta
