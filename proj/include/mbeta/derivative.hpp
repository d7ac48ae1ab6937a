#pragma once

// The derivative of the maximal function, computed two independent ways: the
// representation formula (averaged gradient of |f| over the smallest good
// ball) and central finite differences of the value itself. Fields collect
// per-point samples with region labels and flags for the points where
// differentiability is suspect (non-unique good radius, inconsistent
// difference quotients).

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mbeta/geometry.hpp"
#include "mbeta/maximal.hpp"
#include "mbeta/parallel.hpp"
#include "mbeta/profile.hpp"

namespace mbeta {

enum class Operator { centered, noncentered };

/// Region labels of the radial decomposition: small good radius (r <= t/4),
/// large radius split by the sign of the radial derivative component.
enum class Region { Omega1, Omega2plus, Omega2minus };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::Omega1: return "Omega1";
    case Region::Omega2plus: return "Omega2plus";
    case Region::Omega2minus: return "Omega2minus";
  }
  return "?";
}

struct DerivativeSample {
  double t = 0.0;
  double value = 0.0;        // maximal-function value
  double good_radius = 0.0;  // smallest good radius
  double luiro = 0.0;        // representation-formula derivative (radial component)
  double fd = 0.0;           // central finite difference
  Region region = Region::Omega2minus;
  bool unique_radius = true;
  bool richardson_ok = true;
  bool degenerate = false;
};

struct DerivativeField {
  int dim = 1;
  double beta = 0.0;
  std::vector<double> grid;
  std::vector<DerivativeSample> samples;
  double lq_norm = 0.0;
};

namespace detail {

inline Region classify(double good_radius, double t, double luiro) {
  if (good_radius <= 0.25 * std::abs(t)) return Region::Omega1;
  return luiro * t > 0.0 ? Region::Omega2plus : Region::Omega2minus;
}

// line representation-formula derivative at a signed point, given the ball
inline double line_luiro(const LineContext& ctx, double center, double r,
                         double beta) {
  return std::pow(r, beta) *
         (ctx.fabs->evaluate(center + r) - ctx.fabs->evaluate(center - r)) /
         (2.0 * r);
}

}  // namespace detail

/// Representation-formula derivative of the centered or non-centered maximal
/// function at radial coordinate t (radial component, signed along the
/// outward direction). Returns 0 for degenerate inputs.
inline double luiro_derivative(const RadialFunction& f, double t, const Beta& b,
                               Operator which, const EvalConfig& cfg = {}) {
  if (which == Operator::centered) {
    const GoodRadiusResult res = centered_value(f, t, b, cfg);
    if (res.degenerate) return 0.0;
    if (f.dim == 1) {
      detail::LineContext ctx(f.line_abs);
      return detail::line_luiro(ctx, t, res.smallest, b.beta);
    }
    return std::pow(res.smallest, b.beta) *
           boundary_flux(f.F_abs, BallSpec(t, res.smallest, f.dim), cfg.quad);
  }
  const NoncenteredResult res = noncentered_value(f, t, b, cfg);
  if (res.degenerate) return 0.0;
  if (f.dim == 1) {
    detail::LineContext ctx(f.line_abs);
    return detail::line_luiro(ctx, res.s_opt, res.r_opt, b.beta);
  }
  return std::pow(res.r_opt, b.beta) *
         boundary_flux(f.F_abs, BallSpec(res.s_opt, res.r_opt, f.dim), cfg.quad);
}

/// Central difference (M(t+h) - M(t-h)) / 2h of the centered value. For
/// d = 1 the radial extension is even, so t - h < 0 reflects; for d > 1 the
/// step shrinks to keep t - h >= 0.
inline double fd_derivative(const RadialFunction& f, double t, const Beta& b,
                            double h, const EvalConfig& cfg = {}) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_derivative: h must be > 0");
  if (f.dim > 1 && t - h < 0.0) {
    if (t <= 0.0) throw std::invalid_argument("fd_derivative: needs t > 0 for d > 1");
    h = 0.5 * t;
  }
  const double tp = t + h;
  const double tm = f.dim == 1 ? std::abs(t - h) : t - h;
  const double vp = centered_value(f, tp, b, cfg).value;
  const double vm = centered_value(f, tm, b, cfg).value;
  return (vp - vm) / (2.0 * h);
}

namespace detail {

inline DerivativeSample field_sample(const RadialFunction& f, double t,
                                     const Beta& b, const EvalConfig& cfg,
                                     const LineContext* line, bool with_fd) {
  DerivativeSample s;
  s.t = t;
  const GoodRadiusResult res = centered_value(f, t, b, cfg);
  if (res.degenerate) {
    s.degenerate = true;
    s.unique_radius = false;
    return s;
  }
  s.value = res.value;
  s.good_radius = res.smallest;
  s.unique_radius = res.unique_radius();
  if (f.dim == 1)
    s.luiro = line_luiro(*line, t, res.smallest, b.beta);
  else
    s.luiro = std::pow(res.smallest, b.beta) *
              boundary_flux(f.F_abs, BallSpec(t, res.smallest, f.dim), cfg.quad);
  if (with_fd) {
    const double h = 1e-4 * std::max(1.0, t);
    s.fd = fd_derivative(f, t, b, h, cfg);
    const double fd_half = fd_derivative(f, t, b, 0.5 * h, cfg);
    s.richardson_ok =
        std::abs(s.fd - fd_half) <= std::max(1e-3 * std::abs(fd_half), 3e-6);
  }
  s.region = classify(s.good_radius, t, s.luiro);
  return s;
}

}  // namespace detail

/// Per-point derivative samples over a grid of radial coordinates plus the
/// L^q norm (q = d/(d-beta)) of the representation-formula component, with
/// the radial weight (doubled line measure for d = 1).
inline DerivativeField derivative_field(const RadialFunction& f, const Beta& b,
                                        const std::vector<double>& grid,
                                        const EvalConfig& cfg = {},
                                        int jobs = 0, bool with_fd = true) {
  if (b.dim != f.dim) throw std::invalid_argument("derivative_field: dimension mismatch");
  for (double t : grid)
    if (t < 0.0 || (f.dim > 1 && t == 0.0))
      throw std::invalid_argument("derivative_field: grid must avoid the origin for d > 1");
  DerivativeField out;
  out.dim = f.dim;
  out.beta = b.beta;
  out.grid = grid;
  out.samples.resize(grid.size());
  std::optional<detail::LineContext> line_ctx;
  if (f.dim == 1) line_ctx.emplace(f.line_abs);
  parallel_for(grid.size(), jobs > 0 ? jobs : default_jobs(), [&](std::size_t i) {
    out.samples[i] = detail::field_sample(f, grid[i], b, cfg,
                                          line_ctx ? &*line_ctx : nullptr, with_fd);
  });
  std::vector<double> comp(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) comp[i] = out.samples[i].luiro;
  out.lq_norm = grid.size() >= 2 ? radial_lq_norm(grid, comp, b.q(), f.dim) : 0.0;
  return out;
}

/// Line-field variant for functions on R (signed grid, plain line measure).
inline DerivativeField derivative_field_line(const Profile& f_line, double beta,
                                             const std::vector<double>& grid,
                                             const SearchConfig& cfg = {},
                                             int jobs = 0, bool with_fd = true) {
  if (!(beta > 0.0) || !(beta < 1.0))
    throw std::invalid_argument("derivative_field_line: need 0 < beta < 1");
  DerivativeField out;
  out.dim = 1;
  out.beta = beta;
  out.grid = grid;
  out.samples.resize(grid.size());
  const detail::LineContext ctx(f_line);
  const double q = 1.0 / (1.0 - beta);
  parallel_for(grid.size(), jobs > 0 ? jobs : default_jobs(), [&](std::size_t i) {
    const double x = grid[i];
    DerivativeSample s;
    s.t = x;
    const GoodRadiusResult res = centered_value_line(ctx, x, beta, cfg);
    if (res.degenerate) {
      s.degenerate = true;
      s.unique_radius = false;
      out.samples[i] = s;
      return;
    }
    s.value = res.value;
    s.good_radius = res.smallest;
    s.unique_radius = res.unique_radius();
    s.luiro = detail::line_luiro(ctx, x, res.smallest, beta);
    if (with_fd) {
      const double h = 1e-4 * std::max(1.0, std::abs(x));
      auto value_at = [&](double y) {
        return centered_value_line(ctx, y, beta, cfg).value;
      };
      auto fd_at = [&](double step) {
        return (value_at(x + step) - value_at(x - step)) / (2.0 * step);
      };
      s.fd = fd_at(h);
      const double fd_half = fd_at(0.5 * h);
      s.richardson_ok =
          std::abs(s.fd - fd_half) <= std::max(1e-3 * std::abs(fd_half), 3e-6);
    }
    s.region = detail::classify(s.good_radius, x, s.luiro);
    out.samples[i] = s;
  });
  std::vector<double> comp(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) comp[i] = out.samples[i].luiro;
  out.lq_norm = grid.size() >= 2 ? lq_line_norm(grid, comp, q) : 0.0;
  return out;
}

}  // namespace mbeta
