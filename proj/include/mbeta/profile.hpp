#pragma once

// Exact calculus for compactly supported, continuous piecewise-linear
// functions of one real variable. Everything downstream (averages, maximal
// functions, derivative fields) is built on top of these primitives, so all
// operations here are closed-form: no sampling, no quadrature.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbeta {

inline constexpr double kKnotMergeEps = 1e-12;

/// Continuous piecewise-linear function: linear between consecutive knots,
/// identically zero outside [knots.front(), knots.back()].
struct Profile {
  std::vector<double> knots;
  std::vector<double> values;

  Profile() = default;
  Profile(std::vector<double> k, std::vector<double> v)
      : knots(std::move(k)), values(std::move(v)) {
    validate();
  }

  void validate() const {
    if (knots.size() < 2 || knots.size() != values.size())
      throw std::invalid_argument("Profile: need >= 2 knots and matching values");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      if (!(knots[i] < knots[i + 1]))
        throw std::invalid_argument("Profile: knots must be strictly increasing");
    for (double k : knots)
      if (!std::isfinite(k)) throw std::invalid_argument("Profile: non-finite knot");
    for (double v : values)
      if (!std::isfinite(v)) throw std::invalid_argument("Profile: non-finite value");
  }

  double evaluate(double t) const {
    if (t <= knots.front()) return t == knots.front() ? values.front() : 0.0;
    if (t >= knots.back()) return t == knots.back() ? values.back() : 0.0;
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
    const double w = (t - knots[i]) / (knots[i + 1] - knots[i]);
    return values[i] + w * (values[i + 1] - values[i]);
  }

  double support_lo() const { return knots.front(); }
  double support_hi() const { return knots.back(); }
  double support_span() const { return knots.back() - knots.front(); }

  double max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return v == 0.0; });
  }
};

/// Piecewise-constant function: slopes[i] on (knots[i], knots[i+1]), zero
/// outside. Holds the a.e.-defined weak derivative of a Profile.
struct StepProfile {
  std::vector<double> knots;
  std::vector<double> slopes;  // size knots.size() - 1

  double value_at(double t) const {
    if (t <= knots.front() || t >= knots.back()) return 0.0;
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
    return slopes[i];
  }

  /// Total variation of the underlying profile: integral of |slope|.
  double l1_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < slopes.size(); ++i)
      s += std::abs(slopes[i]) * (knots[i + 1] - knots[i]);
    return s;
  }
};

inline StepProfile weak_derivative(const Profile& p) {
  StepProfile d;
  d.knots = p.knots;
  d.slopes.resize(p.knots.size() - 1);
  for (std::size_t i = 0; i + 1 < p.knots.size(); ++i)
    d.slopes[i] = (p.values[i + 1] - p.values[i]) / (p.knots[i + 1] - p.knots[i]);
  return d;
}

/// |p|, with a knot inserted at every sign-change zero crossing so the result
/// is again piecewise linear.
inline Profile abs_profile(const Profile& p) {
  std::vector<double> k, v;
  k.reserve(p.knots.size() + 4);
  v.reserve(p.knots.size() + 4);
  k.push_back(p.knots[0]);
  v.push_back(std::abs(p.values[0]));
  for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
    const double a = p.values[i], b = p.values[i + 1];
    if (a * b < 0.0) {
      // crossing at the exact linear interpolant
      const double t = (p.knots[i] * b - p.knots[i + 1] * a) / (b - a);
      if (t - k.back() > kKnotMergeEps && p.knots[i + 1] - t > kKnotMergeEps) {
        k.push_back(t);
        v.push_back(0.0);
      }
    }
    k.push_back(p.knots[i + 1]);
    v.push_back(std::abs(b));
  }
  Profile out;
  out.knots = std::move(k);
  out.values = std::move(v);
  out.validate();
  return out;
}

/// a*p + b*q on the union of both knot sets (knots closer than the merge
/// tolerance collapse to one).
inline Profile linear_combination(double a, const Profile& p, double b, const Profile& q) {
  std::vector<double> k;
  k.reserve(p.knots.size() + q.knots.size());
  std::merge(p.knots.begin(), p.knots.end(), q.knots.begin(), q.knots.end(),
             std::back_inserter(k));
  k.erase(std::unique(k.begin(), k.end(),
                      [](double x, double y) { return std::abs(x - y) <= kKnotMergeEps; }),
          k.end());
  std::vector<double> v(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    v[i] = a * p.evaluate(k[i]) + b * q.evaluate(k[i]);
  Profile out;
  out.knots = std::move(k);
  out.values = std::move(v);
  out.validate();
  return out;
}

inline Profile scale(const Profile& p, double lambda) {
  Profile out = p;
  for (double& v : out.values) v *= lambda;
  return out;
}

/// f_a(t) = f(t / a): knots stretch by a > 0.
inline Profile dilate(const Profile& p, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("dilate: factor must be positive");
  Profile out = p;
  for (double& k : out.knots) k *= a;
  return out;
}

inline Profile shift(const Profile& p, double c) {
  Profile out = p;
  for (double& k : out.knots) k += c;
  return out;
}

/// Even reflection t -> F(|t|) of a profile living on [0, inf).
inline Profile even_extension(const Profile& f) {
  if (f.knots.front() < 0.0)
    throw std::invalid_argument("even_extension: profile must live on [0, inf)");
  std::vector<double> k, v;
  k.reserve(2 * f.knots.size());
  v.reserve(2 * f.knots.size());
  const bool has_zero_knot = f.knots.front() <= kKnotMergeEps;
  for (std::size_t i = f.knots.size(); i-- > 0;) {
    if (has_zero_knot && i == 0) break;  // mirrored zero knot merges
    k.push_back(-f.knots[i]);
    v.push_back(f.values[i]);
  }
  if (!has_zero_knot) {
    // function vanishes on a neighbourhood of 0; keep it explicit
    k.push_back(0.0);
    v.push_back(0.0);
  }
  for (std::size_t i = 0; i < f.knots.size(); ++i) {
    k.push_back(f.knots[i]);
    v.push_back(f.values[i]);
  }
  Profile out;
  out.knots = std::move(k);
  out.values = std::move(v);
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Exact integrals

/// integral of t^m over [a, b]
inline double monomial_integral(int m, double a, double b) {
  return (std::pow(b, m + 1) - std::pow(a, m + 1)) / (m + 1);
}

/// integral over [a, b] of p(t) * t^m, exact (p linear per piece).
inline double moment_integral(const Profile& p, int m, double a, double b) {
  a = std::max(a, p.knots.front());
  b = std::min(b, p.knots.back());
  if (!(a < b)) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
    const double lo = std::max(a, p.knots[i]);
    const double hi = std::min(b, p.knots[i + 1]);
    if (!(lo < hi)) continue;
    const double slope = (p.values[i + 1] - p.values[i]) / (p.knots[i + 1] - p.knots[i]);
    const double c0 = p.values[i] - slope * p.knots[i];
    // (slope*t + c0) * t^m
    total += slope * monomial_integral(m + 1, lo, hi) + c0 * monomial_integral(m, lo, hi);
  }
  return total;
}

/// integral over [a, b] of s(t) * t^m for a step function, exact;
/// use_abs replaces s by |s|.
inline double moment_integral(const StepProfile& s, int m, double a, double b,
                              bool use_abs = false) {
  a = std::max(a, s.knots.front());
  b = std::min(b, s.knots.back());
  if (!(a < b)) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < s.slopes.size(); ++i) {
    const double lo = std::max(a, s.knots[i]);
    const double hi = std::min(b, s.knots[i + 1]);
    if (!(lo < hi)) continue;
    const double c = use_abs ? std::abs(s.slopes[i]) : s.slopes[i];
    total += c * monomial_integral(m, lo, hi);
  }
  return total;
}

/// ||p||_{L^1(R)} = integral of |p|, exact.
inline double l1_norm(const Profile& p) {
  return moment_integral(abs_profile(p), 0, p.knots.front(), p.knots.back());
}

/// Exact antiderivative I(t) = integral_{-inf}^t p. Piecewise quadratic;
/// built once, evaluated in O(log n). The workhorse of the d=1 fast path.
class Antiderivative {
 public:
  explicit Antiderivative(const Profile& p) : knots_(p.knots), values_(p.values) {
    cum_.resize(knots_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      const double h = knots_[i + 1] - knots_[i];
      cum_[i + 1] = cum_[i] + 0.5 * (values_[i] + values_[i + 1]) * h;
    }
  }

  double operator()(double t) const {
    if (t <= knots_.front()) return 0.0;
    if (t >= knots_.back()) return cum_.back();
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    const double h = knots_[i + 1] - knots_[i];
    const double u = t - knots_[i];
    const double slope = (values_[i + 1] - values_[i]) / h;
    return cum_[i] + values_[i] * u + 0.5 * slope * u * u;
  }

  double total() const { return cum_.back(); }

  /// Mean value of p over [a, b], exact.
  double interval_average(double a, double b) const {
    return ((*this)(b) - (*this)(a)) / (b - a);
  }

 private:
  std::vector<double> knots_, values_, cum_;
};

/// integral over [a, b] of p'(u) * (c - u) du, exact.
inline double gradient_dot_integral(const Profile& p, double a, double b, double c) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
    const double lo = std::max(a, p.knots[i]);
    const double hi = std::min(b, p.knots[i + 1]);
    if (!(lo < hi)) continue;
    const double slope = (p.values[i + 1] - p.values[i]) / (p.knots[i + 1] - p.knots[i]);
    total += slope * (c * (hi - lo) - 0.5 * (hi * hi - lo * lo));
  }
  return total;
}

/// Total variation of p on [a, b] (= integral of |p'|), exact.
inline double total_variation(const Profile& p, double a, double b) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
    const double lo = std::max(a, p.knots[i]);
    const double hi = std::min(b, p.knots[i + 1]);
    if (!(lo < hi)) continue;
    const double slope = (p.values[i + 1] - p.values[i]) / (p.knots[i + 1] - p.knots[i]);
    total += std::abs(slope) * (hi - lo);
  }
  return total;
}

/// Closed sub-intervals of [a, b] where lo <= p <= hi, with exact endpoints.
inline std::vector<std::pair<double, double>> level_band_intervals(
    const Profile& p, double lo, double hi, double a, double b) {
  // Collect breakpoints: knots plus crossings of the two levels.
  std::vector<double> pts{a, b};
  for (double k : p.knots)
    if (k > a && k < b) pts.push_back(k);
  auto add_crossings = [&](double level) {
    for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
      const double va = p.values[i] - level, vb = p.values[i + 1] - level;
      if (va * vb < 0.0) {
        const double t =
            (p.knots[i] * vb - p.knots[i + 1] * va) / (vb - va);
        if (t > a && t < b) pts.push_back(t);
      }
    }
    // the support boundary is a crossing too if the level separates 0
  };
  add_crossings(lo);
  add_crossings(hi);
  if (p.knots.front() > a) pts.push_back(p.knots.front());
  if (p.knots.back() < b) pts.push_back(p.knots.back());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    const double v = p.evaluate(mid);
    if (v >= lo && v <= hi) {
      if (!out.empty() && out.back().second == pts[i])
        out.back().second = pts[i + 1];
      else
        out.emplace_back(pts[i], pts[i + 1]);
    }
  }
  return out;
}

/// Points where |f| stays within a factor 2 of a reference average c:
/// { z : c/2 <= |f(z)| <= 2c }, as an exact union of closed intervals.
struct ExceptionalSet {
  std::vector<std::pair<double, double>> intervals;

  bool contains(double t) const {
    for (const auto& [a, b] : intervals)
      if (t >= a && t <= b) return true;
    return false;
  }
};

inline ExceptionalSet exceptional_set(const Profile& f_abs, double c, double a,
                                      double b) {
  return {level_band_intervals(f_abs, 0.5 * c, 2.0 * c, a, b)};
}

// ---------------------------------------------------------------------------
// Dimensional constants

/// Volume of the d-dimensional unit ball.
inline double unit_ball_volume(int d) {
  return std::pow(std::acos(-1.0), 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Surface measure of the unit sphere S^{d-1}.
inline double unit_sphere_area(int d) { return d * unit_ball_volume(d); }

// ---------------------------------------------------------------------------
// Radial functions

/// f(x) = F(|x|) on R^d. For d = 1 the even extension is cached so interval
/// averages stay exact.
struct RadialFunction {
  int dim = 1;
  Profile F;

  // caches, derived in the constructor
  Profile F_abs;
  StepProfile dF_abs;
  Profile line_abs;  // |F(|t|)| as a profile on R (d = 1 exact path)

  RadialFunction(int d, Profile profile) : dim(d), F(std::move(profile)) {
    if (dim < 1) throw std::invalid_argument("RadialFunction: dimension must be >= 1");
    if (F.knots.front() < 0.0)
      throw std::invalid_argument("RadialFunction: profile knots must be >= 0");
    if (F.values.back() != 0.0)
      throw std::invalid_argument("RadialFunction: profile must vanish at its last knot");
    if (F.knots.front() > kKnotMergeEps && F.values.front() != 0.0)
      throw std::invalid_argument(
          "RadialFunction: nonzero value at a positive first knot breaks continuity");
    F_abs = abs_profile(F);
    dF_abs = weak_derivative(F_abs);
    line_abs = even_extension(F_abs);
  }

  double evaluate_radius(double t) const { return F.evaluate(t); }
  double support_radius() const { return F.knots.back(); }

  /// ||f||_{L^1(R^d)}, exact.
  double l1() const {
    return unit_sphere_area(dim) * moment_integral(F_abs, dim - 1, 0.0, F.knots.back());
  }

  /// ||grad f||_{L^1(R^d)} = sigma_d * int |F'(t)| t^{d-1} dt, exact.
  double grad_l1() const {
    const StepProfile dF = weak_derivative(F);
    return unit_sphere_area(dim) *
           moment_integral(dF, dim - 1, 0.0, F.knots.back(), /*use_abs=*/true);
  }

  /// W^{1,1}(R^d) norm, exact.
  double w11() const { return l1() + grad_l1(); }
};

// ---------------------------------------------------------------------------
// Norms of sampled fields

/// ||g||_q on the line from samples on an increasing grid, composite
/// trapezoid in |g|^q. Rejects q < 1.
inline double lq_line_norm(const std::vector<double>& grid,
                           const std::vector<double>& g, double q) {
  if (q < 1.0) throw std::invalid_argument("lq_line_norm: q must be >= 1");
  if (grid.size() != g.size() || grid.size() < 2)
    throw std::invalid_argument("lq_line_norm: bad grid");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double pa = std::pow(std::abs(g[i]), q);
    const double pb = std::pow(std::abs(g[i + 1]), q);
    acc += 0.5 * (pa + pb) * (grid[i + 1] - grid[i]);
  }
  return std::pow(acc, 1.0 / q);
}

/// ||g||_q over R^d for a radial sampled field: (sigma_d int |g|^q t^{d-1})^{1/q}.
/// For d = 1 this doubles the half-line integral (the two rays).
inline double radial_lq_norm(const std::vector<double>& grid,
                             const std::vector<double>& g, double q, int d) {
  if (q < 1.0) throw std::invalid_argument("radial_lq_norm: q must be >= 1");
  if (grid.size() != g.size() || grid.size() < 2)
    throw std::invalid_argument("radial_lq_norm: bad grid");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double pa = std::pow(std::abs(g[i]), q) * std::pow(grid[i], d - 1);
    const double pb = std::pow(std::abs(g[i + 1]), q) * std::pow(grid[i + 1], d - 1);
    acc += 0.5 * (pa + pb) * (grid[i + 1] - grid[i]);
  }
  return std::pow(unit_sphere_area(d) * acc, 1.0 / q);
}

}  // namespace mbeta
