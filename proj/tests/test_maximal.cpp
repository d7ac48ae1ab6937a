#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mbeta/maximal.hpp"
#include "test_util.hpp"

using namespace mbeta;
using namespace mbeta_test;
using Catch::Approx;

namespace {

// dense-grid brute force for the centered value on the line
double brute_centered_line(const Profile& f, double x, double beta, double r_lo,
                           double r_hi, int n = 20000) {
  const Antiderivative I(abs_profile(f));
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double r = r_lo * std::pow(r_hi / r_lo, double(i) / n);
    best = std::max(best, std::pow(r, beta) * (I(x + r) - I(x - r)) / (2.0 * r));
  }
  return best;
}

}  // namespace

TEST_CASE("centered tent at the origin: closed form") {
  // maximize r^(1/2) (1 - r/2): r* = 2/3, value (2/3)^(3/2)
  const auto res = centered_value_line(tent(), 0.0, 0.5);
  CHECK(res.value == Approx(std::pow(2.0 / 3.0, 1.5)).epsilon(1e-9));
  REQUIRE(res.radii.size() == 1);
  CHECK(res.radii[0] == Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(res.smallest == res.radii[0]);
  CHECK_FALSE(res.degenerate);
  CHECK(res.objective_at(1.0) == Approx(0.5).epsilon(1e-12));
  CHECK(res.objective_at(1.0) < res.value);
  // tail branch decreases: r > 1 holds the whole mass
  CHECK(res.objective_at(2.0) == Approx(std::pow(2.0, -0.5) / 2.0).epsilon(1e-12));
}

TEST_CASE("centered value against a brute-force grid") {
  Rng rng(211);
  for (int rep = 0; rep < 8; ++rep) {
    const Profile f = random_profile(rng);
    const double beta = std::vector<double>{0.25, 0.5, 0.75}[rep % 3];
    const double x = rng.uniform(-1.0, 11.0);
    const auto res = centered_value_line(f, x, beta);
    const double brute = brute_centered_line(f, x, beta, 1e-4, 25.0, 80000);
    CHECK(res.value >= brute - 1e-9);
    CHECK(res.value == Approx(brute).epsilon(1e-5));
  }
}

TEST_CASE("degenerate input") {
  const Profile zero({0.0, 1.0}, {0.0, 0.0});
  const auto res = centered_value_line(zero, 0.3, 0.5);
  CHECK(res.value == 0.0);
  CHECK(res.radii.empty());
  CHECK(res.degenerate);

  const RadialFunction rf(2, Profile({0.0, 1.0}, {0.0, 0.0}));
  CHECK(centered_value(rf, 0.7, Beta(0.5, 2)).degenerate);
  CHECK(noncentered_value(rf, 0.7, Beta(0.5, 2)).degenerate);
}

TEST_CASE("radial centered agrees with line evaluation in d = 1") {
  const RadialFunction rf(1, tent_radial());
  const auto res = centered_value(rf, 0.0, Beta(0.5, 1));
  CHECK(res.value == Approx(std::pow(2.0 / 3.0, 1.5)).epsilon(1e-9));
  const auto off = centered_value(rf, 0.4, Beta(0.5, 1));
  const auto line = centered_value_line(tent(), 0.4, 0.5);
  CHECK(off.value == Approx(line.value).epsilon(1e-10));
}

TEST_CASE("noncentered tent at the origin matches centered") {
  const auto nc = noncentered_value_line(tent(), 0.0, 0.5);
  CHECK(nc.value == Approx(std::pow(2.0 / 3.0, 1.5)).epsilon(1e-8));
  CHECK(std::abs(nc.s_opt) <= 1e-5);
  CHECK_FALSE(nc.boundary_contact);
}

TEST_CASE("sandwich: centered <= noncentered <= 2^(d-beta) centered") {
  Rng rng(223);
  for (int rep = 0; rep < 18; ++rep) {
    const int d = std::vector<int>{1, 2, 3}[rep % 3];
    const Profile F = random_radial_profile(rng, 5.0);
    const RadialFunction f(d, F);
    const double beta = std::vector<double>{0.25, 0.5, 0.9}[rng.uniform_int(0, 2)];
    const double t = rng.uniform(0.0, 6.0);
    const Beta b(beta, d);
    const auto c = centered_value(f, t, b);
    const auto nc = noncentered_value(f, t, b);
    if (c.degenerate) continue;
    CHECK(nc.value >= c.value * (1.0 - 1e-7));
    CHECK(nc.value <= std::pow(2.0, d - beta) * c.value * (1.0 + 1e-7));
    CHECK(std::abs(nc.s_opt - t) <= nc.r_opt * (1.0 + 1e-9));
  }
}

TEST_CASE("truncated evaluation") {
  // eps below every good radius: same answer
  const auto base = centered_value_line(tent(), 0.0, 0.5);
  const auto same = truncated_value_line(tent(), 0.0, 0.5, 1e-3);
  CHECK(same.value == Approx(base.value).epsilon(1e-12));

  // eps = 1 pins the tent optimum at the boundary radius
  const auto trunc = truncated_value_line(tent(), 0.0, 0.5, 1.0);
  CHECK(trunc.value == Approx(0.5).epsilon(1e-10));
  REQUIRE_FALSE(trunc.radii.empty());
  CHECK(trunc.radii.front() == Approx(1.0).epsilon(1e-9));

  // monotone in eps
  Rng rng(307);
  const RadialFunction f(2, plateau());
  const Beta b(0.5, 2);
  for (int rep = 0; rep < 6; ++rep) {
    const double t = rng.uniform(0.0, 3.0);
    const double e1 = rng.uniform(0.01, 1.0);
    const double e2 = e1 + rng.uniform(0.0, 2.0);
    const auto v1 = truncated_value(f, t, b, e1);
    const auto v2 = truncated_value(f, t, b, e2);
    CHECK(v1.value >= v2.value - 1e-9);
  }
  CHECK_THROWS_AS(truncated_value(f, 1.0, b, 0.0), std::invalid_argument);
}

TEST_CASE("restricted small-radius evaluation") {
  const RadialFunction f(2, plateau());
  const Beta b(0.5, 2);
  CHECK_THROWS_AS(mI_value(f, 0.0, b), std::invalid_argument);

  // always dominated by the unrestricted sup
  Rng rng(311);
  for (int rep = 0; rep < 6; ++rep) {
    const double t = rng.uniform(0.5, 5.0);
    CHECK(mI_value(f, t, b).value <= centered_value(f, t, b).value + 1e-9);
  }

  // brute-force check on the restricted range at t = 4 (r <= 1)
  const double t = 4.0;
  const auto res = mI_value(f, t, b);
  detail::RadialContext ctx(f, QuadratureConfig{});
  double brute = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double r = 1e-4 * std::pow(1.0 / 1e-4, double(i) / 4000.0);
    brute = std::max(brute, std::sqrt(r) * ctx.average(t, r));
  }
  CHECK(res.value == Approx(brute).margin(1e-5));

  // a spiky profile far from the origin keeps its optimum local
  const Profile spike({0.0, 3.9, 4.0, 4.1, 10.0}, {0.0, 0.0, 1.0, 0.0, 0.0});
  const RadialFunction g(2, spike);
  const auto full = centered_value(g, 4.0, b);
  const auto small = mI_value(g, 4.0, b);
  REQUIRE_FALSE(full.degenerate);
  CHECK(full.smallest <= 1.0);
  CHECK(small.value == Approx(full.value).epsilon(1e-9));
}

TEST_CASE("scaling covariance") {
  Rng rng(331);
  const Profile f = random_profile(rng);
  const auto base = centered_value_line(f, 2.0, 0.5);
  const auto scaled = centered_value_line(scale(f, 3.5), 2.0, 0.5);
  CHECK(scaled.value == Approx(3.5 * base.value).epsilon(1e-10));
  REQUIRE(scaled.radii.size() == base.radii.size());
  for (std::size_t i = 0; i < base.radii.size(); ++i)
    CHECK(scaled.radii[i] == Approx(base.radii[i]).epsilon(1e-9));
}

TEST_CASE("dilation covariance") {
  const double a = 1.7, beta = 0.5;
  const RadialFunction f(2, plateau());
  const RadialFunction fa(2, dilate(plateau(), a));
  const Beta b(beta, 2);
  const double t = 0.8;
  const auto base = centered_value(f, t, b);
  const auto dil = centered_value(fa, a * t, b);
  CHECK(dil.value == Approx(std::pow(a, beta) * base.value).epsilon(1e-6));
  REQUIRE_FALSE(base.radii.empty());
  REQUIRE_FALSE(dil.radii.empty());
  CHECK(dil.smallest == Approx(a * base.smallest).epsilon(1e-5));
}

TEST_CASE("good radii satisfy the near-optimality contract") {
  Rng rng(349);
  for (int rep = 0; rep < 10; ++rep) {
    const Profile f = random_profile(rng);
    const auto res = centered_value_line(f, rng.uniform(0.0, 10.0), 0.5);
    if (res.degenerate) continue;
    REQUIRE_FALSE(res.radii.empty());
    CHECK(res.smallest == res.radii.front());
    for (double r : res.radii)
      CHECK(res.objective_at(r) >= (1.0 - 1e-8) * res.value);
  }
}

TEST_CASE("beta validation") {
  CHECK_THROWS_AS(Beta(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Beta(2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Beta(1.0, 1), std::invalid_argument);
  CHECK(Beta(0.5, 2).q() == Approx(2.0 / 1.5));
  CHECK(Beta(0.5, 1).q() == Approx(2.0));
  CHECK(Beta(1.5, 3).theorem_range() == false);
}
