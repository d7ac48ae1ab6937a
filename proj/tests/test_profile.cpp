#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mbeta/profile.hpp"
#include "test_util.hpp"

using namespace mbeta;
using namespace mbeta_test;
using Catch::Approx;

TEST_CASE("evaluate: tent") {
  const Profile T = tent();
  CHECK(T.evaluate(0.0) == 1.0);
  CHECK(T.evaluate(0.5) == Approx(0.5));
  CHECK(T.evaluate(3.0) == 0.0);
  CHECK(T.evaluate(-1.0) == 0.0);
  CHECK(T.evaluate(1.0) == 0.0);
  CHECK(T.evaluate(-2.0) == 0.0);
}

TEST_CASE("profile validation") {
  CHECK_THROWS_AS(Profile({0.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Profile({0.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Profile({1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Profile({0.0, 1.0}, {0.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("abs_profile: reflection and crossing knots") {
  CHECK(abs_profile(sawtooth_neg()).values == tent().values);
  CHECK(abs_profile(tent()).values == tent().values);

  const Profile z = abs_profile(zigzag());
  // crossing between (1, 1) and (2, -1) sits at t = 1.5
  REQUIRE(z.knots.size() == 5);
  CHECK(z.knots[2] == Approx(1.5));
  CHECK(z.values[2] == 0.0);
  CHECK(z.values == std::vector<double>{0.0, 1.0, 0.0, 1.0, 0.0});
}

TEST_CASE("abs and evaluate commute on a dense grid") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Profile p = random_profile(rng);
    const Profile a = abs_profile(p);
    for (int i = 0; i <= 400; ++i) {
      const double t = -1.0 + 12.0 * i / 400.0;
      CHECK(a.evaluate(t) == Approx(std::abs(p.evaluate(t))).margin(1e-14));
    }
    for (double k : p.knots) CHECK(a.evaluate(k) == std::abs(p.evaluate(k)));
  }
}

TEST_CASE("weak_derivative: slopes and total variation") {
  const StepProfile dT = weak_derivative(tent());
  REQUIRE(dT.slopes.size() == 2);
  CHECK(dT.slopes[0] == Approx(1.0));
  CHECK(dT.slopes[1] == Approx(-1.0));
  CHECK(dT.l1_norm() == Approx(2.0));

  const Profile zero({0.0, 1.0}, {0.0, 0.0});
  for (double s : weak_derivative(zero).slopes) CHECK(s == 0.0);

  // total variation of |zigzag| by knot walk
  const Profile az = abs_profile(zigzag());
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < az.values.size(); ++i)
    tv += std::abs(az.values[i + 1] - az.values[i]);
  CHECK(tv == Approx(4.0));
  CHECK(weak_derivative(az).l1_norm() == Approx(4.0));
}

TEST_CASE("weak_derivative is linear") {
  Rng rng(23);
  const Profile p = random_profile(rng), q = random_profile(rng);
  const Profile combo = linear_combination(2.5, p, -1.25, q);
  const StepProfile dc = weak_derivative(combo);
  const StepProfile dp = weak_derivative(p), dq = weak_derivative(q);
  for (std::size_t i = 0; i < dc.slopes.size(); ++i) {
    const double mid = 0.5 * (dc.knots[i] + dc.knots[i + 1]);
    CHECK(dc.slopes[i] ==
          Approx(2.5 * dp.value_at(mid) - 1.25 * dq.value_at(mid)).margin(1e-9));
  }
}

TEST_CASE("fundamental theorem at the knots") {
  Rng rng(37);
  for (int rep = 0; rep < 10; ++rep) {
    const Profile p = random_profile(rng);
    const StepProfile dp = weak_derivative(p);
    double acc = 0.0;
    CHECK(p.values.front() == 0.0);
    for (std::size_t i = 0; i + 1 < p.knots.size(); ++i) {
      acc += dp.slopes[i] * (p.knots[i + 1] - p.knots[i]);
      CHECK(acc == Approx(p.values[i + 1]).margin(1e-10));
    }
  }
}

TEST_CASE("|f|' never has more variation than f'") {
  Rng rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const Profile p = random_profile(rng);
    CHECK(weak_derivative(abs_profile(p)).l1_norm() <=
          weak_derivative(p).l1_norm() + 1e-12);
  }
}

TEST_CASE("norms: closed forms") {
  CHECK(l1_norm(tent()) == Approx(1.0));

  // f' of the tent sampled exactly: |f'| = 1 on the support
  std::vector<double> grid, g;
  const StepProfile dT = weak_derivative(tent());
  for (int i = 0; i <= 400; ++i) {
    const double t = -1.0 + 2.0 * i / 400.0;
    grid.push_back(t);
    g.push_back(dT.value_at(t));
  }
  g.front() = 1.0;  // boundary samples: |f'| = 1 a.e. on [-1, 1]
  g.back() = -1.0;
  CHECK(lq_line_norm(grid, g, 2.0) == Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(lq_line_norm(grid, g, 0.5), std::invalid_argument);

  std::vector<double> zgrid{0.0, 1.0, 2.0}, zg{0.0, 0.0, 0.0};
  CHECK(radial_lq_norm(zgrid, zg, 2.0, 3) == 0.0);
}

TEST_CASE("radial norms: closed forms in d = 3") {
  const RadialFunction f(3, tent_radial());
  const double pi = std::acos(-1.0);
  // sigma_3 = 4 pi; int (1 - t) t^2 = 1/12, int t^2 = 1/3
  CHECK(f.l1() == Approx(4.0 * pi / 12.0));
  CHECK(f.grad_l1() == Approx(4.0 * pi / 3.0));
  CHECK(f.w11() == Approx(4.0 * pi / 12.0 + 4.0 * pi / 3.0));
}

TEST_CASE("radial function validation") {
  CHECK_THROWS_AS(RadialFunction(2, Profile({-1.0, 1.0}, {0.0, 0.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(RadialFunction(2, Profile({0.0, 1.0}, {1.0, 1.0})),
                  std::invalid_argument);  // no decay at the far knot
  CHECK_THROWS_AS(RadialFunction(2, Profile({1.0, 2.0}, {1.0, 0.0})),
                  std::invalid_argument);  // jump at an interior support edge
  CHECK_NOTHROW(RadialFunction(2, Profile({0.0, 1.0}, {1.0, 0.0})));
  CHECK_NOTHROW(RadialFunction(1, tent_radial()));
}

TEST_CASE("even extension matches the line tent") {
  const Profile line = even_extension(tent_radial());
  REQUIRE(line.knots.size() == 3);
  CHECK(line.knots == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(line.values == std::vector<double>{0.0, 1.0, 0.0});
}

TEST_CASE("antiderivative and interval averages") {
  const Antiderivative I(tent());
  CHECK(I.total() == Approx(1.0));
  CHECK(I.interval_average(-0.5, 0.5) == Approx(0.75));
  CHECK(I.interval_average(-3.0, 3.0) == Approx(1.0 / 6.0));
  CHECK(I(-5.0) == 0.0);
  CHECK(I(5.0) == Approx(1.0));
}

TEST_CASE("gradient_dot_integral: tent hand case") {
  // int over [-1/2, 1/2] of T'(u) (0 - u) du = 1/4
  CHECK(gradient_dot_integral(tent(), -0.5, 0.5, 0.0) == Approx(0.25));
}

TEST_CASE("level band intervals are exact") {
  const auto iv = level_band_intervals(tent(), 0.25, 0.75, -1.0, 1.0);
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].first == Approx(-0.75));
  CHECK(iv[0].second == Approx(-0.25));
  CHECK(iv[1].first == Approx(0.25));
  CHECK(iv[1].second == Approx(0.75));

  Rng rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    const Profile p = abs_profile(random_profile(rng));
    const double c = rng.uniform(0.05, 0.8);
    const auto bands = level_band_intervals(p, 0.5 * c, 2.0 * c, -1.0, 11.0);
    for (int i = 0; i < 200; ++i) {
      const double t = rng.uniform(-1.0, 11.0);
      const double v = p.evaluate(t);
      bool inside = false;
      for (const auto& [a, b] : bands) inside |= (t >= a && t <= b);
      const bool want = v >= 0.5 * c && v <= 2.0 * c;
      // skip points within float fuzz of a band endpoint
      bool near_edge = false;
      for (const auto& [a, b] : bands)
        near_edge |= std::abs(t - a) < 1e-9 || std::abs(t - b) < 1e-9;
      if (!near_edge) CHECK(inside == want);
    }
  }
}

TEST_CASE("moment integrals: closed forms") {
  // int_0^1 (1 - t) t^2 dt = 1/12
  CHECK(moment_integral(tent_radial(), 2, 0.0, 1.0) == Approx(1.0 / 12.0));
  // step: slope -1 on [0, 1]: int t^2 * (-1) = -1/3
  CHECK(moment_integral(weak_derivative(tent_radial()), 2, 0.0, 1.0) ==
        Approx(-1.0 / 3.0));
  CHECK(moment_integral(weak_derivative(tent_radial()), 2, 0.0, 1.0, true) ==
        Approx(1.0 / 3.0));
}

TEST_CASE("dilate and scale") {
  const Profile d = dilate(tent(), 2.0);
  CHECK(d.knots == std::vector<double>{-2.0, 0.0, 2.0});
  CHECK(l1_norm(d) == Approx(2.0));
  CHECK(l1_norm(scale(tent(), -3.0)) == Approx(3.0));
  CHECK_THROWS_AS(dilate(tent(), 0.0), std::invalid_argument);
}
