#include <cstdio>
#include "mbeta/verify.hpp"
using namespace mbeta;
int main() {
  const auto corpus = make_corpus(8, 200, 10.0, true);
  const NamedProfile* np = nullptr;
  for (const auto& e : corpus) if (e.name == "rand-0093") np = &e;
  const RadialFunction f(5, np->profile);
  const double t = 0.82450290825870587;
  QuadratureConfig tq;
  tq.abs_tol = 1e-13;
  tq.refinement_cap = 19;
  detail::RadialContext ctx(f, tq);
  // scan radii to find the failing ball_average
  for (int i = 0; i <= 6000; ++i) {
    const double r = 1e-8 * std::pow(11.0 / 1e-8, i / 6000.0);
    try {
      ctx.average(t, r);
    } catch (const std::exception& e) {
      std::printf("FAIL at r=%.17g: %s\n", r, e.what());
      std::printf("  part_lo=%.17g part_hi=%.17g\n", std::abs(t - r), t + r);
      // nearest knots
      for (double k : f.F_abs.knots)
        if (std::abs(k - std::abs(t - r)) < 0.05 || std::abs(k - (t + r)) < 0.05)
          std::printf("  knot %.17g (dist lo %.3e hi %.3e)\n", k,
                      k - std::abs(t - r), k - (t + r));
      return 1;
    }
  }
  std::puts("no failure in radius scan");
  return 0;
}
