// Acceptance suite: runs every verification criterion at its stated
// tolerance and sample counts against the seeded corpus, printing one
// PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mbeta/corpus.hpp"
#include "mbeta/maximal.hpp"
#include "mbeta/verify.hpp"

using namespace mbeta;

namespace {

int failures = 0;

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void report(int idx, bool ok, const std::string& what, double seconds) {
  std::printf("[%s] criterion %2d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", idx,
              what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct KindStats {
  int n = 0;
  int bad = 0;
  double max_residual = 0.0;
  double max_ratio = 0.0;
};

KindStats stats_for(const CheckReport& rep, const std::string& kind) {
  KindStats st;
  for (const SampleRow& r : rep.samples) {
    if (r.skipped || r.kind != kind) continue;
    ++st.n;
    st.bad += r.ok ? 0 : 1;
    st.max_residual = std::max(st.max_residual, r.residual);
    st.max_ratio = std::max(st.max_ratio, r.ratio);
  }
  return st;
}

}  // namespace

int main() {
  RunConfig cfg;
  cfg.seed = 7;
  cfg.corpus.count = 200;
  cfg.corpus.dims = {1, 2, 3, 5};
  cfg.corpus.betas = {0.1, 0.25, 0.5, 0.75, 0.9};
  const VerifyContext ctx = make_verify_context(cfg);
  char buf[256];

  // 1 + 2: identity suite at arbitrary balls, and at located optimal balls
  {
    double t0 = now_s();
    const CheckReport rep = check_identities(ctx, 200, 100);
    const double dt = now_s() - t0;
    const KindStats bs = stats_for(rep, "ball_sphere");
    const KindStats bp = stats_for(rep, "boundary_point");
    const KindStats hand = stats_for(rep, "ball_sphere_hand");
    const bool ok1 = bs.n >= 200 && bp.n >= 200 && bs.bad + bp.bad == 0 &&
                     hand.bad == 0 && dt < 120.0;
    std::snprintf(buf, sizeof buf,
                  "identity suite: %d+%d samples, max residual %.2e <= 1e-6, "
                  "hand case residual %.1e",
                  bs.n, bp.n, std::max(bs.max_residual, bp.max_residual),
                  hand.max_residual);
    report(1, ok1, buf, dt);

    t0 = now_s();
    const KindStats gc = stats_for(rep, "goodball_char");
    const KindStats gn = stats_for(rep, "goodball_char_nc");
    const bool ok2 = gc.n + gn.n >= 90 && gc.bad + gn.bad == 0;
    std::snprintf(buf, sizeof buf,
                  "optimal-ball identity: %d centered + %d noncentered points, "
                  "max relative residual %.2e <= 1e-4",
                  gc.n, gn.n, std::max(gc.max_residual, gn.max_residual));
    report(2, ok2, buf, now_s() - t0);
  }

  // 3: explicit-constant endpoint bound on the line
  {
    const double t0 = now_s();
    const CheckReport rep = check_sobolev_1d(ctx);
    double worst_margin = 0.0;  // ratio / bound
    for (const SampleRow& r : rep.samples)
      if (!r.skipped) worst_margin = std::max(worst_margin, r.residual);
    std::snprintf(buf, sizeof buf,
                  "line endpoint constant: %d (function, beta) pairs, max "
                  "ratio %.4f, worst ratio/bound %.3e",
                  rep.n_samples, rep.max_ratio, worst_margin);
    report(3, rep.passed && rep.n_samples >= 1000, buf, now_s() - t0);
  }

  // 4: representation formula vs finite differences
  {
    const double t0 = now_s();
    const CheckReport rep = check_luiro_fd(ctx, 120, 80);
    const KindStats med = stats_for(rep, "median");
    const KindStats p95 = stats_for(rep, "p95");
    std::snprintf(buf, sizeof buf,
                  "derivative cross-check: median dev %.2e <= 1e-3, p95 %.2e "
                  "<= 1e-2 over %d clean points",
                  med.max_residual, p95.max_residual,
                  stats_for(rep, "deviation").n);
    report(4, rep.passed, buf, now_s() - t0);
  }

  // 5: sandwich, truncation monotonicity, covariance
  {
    const double t0 = now_s();
    const CheckReport rep = check_operator_relations(ctx, 500, 100, 40);
    const KindStats sw = stats_for(rep, "sandwich");
    std::snprintf(buf, sizeof buf,
                  "operator relations: %d sandwich points (max excess %.2e), "
                  "monotonicity and covariance clean",
                  sw.n, sw.max_residual);
    report(5, rep.passed && sw.n >= 450, buf, now_s() - t0);
  }

  // 6: radius comparability with the proof exponent
  {
    const double t0 = now_s();
    const CheckReport rep = check_radii_comparability(ctx, 300);
    int flagged = 0;
    for (const SampleRow& r : rep.samples)
      flagged += r.flag == "statement_exponent_violated" ? 1 : 0;
    std::snprintf(buf, sizeof buf,
                  "radius comparability: %d pairs, zero violations, %d "
                  "statement-exponent flags logged",
                  rep.n_samples, flagged);
    report(6, rep.passed && rep.n_samples >= 300, buf, now_s() - t0);
  }

  // 7: auxiliary bound suite
  {
    const double t0 = now_s();
    const CheckReport rep = check_lemma_bounds(ctx);
    const KindStats band = stats_for(rep, "deriv_band_bound");
    const KindStats grad = stats_for(rep, "goodball_gradient_bound");
    const KindStats bpt = stats_for(rep, "boundary_point_bound");
    const KindStats lip = stats_for(rep, "truncated_lipschitz");
    const KindStats exc = stats_for(rep, "exceptional_gradient");
    const KindStats ann = stats_for(rep, "annulus_average");
    std::snprintf(buf, sizeof buf,
                  "bound suite: factor-4 %d, gradient %d, boundary %d, "
                  "Lipschitz %d all clean; empirical constants %.3f / %.3f "
                  "stable on %d+%d samples",
                  band.n, grad.n, bpt.n, lip.n, exc.max_ratio, ann.max_ratio,
                  exc.n, ann.n);
    report(7, rep.passed && band.n >= 60 && grad.n >= 40 && lip.n >= 30, buf,
           now_s() - t0);
  }

  // 8: derivative-level centered/non-centered relation
  {
    const double t0 = now_s();
    const CheckReport rep = check_key_relation(ctx, 100, {2, 3});
    const KindStats rate = stats_for(rep, "sign_match_rate");
    const KindStats ineq = stats_for(rep, "case_inequality");
    std::snprintf(buf, sizeof buf,
                  "derivative relation: sign match %.1f%% >= 99%%, case "
                  "inequalities clean on %d samples (max excess %.2e)",
                  100.0 * rate.max_ratio, ineq.n, ineq.max_residual);
    report(8, rep.passed && ineq.n >= 60, buf, now_s() - t0);
  }

  // 9: continuity for both families on two base functions
  {
    const double t0 = now_s();
    bool ok = true;
    double worst = 0.0;
    for (const std::string& base : {std::string("tent"), std::string("plateau")}) {
      for (auto family : {ContinuityExperiment::Family::additive_bump,
                          ContinuityExperiment::Family::dilation}) {
        ContinuityExperiment exp;
        exp.base = base;
        exp.dim = base == "tent" ? 1 : 2;
        exp.beta = 0.5;
        exp.family = family;
        exp.grid_n = base == "tent" ? 240 : 160;
        const CheckReport rep = run_continuity(ctx, exp);
        ok = ok && rep.passed;
        for (const SampleRow& r : rep.samples)
          if (r.kind == "convergence") worst = std::max(worst, r.ratio);
      }
    }
    std::snprintf(buf, sizeof buf,
                  "continuity: both families on tent (d=1) and plateau (d=2), "
                  "worst last/first delta %.4f <= 0.05",
                  worst);
    report(9, ok, buf, now_s() - t0);
  }

  // 10: determinism and the closed-form anchor
  {
    const double t0 = now_s();
    RunConfig small = cfg;
    small.corpus.count = 3;
    const VerifyContext sctx = make_verify_context(small);
    const std::string a =
        reports_to_json({check_identities(sctx, 20, 10)}, small);
    const std::string b =
        reports_to_json({check_identities(sctx, 20, 10)}, small);
    const double tent_value = centered_value_line(named_profile("tent"), 0.0, 0.5).value;
    const double want = std::pow(2.0 / 3.0, 1.5);
    const bool ok = a == b && std::abs(tent_value - want) <= 1e-6;
    std::snprintf(buf, sizeof buf,
                  "determinism: byte-identical reports; tent value %.9f vs "
                  "closed form %.9f",
                  tent_value, want);
    report(10, ok, buf, now_s() - t0);
  }

  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures;
}
