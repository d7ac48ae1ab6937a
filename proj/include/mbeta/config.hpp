#pragma once

// Run configuration shared by the CLI and the verification harness. Loadable
// from a JSON file with strict unknown-key rejection; every output embeds the
// seed and a hash of the canonical serialization.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbeta/maximal.hpp"
#include "mbeta/quadrature.hpp"
#include "mbeta/report.hpp"

namespace mbeta {

inline constexpr const char* kToolVersion = "0.1.0";

struct CorpusConfig {
  int count = 40;       // random profiles per corpus flavor
  double span = 10.0;   // support bound
  std::vector<int> dims{1, 2, 3, 5};
  std::vector<double> betas{0.1, 0.25, 0.5, 0.75, 0.9};
};

struct RunConfig {
  std::uint64_t seed = 7;
  int jobs = 0;  // 0: hardware default (or MBETA_JOBS)
  std::string format = "json";
  QuadratureConfig quad;
  SearchConfig search;
  CorpusConfig corpus;
  bool exploratory = false;  // include beta >= 1 samples (report-only)

  EvalConfig eval() const { return EvalConfig{search, quad}; }

  void validate() const {
    quad.validate();
    search.validate();
    if (format != "json" && format != "csv")
      throw std::invalid_argument("config: format must be json or csv");
    if (corpus.count < 0 || !(corpus.span > 0.0))
      throw std::invalid_argument("config: bad corpus parameters");
    for (int d : corpus.dims)
      if (d < 1) throw std::invalid_argument("config: dims must be >= 1");
    for (double b : corpus.betas)
      if (!(b > 0.0)) throw std::invalid_argument("config: betas must be > 0");
  }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j,
                           const std::vector<std::string>& known,
                           const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) ok |= it.key() == k;
    if (!ok) throw std::invalid_argument("config: unknown key '" + it.key() +
                                         "' in " + where);
  }
}

}  // namespace detail

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  detail::reject_unknown(
      j, {"seed", "jobs", "format", "quad", "search", "corpus", "exploratory"},
      "top level");
  c.seed = j.value("seed", c.seed);
  c.jobs = j.value("jobs", c.jobs);
  c.format = j.value("format", c.format);
  c.exploratory = j.value("exploratory", c.exploratory);
  if (j.contains("quad")) {
    const auto& q = j.at("quad");
    detail::reject_unknown(
        q, {"angular_panels", "radial_panels", "abs_tol", "refinement_cap"}, "quad");
    c.quad.angular_panels = q.value("angular_panels", c.quad.angular_panels);
    c.quad.radial_panels = q.value("radial_panels", c.quad.radial_panels);
    c.quad.abs_tol = q.value("abs_tol", c.quad.abs_tol);
    c.quad.refinement_cap = q.value("refinement_cap", c.quad.refinement_cap);
  }
  if (j.contains("search")) {
    const auto& s = j.at("search");
    detail::reject_unknown(s,
                           {"per_decade", "prescan", "argmax_rel", "cluster_rel",
                            "r_min_rel", "golden_iters", "alt_rounds", "coarse_r",
                            "coarse_s"},
                           "search");
    c.search.per_decade = s.value("per_decade", c.search.per_decade);
    c.search.prescan = s.value("prescan", c.search.prescan);
    c.search.argmax_rel = s.value("argmax_rel", c.search.argmax_rel);
    c.search.cluster_rel = s.value("cluster_rel", c.search.cluster_rel);
    c.search.r_min_rel = s.value("r_min_rel", c.search.r_min_rel);
    c.search.golden_iters = s.value("golden_iters", c.search.golden_iters);
    c.search.alt_rounds = s.value("alt_rounds", c.search.alt_rounds);
    c.search.coarse_r = s.value("coarse_r", c.search.coarse_r);
    c.search.coarse_s = s.value("coarse_s", c.search.coarse_s);
  }
  if (j.contains("corpus")) {
    const auto& k = j.at("corpus");
    detail::reject_unknown(k, {"count", "span", "dims", "betas"}, "corpus");
    c.corpus.count = k.value("count", c.corpus.count);
    c.corpus.span = k.value("span", c.corpus.span);
    if (k.contains("dims")) c.corpus.dims = k.at("dims").get<std::vector<int>>();
    if (k.contains("betas"))
      c.corpus.betas = k.at("betas").get<std::vector<double>>();
  }
  c.validate();
  return c;
}

/// Canonical serialization; hashing this string fingerprints the run.
inline std::string config_to_json(const RunConfig& c) {
  JsonWriter jw;
  jw.begin_object();
  jw.kv("seed", c.seed);
  jw.kv("jobs", c.jobs);
  jw.kv("format", c.format);
  jw.key("quad").begin_object();
  jw.kv("angular_panels", c.quad.angular_panels);
  jw.kv("radial_panels", c.quad.radial_panels);
  jw.kv("abs_tol", c.quad.abs_tol);
  jw.kv("refinement_cap", c.quad.refinement_cap);
  jw.end_object();
  jw.key("search").begin_object();
  jw.kv("per_decade", c.search.per_decade);
  jw.kv("prescan", c.search.prescan);
  jw.kv("argmax_rel", c.search.argmax_rel);
  jw.kv("cluster_rel", c.search.cluster_rel);
  jw.kv("r_min_rel", c.search.r_min_rel);
  jw.kv("golden_iters", c.search.golden_iters);
  jw.kv("alt_rounds", c.search.alt_rounds);
  jw.kv("coarse_r", c.search.coarse_r);
  jw.kv("coarse_s", c.search.coarse_s);
  jw.end_object();
  jw.key("corpus").begin_object();
  jw.kv("count", c.corpus.count);
  jw.kv("span", c.corpus.span);
  jw.array("dims", c.corpus.dims);
  jw.array("betas", c.corpus.betas);
  jw.end_object();
  jw.kv("exploratory", c.exploratory);
  jw.end_object();
  return jw.str();
}

inline std::string config_hash(const RunConfig& c) {
  return hex64(fnv1a64(config_to_json(c)));
}

}  // namespace mbeta
