#pragma once

// Test-function corpus: a registry of named profiles with documented closed
// forms, a seeded generator of random piecewise-linear profiles, and the JSON
// interchange format ({"knots": [...], "values": [...]} records).

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbeta/maximal.hpp"
#include "mbeta/profile.hpp"
#include "mbeta/report.hpp"

namespace mbeta {

struct NamedProfile {
  std::string name;
  Profile profile;
};

/// Deterministic uniform draws from the top 53 bits of a mersenne twister;
/// identical across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a, double b) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }
  int uniform_int(int a, int b) {  // inclusive
    return a + static_cast<int>(gen_() % static_cast<std::uint64_t>(b - a + 1));
  }

 private:
  std::mt19937_64 gen_;
};

namespace corpus_detail {

// Two-bump amplitude: the wide-bump height is solved at registry build time
// so that the two local maxima of r -> sqrt(r) * (average of f over [-r, r])
// tie at the origin. This plants a genuine good-radius tie in the corpus.
inline double twobump_tie_height() {
  auto branch_max = [](double h, double lo, double hi) {
    const Profile narrow({-0.5, 0.0, 0.5}, {0.0, 1.0, 0.0});
    const Profile wide({-4.0, 0.0, 4.0}, {0.0, 1.0, 0.0});
    const Profile f = linear_combination(1.0, narrow, h, wide);
    const Antiderivative I(abs_profile(f));
    auto phi = [&](double r) { return std::sqrt(r) * (I(r) - I(-r)) / (2.0 * r); };
    double best = 0.0, best_r = lo;
    for (int i = 0; i <= 400; ++i) {
      const double r = lo + (hi - lo) * i / 400.0;
      if (phi(r) > best) best = phi(r), best_r = r;
    }
    const double w = (hi - lo) / 400.0;
    return detail::golden_max(phi, std::max(lo, best_r - w), std::min(hi, best_r + w),
                              140)
        .second;
  };
  double lo = 0.05, hi = 1.0;  // gap(lo) > 0 > gap(hi)
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gap = branch_max(mid, 0.01, 1.0) - branch_max(mid, 1.0, 5.0);
    (gap > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace corpus_detail

/// Named line profiles (functions on R). `tent`, `plateau`, `twobump`,
/// `sawtooth`, `zigzag`, `zero`.
inline Profile named_profile(const std::string& name) {
  if (name == "tent") return Profile({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
  if (name == "plateau") return Profile({-2.0, -1.0, 1.0, 2.0}, {0.0, 1.0, 1.0, 0.0});
  if (name == "zigzag") return Profile({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, -1.0, 0.0});
  if (name == "zero") return Profile({0.0, 1.0}, {0.0, 0.0});
  if (name == "sawtooth") {
    std::vector<double> k, v;
    for (int i = 0; i <= 8; ++i) {
      k.push_back(-2.0 + 0.5 * i);
      v.push_back(i == 0 || i == 8 ? 0.0 : (i % 2 == 1 ? 1.0 : -1.0));
    }
    return Profile(k, v);
  }
  if (name == "twobump") {
    static const double h = corpus_detail::twobump_tie_height();
    const Profile narrow({-0.5, 0.0, 0.5}, {0.0, 1.0, 0.0});
    const Profile wide({-4.0, 0.0, 4.0}, {0.0, 1.0, 0.0});
    return linear_combination(1.0, narrow, h, wide);
  }
  throw std::invalid_argument("unknown named profile: " + name);
}

/// Radial counterpart of a named profile: F with f(x) = F(|x|).
inline Profile named_radial_profile(const std::string& name) {
  if (name == "tent") return Profile({0.0, 1.0}, {1.0, 0.0});
  if (name == "plateau") return Profile({0.0, 1.0, 2.0}, {1.0, 1.0, 0.0});
  if (name == "zigzag") return named_profile("zigzag");
  if (name == "zero") return named_profile("zero");
  if (name == "sawtooth") {
    std::vector<double> k, v;
    for (int i = 0; i <= 4; ++i) {
      k.push_back(0.5 * i);
      v.push_back(i == 4 ? 0.0 : (i % 2 == 0 ? 1.0 : -1.0));
    }
    return Profile(k, v);
  }
  if (name == "twobump") {
    const Profile line = named_profile("twobump");
    // even function: restrict to [0, inf)
    std::vector<double> k, v;
    for (std::size_t i = 0; i < line.knots.size(); ++i)
      if (line.knots[i] >= 0.0) {
        k.push_back(line.knots[i]);
        v.push_back(line.values[i]);
      }
    return Profile(k, v);
  }
  throw std::invalid_argument("unknown named profile: " + name);
}

inline const std::vector<std::string>& named_profile_list() {
  static const std::vector<std::string> names{"tent",     "plateau", "twobump",
                                              "sawtooth", "zigzag",  "zero"};
  return names;
}

/// Seeded random profile: 4-24 knots, support within [0, span], values in
/// [-1, 1], zero at the tail knot. Line profiles are pinned to zero at both
/// ends; radial profiles start at knot 0 with a free value.
inline Profile random_profile(SeededRng& rng, double span, bool radial) {
  const int n = rng.uniform_int(4, 24);
  std::vector<double> k(n);
  for (;;) {
    for (int i = 0; i < n; ++i) k[i] = rng.uniform(0.0, span);
    std::sort(k.begin(), k.end());
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i)
      if (k[i + 1] - k[i] < 1e-3) ok = false;
    if (ok) break;
  }
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  v.back() = 0.0;
  if (radial)
    k.front() = 0.0;
  else
    v.front() = 0.0;
  return Profile(k, v);
}

/// Corpus: the named functions followed by seeded random ones.
inline std::vector<NamedProfile> make_corpus(std::uint64_t seed, int n_random,
                                             double span, bool radial) {
  std::vector<NamedProfile> out;
  for (const std::string& name : named_profile_list())
    out.push_back({name, radial ? named_radial_profile(name) : named_profile(name)});
  SeededRng rng(seed);
  for (int i = 0; i < n_random; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "rand-%04d", i);
    out.push_back({buf, random_profile(rng, span, radial)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON interchange

inline void profile_to_json(JsonWriter& jw, const Profile& p) {
  jw.begin_object();
  jw.array("knots", p.knots);
  jw.array("values", p.values);
  jw.end_object();
}

inline std::string corpus_to_json(const std::vector<NamedProfile>& corpus) {
  JsonWriter jw;
  jw.begin_array();
  for (const NamedProfile& np : corpus) {
    jw.begin_object();
    jw.kv("name", np.name);
    jw.array("knots", np.profile.knots);
    jw.array("values", np.profile.values);
    jw.end_object();
  }
  jw.end_array();
  std::string s = jw.str();
  s += '\n';
  return s;
}

inline Profile profile_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("knots") || !j.contains("values"))
    throw std::invalid_argument("profile record needs knots and values");
  return Profile(j.at("knots").get<std::vector<double>>(),
                 j.at("values").get<std::vector<double>>());
}

inline std::vector<NamedProfile> corpus_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("corpus file must be a JSON array");
  std::vector<NamedProfile> out;
  for (const auto& rec : j) {
    NamedProfile np;
    np.name = rec.value("name", "");
    np.profile = profile_from_json(rec);
    out.push_back(std::move(np));
  }
  return out;
}

}  // namespace mbeta
