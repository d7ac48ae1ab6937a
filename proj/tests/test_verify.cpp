#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "mbeta/verify.hpp"

using namespace mbeta;
using Catch::Approx;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.seed = 20240809;
  cfg.corpus.count = 4;
  cfg.corpus.dims = {1, 2};
  cfg.corpus.betas = {0.5};
  cfg.jobs = 2;
  return cfg;
}

}  // namespace

TEST_CASE("report writer primitives") {
  CHECK(fmt17(0.5) == "0.5");
  const double x = 0.1234567890123456789;
  CHECK(std::stod(fmt17(x)) == x);  // 17 digits round-trip
  CHECK(hex64(fnv1a64("abc")).size() == 16);
  CHECK(fnv1a64("abc") != fnv1a64("abd"));

  JsonWriter jw;
  jw.begin_object();
  jw.kv("a", 1);
  jw.key("b").begin_array().value(2.5).value("x").end_array();
  jw.kv("c", true);
  jw.end_object();
  CHECK(jw.str() == "{\"a\":1,\"b\":[2.5,\"x\"],\"c\":true}");

  CsvWriter csv({"x", "y"});
  csv.append_row({"1", "2"});
  CHECK(csv.str() == "x,y\n1,2\n");
  CHECK_THROWS_AS(csv.append_row({"1"}), std::invalid_argument);

  const std::string path = "/tmp/mbeta_test_atomic.json";
  atomic_write(path, "hello");
  std::ifstream is(path);
  std::string got;
  std::getline(is, got);
  CHECK(got == "hello");
  std::filesystem::remove(path);
}

TEST_CASE("config: round trip, hash, unknown keys") {
  RunConfig cfg = small_config();
  const std::string text = config_to_json(cfg);
  const RunConfig back = config_from_json(nlohmann::json::parse(text));
  CHECK(config_to_json(back) == text);
  CHECK(config_hash(cfg) == config_hash(back));
  cfg.seed += 1;
  CHECK(config_hash(cfg) != config_hash(back));

  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse("{\"sed\":1}")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      config_from_json(nlohmann::json::parse("{\"quad\":{\"abs_tl\":1}}")),
      std::invalid_argument);
}

TEST_CASE("identities check passes on a small corpus") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport rep = check_identities(ctx, 24, 10);
  CHECK(rep.passed);
  CHECK(rep.n_samples > 0);
  CHECK(rep.max_residual <= 1e-4);
}

TEST_CASE("line endpoint bound check on a small corpus") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport rep = check_sobolev_1d(ctx, 240, 4);
  CHECK(rep.passed);
  CHECK(rep.bound == Approx(48.0 * std::sqrt(2.0)).epsilon(1e-12));
  for (const auto& row : rep.samples)
    if (!row.skipped) CHECK(row.ratio < rep.bound);
}

TEST_CASE("operator relations on a small corpus") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport rep = check_operator_relations(ctx, 24, 10, 6);
  CHECK(rep.passed);
}

TEST_CASE("lemma bounds on a small corpus") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport rep = check_lemma_bounds(ctx, 20, 12, 8, 8, 8);
  CHECK(rep.passed);
}

TEST_CASE("key relation on a small corpus") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport rep = check_key_relation(ctx, 14, {2});
  CHECK(rep.passed);
}

TEST_CASE("radius comparability on a small corpus") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport rep = check_radii_comparability(ctx, 40);
  CHECK(rep.passed);
  CHECK(rep.n_samples >= 20);
}

TEST_CASE("representation vs finite differences on a small corpus") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport rep = check_luiro_fd(ctx, 24, 10);
  CHECK(rep.passed);
}

TEST_CASE("continuity experiment: additive family on the tent") {
  const VerifyContext ctx = make_verify_context(small_config());
  ContinuityExperiment exp;
  exp.grid_n = 160;
  const CheckReport rep = run_continuity(ctx, exp);
  CHECK(rep.passed);
  // per-step rows carry the perturbation norm: exact 1/j decay
  double first_w11 = 0.0;
  for (const auto& row : rep.samples)
    if (row.kind == "delta") {
      if (row.t == 1.0) first_w11 = row.rhs;
      CHECK(row.rhs == Approx(first_w11 / row.t).epsilon(1e-12));
    }
}

TEST_CASE("continuity experiment rejects short schedules") {
  const VerifyContext ctx = make_verify_context(small_config());
  ContinuityExperiment exp;
  exp.schedule = {1, 2};
  CHECK_THROWS_AS(run_continuity(ctx, exp), std::invalid_argument);
}

TEST_CASE("reports are deterministic and carry the schema") {
  const VerifyContext ctx = make_verify_context(small_config());
  const CheckReport a = check_identities(ctx, 12, 6);
  const CheckReport b = check_identities(ctx, 12, 6);
  const std::string ja = reports_to_json({a}, ctx.cfg);
  const std::string jb = reports_to_json({b}, ctx.cfg);
  CHECK(ja == jb);  // byte-identical re-runs
  for (const char* key :
       {"\"check_id\"", "\"paper_ref\"", "\"params\"", "\"n_samples\"",
        "\"max_residual\"", "\"max_ratio\"", "\"bound\"", "\"passed\"",
        "\"samples\"", "\"tool_version\"", "\"config_hash\"", "\"seed\""})
    CHECK(ja.find(key) != std::string::npos);
  const std::string csv = reports_to_csv({a});
  CHECK(csv.rfind("check_id,kind,fn,d,beta,t,s,r,lhs,rhs,residual,ratio,ok,"
                  "skipped,flag\n", 0) == 0);
}
