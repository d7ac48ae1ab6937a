// Command-line front end: single-point evaluations, derivative fields,
// verification sweeps, corpus generation, and continuity experiments.
// All outputs embed the tool version, config hash, and seed; files are
// written atomically; floats carry 17 significant digits.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbeta/config.hpp"
#include "mbeta/corpus.hpp"
#include "mbeta/derivative.hpp"
#include "mbeta/maximal.hpp"
#include "mbeta/profile.hpp"
#include "mbeta/report.hpp"
#include "mbeta/verify.hpp"

namespace {

using namespace mbeta;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0;
  int n = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 1 || !(b > a))
    throw CLI::ValidationError("--grid", "expected start:stop:count");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return g;
}

Profile load_profile(const std::string& fn, const std::string& file, int d) {
  if (!file.empty()) return profile_from_json(nlohmann::json::parse(read_file(file)));
  if (fn.empty()) throw CLI::ValidationError("--fn", "need --fn or --profile");
  return d == 1 ? named_profile(fn) : named_radial_profile(fn);
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty())
    std::cout << content;
  else
    atomic_write(out, content);
}

std::string sibling_csv(const std::string& json_path) {
  const auto dot = json_path.rfind('.');
  if (dot == std::string::npos) return json_path + ".csv";
  return json_path.substr(0, dot) + ".csv";
}

void meta_header(JsonWriter& jw, const RunConfig& cfg) {
  jw.kv("tool_version", kToolVersion);
  jw.kv("config_hash", config_hash(cfg));
  jw.kv("seed", cfg.seed);
}

struct CommonFlags {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

RunConfig resolve_config(const CommonFlags& fl) {
  RunConfig cfg;
  if (!fl.config_file.empty())
    cfg = config_from_json(nlohmann::json::parse(read_file(fl.config_file)));
  if (fl.seed) cfg.seed = *fl.seed;
  if (fl.jobs) cfg.jobs = *fl.jobs;
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& fl) {
  cmd->add_option("--config", fl.config_file, "JSON config file (flags override)");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&fl](std::uint64_t v) { fl.seed = v; }, "random seed");
  cmd->add_option_function<int>(
      "--jobs", [&fl](int v) { fl.jobs = v; },
      "worker threads (default: MBETA_JOBS or hardware)");
}

// ---------------------------------------------------------------------------

int cmd_eval(const CommonFlags& fl, const std::string& fn,
             const std::string& profile_file, int d, double beta, double t,
             const std::string& op, double eps, const std::string& out) {
  const RunConfig cfg = resolve_config(fl);
  const Profile prof = load_profile(fn, profile_file, d);

  JsonWriter jw;
  jw.begin_object();
  meta_header(jw, cfg);
  jw.kv("fn", fn.empty() ? "<file>" : fn);
  jw.kv("d", d);
  jw.kv("beta", beta);
  jw.kv("t", t);
  jw.kv("op", op);

  auto emit_good = [&](const GoodRadiusResult& res) {
    jw.kv("value", res.value);
    jw.array("radii", res.radii);
    jw.kv("smallest", res.smallest);
    jw.kv("degenerate", res.degenerate);
  };

  if (d == 1) {
    const detail::LineContext ctx(prof);
    if (op == "centered")
      emit_good(centered_value_line(ctx, t, beta, cfg.search));
    else if (op == "truncated") {
      if (!(eps > 0.0)) throw CLI::ValidationError("--eps", "truncated needs --eps > 0");
      emit_good(centered_value_line(ctx, t, beta, cfg.search, eps));
    } else if (op == "mI") {
      if (t == 0.0) throw CLI::ValidationError("--t", "mI needs t != 0");
      emit_good(centered_value_line(ctx, t, beta, cfg.search, 0.0,
                                    0.25 * std::abs(t)));
    } else if (op == "noncentered") {
      const NoncenteredResult res = noncentered_value_line(ctx, t, beta, cfg.search);
      jw.kv("value", res.value);
      jw.kv("s_opt", res.s_opt);
      jw.kv("r_opt", res.r_opt);
      jw.kv("boundary_contact", res.boundary_contact);
      jw.kv("degenerate", res.degenerate);
    } else {
      throw CLI::ValidationError("--op", "unknown operator " + op);
    }
  } else {
    const RadialFunction f(d, prof);
    const Beta b(beta, d);
    if (op == "centered")
      emit_good(centered_value(f, t, b, cfg.eval()));
    else if (op == "truncated")
      emit_good(truncated_value(f, t, b, eps, cfg.eval()));
    else if (op == "mI")
      emit_good(mI_value(f, t, b, cfg.eval()));
    else if (op == "noncentered") {
      const NoncenteredResult res = noncentered_value(f, t, b, cfg.eval());
      jw.kv("value", res.value);
      jw.kv("s_opt", res.s_opt);
      jw.kv("r_opt", res.r_opt);
      jw.kv("boundary_contact", res.boundary_contact);
      jw.kv("degenerate", res.degenerate);
    } else {
      throw CLI::ValidationError("--op", "unknown operator " + op);
    }
  }
  jw.end_object();
  emit(out, jw.str() + "\n");
  return 0;
}

int cmd_field(const CommonFlags& fl, const std::string& fn,
              const std::string& profile_file, int d, double beta,
              const std::string& grid_spec, const std::string& out) {
  const RunConfig cfg = resolve_config(fl);
  const Profile prof = load_profile(fn, profile_file, d);
  const std::vector<double> grid = parse_grid(grid_spec);
  const int jobs = cfg.jobs > 0 ? cfg.jobs : default_jobs();

  DerivativeField field;
  if (d == 1)
    field = derivative_field_line(prof, beta, grid, cfg.search, jobs);
  else
    field = derivative_field(RadialFunction(d, prof), Beta(beta, d), grid,
                             cfg.eval(), jobs);

  CsvWriter csv({"t", "M", "r_good", "luiro", "fd", "region", "unique_radius"});
  for (const DerivativeSample& s : field.samples)
    csv.append_row({fmt17(s.t), fmt17(s.value), fmt17(s.good_radius),
                    fmt17(s.luiro), fmt17(s.fd), region_name(s.region),
                    s.unique_radius ? "1" : "0"});
  emit(out, csv.str());

  if (!out.empty()) {
    JsonWriter jw;
    jw.begin_object();
    meta_header(jw, cfg);
    jw.kv("fn", fn.empty() ? "<file>" : fn);
    jw.kv("d", d);
    jw.kv("beta", beta);
    jw.kv("grid", grid_spec);
    jw.kv("lq_norm", field.lq_norm);
    jw.end_object();
    atomic_write(out + ".json", jw.str() + "\n");
  }
  return 0;
}

int cmd_corpus(const CommonFlags& fl, int count, double span,
               const std::string& kind, const std::string& out) {
  const RunConfig cfg = resolve_config(fl);
  const auto corpus = make_corpus(cfg.seed, count, span, kind == "radial");
  emit(out, corpus_to_json(corpus));
  return 0;
}

int cmd_verify(const CommonFlags& fl, std::vector<std::string> checks,
               std::optional<int> count, const std::vector<double>& betas,
               const std::vector<int>& dims, bool exploratory,
               const std::string& format, const std::string& out) {
  RunConfig cfg = resolve_config(fl);
  if (count) cfg.corpus.count = *count;
  if (!betas.empty()) cfg.corpus.betas = betas;
  if (!dims.empty()) cfg.corpus.dims = dims;
  if (exploratory) cfg.exploratory = true;
  if (!format.empty()) cfg.format = format;
  cfg.validate();
  const VerifyContext ctx = make_verify_context(cfg);

  const std::vector<std::string> all = {"identities", "sobolev1d", "sobolevrad",
                                        "lemmas",     "keyrel",    "radii",
                                        "operators",  "luirofd",   "continuity"};
  if (checks.empty()) checks = all;

  std::vector<CheckReport> reports;
  for (const std::string& id : checks) {
    if (id == "identities")
      reports.push_back(check_identities(ctx));
    else if (id == "sobolev1d")
      reports.push_back(check_sobolev_1d(ctx));
    else if (id == "sobolevrad")
      reports.push_back(check_sobolev_radial(ctx));
    else if (id == "lemmas")
      reports.push_back(check_lemma_bounds(ctx));
    else if (id == "keyrel")
      reports.push_back(check_key_relation(ctx));
    else if (id == "radii")
      reports.push_back(check_radii_comparability(ctx));
    else if (id == "operators")
      reports.push_back(check_operator_relations(ctx));
    else if (id == "luirofd")
      reports.push_back(check_luiro_fd(ctx));
    else if (id == "continuity") {
      ContinuityExperiment exp;
      reports.push_back(run_continuity(ctx, exp));
      exp.family = ContinuityExperiment::Family::dilation;
      reports.push_back(run_continuity(ctx, exp));
    } else {
      throw CLI::ValidationError("--checks", "unknown check id " + id);
    }
  }

  if (out.empty() && cfg.format == "csv")
    emit(out, reports_to_csv(reports));
  else
    emit(out, reports_to_json(reports, cfg));
  if (!out.empty()) atomic_write(sibling_csv(out), reports_to_csv(reports));

  bool all_passed = true;
  for (const CheckReport& rep : reports) {
    if (!rep.passed) {
      all_passed = false;
      std::fprintf(stderr, "FAIL %s max_residual=%s max_ratio=%s tolerance=%s\n",
                   rep.check_id.c_str(), fmt17(rep.max_residual).c_str(),
                   fmt17(rep.max_ratio).c_str(), fmt17(rep.tolerance).c_str());
    }
  }
  return all_passed ? 0 : 1;
}

int cmd_continuity(const CommonFlags& fl, const std::string& fn, int d,
                   double beta, const std::string& family,
                   const std::string& schedule_spec, double cutoff, int grid_n,
                   const std::string& out) {
  const RunConfig cfg = resolve_config(fl);
  const VerifyContext ctx = make_verify_context(cfg);
  ContinuityExperiment exp;
  exp.base = fn;
  exp.dim = d;
  exp.beta = beta;
  exp.cutoff_b = cutoff;
  exp.grid_n = grid_n;
  if (family == "additive")
    exp.family = ContinuityExperiment::Family::additive_bump;
  else if (family == "dilation")
    exp.family = ContinuityExperiment::Family::dilation;
  else
    throw CLI::ValidationError("--family", "additive or dilation");
  if (!schedule_spec.empty()) {
    exp.schedule.clear();
    std::stringstream ss(schedule_spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) exp.schedule.push_back(std::stoi(tok));
  }
  const CheckReport rep = run_continuity(ctx, exp);
  emit(out, reports_to_json({rep}, cfg));
  if (!out.empty()) atomic_write(sibling_csv(out), reports_to_csv({rep}));
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional maximal functions of radial piecewise-linear "
               "functions: evaluation, derivatives, verification"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::simple);

  CommonFlags fl;
  std::string fn, profile_file, op = "centered", grid_spec = "0:1:100";
  std::string out, kind = "line", family = "additive", schedule, verify_format;
  std::vector<std::string> checks;
  std::vector<double> verify_betas;
  std::vector<int> verify_dims;
  bool exploratory = false;
  int d = 1, count = 40, grid_n = 240;
  double beta = 0.5, t = 0.0, eps = 0.0, span = 10.0, cutoff = 0.0;
  std::optional<int> verify_count;

  CLI::App* eval = app.add_subcommand("eval", "evaluate an operator at a point");
  add_common(eval, fl);
  eval->add_option("--fn", fn, "named function (tent, plateau, twobump, sawtooth, zigzag, zero)");
  eval->add_option("--profile", profile_file, "profile JSON file {knots, values}");
  eval->add_option("--d", d, "ambient dimension")->check(CLI::PositiveNumber);
  eval->add_option("--beta", beta, "fractional order")->required();
  eval->add_option("--t", t, "evaluation point (radial coordinate)");
  eval->add_option("--op", op, "centered|noncentered|truncated|mI");
  eval->add_option("--eps", eps, "truncation cutoff for --op truncated");
  eval->add_option("--out", out, "output path (default stdout)");

  CLI::App* field = app.add_subcommand("field", "derivative field over a grid");
  add_common(field, fl);
  field->add_option("--fn", fn, "named function");
  field->add_option("--profile", profile_file, "profile JSON file");
  field->add_option("--d", d, "ambient dimension")->check(CLI::PositiveNumber);
  field->add_option("--beta", beta, "fractional order")->required();
  field->add_option("--grid", grid_spec, "grid start:stop:count")->required();
  field->add_option("--out", out, "CSV output path (metadata JSON alongside)");

  CLI::App* corpus = app.add_subcommand("corpus", "generate a seeded corpus file");
  add_common(corpus, fl);
  corpus->add_option("--count", count, "number of random profiles");
  corpus->add_option("--span", span, "support bound");
  corpus->add_option("--kind", kind, "line|radial");
  corpus->add_option("--out", out, "output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run verification checks");
  add_common(verify, fl);
  verify->add_option("--checks", checks, "check ids (default: all)")->delimiter(',');
  verify->add_option_function<int>(
      "--count", [&verify_count](int v) { verify_count = v; },
      "random profiles per corpus");
  verify->add_option("--betas,--beta", verify_betas, "fractional orders")
      ->delimiter(',');
  verify->add_option("--dims,--d", verify_dims, "ambient dimensions")->delimiter(',');
  verify->add_flag("--exploratory", exploratory,
                   "probe beta >= 1 samples (report-only)");
  verify->add_option("--format", verify_format, "stdout format: json|csv");
  verify->add_option("--out", out, "report JSON path (CSV written alongside)");

  CLI::App* cont = app.add_subcommand("continuity", "perturbation-convergence run");
  add_common(cont, fl);
  cont->add_option("--fn", fn, "base function")->required();
  cont->add_option("--d", d, "ambient dimension")->check(CLI::PositiveNumber);
  cont->add_option("--beta", beta, "fractional order")->required();
  cont->add_option("--family", family, "additive|dilation");
  cont->add_option("--schedule", schedule, "comma-separated perturbation indices");
  cont->add_option("--cutoff", cutoff, "norm cutoff radius (0: auto)");
  cont->add_option("--grid-n", grid_n, "field grid size");
  cont->add_option("--out", out, "report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(fl, fn, profile_file, d, beta, t, op, eps, out);
    if (field->parsed()) return cmd_field(fl, fn, profile_file, d, beta, grid_spec, out);
    if (corpus->parsed()) return cmd_corpus(fl, count, span, kind, out);
    if (verify->parsed())
      return cmd_verify(fl, checks, verify_count, verify_betas, verify_dims,
                        exploratory, verify_format, out);
    if (cont->parsed())
      return cmd_continuity(fl, fn, d, beta, family, schedule, cutoff, grid_n, out);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
