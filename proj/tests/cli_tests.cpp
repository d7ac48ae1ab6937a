// End-to-end checks of the command-line tool; takes the binary path as
// argv[1] and shells out. Plain asserts, one PASS/FAIL line per group.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& cmd) {
  const std::string path = "/tmp/mbeta_cli_out.txt";
  const int raw = std::system((cmd + " > " + path + " 2>/dev/null").c_str());
  std::ifstream is(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <mbeta-binary>\n");
    return 2;
  }
  const std::string bin = argv[1];
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mbeta_cli_tests";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // eval: closed form for the tent at the origin
  {
    const RunResult r =
        run(bin + " eval --fn tent --d 1 --beta 0.5 --t 0 --op centered");
    check(r.code == 0, "eval exits 0");
    const auto j = nlohmann::json::parse(r.out);
    const double want = std::pow(2.0 / 3.0, 1.5);
    check(std::abs(j.at("value").get<double>() - want) < 1e-8,
          "eval value matches the closed form");
    check(std::abs(j.at("radii").at(0).get<double>() - 2.0 / 3.0) < 1e-5,
          "eval radius near 2/3");
    check(j.contains("tool_version") && j.contains("config_hash") &&
              j.contains("seed"),
          "eval embeds version, config hash, seed");
  }

  // eval: degenerate input flagged
  {
    const RunResult r =
        run(bin + " eval --fn zero --d 1 --beta 0.5 --t 0 --op centered");
    const auto j = nlohmann::json::parse(r.out);
    check(r.code == 0 && j.at("degenerate").get<bool>() &&
              j.at("value").get<double>() == 0.0,
          "eval flags the zero function as degenerate");
  }

  // eval: noncentered at the symmetric point matches centered
  {
    const RunResult r =
        run(bin + " eval --fn tent --d 1 --beta 0.5 --t 0 --op noncentered");
    const auto j = nlohmann::json::parse(r.out);
    check(std::abs(j.at("value").get<double>() - std::pow(2.0 / 3.0, 1.5)) < 1e-7,
          "noncentered value matches centered at a symmetric point");
  }

  // usage errors exit 2
  {
    check(run(bin + " eval --fn tent --d 1 --t 0").code == 2,
          "missing required flag exits 2");
    check(run(bin + " eval --fn tent --d 1 --beta 0.5 --t 0 --op bogus").code == 2,
          "unknown operator exits 2");
    check(run(bin + " bogus-subcommand").code == 2, "unknown subcommand exits 2");
  }

  // field: row count and schema
  {
    const std::string out = (dir / "field.csv").string();
    const RunResult r = run(bin +
                            " field --fn tent --d 1 --beta 0.5 --grid 0:2:40 "
                            "--out " + out);
    check(r.code == 0, "field exits 0");
    const std::string csv = slurp(out);
    int lines = 0;
    for (char c : csv) lines += c == '\n';
    check(lines == 41, "field CSV has header + one row per grid point");
    check(csv.rfind("t,M,r_good,luiro,fd,region,unique_radius\n", 0) == 0,
          "field CSV header matches the contract");
    check(fs::exists(out + ".json"), "field metadata JSON written alongside");
  }

  // corpus: deterministic, parseable
  {
    const std::string a = (dir / "corpus_a.json").string();
    const std::string b = (dir / "corpus_b.json").string();
    run(bin + " corpus --seed 11 --count 5 --out " + a);
    run(bin + " corpus --seed 11 --count 5 --out " + b);
    check(!slurp(a).empty() && slurp(a) == slurp(b),
          "corpus files are byte-identical for equal seeds");
    const auto j = nlohmann::json::parse(slurp(a));
    check(j.is_array() && j.size() >= 5 && j.at(0).contains("knots"),
          "corpus file is an array of profile records");
  }

  // eval accepts a profile file
  {
    const std::string pf = (dir / "prof.json").string();
    std::ofstream(pf) << "{\"knots\":[-1,0,1],\"values\":[0,1,0]}";
    const RunResult r =
        run(bin + " eval --profile " + pf + " --d 1 --beta 0.5 --t 0 --op centered");
    const auto j = nlohmann::json::parse(r.out);
    check(std::abs(j.at("value").get<double>() - std::pow(2.0 / 3.0, 1.5)) < 1e-8,
          "eval reads a profile literal file");
  }

  // verify: determinism contract, exit code, sibling CSV
  {
    const std::string a = (dir / "rep_a.json").string();
    const std::string b = (dir / "rep_b.json").string();
    const std::string common =
        " verify --checks identities --seed 7 --count 3 --jobs 2 --out ";
    const RunResult ra = run(bin + common + a);
    const RunResult rb = run(bin + common + b);
    check(ra.code == 0 && rb.code == 0, "verify exits 0 when checks pass");
    check(!slurp(a).empty() && slurp(a) == slurp(b),
          "verify reports are byte-identical across runs");
    check(fs::exists(dir / "rep_a.csv"), "verify writes a CSV alongside JSON");
    const auto j = nlohmann::json::parse(slurp(a));
    check(j.at("reports").at(0).at("check_id") == "identities" &&
              j.at("reports").at(0).contains("paper_ref"),
          "verify report carries the schema");
  }

  // config file: flags override, unknown keys rejected
  {
    const std::string cf = (dir / "cfg.json").string();
    std::ofstream(cf) << "{\"seed\": 3, \"corpus\": {\"count\": 2}}";
    const RunResult r = run(bin + " eval --config " + cf +
                            " --fn tent --d 1 --beta 0.5 --t 0 --op centered");
    const auto j = nlohmann::json::parse(r.out);
    check(j.at("seed").get<std::uint64_t>() == 3, "config file sets the seed");
    const RunResult r2 = run(bin + " eval --config " + cf +
                             " --seed 9 --fn tent --d 1 --beta 0.5 --t 0 "
                             "--op centered");
    check(nlohmann::json::parse(r2.out).at("seed").get<std::uint64_t>() == 9,
          "flags override the config file");
    std::ofstream(cf) << "{\"sneed\": 3}";
    check(run(bin + " eval --config " + cf +
              " --fn tent --d 1 --beta 0.5 --t 0 --op centered").code == 1,
          "unknown config keys are rejected");
  }

  std::printf("%s: %d failure(s)\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
