#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "wts/expr.hpp"
#include "wts/opsim.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "wts_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
  fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = std::string("\"") + WTS_CLI_PATH + "\" " + args + " > " +
                    out.string() + " 2> " + err.string();
  int rc = std::system(cmd.c_str());
  CliResult result;
  if (rc != -1 && WIFEXITED(rc)) result.status = WEXITSTATUS(rc);
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("classify prints a readable verdict summary", "[cli]") {
  CliResult r = run_cli("classify --symbol \"log(x+2)\"");
  INFO(r.err);
  REQUIRE(r.status == 0);
  REQUIRE(contains(r.out, "symbol: log(x + 2)"));
  REQUIRE(contains(r.out, "route: derivative, checked order 8"));
  REQUIRE(contains(r.out,
                   "completely_monotone: fails (order 1, x = 0, value = 0.5)"));
  REQUIRE(contains(r.out, "completely_alternating: holds"));
  REQUIRE(contains(r.out, "contraction: fails (sup 2.80735)"));
  REQUIRE(contains(r.out, "completely_hyperexpansive: holds"));
  REQUIRE(contains(r.out, "subnormal_contraction: fails"));
}

TEST_CASE("report emits one JSON document with every section", "[cli]") {
  const std::string args = "report --symbol \"sqrt(x + 1)\" --json";
  CliResult first = run_cli(args);
  INFO(first.err);
  REQUIRE(first.status == 0);
  REQUIRE(!first.out.empty());
  REQUIRE(first.out.front() == '{');
  REQUIRE(contains(first.out, "\"schema\": 1"));
  REQUIRE(contains(first.out, "\"command\": \"report\""));
  REQUIRE(contains(first.out, "\"classification\""));
  REQUIRE(contains(first.out, "\"cross_check\""));
  REQUIRE(contains(first.out, "\"all_compatible\": true"));
  REQUIRE(contains(first.out, "\"dual\""));
  REQUIRE(contains(first.out, "\"bridge\""));
  REQUIRE(contains(first.out, "\"n_terms\": 32"));
  REQUIRE(contains(first.out, "\"fits\""));
  REQUIRE(contains(first.out, "\"levy\""));
  REQUIRE(contains(first.out, "\"moment\""));

  // Byte-identical on repeated runs.
  CliResult second = run_cli(args);
  REQUIRE(second.status == 0);
  REQUIRE(first.out == second.out);
}

TEST_CASE("assert flag drives the exit status", "[cli]") {
  CliResult holds =
      run_cli("classify --symbol \"exp(-x)\" --assert completely_monotone");
  REQUIRE(holds.status == 0);
  REQUIRE(contains(holds.err, "assert completely_monotone: holds"));

  CliResult fails =
      run_cli("classify --symbol \"exp(-x)\" --assert completely_alternating");
  REQUIRE(fails.status == 1);
  REQUIRE(contains(fails.err, "assert completely_alternating: fails"));

  CliResult unknown =
      run_cli("classify --symbol \"exp(-x)\" --assert no_such_class");
  REQUIRE(unknown.status == 2);
  REQUIRE(contains(unknown.err, "unknown class"));
}

TEST_CASE("input errors exit with status two", "[cli]") {
  CliResult bad_symbol = run_cli("classify --symbol \"log(\"");
  REQUIRE(bad_symbol.status == 2);
  REQUIRE(contains(bad_symbol.err, "error:"));
  REQUIRE(contains(bad_symbol.err, "offset 4"));

  REQUIRE(run_cli("classify --symbol \"x + 1\" --order 99").status == 2);
  REQUIRE(run_cli("classify").status == 2);
  REQUIRE(run_cli("frobnicate --symbol \"x + 1\"").status == 2);
  REQUIRE(run_cli("fit --symbol \"exp(-x)\" --atoms log:0:1:5").status == 2);
  REQUIRE(run_cli("fit --symbol \"exp(-x)\" --atoms foo").status == 2);
}

TEST_CASE("apply transforms CSV samples through the operator", "[cli]") {
  wts::Grid grid = wts::make_grid(10.0, 101);
  wts::SampledFunction f = wts::sample(wts::parse("x/(x + 1)"), grid);
  fs::path in_csv = scratch_dir() / "apply_in.csv";
  {
    std::ofstream out(in_csv);
    wts::write_csv(f, out);
  }
  fs::path out_csv = scratch_dir() / "apply_out.csv";

  CliResult r = run_cli("apply --symbol \"x + 1\" --t 1 --input " +
                        in_csv.string() + " --output " + out_csv.string());
  INFO(r.err);
  REQUIRE(r.status == 0);

  std::ifstream in(out_csv);
  wts::SampledFunction got = wts::read_sampled_csv(in);
  wts::SampledFunction expected = wts::apply_st(wts::parse("x + 1"), 1.0, f);
  REQUIRE(got.grid == expected.grid);
  for (std::size_t i = 0; i < expected.values.size(); ++i) {
    REQUIRE(got.values[i] == expected.values[i]);  // %.17g round-trips exactly
  }

  // Without --output the CSV goes to stdout.
  CliResult to_stdout =
      run_cli("apply --symbol \"x + 1\" --t 1 --input " + in_csv.string());
  REQUIRE(to_stdout.status == 0);
  REQUIRE(to_stdout.out.rfind("x,value\n", 0) == 0);

  // --json adds a summary document (and requires --output for the CSV).
  CliResult with_json =
      run_cli("apply --symbol \"x + 1\" --t 1 --json --input " +
              in_csv.string() + " --output " + out_csv.string());
  REQUIRE(with_json.status == 0);
  REQUIRE(contains(with_json.out, "\"command\": \"apply\""));
  REQUIRE(contains(with_json.out, "\"t\": 1"));
  REQUIRE(contains(with_json.out, "\"n_points\": 101"));
}

TEST_CASE("apply validates its flags and grid alignment", "[cli]") {
  wts::Grid grid = wts::make_grid(10.0, 101);
  wts::SampledFunction f = wts::sample(wts::parse("exp(-x)"), grid);
  fs::path in_csv = scratch_dir() / "apply_validate.csv";
  {
    std::ofstream out(in_csv);
    wts::write_csv(f, out);
  }

  REQUIRE(run_cli("apply --symbol \"x + 1\" --t 1").status == 2);
  REQUIRE(run_cli("apply --symbol \"x + 1\" --input " + in_csv.string())
              .status == 2);
  REQUIRE(run_cli("apply --symbol \"x + 1\" --t 1 --json --input " +
                  in_csv.string())
              .status == 2);

  CliResult misaligned = run_cli("apply --symbol \"x + 1\" --t 0.005 --input " +
                                 in_csv.string());
  REQUIRE(misaligned.status == 2);
  REQUIRE(contains(misaligned.err, "error:"));
}

TEST_CASE("config file supplies long options", "[cli]") {
  fs::path cfg = scratch_dir() / "wts.cfg";
  {
    std::ofstream out(cfg);
    out << "symbol=\"exp(-x)\"\n";
    out << "order=6\n";
  }
  CliResult r = run_cli("classify --config " + cfg.string());
  INFO(r.err);
  REQUIRE(r.status == 0);
  REQUIRE(contains(r.out, "checked order 6"));
  REQUIRE(contains(r.out, "completely_monotone: holds"));
}

TEST_CASE("fit command accepts explicit atom lists", "[cli]") {
  CliResult r = run_cli("fit --symbol \"exp(-x)\" --atoms 0.5,1,2 --json");
  INFO(r.err);
  REQUIRE(r.status == 0);
  REQUIRE(contains(r.out, "\"fits\""));
  REQUIRE(contains(r.out, "\"completely_monotone\""));
  REQUIRE(contains(r.out, "\"converged\": true"));
  REQUIRE(contains(r.out, "\"a\": 1"));  // the true decay rate is selected
}

TEST_CASE("bridge command prints sequence verdicts", "[cli]") {
  CliResult r = run_cli("bridge --symbol \"exp(-x)\" --json");
  INFO(r.err);
  REQUIRE(r.status == 0);
  REQUIRE(contains(r.out, "\"n_terms\": 32"));
  REQUIRE(contains(r.out, "\"beta_verdicts\""));
  REQUIRE(contains(r.out, "\"dual_moment_verdicts\""));

  // Without --json the JSON document is still the output format.
  CliResult plain = run_cli("bridge --symbol \"exp(-x)\"");
  REQUIRE(plain.status == 0);
  REQUIRE(!plain.out.empty());
  REQUIRE(plain.out.front() == '{');
}

TEST_CASE("output flag writes the document to a file", "[cli]") {
  fs::path doc = scratch_dir() / "classify_doc.json";
  CliResult r = run_cli("classify --symbol \"x + 1\" --output " + doc.string());
  REQUIRE(r.status == 0);
  REQUIRE(r.out.empty());  // file output replaces the text summary
  std::string body = slurp(doc);
  REQUIRE(contains(body, "\"classification\""));
  REQUIRE(contains(body, "\"isometry_order\": 2"));

  fs::path doc2 = scratch_dir() / "classify_doc2.json";
  CliResult r2 =
      run_cli("classify --symbol \"x + 1\" --output " + doc2.string());
  REQUIRE(r2.status == 0);
  REQUIRE(body == slurp(doc2));
}
