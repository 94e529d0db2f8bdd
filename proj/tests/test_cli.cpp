#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sscurve/cli.hpp"
#include "sscurve/field.hpp"

using namespace sscurve;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sscurve_cli_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream f(p);
  return nlohmann::json::parse(f);
}

}  // namespace

TEST_CASE("cli mass") {
  const auto r = run({"mass", "--genus", "4", "--p", "5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "126139/21772800\n");
  const auto s = run({"mass", "--genus", "4", "--p", "5", "--aut-order", "360", "--json"});
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["mass"] == "126139/21772800");
  CHECK(j["share"].get<double>() == doctest::Approx(0.2397).epsilon(1e-3));
  CHECK(run({"mass", "--genus", "9", "--p", "5"}).code == kExitError);
}

TEST_CASE("cli exit codes") {
  const auto zero = run({"hw", "--q", "2*y*w+z^2", "--c", "x^3+y^3+w^3", "--p", "5"});
  CHECK(zero.code == kExitOk);
  CHECK(zero.out.find("SUPERSPECIAL-CANDIDATE") != std::string::npos);
  CHECK(zero.out.find("[0 0 0 0]") != std::string::npos);
  const auto nz = run({"hw", "--q", "2*y*w+z^2", "--c", "x^3+y^3+w^3+x*y*z", "--p", "5"});
  CHECK(nz.code == kExitNegative);
  CHECK(nz.out.find("NOT-SUPERSPECIAL") != std::string::npos);

  CHECK(run({"smooth", "--q", "2*y*w+z^2", "--c", "x^3+y^3+w^3", "--p", "5"}).code == kExitOk);
  CHECK(run({"smooth", "--poly", "y^3+w^3+x*z^2", "--vars", "x,y,z,w", "--p", "5"}).code == kExitNegative);

  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"mass", "--genus", "four", "--p", "5"}).code == kExitUsage);
  CHECK(run({"enumerate", "--case", "n3-25"}).code == kExitUsage);
  CHECK(run({"solve", "--p", "5", "--vars", "a", "--poly", "b"}).code == kExitError);
  CHECK(run({"points", "--curve", temp_path("missing").string()}).code == kExitError);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cli solve and nf") {
  const auto empty = run({"solve", "--p", "5", "--vars", "a,b", "--poly", "a^2+b^2-1", "--poly", "a-b", "--json"});
  CHECK(nlohmann::json::parse(empty.out)["count"] == 0);
  for (const char* method : {"fglm", "lex", "brute"}) {
    const auto r = run({"solve", "--p", "5", "--vars", "a,b", "--poly", "a^2+b^2-2", "--poly", "a-b", "--method",
                        method, "--json"});
    CHECK(nlohmann::json::parse(r.out)["solutions"] == nlohmann::json::parse(R"([["1","1"],["4","4"]])"));
  }
  const auto nf = run({"nf", "--p", "5", "--vars", "x,y", "--order", "lex", "--f", "x^2*y", "--basis", "x-y^2",
                       "--basis", "y^3-1"});
  CHECK(nf.out == "y^2\n");
  const auto zero = run({"nf", "--p", "7", "--vars", "x,y", "--f", "x^2-y^2", "--basis", "x-y", "--json"});
  CHECK(nlohmann::json::parse(zero.out)["zero"] == true);
}

TEST_CASE("cli points, classify and aut-check") {
  const auto curve = temp_path("curve.txt");
  write_file(curve, "# degenerate Fermat curve\np=5\nn=2\nQ=2*y*w+z^2\nP=x^3+y^3+w^3\n");
  const auto r = run({"points", "--curve", curve.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "66\n");
  write_file(curve, "p=5\nQ=2*y*w+z^2\nP=x*(2*y*w+z^2)\n");
  CHECK(run({"points", "--curve", curve.string()}).code == kExitError);

  const auto table = temp_path("table.csv");
  CHECK(run({"classify", "--out", table.string()}).code == kExitOk);
  std::ifstream f(table);
  std::string line;
  int rows = 0, matches = 0;
  std::getline(f, line);
  CHECK(line == "family,i,jk,Q,P,expected,computed,match");
  while (std::getline(f, line)) {
    ++rows;
    if (line.size() > 4 && line.compare(line.size() - 4, 4, ",yes") == 0) ++matches;
  }
  CHECK(rows == 21);
  CHECK(matches == 21);

  const auto ac = run({"aut-check", "--json"});
  CHECK(ac.code == kExitOk);
  CHECK(nlohmann::json::parse(ac.out)["gk_order"] == 720);
}

TEST_CASE("key-value files") {
  const auto kv = parse_key_values("# comment\n a = 1 \n\nb=x=y\na=2\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"a", "1"});
  CHECK(kv[1].second == "x=y");
  CHECK(kv[2].second == "2");
  CHECK(parse_key_values(format_key_values(kv)) == kv);
  CHECK_THROWS_AS(parse_key_values("novalue\n"), MathError);
  CHECK_THROWS_AS(parse_key_values("=1\n"), MathError);
}

TEST_CASE("run config round trip and validation") {
  RunConfig c;
  c.case_id = "n2-49";
  c.p = 7;
  c.n = 2;
  c.mode = RunConfig::Mode::sample;
  c.sample = 500;
  c.seed = 42;
  c.cells = "a1=1";
  c.jobs = 3;
  c.checkpoint = "/tmp/ck.json";
  c.checkpoint_every = 64;
  c.out = "r.csv";
  c.format = RunConfig::Format::csv;
  c.validate();
  CHECK(RunConfig::from_key_values(c.to_key_values()) == c);
  CHECK(RunConfig::from_key_values(parse_key_values(format_key_values(c.to_key_values()))) == c);

  RunConfig d;
  d.case_id = "deg-25";
  d.validate();
  CHECK(RunConfig::from_key_values(d.to_key_values()) == d);

  auto bad = d;
  bad.seed = 3;
  CHECK_THROWS_AS(bad.validate(), MathError);
  bad = d;
  bad.mode = RunConfig::Mode::sample;
  CHECK_THROWS_AS(bad.validate(), MathError);
  bad = d;
  bad.p = 7;
  bad.n = 2;
  CHECK_THROWS_AS(bad.validate(), MathError);
  bad = d;
  bad.modulus = std::vector<int>{3, 1, 1};
  CHECK_THROWS_AS(bad.validate(), MathError);
  bad = d;
  bad.case_id = "deg-121";
  CHECK_THROWS_AS(bad.validate(), MathError);
  CHECK_THROWS_AS(RunConfig::from_key_values({{"color", "red"}}), MathError);
}

TEST_CASE("cli config file mirrors flags") {
  const auto cfg = temp_path("mass.cfg");
  write_file(cfg, "command=mass\ngenus=4\np=7\n");
  CHECK(run({"--config", cfg.string()}).out == "22819/129024\n");
  // The command line wins over the file.
  CHECK(run({"mass", "--config", cfg.string(), "--p", "5"}).out == "126139/21772800\n");
  write_file(cfg, "command=mass\ngenus=4\np=5\nunknown=1\n");
  CHECK(run({"--config=" + cfg.string()}).code == kExitUsage);
}

TEST_CASE("cli enumerate with a saved config replays the run") {
  const auto cfg = temp_path("enum.cfg");
  const auto out1 = temp_path("r1.json");
  const auto out2 = temp_path("r2.json");
  const auto ck = temp_path("ck.json");
  for (const auto& p : {ck, out1, out2}) std::filesystem::remove(p);
  const auto save = run({"enumerate", "--case", "n1ii-25", "--sample", "40", "--seed", "7", "--jobs", "2", "--out",
                         out1.string(), "--save-config", cfg.string()});
  REQUIRE(save.code == kExitOk);
  CHECK_FALSE(std::filesystem::exists(out1));
  const auto saved = RunConfig::from_key_values(read_key_values(cfg.string()));
  CHECK(saved.sample == 40);
  CHECK(saved.seed == 7);

  CHECK(run({"--config", cfg.string(), "--quiet"}).code == kExitOk);
  CHECK(run({"enumerate", "--case", "n1ii-25", "--sample", "40", "--seed", "7", "--out", out2.string(), "--checkpoint",
             ck.string(), "--checkpoint-every", "8", "--quiet"})
            .code == kExitOk);
  auto a = read_json(out1), b = read_json(out2);
  CHECK(a["seed"] == 7);
  CHECK(a["sample"] == 40);
  a.erase("timings");
  b.erase("timings");
  CHECK(a == b);

  const auto progress = run({"enumerate", "--case", "n1ii-25", "--cells", "0..20", "--checkpoint-every", "10"});
  CHECK(progress.err.find("10/20 cells") != std::string::npos);
  CHECK(progress.err.find("cells/s  ETA") != std::string::npos);
  CHECK(nlohmann::json::parse(progress.out)["cells_done"] == 20);

  CHECK(run({"enumerate", "--case", "n1ii-25", "--seed", "3"}).code == kExitError);
  CHECK(run({"enumerate", "--case", "n1ii-25", "--p", "7", "--n", "2"}).code == kExitError);
}
