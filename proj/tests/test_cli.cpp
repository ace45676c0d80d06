#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "accwb/circuit_io.hpp"
#include "accwb/cli.hpp"

using namespace accwb;

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("accwb-cli-" + std::to_string(std::rand()) + "-" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& contents = {}) const {
    const std::string p = (path / name).string();
    if (!contents.empty()) write_file(p, contents);
    return p;
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

const char* kAnd2 =
    "circuit and2 inputs 2\n"
    "1 = INPUT 0\n"
    "2 = INPUT 1\n"
    "3 = AND 1 2\n"
    "output 3\n";

const char* kContradiction =
    "circuit contra inputs 1\n"
    "1 = INPUT 0\n"
    "2 = NOT 1\n"
    "3 = AND 1 2\n"
    "output 3\n";

const std::string machine_dir = ACCWB_MACHINE_DIR;

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"sat"}).code == kExitUsage);
  CHECK(run({"sat", "/nonexistent/file.ckt"}).code == kExitUsage);
  CHECK(run({"gen", "no-such-family"}).code == kExitUsage);
  const Run help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("succinct-check") != std::string::npos);
}

TEST_CASE("eval and tt") {
  TempDir d;
  const std::string c = d.file("and2.ckt", kAnd2);
  CHECK(run({"eval", c, "11"}).out == "1\n");
  CHECK(run({"eval", c, "10"}).out == "0\n");
  CHECK(run({"eval", c, "1"}).code == kExitUsage);
  CHECK(run({"tt", c}).out == "0001\n");

  const std::string tt = d.file("and2.tt");
  REQUIRE(run({"tt", c, "-o", tt}).code == kExitOk);
  const std::string bytes = read_file(tt);
  CHECK(bytes == std::string("tt n=2\n") + '\x08');
}

TEST_CASE("sat verdicts, metrics and expectations") {
  TempDir d;
  const std::string sat = d.file("and2.ckt", kAnd2);
  const std::string unsat = d.file("contra.ckt", kContradiction);
  for (const std::string method : {"brute", "acc"}) {
    const Run a = run({"sat", sat, "--method", method});
    CHECK(a.code == kExitOk);
    CHECK(a.out.rfind("SAT 11\nmetrics method=" + method, 0) == 0);
    const Run b = run({"sat", unsat, "--method", method});
    CHECK(b.out.rfind("UNSAT\n", 0) == 0);
    CHECK(run({"sat", unsat, "--method", method, "--expect-sat"}).code == kExitNegative);
    CHECK(run({"sat", unsat, "--method", method, "--expect-unsat"}).code == kExitOk);
  }
  CHECK(run({"sat", sat, "--method", "quantum"}).code == kExitUsage);
  CHECK(run({"sat", sat, "--expect-sat", "--expect-unsat"}).code == kExitUsage);
}

TEST_CASE("environment variables supply defaults") {
  TempDir d;
  const std::string c = d.file("and2.ckt", kAnd2);
  ::setenv("ACCWB_METHOD", "acc", 1);
  const Run r = run({"sat", c});
  ::unsetenv("ACCWB_METHOD");
  CHECK(r.out.find("method=acc") != std::string::npos);
  CHECK(run({"sat", c}).out.find("method=brute") != std::string::npos);
}

TEST_CASE("gen is deterministic per seed") {
  for (const std::string family : {"sym-and", "acc-depth-3", "random-unrestricted"}) {
    const Run a = run({"gen", family, "--n", "9", "--seed", "5"});
    const Run b = run({"gen", family, "--n", "9", "--seed", "5"});
    const Run c = run({"gen", family, "--n", "9", "--seed", "6"});
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    CHECK(parse_circuit(a.out).n_inputs() == 9);
  }
  CHECK(run({"gen", "planted-succinct", "--n", "3"}).code == kExitUsage);
  CHECK(run({"gen", "acc-depth-x"}).code == kExitUsage);
}

TEST_CASE("succinct commands on a planted instance") {
  TempDir d;
  const std::string x = d.file("x.ckt");
  REQUIRE(run({"gen", "planted-succinct", "--n", "3", "--s", "10", "--seed", "4", "-o", x}).code == kExitOk);
  const std::string w = x + ".witness.ckt";
  CHECK(run({"succinct-check", x, w, "--enc-w", "3"}).out.rfind("SATISFIED", 0) == 0);
  for (const std::string method : {"brute", "acc"}) {
    const Run r = run({"satalg3", x, w, "--enc-w", "3", "--method", method});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("verdict=ACCEPT") != std::string::npos);
  }
  // The all-zero witness violates some clause of most formulas; the verdicts
  // must at least agree.
  const std::string zero = d.file("zero.ckt", "circuit zero inputs 1\n1 = INPUT 0\n2 = CONST 0\noutput 2\n");
  const Run check = run({"succinct-check", x, zero, "--enc-w", "3"});
  const Run alg = run({"satalg3", x, zero, "--enc-w", "3"});
  CHECK(check.code == alg.code);
  CHECK(run({"build-d", x, w, "--enc-w", "3", "-o", d.file("d.ckt")}).code == kExitOk);
  CHECK(load_circuit(d.file("d.ckt")).n_inputs() > 0);
}

TEST_CASE("wire-value commands") {
  TempDir d;
  const std::string x = d.file("x.ckt");
  const std::string w = x + ".witness.ckt";
  REQUIRE(run({"gen", "planted-succinct", "--n", "1", "--s", "2", "--seed", "2", "-o", x}).code == kExitOk);
  REQUIRE(load_circuit(x).n_inputs() <= 8);
  const std::string good = d.file("good.ckt"), bad = d.file("bad.ckt");
  REQUIRE(run({"gen", "wire-values", "--from", x, "-o", good}).code == kExitOk);
  REQUIRE(run({"gen", "wire-values", "--from", x, "--corrupt", "5:2", "-o", bad}).code == kExitOk);
  for (const std::string method : {"brute", "acc"}) {
    CHECK(run({"wirecheck", x, good, "--method", method}).out == "CORRECT\n");
    const Run r = run({"wirecheck", x, bad, "--method", method, "--j-input"});
    CHECK(r.code == kExitNegative);
    CHECK(r.out.rfind("WRONG input=", 0) == 0);
  }
  CHECK(run({"satalg5", x, w, good, "--enc-w", "1"}).code == kExitOk);
  const Run r = run({"satalg5", x, w, bad, "--enc-w", "1"});
  CHECK(r.code == kExitNegative);
  CHECK(r.out.find("verdict=REJECT stage=consistency") != std::string::npos);
  CHECK(run({"build-econs", x, good, "-o", d.file("e.ckt")}).code == kExitOk);
  CHECK(load_circuit(d.file("e.ckt")).n_inputs() == load_circuit(x).n_inputs());
  // x itself is not a wire-value candidate; its arity does not match.
  CHECK(run({"wirecheck", x, x}).code == kExitUsage);
  CHECK(run({"gen", "wire-values", "--from", x, "--corrupt", "oops"}).code == kExitUsage);
  CHECK(run({"gen", "wire-values", "--from", x, "--corrupt", "100000:1"}).code == kExitUsage);
}

TEST_CASE("sym-and generator honours n and children") {
  const Circuit c = parse_circuit(run({"gen", "sym-and", "--n", "7", "--s", "5", "--seed", "3"}).out);
  CHECK(c.n_inputs() == 7);
  CHECK(c.gate(c.output()).fanin.size() == 5);
}

TEST_CASE("acc with an explicit k agrees with brute") {
  TempDir d;
  const std::string c = d.file("mod6.ckt");
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    REQUIRE(run({"gen", "sym-and", "--n", "8", "--seed", std::to_string(seed), "-o", c}).code == kExitOk);
    const Run a = run({"sat", "--method", "acc", "--k", "3", c});
    const Run b = run({"sat", "--method", "brute", c});
    CHECK(a.out.substr(0, a.out.find('\n')) == b.out.substr(0, b.out.find('\n')));
    CHECK(a.out.find("metrics method=acc k=3 ") != std::string::npos);
  }
}

TEST_CASE("decompose and blowup") {
  TempDir d;
  const std::string c = d.file("s.ckt");
  REQUIRE(run({"gen", "sym-and", "--n", "6", "--seed", "2", "-o", c}).code == kExitOk);
  const std::string poly = d.file("h.poly");
  const Run r = run({"decompose", c, "--method", "sym-and", "-o", poly});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("stage=") != std::string::npos);
  CHECK(r.out.find("\ng ") != std::string::npos);
  CHECK(read_file(poly).rfind("poly n=6", 0) == 0);
  const Run b = run({"blowup", c, "--k", "2"});
  CHECK(b.code == kExitOk);
  CHECK(parse_circuit(b.out).n_inputs() == 4);
  CHECK(run({"blowup", c, "--k", "9"}).code == kExitUsage);
  CHECK(run({"decompose", c, "--kbudget", "1"}).code == kExitInternal);
}

TEST_CASE("cooklevin") {
  TempDir d;
  const std::string m = machine_dir + "/even_ones.tm";
  CHECK(run({"cooklevin", m, "--input", "11", "--t", "4"}).out == "ACCEPT\n");
  CHECK(run({"cooklevin", m, "--input", "1", "--t", "4"}).out == "REJECT\n");
  const Run cnf = run({"cooklevin", m, "--input", "11", "--t", "3", "--emit", "cnf"});
  CHECK(cnf.code == kExitOk);
  CHECK_FALSE(cnf.out.empty());
  const std::string gen = d.file("gen.ckt");
  const Run circ = run({"cooklevin", m, "--input", "11", "--t", "3", "--emit", "circuit", "-o", gen});
  CHECK(circ.code == kExitOk);
  CHECK(circ.err.find("enc-w=") != std::string::npos);
  CHECK(load_circuit(gen).size() > 0);
  CHECK(run({"cooklevin", m, "--input", "11", "--t", "40"}).code == kExitInternal);
  CHECK(run({"cooklevin", m, "--input", "111", "--t", "2"}).code == kExitUsage);
}

TEST_CASE("bench output is deterministic without wall time") {
  const std::vector<std::string> args{"bench", "--n-min", "6", "--n-max", "8", "--instances", "2", "--no-wall"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# n0=") != std::string::npos);
}

TEST_CASE("bench with k = 0 visits every point") {
  const Run r = run({"bench", "--n-min", "5", "--n-max", "5", "--instances", "1", "--k", "0", "--no-wall"});
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::vector<std::string> names, cells;
  for (std::istringstream h(header); std::getline(h, header, '\t');) names.push_back(header);
  for (std::istringstream c(row); std::getline(c, row, '\t');) cells.push_back(row);
  REQUIRE(names.size() == cells.size());
  const auto col = std::find(names.begin(), names.end(), "eval_points") - names.begin();
  CHECK(cells[static_cast<std::size_t>(col)] == "32");
}
