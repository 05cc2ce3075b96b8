// End-to-end coverage of the command-line tool: spec'd outputs and the
// 0/1/2 exit-code contract, driven through a real subprocess.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "lstar/proof_io.hpp"
#include "lstar/search.hpp"
#include "lstar/semantics.hpp"
#include "lstar/systems.hpp"

#ifndef LSTAR_CLI
#error "LSTAR_CLI must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LSTAR_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

TEST_CASE("eval prints the value") {
  auto r = run("eval \"double(add(C1,double(double(C1))))\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "10\n");
}

TEST_CASE("decide: exit 0 on true, 1 on false, 2 on garbage") {
  CHECK(run("decide \"C0 = C0\"").exit_code == 0);

  auto literal0 = lstar::systems::localized_mult_totality(
      0, lstar::systems::LocalizationVariant::Literal);
  auto r = run("decide " + quoted(lstar::lang::print_formula(literal0)));
  CHECK(r.exit_code == 1);
  CHECK(r.out == "false\n");

  CHECK(run("decide \"C0 = \"").exit_code == 2);
  CHECK(run("decide \"A x. x = x\"").exit_code == 2);  // not Δ₀*
  CHECK(run("decide \"#p = #p\"").exit_code == 2);     // parameters rejected
}

TEST_CASE("classify and prenex") {
  auto r = run("classify \"A x. A y. E z <= x + y. sub(z, x) = y\"");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "Pi(1)\n");

  auto p = run("prenex \"~(A x. x = x)\"");
  CHECK(p.exit_code == 0);
  CHECK(p.out.find("E ") == 0);
}

TEST_CASE("encode and godel") {
  auto r = run("encode 11");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "C1 + double(C1 + double(double(C1)))\n");
  CHECK(run("encode -3").exit_code == 2);
  CHECK(run("godel \"C0 = C0\"").out == "31\n");
}

TEST_CASE("prove / check round trip through files") {
  std::string dir = "cli_scratch";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);

  auto r = run("prove \"C0 = C0 | ~(C0 = C0)\" --basis empty --level none --budget 10000 --out " +
               dir + "/taut.json");
  CHECK(r.exit_code == 0);

  auto chk = run("check " + dir + "/taut.json");
  CHECK(chk.exit_code == 0);
  CHECK(chk.out == "Valid\n");

  // byte-exact reread of what the CLI wrote
  std::string text = lstar::io::read_file(dir + "/taut.json");
  CHECK(lstar::io::proof_to_text(lstar::io::proof_from_text(text)) == text);

  // failed search exits 1
  CHECK(run("prove \"C0 = C1\" --basis empty --budget 1000").exit_code == 1);

  // corrupting the proof file flips check to Invalid / exit 1
  auto p = lstar::io::load_proof(dir + "/taut.json");
  p.nodes.back().sentence = lstar::lang::parse_formula("C2 = C1");
  lstar::io::save_proof(p, dir + "/bad.json");
  auto bad = run("check " + dir + "/bad.json");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("Invalid") == 0);
}

TEST_CASE("cut through the CLI, gated by level") {
  std::string dir = "cli_scratch";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  lstar::io::write_file(dir + "/basis.txt", "C0 = C0\nC0 = C0 -> C1 = C1\n");

  REQUIRE(run("prove \"C0 = C0\" --basis " + dir + "/basis.txt --out " + dir + "/psi.json")
              .exit_code == 0);
  REQUIRE(run("prove \"C0 = C0 -> C1 = C1\" --basis " + dir + "/basis.txt --out " + dir +
              "/impl.json")
              .exit_code == 0);
  auto cut = run("cut " + dir + "/psi.json " + dir + "/impl.json --basis " + dir +
                 "/basis.txt --out " + dir + "/cut.json");
  CHECK(cut.exit_code == 0);

  CHECK(run("check " + dir + "/cut.json --basis " + dir + "/basis.txt --level rank0")
            .exit_code == 0);
  CHECK(run("check " + dir + "/cut.json --basis " + dir + "/basis.txt --level none")
            .exit_code == 1);
}

TEST_CASE("system subcommands") {
  auto cls = run("system classify --basis relational_arith --budget 200");
  CHECK(cls.exit_code == 0);
  CHECK(cls.out.find("Type-NS") == 0);

  auto sr = run("system selfref --basis relational_arith --level rank0");
  CHECK(sr.exit_code == 0);
  CHECK(sr.out.find("relational_arith^d") != std::string::npos);

  std::string dir = "cli_scratch";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  lstar::io::write_file(dir + "/absurd.txt", "C0 = C1\n");
  auto found = run("system consearch --basis " + dir +
                   "/absurd.txt --mode level0minus --budget 5000 --record " + dir + "/run.json");
  CHECK(found.exit_code == 0);
  CHECK(found.out.find("RefutationFound") == 0);
  auto rec = lstar::io::run_record_from_text(lstar::io::read_file(dir + "/run.json"));
  CHECK(rec.verdict == "RefutationFound");
  REQUIRE(rec.witness_files.size() == 1);
  CHECK(run("check " + rec.witness_files[0] + " --basis " + dir + "/absurd.txt --level none")
            .exit_code == 0);

  auto clean = run("system consearch --basis empty --mode level0minus --budget 500");
  CHECK(clean.exit_code == 1);
  CHECK(clean.out.find("NoRefutationFound") == 0);
}

TEST_CASE("bench chain emits both formats") {
  auto text = run("bench chain --n-max 3 --level rank0 --budget 2000");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("chain bench") != std::string::npos);

  auto js = run("--format structured bench chain --n-max 2 --level rank0 --budget 2000");
  CHECK(js.exit_code == 0);
  CHECK(js.out.find("\"family\": \"chain\"") != std::string::npos);
}

TEST_CASE("LSTAR_BUDGET sets the default budget") {
  std::string cmd = std::string("LSTAR_BUDGET=40 ") + LSTAR_CLI +
                    " --format structured prove \"C0 = C1\" --basis empty 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  pclose(pipe);
  CHECK(out.find("\"expansions\": 2") != std::string::npos);  // space exhausted early
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("prove").exit_code == 2);
  CHECK(run("bench chain").exit_code == 2);  // missing required --n-max
}
