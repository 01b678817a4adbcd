#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qcong/sweep.hpp"
#include "qcong/version.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

RunResult cli(const std::string& args) {
  const std::string cmd = std::string(QCONG_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (fgets(buf, sizeof buf, pipe) != nullptr) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "qcong_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("contract examples") {
  const RunResult quotient =
      cli("verify thm1 --params m=1,n=1,j=0,r=0 --variant plus "
          "--show-quotient");
  CHECK(quotient.code == 0);
  CHECK(quotient.out == "q^-1\n");

  const RunResult factored = cli("factor --qbinomial 4 2");
  CHECK(factored.code == 0);
  CHECK(factored.out == "Φ3 · Φ4\n");

  const RunResult factorial = cli("factor --qfactorial 3");
  CHECK(factorial.code == 0);
  CHECK(factorial.out == "Φ2 · Φ3\n");

  const fs::path dir = fresh_dir("contract");
  { std::ofstream touch(dir / "empty.jsonl"); }
  const RunResult report =
      cli("report --log " + (dir / "empty.jsonl").string());
  CHECK(report.code == 0);
  CHECK(contains(report.out, "family"));
  CHECK(report.out.find('\n') == report.out.size() - 1);  // header only
}

TEST_CASE("verify prints a verdict line") {
  const RunResult plain = cli("verify thm1 --params m=1,n=1,j=0,r=0");
  CHECK(plain.code == 0);
  CHECK(contains(plain.out, "verified thm1 m=1,n1=1,j=0,r=0 variant=plus"));
  CHECK(contains(plain.out, "mod [3]"));

  const RunResult four = cli("verify thm22 --params n=1,r=0,s=1 --variant 2");
  CHECK(four.code == 0);
  CHECK(contains(four.out, "verified thm22"));

  const RunResult version = cli("--version");
  CHECK(version.code == 0);
  CHECK(contains(version.out, qcong::library_version));
}

TEST_CASE("proved bounds gate the weight unless lifted") {
  const RunResult bounded = cli("verify thm1 --params m=1,n=2,j=3,r=0");
  CHECK(bounded.code == 64);
  CHECK(contains(bounded.out, "proved bound"));

  const RunResult lifted =
      cli("verify thm1 --params m=1,n=2,j=3,r=0 --conjectural");
  CHECK(lifted.code == 0);
  CHECK(contains(lifted.out, "verified"));
}

TEST_CASE("sweep, resume, and report agree") {
  const fs::path dir = fresh_dir("sweep");
  const std::string log = (dir / "chain.jsonl").string();
  {
    std::ofstream cfg(dir / "chain.cfg");
    cfg << "family = thm1\nm = 1\nn = 1..3\nj = 0..1\nr = 0..1\n"
        << "output = " << log << '\n';
  }
  const RunResult sweep = cli("sweep --config " + (dir / "chain.cfg").string());
  CHECK(sweep.code == 0);
  CHECK(contains(sweep.out, "executed 24"));
  CHECK(contains(sweep.out, "verified 24"));

  const RunResult resumed =
      cli("sweep --config " + (dir / "chain.cfg").string() + " --resume");
  CHECK(resumed.code == 0);
  CHECK(contains(resumed.out, "executed 0"));
  CHECK(contains(resumed.out, "resumed 24"));

  const RunResult report = cli("report --log " + log);
  CHECK(report.code == 0);
  CHECK(contains(report.out, "thm1"));
  CHECK(contains(report.out, "24"));
}

TEST_CASE("a counterexample in the log turns the exit code") {
  const fs::path dir = fresh_dir("refuted");
  const std::string log = (dir / "conj.jsonl").string();
  qcong::VerdictRecord ce;
  ce.family = "ConjAllJ";
  ce.params = {{"base", 1}, {"m", 1}, {"n1", 1}, {"r", 0}, {"j", 0}};
  ce.variant = "plus";
  ce.status = "counterexample";
  ce.strategy = "both";
  ce.has_remainder = true;
  ce.remainder_exp = 0;
  ce.remainder_coeff = "1";
  ce.version = qcong::library_version;
  ce.timestamp = "2026-01-02T03:04:05Z";
  {
    std::ofstream out(log);
    out << qcong::to_jsonl(ce) << '\n';
  }
  const RunResult report = cli("report --log " + log);
  CHECK(report.code == 2);
  CHECK(contains(report.out, "counterexample: ConjAllJ"));
  CHECK(contains(report.out, "base=1,m=1,n1=1,r=0,j=0 variant=plus"));

  {
    std::ofstream cfg(dir / "conj.cfg");
    cfg << "family = ConjAllJ\nbase = 1\nm = 1\nn = 1..2\nr = 0\nj = 0..1\n"
        << "resume = true\noutput = " << log << '\n';
  }
  const RunResult sweep = cli("sweep --config " + (dir / "conj.cfg").string());
  CHECK(sweep.code == 2);
  CHECK(contains(sweep.out, "executed 0"));
  CHECK(contains(sweep.out, "counterexamples 1"));
}

TEST_CASE("identity kinds dispatch") {
  CHECK(cli("identity qbt --params N=6,a=-2").out == "identity qbt: equal\n");
  CHECK(cli("identity chu --params n1=3,n2=2").code == 0);
  CHECK(cli("identity dixon_full --params l=2,m=2,n=2").code == 0);
  CHECK(cli("identity dixon_limit --params n=5").code == 0);
  CHECK(cli("identity lemma21 --params n=2,s=1,variant=3").code == 0);
  const RunResult degenerate = cli("identity remark --params n=2,s=2,a=0");
  CHECK(degenerate.code == 0);
  CHECK(contains(degenerate.out, "equal (degenerate)"));
  CHECK(cli("identity st_recurrence --params m=2,n1=2,n2=1,j=1,r=0").code == 0);
  CHECK(cli("identity st_recurrence --params m=2,n1=2,n2=1,j=0,r=1 "
            "--form T --kernel remark")
            .code == 0);
  CHECK(cli("identity qinv --params m=2,n1=2,n2=2,r=1").code == 0);
  CHECK(cli("identity pq_consistency --params n=3,j=0,r=2 --form Q").code ==
        0);
}

TEST_CASE("usage errors exit 64") {
  CHECK(cli("").code == 64);
  CHECK(cli("conjure").code == 64);
  CHECK(cli("verify thm9 --params n=1").code == 64);
  CHECK(cli("verify thm1").code == 64);  // --params is required
  CHECK(cli("verify thm1 --params m=1,n=1,j=0,r=0 --variant spiral").code ==
        64);
  CHECK(cli("verify thm1 --params m=1,n=one,j=0,r=0").code == 64);
  CHECK(cli("verify thm3 --params n=1,s=1,r=1,j=0").code == 64);  // parity
  CHECK(cli("identity conjugation --params n=1").code == 64);
  CHECK(cli("identity qbt --params N=6").code == 64);  // a missing
  CHECK(cli("sweep --config /nonexistent/sweep.cfg").code == 64);
  CHECK(cli("report --log /nonexistent/log.jsonl").code == 64);
  CHECK(cli("factor").code == 64);
  const RunResult help = cli("--help");
  CHECK(help.code == 0);
  CHECK(contains(help.out, "verify"));
}
