#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qcong/errors.hpp"
#include "qcong/registry.hpp"
#include "qcong/sweep.hpp"

using namespace qcong;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "qcong_harness" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// log lines with the timing fields blanked, for determinism comparisons
std::vector<std::string> stripped_lines(const std::string& path) {
  std::vector<std::string> out;
  for (VerdictRecord rec : read_log(path)) {
    rec.elapsed = 0;
    rec.timestamp.clear();
    out.push_back(to_jsonl(rec));
  }
  return out;
}

SweepConfig chain_sweep(const std::string& output) {
  SweepConfig c;
  c.family = "thm1";
  c.ranges["m"] = {1, 1};
  c.ranges["n"] = {1, 3};  // bare stem, m = 1 alias
  c.ranges["j"] = {0, 1};
  c.ranges["r"] = {0, 1};
  c.output = output;
  return c;
}

}  // namespace

TEST_CASE("registry is a closed id catalogue") {
  const auto& ids = family_ids();
  CHECK(ids.size() == 22);
  CHECK(std::count(ids.begin(), ids.end(), "thm1") == 1);
  CHECK(std::count(ids.begin(), ids.end(), "ConjAllJ") == 1);
  CHECK(is_family("C74b"));
  CHECK_FALSE(is_family("thm99"));
  CHECK_THROWS_AS((void)family("thm99"), argument_out_of_range);

  CHECK_FALSE(family("thm1").conjecture);
  CHECK_FALSE(family("C63a").conjecture);
  CHECK(family("Conj246n_3").conjecture);
  CHECK(family("ConjFinal").conjecture);
  CHECK(family("ConjAllJ").conjecture);

  CHECK(family("thm1").variants == std::vector<std::string>{"plus", "minus"});
  CHECK(family("thm22").variants ==
        std::vector<std::string>{"1", "2", "3", "4"});
  for (const auto& id : ids) {
    const Family& f = family(id);
    CHECK(f.id == id);
    CHECK_FALSE(f.summary.empty());
    CHECK_FALSE(f.variants.empty());
    CHECK_FALSE(f.params.empty());
    CHECK(static_cast<bool>(f.parts));
  }
}

TEST_CASE("canonical parameter expansion") {
  const Family& thm1 = family("thm1");

  auto c = canonicalize_params(
      thm1, {{"m", 2}, {"n1", 3}, {"n2", 1}, {"j", 2}, {"r", 0}});
  CHECK(c.keys == std::vector<std::string>{"m", "n1", "n2", "j", "r"});
  CHECK(c.values.at("n2") == 1);

  // bare stem stands for the single slot when m is 1
  auto alias = canonicalize_params(thm1, {{"m", 1}, {"n", 5}, {"j", 0}, {"r", 1}});
  CHECK(alias.keys == std::vector<std::string>{"m", "n1", "j", "r"});
  CHECK(alias.values.at("n1") == 5);
  CHECK(alias.values.count("n") == 0);

  CHECK_THROWS_AS(canonicalize_params(thm1, {{"m", 1}, {"n1", 2}, {"j", 0}}),
                  argument_out_of_range);  // r missing
  CHECK_THROWS_AS(canonicalize_params(
                      thm1, {{"m", 1}, {"n1", 2}, {"j", 0}, {"r", 0}, {"x", 1}}),
                  argument_out_of_range);  // no such parameter
  CHECK_THROWS_AS(canonicalize_params(thm1, {{"n1", 2}, {"j", 0}, {"r", 0}}),
                  argument_out_of_range);  // m missing
  CHECK_THROWS_AS(canonicalize_params(
                      thm1, {{"m", 0}, {"n1", 2}, {"j", 0}, {"r", 0}}),
                  constraint_violation);
  CHECK_THROWS_AS(canonicalize_params(
                      thm1, {{"m", 2}, {"n", 2}, {"j", 0}, {"r", 0}}),
                  argument_out_of_range);  // bare stem needs m = 1

  // the exponent tuple of the prefactored family is optional
  const Family& pre = family("thm62");
  auto bare = canonicalize_params(
      pre, {{"m", 2}, {"n1", 1}, {"n2", 2}, {"j", 0}, {"r", 0}});
  CHECK(bare.keys == std::vector<std::string>{"m", "n1", "n2", "j", "r"});
  auto with = canonicalize_params(pre, {{"m", 2},
                                        {"n1", 1},
                                        {"n2", 2},
                                        {"j", 0},
                                        {"r", 0},
                                        {"a1", 2},
                                        {"a2", 1}});
  CHECK(with.keys ==
        std::vector<std::string>{"m", "n1", "n2", "j", "r", "a1", "a2"});
  CHECK_THROWS_AS(canonicalize_params(pre, {{"m", 2},
                                            {"n1", 1},
                                            {"n2", 2},
                                            {"j", 0},
                                            {"r", 0},
                                            {"a1", 2}}),
                  argument_out_of_range);  // half a tuple
}

TEST_CASE("registry verdicts carry quotient fingerprints") {
  const Family& thm1 = family("thm1");
  const Verdict v =
      run_family(thm1, {{"m", 1}, {"n", 1}, {"j", 0}, {"r", 0}}, "plus");
  CHECK(v.holds);
  // the quotient here is exactly q^-1
  CHECK(v.quotient_min_exp == -1);
  CHECK(v.quotient_max_exp == -1);
  REQUIRE(v.sample_low.size() == 1);
  CHECK(v.sample_low[0] == 1);

  CHECK_THROWS_AS(
      run_family(thm1, {{"m", 1}, {"n", 1}, {"j", 0}, {"r", 0}}, "neither"),
      argument_out_of_range);

  const Verdict p4 =
      run_family(family("thm22"), {{"n", 2}, {"r", 1}, {"s", 1}}, "3");
  CHECK(p4.holds);
}

TEST_CASE("lifting the proved weight bound") {
  const Family& thm1 = family("thm1");
  const ParamMap big_j{{"m", 1}, {"n", 2}, {"j", 3}, {"r", 0}};
  CHECK_THROWS_AS(run_family(thm1, big_j, "plus"), constraint_violation);
  CHECK(run_family(thm1, big_j, "plus", Strategy::both, false, true).holds);

  const fs::path dir = fresh_dir("lifted");
  SweepConfig c;
  c.family = "thm1";
  c.ranges["m"] = {1, 1};
  c.ranges["n"] = {1, 2};
  c.ranges["j"] = {2, 3};  // entirely beyond the proved bound j <= m
  c.ranges["r"] = {0, 0};
  c.variants = {"plus"};
  c.output = (dir / "skipped.jsonl").string();
  const SweepReport bounded = run_sweep(c);
  CHECK(bounded.skipped == 4);
  CHECK(bounded.verified == 0);

  c.conjectural = true;
  c.output = (dir / "lifted.jsonl").string();
  const SweepReport lifted = run_sweep(c);
  CHECK(lifted.skipped == 0);
  CHECK(lifted.verified == 4);

  const SweepConfig back = parse_sweep_config(serialize_sweep_config(c));
  CHECK(back.conjectural);
}

TEST_CASE("sweep config round trip") {
  SweepConfig c;
  c.family = "thm1";
  c.ranges["m"] = {1, 1};
  c.ranges["n1"] = {1, 3};
  c.ranges["j"] = {0, 1};
  c.ranges["r"] = {0, 1};
  c.variants = {"plus", "minus"};
  c.strategy = Strategy::factorwise;
  c.recheck = true;
  c.parallelism = 2;
  c.output = "runs/chain.jsonl";
  c.resume = true;

  const SweepConfig back = parse_sweep_config(serialize_sweep_config(c));
  CHECK(back.family == c.family);
  CHECK(back.ranges == c.ranges);
  CHECK(back.variants == c.variants);
  CHECK(back.strategy == c.strategy);
  CHECK(back.recheck == c.recheck);
  CHECK(back.parallelism == c.parallelism);
  CHECK(back.output == c.output);
  CHECK(back.resume == c.resume);

  const SweepConfig text = parse_sweep_config(
      "# sweep over the kernel chain\n"
      "family = thm2\n"
      "\n"
      "m = 1\n"
      "n = 2..4\n"
      "j = 0\n"
      "r = -1..1\n"
      "variants = plus\n"
      "output = out.jsonl\n");
  CHECK(text.family == "thm2");
  CHECK(text.ranges.at("m") == std::pair<int, int>{1, 1});
  CHECK(text.ranges.at("r") == std::pair<int, int>{-1, 1});
  CHECK(text.variants == std::vector<std::string>{"plus"});
  CHECK(text.strategy == Strategy::both);
  CHECK_FALSE(text.resume);

  CHECK_THROWS_AS(parse_sweep_config("family = thm1\nn = 1\nn = 2\n"),
                  parse_error);
  CHECK_THROWS_AS(parse_sweep_config("n = 1..2\n"), parse_error);
  CHECK_THROWS_AS(parse_sweep_config("family = thm1\nstrategy = careful\n"),
                  parse_error);
  CHECK_THROWS_AS(parse_sweep_config("family = thm1\nn = 3..1\n"), parse_error);
  CHECK_THROWS_AS(parse_sweep_config("family = thm1\nrecheck = maybe\n"),
                  parse_error);
  CHECK_THROWS_AS(parse_sweep_config("family = thm1\njust a line\n"),
                  parse_error);
  CHECK_THROWS_AS(parse_sweep_config("family = thm1\nn = two\n"), parse_error);
}

TEST_CASE("verdict records round trip as json lines") {
  VerdictRecord r;
  r.family = "thm1";
  r.params = {{"m", 1}, {"n1", 2}, {"j", 0}, {"r", 1}};
  r.variant = "plus";
  r.status = "verified";
  r.strategy = "both";
  r.quotient_min_exp = -2;
  r.quotient_max_exp = 7;
  r.sample_low = {"1", "2", "3"};
  r.sample_high = {"3", "2", "1"};
  r.quotient_hash = "00ff00ff00ff00ff";
  r.elapsed = 0.25;
  r.version = library_version;
  r.timestamp = "2026-01-02T03:04:05Z";

  const VerdictRecord back = parse_record(to_jsonl(r));
  CHECK(back.schema == log_schema_version);
  CHECK(back.family == r.family);
  CHECK(back.params == r.params);  // canonical order survives the round trip
  CHECK(back.variant == r.variant);
  CHECK(back.status == r.status);
  CHECK(back.strategy == r.strategy);
  CHECK(back.quotient_min_exp == -2);
  CHECK(back.quotient_max_exp == 7);
  CHECK(back.sample_low == r.sample_low);
  CHECK(back.sample_high == r.sample_high);
  CHECK(back.quotient_hash == r.quotient_hash);
  CHECK(back.elapsed == doctest::Approx(0.25));
  CHECK(back.timestamp == r.timestamp);
  CHECK(to_jsonl(back) == to_jsonl(r));

  VerdictRecord sk;
  sk.family = "thm3";
  sk.params = {{"n", 1}, {"s", 1}, {"r", 1}, {"j", 0}};
  sk.variant = "minus";
  sk.status = "skipped";
  sk.reason = "r + s must be odd";
  sk.strategy = "both";
  sk.version = library_version;
  sk.timestamp = "2026-01-02T03:04:05Z";
  const VerdictRecord skb = parse_record(to_jsonl(sk));
  CHECK(skb.status == "skipped");
  CHECK(skb.reason == sk.reason);
  CHECK(skb.quotient_hash.empty());

  VerdictRecord ce;
  ce.family = "ConjAllJ";
  ce.params = {{"base", 1}, {"m", 1}, {"n1", 2}, {"r", 0}, {"j", 9}};
  ce.variant = "plus";
  ce.status = "counterexample";
  ce.strategy = "both";
  ce.has_remainder = true;
  ce.remainder_exp = -3;
  ce.remainder_coeff = "-12";
  ce.version = library_version;
  ce.timestamp = "2026-01-02T03:04:05Z";
  const VerdictRecord ceb = parse_record(to_jsonl(ce));
  CHECK(ceb.status == "counterexample");
  CHECK(ceb.has_remainder);
  CHECK(ceb.remainder_exp == -3);
  CHECK(ceb.remainder_coeff == "-12");

  CHECK_THROWS_AS(parse_record("not json"), parse_error);
  CHECK_THROWS_AS(parse_record("{\"schema\":1}"), parse_error);
  std::string odd = to_jsonl(sk);
  const auto at = odd.find("skipped");
  odd.replace(at, 7, "shipped");
  CHECK_THROWS_AS(parse_record(odd), parse_error);
}

TEST_CASE("sweep writes one record per lattice point in order") {
  const fs::path dir = fresh_dir("order");
  const std::string log = (dir / "chain.jsonl").string();
  const SweepReport rep = run_sweep(chain_sweep(log));

  CHECK(rep.executed == 24);
  CHECK(rep.resumed == 0);
  CHECK(rep.verified == 24);
  CHECK(rep.failed == 0);
  CHECK(rep.counterexamples == 0);
  CHECK(rep.skipped == 0);
  CHECK(rep.total_seconds > 0);

  const auto records = read_log(log);
  REQUIRE(records.size() == 24);
  // enumeration order: n1, then j, then r, variant innermost
  const std::vector<std::pair<std::string, int>> first = {
      {"m", 1}, {"n1", 1}, {"j", 0}, {"r", 0}};
  CHECK(records[0].params == first);
  CHECK(records[0].variant == "plus");
  CHECK(records[1].params == first);
  CHECK(records[1].variant == "minus");
  CHECK(records[2].params ==
        std::vector<std::pair<std::string, int>>{
            {"m", 1}, {"n1", 1}, {"j", 0}, {"r", 1}});
  CHECK(records[4].params ==
        std::vector<std::pair<std::string, int>>{
            {"m", 1}, {"n1", 1}, {"j", 1}, {"r", 0}});
  CHECK(records[8].params ==
        std::vector<std::pair<std::string, int>>{
            {"m", 1}, {"n1", 2}, {"j", 0}, {"r", 0}});
  CHECK(records[23].params ==
        std::vector<std::pair<std::string, int>>{
            {"m", 1}, {"n1", 3}, {"j", 1}, {"r", 1}});
  CHECK(records[23].variant == "minus");

  for (const auto& rec : records) {
    CHECK(rec.schema == log_schema_version);
    CHECK(rec.family == "thm1");
    CHECK(rec.status == "verified");
    CHECK(rec.strategy == "both");
    CHECK(rec.version == library_version);
    CHECK(rec.quotient_hash.size() == 16);
    REQUIRE(rec.timestamp.size() == 20);
    CHECK(rec.timestamp[10] == 'T');
    CHECK(rec.timestamp.back() == 'Z');
  }

  const SweepReport replay = replay_log(log);
  CHECK(replay.executed == 0);
  CHECK(replay.resumed == 24);
  CHECK(replay.verified == 24);
  CHECK(replay.failed == 0);
  CHECK(replay.counterexamples == 0);
  CHECK(replay.skipped == 0);
}

TEST_CASE("resume skips covered points") {
  const fs::path dir = fresh_dir("resume");
  const std::string log = (dir / "chain.jsonl").string();
  run_sweep(chain_sweep(log));
  const std::string before = slurp(log);

  // a complete log leaves nothing to execute and nothing to rewrite
  SweepConfig again = chain_sweep(log);
  again.resume = true;
  const SweepReport rep = run_sweep(again);
  CHECK(rep.executed == 0);
  CHECK(rep.resumed == 24);
  CHECK(rep.verified == 24);
  CHECK(slurp(log) == before);

  // a prefix of the log resumes into the identical record sequence
  const auto full = stripped_lines(log);
  {
    std::ofstream out(log, std::ios::trunc);
    std::istringstream keep(before);
    std::string line;
    for (int i = 0; i < 5 && std::getline(keep, line); ++i) out << line << '\n';
  }
  const SweepReport resumed = run_sweep(again);
  CHECK(resumed.executed == 19);
  CHECK(resumed.resumed == 5);
  CHECK(resumed.verified == 24);
  CHECK(stripped_lines(log) == full);

  // without resume the file starts over
  const SweepReport fresh = run_sweep(chain_sweep(log));
  CHECK(fresh.executed == 24);
  CHECK(fresh.resumed == 0);
}

TEST_CASE("sweeps are deterministic up to timing") {
  const fs::path dir = fresh_dir("determinism");
  SweepConfig c;
  c.family = "thm3";  // the parity constraint makes half the lattice skip
  c.ranges["n"] = {1, 2};
  c.ranges["s"] = {1, 2};
  c.ranges["r"] = {0, 1};
  c.ranges["j"] = {0, 1};

  c.output = (dir / "serial.jsonl").string();
  c.parallelism = 1;
  const SweepReport serial = run_sweep(c);
  CHECK(serial.executed == 32);
  CHECK(serial.verified == 16);
  CHECK(serial.skipped == 16);

  c.output = (dir / "wide.jsonl").string();
  c.parallelism = 4;
  const SweepReport wide = run_sweep(c);
  CHECK(wide.executed == 32);
  CHECK(wide.verified == 16);
  CHECK(wide.skipped == 16);

  CHECK(stripped_lines((dir / "serial.jsonl").string()) ==
        stripped_lines((dir / "wide.jsonl").string()));

  for (const auto& rec : read_log((dir / "serial.jsonl").string())) {
    if (rec.status == "skipped") {
      CHECK_FALSE(rec.reason.empty());
      CHECK(rec.quotient_hash.empty());
    }
  }

  // the environment override takes precedence over the config width
  setenv("QCONG_JOBS", "3", 1);
  c.output = (dir / "env.jsonl").string();
  const SweepReport env = run_sweep(c);
  unsetenv("QCONG_JOBS");
  CHECK(env.executed == 32);
  CHECK(stripped_lines((dir / "env.jsonl").string()) ==
        stripped_lines((dir / "serial.jsonl").string()));
}

TEST_CASE("a logged counterexample ends the sweep") {
  const fs::path dir = fresh_dir("refuted");
  const std::string log = (dir / "conj.jsonl").string();

  // fixture log: one verified point, then a refuting record
  VerdictRecord ok;
  ok.family = "ConjAllJ";
  ok.params = {{"base", 1}, {"m", 1}, {"n1", 1}, {"r", 0}, {"j", 0}};
  ok.variant = "plus";
  ok.status = "verified";
  ok.strategy = "both";
  ok.quotient_hash = "0123456789abcdef";
  ok.version = library_version;
  ok.timestamp = "2026-01-02T03:04:05Z";
  VerdictRecord ce = ok;
  ce.variant = "minus";
  ce.status = "counterexample";
  ce.quotient_hash.clear();
  ce.has_remainder = true;
  ce.remainder_exp = 0;
  ce.remainder_coeff = "1";
  {
    std::ofstream out(log);
    out << to_jsonl(ok) << '\n' << to_jsonl(ce) << '\n';
  }

  SweepConfig c;
  c.family = "ConjAllJ";
  c.ranges["base"] = {1, 1};
  c.ranges["m"] = {1, 1};
  c.ranges["n"] = {1, 2};
  c.ranges["r"] = {0, 1};
  c.ranges["j"] = {0, 1};
  c.output = log;
  c.resume = true;

  // the recorded refutation stops the family: nothing new executes
  const SweepReport rep = run_sweep(c);
  CHECK(rep.executed == 0);
  CHECK(rep.resumed == 2);
  CHECK(rep.verified == 1);
  CHECK(rep.counterexamples == 1);
  CHECK(read_log(log).size() == 2);

  const SweepReport replay = replay_log(log);
  CHECK(replay.counterexamples == 1);
  CHECK(replay.verified == 1);
}

TEST_CASE("sweep validation is loud") {
  const fs::path dir = fresh_dir("validation");
  const std::string log = (dir / "x.jsonl").string();

  CHECK_THROWS_AS(read_log((dir / "missing.jsonl").string()), io_error);
  {
    std::ofstream out(log);
    out << "{\"schema\":1}\n";
  }
  CHECK_THROWS_WITH_AS(read_log(log), doctest::Contains(":1:"), parse_error);

  SweepConfig c = chain_sweep("");
  CHECK_THROWS_AS(run_sweep(c), io_error);  // no output path

  c = chain_sweep(log);
  c.family = "thm99";
  CHECK_THROWS_AS(run_sweep(c), argument_out_of_range);

  c = chain_sweep(log);
  c.variants = {"sideways"};
  CHECK_THROWS_AS(run_sweep(c), argument_out_of_range);

  c = chain_sweep(log);
  c.ranges.erase("r");
  CHECK_THROWS_AS(run_sweep(c), argument_out_of_range);

  c = chain_sweep(log);
  c.ranges["extra"] = {0, 1};
  CHECK_THROWS_AS(run_sweep(c), argument_out_of_range);

  c = chain_sweep(log);
  c.ranges["m"] = {1, 2};  // tuple arity cannot range
  CHECK_THROWS_AS(run_sweep(c), constraint_violation);

  c = chain_sweep(log);
  c.ranges.erase("m");
  CHECK_THROWS_AS(run_sweep(c), argument_out_of_range);

  // a nonsense range is a config error, not a skip
  c = chain_sweep(log);
  c.ranges["r"] = {-2, -1};
  CHECK_THROWS_AS(run_sweep(c), negative_argument);
}
