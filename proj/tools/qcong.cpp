// Command line front end: single verdicts, lattice sweeps, cyclotomic
// factoring, identity checks, and log reporting. Exit codes: 0 all good,
// 1 a proved statement failed (a bug), 2 a conjecture counterexample,
// 64 usage or input errors.

#include <exception>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcong/cyclotomic.hpp"
#include "qcong/errors.hpp"
#include "qcong/families.hpp"
#include "qcong/registry.hpp"
#include "qcong/sweep.hpp"
#include "qcong/version.hpp"

namespace {

using namespace qcong;

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

int int_of(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw parse_error("");
    return v;
  } catch (const std::exception&) {
    throw parse_error("expected an integer for " + where + ", got '" + s +
                      "'");
  }
}

ParamMap parse_params(const std::string& text) {
  ParamMap out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw parse_error("params expect k=v pairs, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    const int value = int_of(trim(item.substr(eq + 1)), key);
    if (!out.emplace(key, value).second)
      throw parse_error("duplicate parameter '" + key + "'");
  }
  return out;
}

int param_of(const ParamMap& p, const std::string& name) {
  const auto it = p.find(name);
  if (it == p.end())
    throw argument_out_of_range("missing parameter " + name);
  return it->second;
}

std::vector<int> tuple_of(const ParamMap& p, const std::string& stem, int m) {
  if (m < 1) throw constraint_violation("m must be positive");
  std::vector<int> out;
  out.reserve((size_t)m);
  if (m == 1 && p.count(stem + "1") == 0 && p.count(stem) != 0) {
    out.push_back(p.at(stem));
    return out;
  }
  for (int i = 1; i <= m; ++i)
    out.push_back(param_of(p, stem + std::to_string(i)));
  return out;
}

Strategy strategy_of(const std::string& s) {
  if (s == "expanded") return Strategy::expanded;
  if (s == "factorwise") return Strategy::factorwise;
  if (s == "both") return Strategy::both;
  throw parse_error("unknown strategy '" + s + "'");
}

std::string joined_params(const CanonicalParams& cp) {
  std::ostringstream out;
  for (size_t i = 0; i < cp.keys.size(); ++i) {
    out << (i ? "," : "") << cp.keys[i] << '=' << cp.values.at(cp.keys[i]);
  }
  return out.str();
}

int run_verify(const std::string& id, const std::string& params_text,
               std::string variant, const std::string& strategy_text,
               bool recheck, bool conjectural, bool show_quotient) {
  const Family& fam = family(id);
  if (variant.empty()) variant = fam.variants.front();
  if (std::find(fam.variants.begin(), fam.variants.end(), variant) ==
      fam.variants.end())
    throw argument_out_of_range("family " + id + " has no variant " + variant);
  const Strategy strategy = strategy_of(strategy_text);
  const CanonicalParams cp = canonicalize_params(fam, parse_params(params_text));
  const FamilyParts parts = fam.parts(cp.values, variant, conjectural);
  const Verdict v = divides(parts.modulus, parts.sum, strategy, recheck);
  if (v.holds) {
    if (show_quotient) {
      std::cout << render(quotient(parts.modulus, parts.sum)) << '\n';
    } else {
      std::cout << "verified " << id << ' ' << joined_params(cp)
                << " variant=" << variant << " mod " << parts.modulus.description
                << '\n';
    }
    return 0;
  }
  const bool counterexample = fam.conjecture || conjectural;
  std::cout << (counterexample ? "counterexample " : "failed ") << id << ' '
            << joined_params(cp) << " variant=" << variant << " mod "
            << parts.modulus.description << '\n';
  if (v.remainder_low_term) {
    std::cout << "remainder low term: " << v.remainder_low_term->second
              << " * q^" << v.remainder_low_term->first << '\n';
  }
  return counterexample ? 2 : 1;
}

int run_sweep_cmd(const std::string& config_path, bool resume,
                  bool conjectural, const std::string& output_override,
                  int jobs) {
  SweepConfig config = load_sweep_config(config_path);
  if (resume) config.resume = true;
  if (conjectural) config.conjectural = true;
  if (!output_override.empty()) config.output = output_override;
  if (jobs > 0) config.parallelism = jobs;
  const SweepReport rep = run_sweep(config);
  std::cout << "sweep " << config.family << ": executed " << rep.executed
            << ", resumed " << rep.resumed << '\n'
            << "verified " << rep.verified << ", failed " << rep.failed
            << ", counterexamples " << rep.counterexamples << ", skipped "
            << rep.skipped << '\n'
            << std::fixed << std::setprecision(2) << "verdict time "
            << rep.total_seconds << "s\n";
  if (rep.counterexamples > 0) return 2;
  if (rep.failed > 0) return 1;
  return 0;
}

int run_factor(const std::vector<int>& qbinomial, int qfactorial,
               bool have_factorial) {
  if (!qbinomial.empty()) {
    std::cout << render_signature(
                     qbinomial_signature(qbinomial[0], qbinomial[1]))
              << '\n';
    return 0;
  }
  if (have_factorial) {
    std::cout << render_signature(q_factorial_signature(qfactorial)) << '\n';
    return 0;
  }
  std::cerr << "factor needs --qbinomial m k or --qfactorial n\n";
  return 64;
}

int run_identity(const std::string& kind, const std::string& params_text,
                 const std::string& form, const std::string& kernel_text) {
  const ParamMap p = parse_params(params_text);
  bool equal = false;
  bool degenerate = false;
  if (kind == "qbt") {
    equal = qbt_check(param_of(p, "N"), param_of(p, "a"));
  } else if (kind == "chu") {
    equal = chu_check(param_of(p, "n1"), param_of(p, "n2"));
  } else if (kind == "dixon_full") {
    equal =
        dixon_full_check(param_of(p, "l"), param_of(p, "m"), param_of(p, "n"));
  } else if (kind == "dixon_limit") {
    equal = dixon_limit_check(param_of(p, "n"));
  } else if (kind == "lemma21") {
    equal = lemma21_check(param_of(p, "n"), param_of(p, "s"),
                          param_of(p, "variant"))
                .equal;
  } else if (kind == "remark") {
    const RemarkCheck c = remark_x_identity_check(
        param_of(p, "n"), param_of(p, "s"), param_of(p, "a"));
    equal = c.equal;
    degenerate = c.degenerate;
  } else if (kind == "st_recurrence") {
    const ST which = form == "T" ? ST::T : ST::S;
    const STKernel kernel =
        kernel_text == "remark" ? STKernel::remark : STKernel::standard;
    equal = st_recurrence_check(which, tuple_of(p, "n", param_of(p, "m")),
                                param_of(p, "j"), param_of(p, "r"), kernel);
  } else if (kind == "qinv") {
    const ST which = form == "T" ? ST::T : ST::S;
    equal = qinv_symmetry_check(which, tuple_of(p, "n", param_of(p, "m")),
                                param_of(p, "r"));
  } else if (kind == "pq_consistency") {
    const PQ which = form == "Q" ? PQ::Q : PQ::P;
    const int n = param_of(p, "n");
    const int j = param_of(p, "j");
    const int r = param_of(p, "r");
    equal = pq_value(which, n, j, r, PQMethod::direct) ==
            pq_value(which, n, j, r, PQMethod::recurrence);
  } else {
    throw argument_out_of_range("unknown identity kind: " + kind);
  }
  std::cout << "identity " << kind << ": "
            << (equal ? (degenerate ? "equal (degenerate)" : "equal")
                      : "not equal")
            << '\n';
  return equal ? 0 : 1;
}

int run_report(const std::string& log_path) {
  const std::vector<VerdictRecord> records = read_log(log_path);
  struct Row {
    long verified = 0, failed = 0, counterexamples = 0, skipped = 0;
  };
  std::map<std::string, Row> rows;
  for (const auto& r : records) {
    Row& row = rows[r.family];
    if (r.status == "verified") ++row.verified;
    if (r.status == "failed") ++row.failed;
    if (r.status == "counterexample") ++row.counterexamples;
    if (r.status == "skipped") ++row.skipped;
  }
  std::cout << std::left << std::setw(14) << "family" << std::right
            << std::setw(10) << "verified" << std::setw(8) << "failed"
            << std::setw(17) << "counterexamples" << std::setw(9) << "skipped"
            << std::setw(7) << "total" << '\n';
  long failed = 0, counterexamples = 0;
  for (const auto& [id, row] : rows) {
    std::cout << std::left << std::setw(14) << id << std::right
              << std::setw(10) << row.verified << std::setw(8) << row.failed
              << std::setw(17) << row.counterexamples << std::setw(9)
              << row.skipped << std::setw(7)
              << row.verified + row.failed + row.counterexamples + row.skipped
              << '\n';
    failed += row.failed;
    counterexamples += row.counterexamples;
  }
  for (const auto& r : records) {
    if (r.status != "counterexample" && r.status != "failed") continue;
    std::cout << r.status << ": " << r.family << ' ';
    for (size_t i = 0; i < r.params.size(); ++i)
      std::cout << (i ? "," : "") << r.params[i].first << '='
                << r.params[i].second;
    std::cout << " variant=" << r.variant << '\n';
  }
  if (counterexamples > 0) return 2;
  if (failed > 0) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of q-binomial congruence families"};
  app.set_version_flag("--version", qcong::library_version);
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "check one family instance");
  std::string verify_family, verify_params, verify_variant;
  std::string verify_strategy = "both";
  bool verify_recheck = false, verify_conjectural = false, show_quotient = false;
  verify->add_option("family", verify_family, "family id")->required();
  verify->add_option("--params", verify_params, "k=v,... parameter list")
      ->required();
  verify->add_option("--variant", verify_variant,
                     "weight variant (family default: first listed)");
  verify->add_option("--strategy", verify_strategy,
                     "expanded, factorwise, or both")
      ->capture_default_str();
  verify->add_flag("--recheck", verify_recheck,
                   "re-multiply the quotient against the divisor");
  verify->add_flag("--conjectural", verify_conjectural,
                   "lift proved weight bounds; refutations become "
                   "counterexamples");
  verify->add_flag("--show-quotient", show_quotient,
                   "print the exact quotient instead of the verdict line");

  auto* sweep = app.add_subcommand("sweep", "run a lattice sweep from a config");
  std::string sweep_config, sweep_output;
  bool sweep_resume = false, sweep_conjectural = false;
  int sweep_jobs = 0;
  sweep->add_option("--config", sweep_config, "flat key = value config file")
      ->required();
  sweep->add_flag("--resume", sweep_resume, "skip tuples already in the log");
  sweep->add_flag("--conjectural", sweep_conjectural,
                  "lift proved weight bounds for this sweep");
  sweep->add_option("--output", sweep_output, "override the config log path");
  sweep->add_option("--jobs", sweep_jobs, "worker count (QCONG_JOBS wins)");

  auto* factor = app.add_subcommand("factor", "cyclotomic signature of a q-object");
  std::vector<int> factor_qbinomial;
  int factor_qfactorial = 0;
  factor->add_option("--qbinomial", factor_qbinomial, "m k")->expected(2);
  auto* qf_opt =
      factor->add_option("--qfactorial", factor_qfactorial, "n");

  auto* identity = app.add_subcommand("identity", "check one exact identity");
  std::string identity_kind, identity_params, identity_form = "S",
                             identity_kernel = "standard";
  identity
      ->add_option("kind", identity_kind,
                   "qbt, chu, dixon_full, dixon_limit, lemma21, remark, "
                   "st_recurrence, qinv, or pq_consistency")
      ->required()
      ->check(CLI::IsMember({"qbt", "chu", "dixon_full", "dixon_limit",
                             "lemma21", "remark", "st_recurrence", "qinv",
                             "pq_consistency"}));
  identity->add_option("--params", identity_params, "k=v,... parameter list");
  identity->add_option("--form", identity_form,
                       "S or T for the rational sums, P or Q for the "
                       "closed forms")
      ->capture_default_str();
  identity->add_option("--kernel", identity_kernel, "standard or remark")
      ->capture_default_str()
      ->check(CLI::IsMember({"standard", "remark"}));

  auto* report = app.add_subcommand("report", "aggregate a verdict log");
  std::string report_log;
  report->add_option("--log", report_log, "JSONL verdict log")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (*verify)
      return run_verify(verify_family, verify_params, verify_variant,
                        verify_strategy, verify_recheck, verify_conjectural,
                        show_quotient);
    if (*sweep)
      return run_sweep_cmd(sweep_config, sweep_resume, sweep_conjectural,
                           sweep_output, sweep_jobs);
    if (*factor)
      return run_factor(factor_qbinomial, factor_qfactorial,
                        qf_opt->count() > 0);
    if (*identity)
      return run_identity(identity_kind, identity_params, identity_form,
                          identity_kernel);
    if (*report) return run_report(report_log);
  } catch (const qcong::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const qcong::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::invalid_argument& e) {
    // covers unknown ids, missing parameters, constraint violations
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  }
  return 64;
}
