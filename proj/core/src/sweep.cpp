#include "qcong/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qcong/errors.hpp"
#include "qcong/registry.hpp"

namespace qcong {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& s, const std::string& where) {
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

bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw parse_error("expected true or false for " + where + ", got '" + s +
                    "'");
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::expanded:
      return "expanded";
    case Strategy::factorwise:
      return "factorwise";
    default:
      return "both";
  }
}

Strategy strategy_from(const std::string& s) {
  if (s == "expanded") return Strategy::expanded;
  if (s == "factorwise") return Strategy::factorwise;
  if (s == "both") return Strategy::both;
  throw parse_error("unknown strategy '" + s + "'");
}

std::string iso_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

void tally(SweepReport& rep, const std::string& status) {
  if (status == "verified")
    ++rep.verified;
  else if (status == "failed")
    ++rep.failed;
  else if (status == "counterexample")
    ++rep.counterexamples;
  else if (status == "skipped")
    ++rep.skipped;
}

struct Axis {
  std::string key;
  int lo = 0;
  int hi = 0;
};

// Turns the family's declared parameters plus the config ranges into
// concrete enumeration axes in canonical order. Tuple arity comes from the
// single-valued m range; the m = 1 bare-stem alias applies as everywhere.
std::vector<Axis> expand_axes(const Family& fam, const SweepConfig& config) {
  auto ranges = config.ranges;
  bool has_tuple = false;
  for (const auto& ps : fam.params) has_tuple = has_tuple || ps.tuple;
  int arity = 1;
  if (has_tuple) {
    const auto it = ranges.find("m");
    if (it == ranges.end())
      throw argument_out_of_range("family " + fam.id + " needs a value for m");
    if (it->second.first != it->second.second)
      throw constraint_violation(
          "tuple arity m must be a single value in a sweep");
    arity = it->second.first;
    if (arity < 1) throw constraint_violation("m must be positive");
  }
  std::vector<Axis> axes;
  const auto take = [&](const std::string& key) {
    const auto it = ranges.find(key);
    if (it == ranges.end())
      throw argument_out_of_range("sweep over family " + fam.id +
                                  " lacks a range for " + key);
    axes.push_back({key, it->second.first, it->second.second});
    ranges.erase(it);
  };
  for (const auto& ps : fam.params) {
    if (!ps.tuple) {
      take(ps.name);
      continue;
    }
    const bool bare = ranges.count(ps.name) != 0;
    const bool first = ranges.count(ps.name + "1") != 0;
    if (arity == 1 && !first && bare) {
      const auto r = ranges.at(ps.name);
      axes.push_back({ps.name + "1", r.first, r.second});
      ranges.erase(ps.name);
      continue;
    }
    if (!first && !bare && ps.optional) continue;
    for (int i = 1; i <= arity; ++i) take(ps.name + std::to_string(i));
  }
  if (!ranges.empty())
    throw argument_out_of_range("family " + fam.id +
                                " has no parameter named " +
                                ranges.begin()->first);
  return axes;
}

VerdictRecord make_record(const Family& fam, const SweepConfig& config,
                          const std::vector<Axis>& axes,
                          const std::vector<int>& vals,
                          const std::string& variant) {
  VerdictRecord rec;
  rec.family = fam.id;
  ParamMap pm;
  for (size_t i = 0; i < axes.size(); ++i) {
    rec.params.emplace_back(axes[i].key, vals[i]);
    pm[axes[i].key] = vals[i];
  }
  rec.variant = variant;
  rec.strategy = strategy_name(config.strategy);
  rec.version = library_version;
  rec.timestamp = iso_now();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Verdict v = run_family(fam, pm, variant, config.strategy,
                                 config.recheck, config.conjectural);
    rec.elapsed = v.elapsed.count();
    if (v.holds) {
      rec.status = "verified";
      rec.quotient_min_exp = v.quotient_min_exp;
      rec.quotient_max_exp = v.quotient_max_exp;
      for (const auto& z : v.sample_low) rec.sample_low.push_back(z.get_str());
      for (const auto& z : v.sample_high)
        rec.sample_high.push_back(z.get_str());
      rec.quotient_hash = hash_hex(v.quotient_hash);
    } else {
      // under a lifted bound every refutation is a conjectural finding
      rec.status = (fam.conjecture || config.conjectural) ? "counterexample"
                                                          : "failed";
      if (v.remainder_low_term) {
        rec.has_remainder = true;
        rec.remainder_exp = v.remainder_low_term->first;
        rec.remainder_coeff = v.remainder_low_term->second.get_str();
      }
    }
  } catch (const constraint_violation& e) {
    rec.status = "skipped";
    rec.reason = e.what();
    rec.elapsed = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  }
  return rec;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw parse_error("config line " + std::to_string(lineno) +
                        " has no '='");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty())
      throw parse_error("config line " + std::to_string(lineno) +
                        " has an empty key");
    if (!seen.insert(key).second)
      throw parse_error("duplicate config key '" + key + "'");
    if (key == "family") {
      c.family = val;
    } else if (key == "variants") {
      std::istringstream vs(val);
      std::string item;
      while (std::getline(vs, item, ',')) {
        item = trim(item);
        if (!item.empty()) c.variants.push_back(item);
      }
    } else if (key == "strategy") {
      c.strategy = strategy_from(val);
    } else if (key == "recheck") {
      c.recheck = parse_bool(val, key);
    } else if (key == "conjectural") {
      c.conjectural = parse_bool(val, key);
    } else if (key == "parallelism") {
      c.parallelism = parse_int(val, key);
    } else if (key == "output") {
      c.output = val;
    } else if (key == "resume") {
      c.resume = parse_bool(val, key);
    } else {
      const size_t dots = val.find("..");
      int lo = 0, hi = 0;
      if (dots == std::string::npos) {
        lo = hi = parse_int(val, key);
      } else {
        lo = parse_int(trim(val.substr(0, dots)), key);
        hi = parse_int(trim(val.substr(dots + 2)), key);
      }
      if (hi < lo) throw parse_error("empty range for '" + key + "'");
      c.ranges[key] = {lo, hi};
    }
  }
  if (c.family.empty()) throw parse_error("config does not name a family");
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

std::string serialize_sweep_config(const SweepConfig& c) {
  std::ostringstream out;
  out << "family = " << c.family << '\n';
  if (!c.variants.empty()) {
    out << "variants = ";
    for (size_t i = 0; i < c.variants.size(); ++i)
      out << (i ? "," : "") << c.variants[i];
    out << '\n';
  }
  out << "strategy = " << strategy_name(c.strategy) << '\n';
  out << "recheck = " << (c.recheck ? "true" : "false") << '\n';
  if (c.conjectural) out << "conjectural = true\n";
  if (c.parallelism > 0) out << "parallelism = " << c.parallelism << '\n';
  if (!c.output.empty()) out << "output = " << c.output << '\n';
  out << "resume = " << (c.resume ? "true" : "false") << '\n';
  for (const auto& [key, r] : c.ranges)
    out << key << " = " << r.first << ".." << r.second << '\n';
  return out.str();
}

std::string to_jsonl(const VerdictRecord& r) {
  ordered_json j;
  j["schema"] = r.schema;
  j["family"] = r.family;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  j["params"] = std::move(params);
  j["variant"] = r.variant;
  j["status"] = r.status;
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["strategy"] = r.strategy;
  if (r.status == "verified") {
    ordered_json q = ordered_json::object();
    q["min_exp"] = r.quotient_min_exp;
    q["max_exp"] = r.quotient_max_exp;
    q["low"] = r.sample_low;
    q["high"] = r.sample_high;
    q["hash"] = r.quotient_hash;
    j["quotient"] = std::move(q);
  }
  if (r.has_remainder) {
    ordered_json rem = ordered_json::object();
    rem["exp"] = r.remainder_exp;
    rem["coeff"] = r.remainder_coeff;
    j["remainder"] = std::move(rem);
  }
  j["elapsed"] = r.elapsed;
  j["version"] = r.version;
  j["timestamp"] = r.timestamp;
  return j.dump();
}

VerdictRecord parse_record(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad log line: ") + e.what());
  }
  try {
    VerdictRecord r;
    r.schema = j.at("schema").get<int>();
    r.family = j.at("family").get<std::string>();
    for (const auto& el : j.at("params").items())
      r.params.emplace_back(el.key(), el.value().get<int>());
    r.variant = j.at("variant").get<std::string>();
    r.status = j.at("status").get<std::string>();
    if (r.status != "verified" && r.status != "failed" &&
        r.status != "counterexample" && r.status != "skipped")
      throw parse_error("unknown record status '" + r.status + "'");
    r.reason = j.value("reason", std::string());
    r.strategy = j.at("strategy").get<std::string>();
    if (j.contains("quotient")) {
      const auto& q = j.at("quotient");
      r.quotient_min_exp = q.at("min_exp").get<long>();
      r.quotient_max_exp = q.at("max_exp").get<long>();
      r.sample_low = q.at("low").get<std::vector<std::string>>();
      r.sample_high = q.at("high").get<std::vector<std::string>>();
      r.quotient_hash = q.at("hash").get<std::string>();
    }
    if (j.contains("remainder")) {
      r.has_remainder = true;
      r.remainder_exp = j.at("remainder").at("exp").get<long>();
      r.remainder_coeff = j.at("remainder").at("coeff").get<std::string>();
    }
    r.elapsed = j.at("elapsed").get<double>();
    r.version = j.at("version").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception& e) {
    throw parse_error(std::string("bad log record: ") + e.what());
  }
}

std::vector<VerdictRecord> read_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open log " + path);
  std::vector<VerdictRecord> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const parse_error& e) {
      throw parse_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

SweepReport replay_log(const std::string& path) {
  SweepReport rep;
  for (const auto& r : read_log(path)) {
    ++rep.resumed;
    tally(rep, r.status);
    rep.total_seconds += r.elapsed;
  }
  return rep;
}

SweepReport run_sweep(const SweepConfig& config) {
  const Family& fam = family(config.family);
  const std::vector<std::string> variants =
      config.variants.empty() ? fam.variants : config.variants;
  for (const auto& v : variants) {
    if (std::find(fam.variants.begin(), fam.variants.end(), v) ==
        fam.variants.end())
      throw argument_out_of_range("family " + fam.id + " has no variant " + v);
  }
  if (config.output.empty()) throw io_error("sweep config has no output path");

  const std::vector<Axis> axes = expand_axes(fam, config);
  const long V = (long)variants.size();
  unsigned long long count = (unsigned long long)V;
  for (const auto& a : axes) count *= (unsigned long long)(a.hi - a.lo + 1);
  if (count > 10'000'000ull)
    throw constraint_violation("sweep lattice is too large");
  const long total = (long)count;

  // variant innermost, later parameters faster
  const auto decode = [&](long o, std::vector<int>& vals,
                          std::string& variant) {
    variant = variants[(size_t)(o % V)];
    o /= V;
    for (size_t i = axes.size(); i-- > 0;) {
      const long len = axes[i].hi - axes[i].lo + 1;
      vals[i] = axes[i].lo + (int)(o % len);
      o /= len;
    }
  };

  SweepReport rep;
  std::set<std::pair<std::vector<int>, std::string>> covered;
  bool already_refuted = false;
  const bool file_exists = static_cast<bool>(std::ifstream(config.output));
  if (config.resume && file_exists) {
    for (const auto& r : read_log(config.output)) {
      if (r.family != fam.id) continue;
      tally(rep, r.status);
      rep.total_seconds += r.elapsed;
      if (r.status == "counterexample") already_refuted = true;
      const std::map<std::string, int> pm(r.params.begin(), r.params.end());
      if (pm.size() != axes.size()) continue;
      std::vector<int> key;
      key.reserve(axes.size());
      for (const auto& a : axes) {
        const auto it = pm.find(a.key);
        if (it == pm.end()) break;
        key.push_back(it->second);
      }
      if (key.size() == axes.size()) covered.insert({std::move(key), r.variant});
    }
  }

  std::vector<long> pending;
  {
    std::vector<int> vals(axes.size());
    std::string variant;
    for (long o = 0; o < total; ++o) {
      decode(o, vals, variant);
      if (covered.count({vals, variant})) {
        ++rep.resumed;
        continue;
      }
      // a refuted conjecture in the log ends the sweep; nothing new runs
      if (!already_refuted) pending.push_back(o);
    }
  }

  std::ofstream out(config.output, config.resume && file_exists
                                       ? std::ios::app
                                       : std::ios::trunc);
  if (!out) throw io_error("cannot open log " + config.output);

  if (!pending.empty()) {
    int width = config.parallelism;
    if (const char* env = std::getenv("QCONG_JOBS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end && *end == '\0' && v > 0) width = (int)v;
    }
    if (width <= 0) width = (int)std::thread::hardware_concurrency();
    if (width <= 0) width = 1;
    if ((size_t)width > pending.size()) width = (int)pending.size();

    std::atomic<size_t> next{0};
    // ordinals past the earliest counterexample are cancelled, not written
    std::atomic<long> stop_after{std::numeric_limits<long>::max()};
    std::mutex mx;
    std::condition_variable cv;
    std::map<long, std::optional<VerdictRecord>> ready;
    std::exception_ptr first_error;

    const auto work = [&] {
      std::vector<int> vals(axes.size());
      std::string variant;
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= pending.size()) return;
        const long o = pending[i];
        std::optional<VerdictRecord> slot;
        try {
          if (o <= stop_after.load()) {
            decode(o, vals, variant);
            VerdictRecord rec = make_record(fam, config, axes, vals, variant);
            if (rec.status == "counterexample") {
              long cur = stop_after.load();
              while (o < cur && !stop_after.compare_exchange_weak(cur, o)) {
              }
            }
            slot = std::move(rec);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lk(mx);
          if (!first_error) first_error = std::current_exception();
          stop_after.store(-1);
        }
        {
          std::lock_guard<std::mutex> lk(mx);
          ready.emplace(o, std::move(slot));
        }
        cv.notify_all();
      }
    };

    std::vector<std::thread> pool;
    pool.reserve((size_t)width);
    for (int t = 0; t < width; ++t) pool.emplace_back(work);

    // single writer keeps the log in enumeration order
    for (const long o : pending) {
      std::optional<VerdictRecord> slot;
      {
        std::unique_lock<std::mutex> lk(mx);
        cv.wait(lk, [&] { return ready.count(o) != 0; });
        slot = std::move(ready.at(o));
        ready.erase(o);
      }
      if (!slot) break;  // cancelled past a counterexample or an error
      out << to_jsonl(*slot) << '\n';
      out.flush();
      ++rep.executed;
      tally(rep, slot->status);
      rep.total_seconds += slot->elapsed;
      if (slot->status == "counterexample") break;
    }
    stop_after.store(-1);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  out.flush();
  if (!out) throw io_error("failed writing log " + config.output);
  return rep;
}

}  // namespace qcong
