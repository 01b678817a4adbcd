#pragma once

// Lattice sweeps over a family's parameters, persisted as JSONL verdict
// logs. Records are written in enumeration order no matter how many worker
// threads run, so two sweeps of one config produce identical logs up to
// timing fields. A refuted conjecture ends the sweep at the offending
// record; a refuted theorem is logged as failed and the sweep continues.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcong/congruence.hpp"
#include "qcong/version.hpp"

namespace qcong {

// Inclusive ranges keyed by canonical parameter name. Tuple parameters take
// one range per slot (n1, n2, ...); when m is 1 the bare stem works too.
// The file format is flat key = value lines: ranges written lo..hi (a single
// value means v..v), variants a comma list, # starts a comment line.
struct SweepConfig {
  std::string family;
  std::map<std::string, std::pair<int, int>> ranges;
  std::vector<std::string> variants;  // empty selects every variant
  Strategy strategy = Strategy::both;
  bool recheck = false;
  // lifts proved j bounds, so the lattice may leave the proved range; any
  // refutation under the lift is then a counterexample, not a bug
  bool conjectural = false;
  int parallelism = 0;  // 0 defers to QCONG_JOBS, then hardware width
  std::string output;   // JSONL path
  bool resume = false;  // keep existing records, execute only the gaps
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);
std::string serialize_sweep_config(const SweepConfig& config);

// One verdict as persisted: one JSON object per line. status is verified,
// failed (refuted non-conjecture), counterexample (refuted conjecture) or
// skipped (tuple outside the family's constraints; reason says why).
struct VerdictRecord {
  int schema = log_schema_version;
  std::string family;
  std::vector<std::pair<std::string, int>> params;  // canonical order
  std::string variant;
  std::string status;
  std::string reason;
  std::string strategy;
  // quotient fingerprint, present on verified records
  long quotient_min_exp = 0;
  long quotient_max_exp = -1;
  std::vector<std::string> sample_low;  // decimal coefficient strings
  std::vector<std::string> sample_high;
  std::string quotient_hash;  // 16 hex digits
  // lowest remainder term, present on failed and counterexample records
  bool has_remainder = false;
  long remainder_exp = 0;
  std::string remainder_coeff;
  double elapsed = 0;
  std::string version;
  std::string timestamp;  // ISO 8601 UTC
};

std::string to_jsonl(const VerdictRecord& record);
VerdictRecord parse_record(const std::string& line);
std::vector<VerdictRecord> read_log(const std::string& path);

struct SweepReport {
  long executed = 0;  // records computed and written by this invocation
  long resumed = 0;   // lattice points already covered by the existing log
  // status totals over every record of the family now in the log
  long verified = 0;
  long failed = 0;
  long counterexamples = 0;
  long skipped = 0;
  double total_seconds = 0;  // sum of per-record elapsed
};

// Totals of a finished log (all families): executed stays 0, resumed counts
// every record.
SweepReport replay_log(const std::string& path);

SweepReport run_sweep(const SweepConfig& config);

}  // namespace qcong
