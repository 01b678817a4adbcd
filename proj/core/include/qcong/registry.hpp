#pragma once

// Closed catalogue of runnable congruence families. Each entry names its
// parameters, the weight variants it accepts, and how to turn one
// parameter tuple into the (modulus, sum) pair its claim is about. The id
// set is fixed at compile time; lookups of anything else throw instead of
// guessing.

#include <functional>
#include <string>
#include <vector>

#include "qcong/congruence.hpp"
#include "qcong/families.hpp"

namespace qcong {

// One parameter slot. A tuple slot with stem "n" expands to n1..nm, where
// the arity always comes from the family's literal parameter named "m".
// When m is 1 the bare stem is accepted as an alias for the single slot.
// An optional tuple may be omitted entirely (its family has a default).
struct ParamSpec {
  std::string name;
  bool tuple = false;
  bool optional = false;
};

struct Family {
  std::string id;
  std::string summary;
  // a failing verdict on a conjecture is a reportable counterexample; on
  // anything else it is a bug
  bool conjecture = false;
  std::vector<std::string> variants;
  // declaration order fixes the canonical parameter order everywhere:
  // config validation, lattice enumeration, record sorting
  std::vector<ParamSpec> params;
  // lifted drops the proved j bound where one exists, turning the instance
  // into a conjectural statement; structural constraints still apply
  std::function<FamilyParts(const ParamMap&, const std::string& variant,
                            bool lifted)>
      parts;
};

const Family& family(const std::string& id);  // unknown ids throw
const std::vector<std::string>& family_ids();
bool is_family(const std::string& id);

// Expanded canonical key order for one concrete tuple: literal names in
// declaration order, tuple stems expanded against the value of "m".
// Validates presence, applies the m = 1 bare-stem alias, rejects unknown
// keys, and returns the canonicalized map alongside the ordered keys.
struct CanonicalParams {
  std::vector<std::string> keys;
  ParamMap values;
};
CanonicalParams canonicalize_params(const Family& f, const ParamMap& user);

// One verdict through the registry: canonicalizes, builds the parts,
// divides. The variant must be one of f.variants.
Verdict run_family(const Family& f, const ParamMap& params,
                   const std::string& variant,
                   Strategy strategy = Strategy::both, bool recheck = false,
                   bool lifted = false);

}  // namespace qcong
