#include "qcong/registry.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "qcong/errors.hpp"

namespace qcong {
namespace {

int param(const ParamMap& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) {
    throw argument_out_of_range("missing parameter " + name);
  }
  return it->second;
}

std::vector<int> tuple_of(const ParamMap& p, const std::string& stem, int m) {
  std::vector<int> out;
  out.reserve(m);
  for (int i = 1; i <= m; ++i) {
    out.push_back(param(p, stem + std::to_string(i)));
  }
  return out;
}

Sign sign_of(const std::string& variant) {
  if (variant == "plus") return Sign::plus;
  if (variant == "minus") return Sign::minus;
  throw argument_out_of_range("variant must be plus or minus");
}

WeightVariant weight_of(const ParamMap& p, const std::string& variant) {
  return {sign_of(variant), param(p, "j")};
}

SumSpec chain_spec(const ParamMap& p, const std::string& variant,
                   bool lifted) {
  SumSpec s;
  s.ns = tuple_of(p, "n", param(p, "m"));
  s.r = param(p, "r");
  s.weight = weight_of(p, variant);
  s.allow_large_j = lifted;
  return s;
}

const std::vector<std::string> kSignVariants{"plus", "minus"};
const std::vector<std::string> kFourVariants{"1", "2", "3", "4"};

Family catalogue_family(std::string id, std::string summary, bool conjecture,
                        std::vector<ParamSpec> params) {
  Family f;
  f.id = id;
  f.summary = std::move(summary);
  f.conjecture = conjecture;
  f.variants = kSignVariants;
  f.params = std::move(params);
  if (conjecture) {
    f.parts = [id](const ParamMap& p, const std::string& v, bool) {
      return conjecture_parts(id, p, weight_of(p, v));
    };
  } else {
    f.parts = [id](const ParamMap& p, const std::string& v, bool lifted) {
      return corollary_parts(id, p, weight_of(p, v), lifted);
    };
  }
  return f;
}

std::vector<Family> build_registry() {
  std::vector<Family> fams;

  fams.push_back(
      {"thm1",
       "weighted chain sum against [n1+nm+1][n1+nm over n1]",
       false,
       kSignVariants,
       {{"m"}, {"n", true}, {"j"}, {"r"}},
       [](const ParamMap& p, const std::string& v, bool lifted) {
         SumSpec s = chain_spec(p, v, lifted);
         return FamilyParts{theorem1_modulus(s), theorem1_sum(s)};
       }});

  fams.push_back(
      {"thm2",
       "kernel chain sum against the strengthened divisor",
       false,
       kSignVariants,
       {{"m"}, {"n", true}, {"j"}, {"r"}},
       [](const ParamMap& p, const std::string& v, bool lifted) {
         SumSpec s = chain_spec(p, v, lifted);
         return FamilyParts{theorem2_modulus(s), theorem2_sum(s)};
       }});

  fams.push_back(
      {"thm3",
       "ballot power sum against the central binomial",
       false,
       kSignVariants,
       {{"n"}, {"s"}, {"r"}, {"j"}},
       [](const ParamMap& p, const std::string& v, bool lifted) {
         return FamilyParts{
             theorem3_modulus(param(p, "n")),
             theorem3_sum(param(p, "n"), param(p, "s"), param(p, "r"),
                          weight_of(p, v), lifted)};
       }});

  fams.push_back(
      {"thm4",
       "paired ballot power sum against the super-Catalan divisor",
       false,
       kSignVariants,
       {{"m"}, {"n"}, {"s"}, {"t"}, {"r"}, {"j"}},
       [](const ParamMap& p, const std::string& v, bool lifted) {
         return FamilyParts{
             theorem4_modulus(param(p, "m"), param(p, "n")),
             theorem4_sum(param(p, "m"), param(p, "n"), param(p, "s"),
                          param(p, "t"), param(p, "r"), weight_of(p, v),
                          lifted)};
       }});

  fams.push_back(
      {"thm62",
       "factorial prefactored chain sum; the quotient is the certified value",
       false,
       kSignVariants,
       {{"m"}, {"n", true}, {"j"}, {"r"}, {"a", true, true}},
       [](const ParamMap& p, const std::string& v, bool lifted) {
         SumSpec s = chain_spec(p, v, lifted);
         std::vector<int> a;
         if (p.count("a1") != 0) {
           a = tuple_of(p, "a", param(p, "m"));
         }
         return theorem62_parts(s, a);
       }});

  fams.push_back(
      {"thm22",
       "power strengthened Pochhammer sum against [2n+1][2n over n]",
       false,
       kFourVariants,
       {{"n"}, {"r"}, {"s"}},
       [](const ParamMap& p, const std::string& v, bool) {
         const int variant = v.at(0) - '0';
         return FamilyParts{
             theorem22_modulus(param(p, "n")),
             theorem22_sum(param(p, "n"), param(p, "r"), param(p, "s"),
                           variant)};
       }});

  const std::vector<ParamSpec> nrst{{"n"}, {"r"}, {"s"}, {"t"}, {"j"}};
  const std::vector<ParamSpec> nabc{{"n"}, {"a"}, {"b"}, {"c"}, {"r"}, {"j"}};
  fams.push_back(catalogue_family(
      "C63a", "ballot pair at consecutive indices mod the q-Catalan number",
      false, nrst));
  fams.push_back(catalogue_family(
      "C63b", "ballot pair at doubled index mod [4n over n]/[3n+1]", false,
      nrst));
  fams.push_back(catalogue_family(
      "C71", "squared binomial pair mod [m+n+1][m+n over m]", false,
      {{"a"}, {"m"}, {"n"}, {"r"}, {"j"}}));
  fams.push_back(catalogue_family(
      "C72", "three index binomial product mod [m+n+1][m+n over m]", false,
      {{"a"}, {"l"}, {"m"}, {"n"}, {"r"}, {"j"}}));
  fams.push_back(catalogue_family(
      "C73", "stacked binomial product mod [2n+5][2n+1 over n]", false, nabc));
  fams.push_back(catalogue_family(
      "C74a", "6n binomial product mod [2n+1][6n+1 over n]", false, nabc));
  fams.push_back(catalogue_family(
      "C74b", "6n binomial product mod [2n+1][6n+1 over 3n]", false, nabc));
  fams.push_back(catalogue_family(
      "C75a", "8n binomial product with [3n+1] mod [2n+1][4n+1][8n+1 over 3n]",
      false, nabc));
  fams.push_back(catalogue_family(
      "C75b", "8n binomial product mod [4n+1][8n+1 over 3n]", false, nabc));
  fams.push_back(catalogue_family(
      "C76", "rising binomial chain mod [2n+2m-1][2n+1 over n]", false,
      {{"m"}, {"n"}, {"r"}, {"a", true}, {"j"}}));

  fams.push_back(catalogue_family(
      "Conj246n_1", "[4n+1] ballot triple mod [6n+1 over n]/[6n+1]", true,
      nrst));
  fams.push_back(catalogue_family(
      "Conj246n_2", "[4n+1] ballot triple mod [6n+1 over 3n]/[6n+1]", true,
      nrst));
  fams.push_back(catalogue_family(
      "Conj246n_3", "[8n+1] ballot triple mod [8n+1 over 3n]", true, nrst));
  fams.push_back(catalogue_family(
      "Conj246n_4", "[6n+1][8n+1] ballot triple mod [8n+1 over 3n]", true,
      nrst));
  fams.push_back(catalogue_family(
      "ConjFinal", "ballot chain at rising indices mod the q-Catalan number",
      true, {{"m"}, {"n"}, {"r", true}, {"j"}}));
  fams.push_back(catalogue_family(
      "ConjAllJ", "chain sums with the j bound lifted", true,
      {{"base"}, {"m"}, {"n", true}, {"r"}, {"j"}}));

  return fams;
}

const std::vector<Family>& table() {
  static const std::vector<Family> fams = build_registry();
  return fams;
}

}  // namespace

const Family& family(const std::string& id) {
  for (const Family& f : table()) {
    if (f.id == id) return f;
  }
  throw argument_out_of_range("unknown family id: " + id);
}

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    out.reserve(table().size());
    for (const Family& f : table()) out.push_back(f.id);
    return out;
  }();
  return ids;
}

bool is_family(const std::string& id) {
  for (const Family& f : table()) {
    if (f.id == id) return true;
  }
  return false;
}

CanonicalParams canonicalize_params(const Family& f, const ParamMap& user) {
  CanonicalParams out;
  std::set<std::string> consumed;

  int arity = -1;
  for (const ParamSpec& spec : f.params) {
    if (spec.tuple) {
      arity = param(user, "m");
      if (arity < 1) throw constraint_violation("m must be positive");
      break;
    }
  }

  for (const ParamSpec& spec : f.params) {
    if (!spec.tuple) {
      out.values[spec.name] = param(user, spec.name);
      out.keys.push_back(spec.name);
      consumed.insert(spec.name);
      continue;
    }
    std::vector<std::string> names;
    names.reserve(arity);
    int present = 0;
    for (int i = 1; i <= arity; ++i) {
      names.push_back(spec.name + std::to_string(i));
      if (user.count(names.back()) != 0) ++present;
    }
    const bool bare = user.count(spec.name) != 0;
    if (arity == 1 && present == 0 && bare) {
      out.values[names[0]] = user.at(spec.name);
      out.keys.push_back(names[0]);
      consumed.insert(spec.name);
      continue;
    }
    if (present == arity) {
      for (const std::string& name : names) {
        out.values[name] = user.at(name);
        out.keys.push_back(name);
        consumed.insert(name);
      }
      continue;
    }
    if (present == 0 && !bare && spec.optional) continue;
    throw argument_out_of_range("family " + f.id +
                                " wants the full tuple parameter " +
                                spec.name + "1.." + spec.name +
                                std::to_string(arity));
  }

  for (const auto& [key, value] : user) {
    (void)value;
    if (consumed.count(key) == 0) {
      throw argument_out_of_range("family " + f.id +
                                  " has no parameter named " + key);
    }
  }
  return out;
}

Verdict run_family(const Family& f, const ParamMap& params,
                   const std::string& variant, Strategy strategy, bool recheck,
                   bool lifted) {
  if (std::find(f.variants.begin(), f.variants.end(), variant) ==
      f.variants.end()) {
    throw argument_out_of_range("family " + f.id + " has no variant " +
                                variant);
  }
  CanonicalParams cp = canonicalize_params(f, params);
  FamilyParts parts = f.parts(cp.values, variant, lifted);
  return divides(parts.modulus, parts.sum, strategy, recheck);
}

}  // namespace qcong
