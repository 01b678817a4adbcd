#include "qcong/families.hpp"

#include <algorithm>
#include <cassert>
#include <compare>
#include <tuple>
#include <utility>

#include "memo_table.hpp"
#include "qcong/cyclotomic.hpp"
#include "qcong/errors.hpp"
#include "qcong/qkit.hpp"

namespace qcong {
namespace {

// ---------------------------------------------------------------- weights

long quadratic_exponent(const WeightVariant& w, long c, long k) {
  long e = static_cast<long>(w.j) * (k * k + k) - c * k;
  if (w.kind == Sign::minus) e += k * (k - 1) / 2;
  return e;
}

int term_sign(const WeightVariant& w, long k) {
  return (w.kind == Sign::minus && (k & 1L)) ? -1 : 1;
}

// family-specific linear rates c
long epsilon_rate(Sign kind, int r) {
  return kind == Sign::plus ? 2L * r + 1 : 2L * r;
}
long kernel2_rate(Sign kind, int r) {
  return kind == Sign::plus ? r + 1L : static_cast<long>(r);
}
long tau_rate(Sign kind, int r) {
  return kind == Sign::plus ? static_cast<long>(r) : r - 1L;
}
long eta_rate(Sign kind) { return kind == Sign::plus ? 0L : -1L; }

// ----------------------------------------------------- summand factor pool

enum class FactorKind : int { integer, binomial, ballot_num, pochhammer };

// One powered atom of a summand: [a]^e, [a over b]^e, A_{a,b}^e, or
// (q^a;q)_b^e.
struct Factor {
  FactorKind kind{};
  long a = 0;
  long b = 0;
  int e = 1;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

detail::MemoTable<std::tuple<long, int, int>, LaurentPoly>& poch_pow_table() {
  static detail::MemoTable<std::tuple<long, int, int>, LaurentPoly> table;
  return table;
}

const LaurentPoly& pochhammer_pow(long a, int s, int e) {
  return poch_pow_table().get_or_compute(
      std::tuple<long, int, int>{a, s, e}, [&] {
        return pow(q_pochhammer(a, s), static_cast<unsigned long>(e));
      });
}

const LaurentPoly& factor_value(const Factor& f) {
  switch (f.kind) {
    case FactorKind::integer:
      return q_integer_pow(static_cast<int>(f.a), f.e);
    case FactorKind::binomial:
      return q_binomial_pow(f.a, f.b, f.e);
    case FactorKind::ballot_num:
      return ballot_pow(static_cast<int>(f.a), static_cast<int>(f.b), f.e);
    case FactorKind::pochhammer:
      return pochhammer_pow(f.a, static_cast<int>(f.b), f.e);
  }
  throw argument_out_of_range("factor_value: unknown factor kind");
}

detail::MemoTable<std::vector<Factor>, LaurentPoly>& summand_table() {
  static detail::MemoTable<std::vector<Factor>, LaurentPoly> table;
  return table;
}

// Canonical product of powered factors. Sorting and merging makes equal
// summand shapes from different families share one multiplication.
const LaurentPoly& summand_product(std::vector<Factor> fs) {
  std::sort(fs.begin(), fs.end());
  std::vector<Factor> merged;
  merged.reserve(fs.size());
  for (const Factor& f : fs) {
    if (f.e == 0) continue;
    if (!merged.empty() && merged.back().kind == f.kind &&
        merged.back().a == f.a && merged.back().b == f.b) {
      merged.back().e += f.e;
    } else {
      merged.push_back(f);
    }
  }
  return summand_table().get_or_compute(merged, [&] {
    LaurentPoly out(1);
    for (const Factor& f : merged) {
      const LaurentPoly& part = factor_value(f);
      if (part.is_zero()) return LaurentPoly{};
      out *= part;
    }
    return out;
  });
}

template <class FactorsAt>
LaurentPoly weighted_sum(int kmax, const WeightVariant& w, long rate,
                         FactorsAt&& factors_at) {
  LaurentPoly total;
  for (int k = 0; k <= kmax; ++k) {
    const LaurentPoly& prod = summand_product(factors_at(k));
    if (prod.is_zero()) continue;
    LaurentPoly term = prod.shifted(quadratic_exponent(w, rate, k));
    if (term_sign(w, k) < 0) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

// -------------------------------------------------------------- validation

void check_tuple(const std::vector<int>& ns) {
  if (ns.empty()) throw constraint_violation("index tuple is empty");
  for (int n : ns) {
    if (n < 1) throw constraint_violation("indices must be positive");
  }
}

void check_r(int r) {
  if (r < 0) throw negative_argument("r must be nonnegative");
}

void check_j_bound(int j, long bound, bool lifted = false) {
  if (j < 0) throw negative_argument("j must be nonnegative");
  if (!lifted && j > bound) {
    throw constraint_violation("j exceeds the proved bound for this family");
  }
}

void require_positive(int v, const char* name) {
  if (v < 1) {
    throw constraint_violation(std::string(name) + " must be positive");
  }
}

void require_odd(long total, const char* what) {
  if ((total & 1L) == 0) throw parity_violation(what);
}

// ----------------------------------------------------- shape sum builders

// factor [upper over lower_base - k]^exp
struct BinPower {
  long upper;
  long lower_base;
  int exp;
};

LaurentPoly epsilon_power_sum(int kmax, int r, const WeightVariant& w,
                              const std::vector<BinPower>& shape) {
  const long rate = epsilon_rate(w.kind, r);
  return weighted_sum(kmax, w, rate, [&](int k) {
    std::vector<Factor> fs;
    fs.reserve(shape.size() + 1);
    fs.push_back({FactorKind::integer, 2L * k + 1, 0, 2 * r + 1});
    for (const BinPower& bp : shape) {
      fs.push_back({FactorKind::binomial, bp.upper, bp.lower_base - k, bp.exp});
    }
    return fs;
  });
}

// factor A_{n,k}^exp
struct BallotPower {
  int n;
  int exp;
};

LaurentPoly ballot_power_sum(int kmax, int r, const WeightVariant& w,
                             long rate, const std::vector<BallotPower>& shape) {
  return weighted_sum(kmax, w, rate, [&](int k) {
    std::vector<Factor> fs;
    fs.reserve(shape.size() + 1);
    if (r > 0) fs.push_back({FactorKind::integer, 2L * k + 1, 0, r});
    for (const BallotPower& bp : shape) {
      fs.push_back({FactorKind::ballot_num, bp.n, k, bp.exp});
    }
    return fs;
  });
}

// ------------------------------------------------------------ descriptions

std::string qint_desc(long n) { return "[" + std::to_string(n) + "]"; }

std::string qbin_desc(long m, long k) {
  return "C(" + std::to_string(m) + "," + std::to_string(k) + ")";
}

}  // namespace

// ------------------------------------------------------- chain sum family

LaurentPoly theorem1_sum(const SumSpec& spec) {
  check_tuple(spec.ns);
  check_r(spec.r);
  check_j_bound(spec.weight.j, static_cast<long>(spec.ns.size()),
                spec.allow_large_j);
  const std::vector<int>& ns = spec.ns;
  const int m = static_cast<int>(ns.size());
  const long rate = epsilon_rate(spec.weight.kind, spec.r);
  return weighted_sum(ns[0], spec.weight, rate, [&](int k) {
    std::vector<Factor> fs;
    fs.reserve(m + 1);
    fs.push_back({FactorKind::integer, 2L * k + 1, 0, 2 * spec.r + 1});
    for (int i = 0; i < m; ++i) {
      const long a = ns[i];
      const long b = ns[(i + 1) % m];
      fs.push_back({FactorKind::binomial, a + b + 1, a - k, 1});
    }
    return fs;
  });
}

Modulus theorem1_modulus(const SumSpec& spec) {
  check_tuple(spec.ns);
  const long n1 = spec.ns.front();
  const long nm = spec.ns.back();
  CycSignature sig =
      q_integer_signature(static_cast<int>(n1 + nm + 1)) *
      qbinomial_signature(static_cast<int>(n1 + nm), static_cast<int>(n1));
  return Modulus::factored(
      std::move(sig), qint_desc(n1 + nm + 1) + "·" + qbin_desc(n1 + nm, n1));
}

LaurentPoly theorem2_sum(const SumSpec& spec) {
  check_tuple(spec.ns);
  check_r(spec.r);
  check_j_bound(spec.weight.j, static_cast<long>(spec.ns.size()),
                spec.allow_large_j);
  const std::vector<int>& ns = spec.ns;
  const int m = static_cast<int>(ns.size());
  const long rate = kernel2_rate(spec.weight.kind, spec.r);
  return weighted_sum(ns[0], spec.weight, rate, [&](int k) {
    std::vector<Factor> fs;
    fs.reserve(m + 3);
    fs.push_back({FactorKind::integer, 2L * k + 1, 0, 1});
    if (spec.r > 0) {
      fs.push_back({FactorKind::integer, k, 0, spec.r});
      fs.push_back({FactorKind::integer, k + 1L, 0, spec.r});
    }
    for (int i = 0; i < m; ++i) {
      const long a = ns[i];
      const long b = ns[(i + 1) % m];
      fs.push_back({FactorKind::binomial, a + b + 1, a - k, 1});
    }
    return fs;
  });
}

Modulus theorem2_modulus(const SumSpec& spec) {
  check_tuple(spec.ns);
  check_r(spec.r);
  const int n1 = spec.ns.front();
  const int nm = spec.ns.back();
  const int r = spec.r;
  const int first_exp = std::min(1, r);
  const int last_exp = spec.weight.kind == Sign::plus
                           ? std::min(1, r * (r - 1) / 2)
                           : std::min(1, r);
  CycSignature sig = q_integer_signature(n1 + nm + 1) *
                     qbinomial_signature(n1 + nm, n1) *
                     q_integer_signature(n1).pow(first_exp) *
                     q_integer_signature(nm).pow(last_exp);
  std::string desc = qint_desc(n1 + nm + 1) + "·" + qbin_desc(n1 + nm, n1);
  if (first_exp > 0) desc += "·" + qint_desc(n1);
  if (last_exp > 0) desc += "·" + qint_desc(nm);
  return Modulus::factored(std::move(sig), std::move(desc));
}

// ---------------------------------------------------- ballot power family

LaurentPoly theorem3_sum(int n, int s, int r, WeightVariant weight,
                         bool allow_large_j) {
  require_positive(n, "n");
  require_positive(s, "s");
  check_r(r);
  require_odd(static_cast<long>(r) + s, "r + s must be odd");
  check_j_bound(weight.j, s, allow_large_j);
  return ballot_power_sum(n, r, weight, tau_rate(weight.kind, r), {{n, s}});
}

Modulus theorem3_modulus(int n) {
  require_positive(n, "n");
  return Modulus::factored(qbinomial_signature(2 * n, n), qbin_desc(2 * n, n));
}

LaurentPoly theorem4_sum(int m, int n, int s, int t, int r,
                         WeightVariant weight, bool allow_large_j) {
  require_positive(m, "m");
  require_positive(n, "n");
  require_positive(s, "s");
  require_positive(t, "t");
  check_r(r);
  require_odd(static_cast<long>(r) + s + t, "r + s + t must be odd");
  check_j_bound(weight.j, static_cast<long>(s) + t, allow_large_j);
  // ballot factors vanish past min(m, n), so the sum truncates there
  LaurentPoly inner = ballot_power_sum(std::min(m, n), r, weight,
                                       tau_rate(weight.kind, r),
                                       {{m, s}, {n, t}});
  return q_integer(m + n + 1) * inner;
}

Modulus theorem4_modulus(int m, int n) {
  require_positive(m, "m");
  require_positive(n, "n");
  return Modulus::factored(
      super_catalan_signature(m, n),
      "SC(" + std::to_string(m) + "," + std::to_string(n) + ")");
}

// --------------------------------------------- factorial-prefactored form

namespace {

struct ClearedSum {
  LaurentPoly numerator;  // weighted sum times the prefactor's numerator
  CycSignature down;      // the prefactor's denominator
};

ClearedSum theorem62_cleared(const SumSpec& spec, const std::vector<int>& a) {
  check_tuple(spec.ns);
  check_r(spec.r);
  check_j_bound(spec.weight.j, static_cast<long>(spec.ns.size()),
                spec.allow_large_j);
  const std::vector<int>& ns = spec.ns;
  const int m = static_cast<int>(ns.size());
  std::vector<int> exps = a.empty() ? std::vector<int>(m, 1) : a;
  if (static_cast<int>(exps.size()) != m) {
    throw constraint_violation("exponent tuple length must match the index tuple");
  }
  for (int e : exps) {
    if (e < 1) throw constraint_violation("exponents must be positive");
  }

  const long rate = epsilon_rate(spec.weight.kind, spec.r);
  const int kmax = *std::min_element(ns.begin(), ns.end());
  LaurentPoly inner = weighted_sum(kmax, spec.weight, rate, [&](int k) {
    std::vector<Factor> fs;
    fs.reserve(m + 1);
    fs.push_back({FactorKind::integer, 2L * k + 1, 0, 2 * spec.r + 1});
    for (int i = 0; i < m; ++i) {
      fs.push_back({FactorKind::binomial, 2L * ns[i] + 1,
                    static_cast<long>(ns[i]) - k, exps[i]});
    }
    return fs;
  });

  // prefactor [n_1]! prod_i [n_i+n_{i+1}+1]!/[2n_i+1]!, with n_{m+1} = -1
  CycSignature pre = q_factorial_signature(ns[0]);
  for (int i = 0; i < m; ++i) {
    const int next = i + 1 < m ? ns[i + 1] : -1;
    pre *= q_factorial_signature(ns[i] + next + 1);
    pre /= q_factorial_signature(2 * ns[i] + 1);
  }
  assert(pre.unit_exp == 0 && pre.unit_sign == 1);
  CycSignature up, down;
  for (const auto& [d, e] : pre.exponents) {
    if (e > 0) {
      up.exponents.emplace(d, e);
    } else {
      down.exponents.emplace(d, -e);
    }
  }
  return {inner * expand_signature(up), std::move(down)};
}

}  // namespace

LaurentPoly theorem62_expression(const SumSpec& spec,
                                 const std::vector<int>& a) {
  ClearedSum cleared = theorem62_cleared(spec, a);
  // an inexact division here would refute the claim; not_divisible escapes
  return exact_div(cleared.numerator, expand_signature(cleared.down));
}

FamilyParts theorem62_parts(const SumSpec& spec, const std::vector<int>& a) {
  ClearedSum cleared = theorem62_cleared(spec, a);
  std::string desc = render_signature(cleared.down);
  return {Modulus::factored(std::move(cleared.down), std::move(desc)),
          std::move(cleared.numerator)};
}

// ------------------------------------------------- Pochhammer lemma suite

namespace {

// variant weight exponent and sign at index k; `extra` subtracts the
// power-sum rate 2rk (zero in the plain lemma).
std::pair<long, int> lemma_weight(int variant, long k, long extra) {
  switch (variant) {
    case 1:
      return {-k - extra, 1};
    case 2:
      return {k * k - extra, 1};
    case 3:
      return {k * (k - 1) / 2 - extra, (k & 1L) ? -1 : 1};
    case 4:
      return {(3 * k * k + k) / 2 - extra, (k & 1L) ? -1 : 1};
    default:
      throw argument_out_of_range("variant must be in 1..4");
  }
}

std::vector<Factor> lemma_factors(int n, int k, int s, int power) {
  return {
      {FactorKind::integer, 2L * k + 1, 0, power},
      {FactorKind::binomial, 2L * n + 1, static_cast<long>(n) - k, 1},
      {FactorKind::pochhammer, static_cast<long>(-k), s, 1},
      {FactorKind::pochhammer, static_cast<long>(k) + 1, s, 1},
  };
}

}  // namespace

IdentityCheck lemma21_check(int n, int s, int variant) {
  require_positive(n, "n");
  if (s < 0) throw negative_argument("s must be nonnegative");
  IdentityCheck out;
  for (int k = 0; k <= n; ++k) {
    const LaurentPoly& prod = summand_product(lemma_factors(n, k, s, 1));
    auto [e, sg] = lemma_weight(variant, k, 0);
    if (prod.is_zero()) continue;
    LaurentPoly term = prod.shifted(e);
    if (sg < 0) {
      out.lhs -= term;
    } else {
      out.lhs += term;
    }
  }
  const LaurentPoly core =
      q_integer(2 * n + 1) * q_binomial(2 * n, n) * q_binomial(n, s);
  switch (variant) {
    case 1:
    case 2: {
      const long e = static_cast<long>(s) * (s - 1) / 2 -
                     (variant == 1 ? static_cast<long>(s) * n + n : 0);
      LaurentPoly rhs = (core * pochhammer_pow(1, s, 2)).shifted(e);
      out.rhs = (s & 1) ? -rhs : rhs;
      break;
    }
    case 3:
      // zero off the diagonal; at s = n the x -> 1 limit of the shifted
      // generalization survives as q^{-n} [2n+1] [2n over n] (q;q)_n^2
      if (s == n) {
        out.rhs = (core * pochhammer_pow(1, n, 2)).shifted(-n);
      }
      break;
    case 4:
      out.rhs = (core * q_pochhammer(1, n) * q_pochhammer(1, s))
                    .shifted(static_cast<long>(s) * s);
      break;
    default:
      throw argument_out_of_range("variant must be in 1..4");
  }
  out.equal = out.lhs == out.rhs;
  return out;
}

RemarkCheck remark_x_identity_check(int n, int s, int a) {
  require_positive(n, "n");
  if (s < n) throw constraint_violation("s >= n is required");
  LaurentPoly lhs;
  for (int k = 0; k <= n; ++k) {
    LaurentPoly term = q_integer(2 * k + 1) * q_binomial(2 * n + 1, n - k) *
                       q_pochhammer(static_cast<long>(a) - k, s) *
                       q_pochhammer(static_cast<long>(a) + k + 1, s);
    term = term.shifted(static_cast<long>(k) * (k - 1) / 2);
    if (k & 1) {
      lhs -= term;
    } else {
      lhs += term;
    }
  }
  const LaurentPoly clearing = q_pochhammer(a, n + 1);
  lhs *= clearing;
  LaurentPoly rhs = q_integer(2 * n + 1) * q_binomial(2 * n, n) *
                    q_binomial(s, n) * q_pochhammer(a, s - n) *
                    q_pochhammer(a, s + 1) * pochhammer_pow(1, n, 2);
  rhs = rhs.shifted(static_cast<long>(a) * n - n);
  return {lhs == rhs, clearing.is_zero()};
}

LaurentPoly theorem22_sum(int n, int r, int s, int variant) {
  require_positive(n, "n");
  check_r(r);
  if (s < 0) throw negative_argument("s must be nonnegative");
  LaurentPoly total;
  for (int k = 0; k <= n; ++k) {
    const LaurentPoly& prod = summand_product(lemma_factors(n, k, s, 2 * r + 1));
    auto [e, sg] = lemma_weight(variant, k, 2L * r * k);
    if (prod.is_zero()) continue;
    LaurentPoly term = prod.shifted(e);
    if (sg < 0) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

Modulus theorem22_modulus(int n) {
  require_positive(n, "n");
  return Modulus::factored(
      q_integer_signature(2 * n + 1) * qbinomial_signature(2 * n, n),
      qint_desc(2 * n + 1) + "·" + qbin_desc(2 * n, n));
}

// ------------------------------------------------------------- P/Q values

namespace {

LaurentPoly pq_direct(PQ which, int n, int j, int r) {
  const WeightVariant w{which == PQ::P ? Sign::plus : Sign::minus, j};
  const long rate = kernel2_rate(w.kind, r);
  return weighted_sum(n, w, rate, [&](int k) {
    std::vector<Factor> fs;
    fs.reserve(4);
    fs.push_back({FactorKind::integer, 2L * k + 1, 0, 1});
    if (r > 0) {
      fs.push_back({FactorKind::integer, k, 0, r});
      fs.push_back({FactorKind::integer, k + 1L, 0, r});
    }
    fs.push_back({FactorKind::binomial, 2L * n + 1, static_cast<long>(n) - k, 1});
    return fs;
  });
}

detail::MemoTable<std::tuple<int, int, int, int>, LaurentPoly>& pq_table() {
  static detail::MemoTable<std::tuple<int, int, int, int>, LaurentPoly> table;
  return table;
}

const LaurentPoly& pq_recurrence(PQ which, int n, int j, int r) {
  return pq_table().get_or_compute(
      std::tuple<int, int, int, int>{static_cast<int>(which), n, j, r},
      [&]() -> LaurentPoly {
        if (r == 0 || n == 0) return pq_direct(which, n, j, r);
        const LaurentPoly same = pq_recurrence(which, n, j, r - 1);
        const LaurentPoly prev = pq_recurrence(which, n - 1, j, r - 1);
        return (q_integer(n) * q_integer(n + 1) * same).shifted(-n) -
               (q_integer(2 * n) * q_integer(2 * n + 1) * prev).shifted(-n);
      });
}

}  // namespace

LaurentPoly pq_value(PQ which, int n, int j, int r, PQMethod method) {
  if (n < 0) throw negative_argument("n must be nonnegative");
  if (j != 0 && j != 1) throw argument_out_of_range("j must be 0 or 1");
  check_r(r);
  if (method == PQMethod::direct) return pq_direct(which, n, j, r);
  return pq_recurrence(which, n, j, r);
}

// ---------------------------------------------------- rational S/T layer

namespace {

// bare kernel sum; tail indices may be zero
LaurentPoly st_kernel_sum(Sign kind, const std::vector<int>& ns, int j,
                          int r) {
  for (int n : ns) {
    if (n < 0) throw negative_argument("indices must be nonnegative");
  }
  if (j < 0) throw negative_argument("j must be nonnegative");
  const WeightVariant w{kind, j};
  const int m = static_cast<int>(ns.size());
  const long rate = kernel2_rate(kind, r);
  return weighted_sum(ns[0], w, rate, [&](int k) {
    std::vector<Factor> fs;
    fs.reserve(m + 3);
    fs.push_back({FactorKind::integer, 2L * k + 1, 0, 1});
    if (r > 0) {
      fs.push_back({FactorKind::integer, k, 0, r});
      fs.push_back({FactorKind::integer, k + 1L, 0, r});
    }
    for (int i = 0; i < m; ++i) {
      const long a = ns[i];
      const long b = ns[(i + 1) % m];
      fs.push_back({FactorKind::binomial, a + b + 1, a - k, 1});
    }
    return fs;
  });
}

struct Frac {
  LaurentPoly num;
  LaurentPoly den;
};

Frac st_value(ST which, const std::vector<int>& ns, int j, int r) {
  const Sign kind = which == ST::S ? Sign::plus : Sign::minus;
  const int n1 = ns.front();
  const int nm = ns.back();
  Frac f;
  f.num = q_pochhammer(1, n1) * q_pochhammer(1, nm) *
          st_kernel_sum(kind, ns, j, r);
  f.den = q_pochhammer(1, n1 + nm + 1);
  return f;
}

}  // namespace

bool st_recurrence_check(ST which, const std::vector<int>& ns, int j, int r,
                         STKernel kernel) {
  if (ns.size() < 2) {
    throw constraint_violation("the recurrence needs at least two indices");
  }
  check_tuple(ns);
  check_r(r);
  if (j < 0) throw negative_argument("j must be nonnegative");
  if (kernel == STKernel::standard && j < 1) {
    throw constraint_violation("the standard kernel lowers j and needs j >= 1");
  }
  const Frac lhs = st_value(which, ns, j, r);
  const int n1 = ns[0];
  const int n2 = ns[1];
  LaurentPoly rnum;
  LaurentPoly rden(1);
  for (int l = 0; l <= n1; ++l) {
    const long ke = kernel == STKernel::standard
                        ? static_cast<long>(l) * l + l
                        : static_cast<long>(n1 - l) * (n2 - l);
    const int jj = kernel == STKernel::standard ? j - 1 : j;
    std::vector<int> tail;
    LaurentPoly coef;
    if (ns.size() >= 3) {
      tail.push_back(l);
      tail.insert(tail.end(), ns.begin() + 2, ns.end());
      coef = q_binomial(n1, l) * q_binomial(n2 + ns[2] + 1, n2 - l);
    } else {
      tail.push_back(l);
      coef = q_binomial(n1, l) * q_binomial(n2, l);
    }
    if (coef.is_zero()) continue;
    const Frac t = st_value(which, tail, jj, r);
    // cross-multiplied accumulation; no reduction happens anywhere
    rnum = rnum * t.den + coef.shifted(ke) * t.num * rden;
    rden *= t.den;
  }
  return lhs.num * rden == rnum * lhs.den;
}

bool qinv_symmetry_check(ST which, const std::vector<int>& ns, int r) {
  check_tuple(ns);
  check_r(r);
  const int m = static_cast<int>(ns.size());
  const Sign kind = which == ST::S ? Sign::plus : Sign::minus;
  const int jinv = which == ST::S ? m : m - 1;
  const LaurentPoly u0 = st_kernel_sum(kind, ns, 0, r);
  const LaurentPoly uinv = st_kernel_sum(kind, ns, jinv, r);
  long n_pairs = 0;
  long n_total = 0;
  for (int i = 0; i < m; ++i) {
    n_pairs += static_cast<long>(ns[i]) * ns[(i + 1) % m];
    n_total += ns[i];
  }
  return u0 == subst_qinv(uinv).shifted(n_pairs + n_total - r);
}

// ----------------------------------------------------- classical identities

bool qbt_check(int N, int a) {
  if (N < 0) throw negative_argument("N must be nonnegative");
  const LaurentPoly lhs = q_pochhammer(a, N);
  LaurentPoly rhs;
  for (int k = 0; k <= N; ++k) {
    LaurentPoly term = q_binomial(N, k).shifted(
        static_cast<long>(k) * (k - 1) / 2 + static_cast<long>(a) * k);
    if (k & 1) {
      rhs -= term;
    } else {
      rhs += term;
    }
  }
  return lhs == rhs;
}

bool chu_check(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw negative_argument("indices must be nonnegative");
  for (int k = 0; k <= n1; ++k) {
    const LaurentPoly lhs = q_binomial(n1 + n2 + 1, static_cast<long>(n1) - k);
    LaurentPoly rhs;
    for (int s = 0; s <= n1 - k; ++s) {
      rhs += (q_binomial(n1 + k + 1, static_cast<long>(s) + 2 * k + 1) *
              q_binomial(static_cast<long>(n2) - k, s))
                 .shifted(static_cast<long>(s) * (s + 2 * k + 1));
    }
    if (lhs != rhs) return false;
  }
  return true;
}

bool dixon_full_check(int l, int m, int n) {
  if (l < 0 || m < 0 || n < 0) {
    throw negative_argument("indices must be nonnegative");
  }
  LaurentPoly lhs;
  for (int k = -n; k <= n; ++k) {
    LaurentPoly term =
        q_binomial(l + m, static_cast<long>(l) + k) *
        q_binomial(m + n, static_cast<long>(m) + k) *
        q_binomial(n + l, static_cast<long>(n) + k);
    term = term.shifted((3L * k * k + k) / 2);
    if (k & 1) {
      lhs -= term;
    } else {
      lhs += term;
    }
  }
  const LaurentPoly rhs = q_binomial(l + m, l) * q_binomial(l + m + n, n);
  return lhs == rhs;
}

bool dixon_limit_check(int n) {
  if (n < 0) throw negative_argument("n must be nonnegative");
  LaurentPoly lhs;
  for (int k = -n; k <= n; ++k) {
    LaurentPoly term = q_binomial(2 * n, static_cast<long>(n) - k)
                           .shifted((3L * k * k + k) / 2);
    if (k & 1) {
      lhs -= term;
    } else {
      lhs += term;
    }
  }
  const LaurentPoly rhs = q_binomial(2 * n, n) * q_pochhammer(1, n);
  return lhs == rhs;
}

// ------------------------------------------------------------- catalogues

namespace {

int get_param(const ParamMap& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw argument_out_of_range("missing parameter " + name);
  }
  return it->second;
}

std::vector<int> get_tuple(const ParamMap& params, const std::string& stem,
                           int m) {
  std::vector<int> out;
  out.reserve(m);
  for (int i = 1; i <= m; ++i) {
    out.push_back(get_param(params, stem + std::to_string(i)));
  }
  return out;
}

Modulus catalan_style_modulus(int top, int bottom, int divisor) {
  return Modulus::factored(
      qbinomial_signature(top, bottom) / q_integer_signature(divisor),
      qbin_desc(top, bottom) + "/" + qint_desc(divisor));
}

}  // namespace

FamilyParts corollary_parts(const std::string& id, const ParamMap& params,
                            WeightVariant weight, bool allow_large_j) {
  LaurentPoly sum;
  Modulus mod = Modulus::expanded(LaurentPoly(1));
  if (id == "C63a" || id == "C63b") {
    const int n = get_param(params, "n");
    const int r = get_param(params, "r");
    const int s = get_param(params, "s");
    const int t = get_param(params, "t");
    require_positive(n, "n");
    require_positive(s, "s");
    require_positive(t, "t");
    check_r(r);
    require_odd(static_cast<long>(r) + s + t, "r + s + t must be odd");
    check_j_bound(weight.j, static_cast<long>(s) + t, allow_large_j);
    const int top = id == "C63a" ? n + 1 : 2 * n;
    sum = ballot_power_sum(n, r, weight, tau_rate(weight.kind, r),
                           {{top, s}, {n, t}});
    mod = id == "C63a" ? catalan_style_modulus(2 * n, n, n + 1)
                       : catalan_style_modulus(4 * n, n, 3 * n + 1);
  } else if (id == "C71") {
    const int a = get_param(params, "a");
    const int m = get_param(params, "m");
    const int n = get_param(params, "n");
    const int r = get_param(params, "r");
    require_positive(a, "a");
    require_positive(m, "m");
    require_positive(n, "n");
    check_r(r);
    check_j_bound(weight.j, 2L * a, allow_large_j);
    sum = epsilon_power_sum(m, r, weight,
                            {{static_cast<long>(m) + n + 1, m, a},
                             {static_cast<long>(m) + n + 1, n, a}});
    mod = Modulus::factored(
        q_integer_signature(m + n + 1) * qbinomial_signature(m + n, m),
        qint_desc(m + n + 1) + "·" + qbin_desc(m + n, m));
  } else if (id == "C72") {
    const int a = get_param(params, "a");
    const int l = get_param(params, "l");
    const int m = get_param(params, "m");
    const int n = get_param(params, "n");
    const int r = get_param(params, "r");
    require_positive(a, "a");
    require_positive(l, "l");
    require_positive(m, "m");
    require_positive(n, "n");
    check_r(r);
    check_j_bound(weight.j, 3L * a, allow_large_j);
    sum = epsilon_power_sum(m, r, weight,
                            {{static_cast<long>(l) + m + 1, l, a},
                             {static_cast<long>(m) + n + 1, m, a},
                             {static_cast<long>(n) + l + 1, n, a}});
    mod = Modulus::factored(
        q_integer_signature(m + n + 1) * qbinomial_signature(m + n, m),
        qint_desc(m + n + 1) + "·" + qbin_desc(m + n, m));
  } else if (id == "C73") {
    const int n = get_param(params, "n");
    const int a = get_param(params, "a");
    const int b = get_param(params, "b");
    const int c = get_param(params, "c");
    const int r = get_param(params, "r");
    require_positive(n, "n");
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(c, "c");
    check_r(r);
    check_j_bound(weight.j, static_cast<long>(a) + b + c, allow_large_j);
    sum = epsilon_power_sum(n, r, weight,
                            {{2L * n + 1, n, a},
                             {2L * n + 3, static_cast<long>(n) + 1, b},
                             {2L * n + 5, static_cast<long>(n) + 2, c}});
    mod = Modulus::factored(
        q_integer_signature(2 * n + 5) * qbinomial_signature(2 * n + 1, n),
        qint_desc(2 * n + 5) + "·" + qbin_desc(2 * n + 1, n));
  } else if (id == "C74a" || id == "C74b" || id == "C75a" || id == "C75b") {
    const int n = get_param(params, "n");
    const int a = get_param(params, "a");
    const int b = get_param(params, "b");
    const int c = get_param(params, "c");
    const int r = get_param(params, "r");
    require_positive(n, "n");
    require_positive(a, "a");
    require_positive(b, "b");
    require_positive(c, "c");
    check_r(r);
    check_j_bound(weight.j, static_cast<long>(a) + b + c, allow_large_j);
    if (id == "C74a" || id == "C74b") {
      sum = epsilon_power_sum(n, r, weight,
                              {{6L * n + 1, 3L * n, a},
                               {4L * n + 1, 2L * n, b},
                               {2L * n + 1, n, c}});
      const int bottom = id == "C74a" ? n : 3 * n;
      mod = Modulus::factored(
          q_integer_signature(2 * n + 1) *
              qbinomial_signature(6 * n + 1, bottom),
          qint_desc(2 * n + 1) + "·" + qbin_desc(6 * n + 1, bottom));
    } else if (id == "C75a") {
      sum = q_integer(3 * n + 1) *
            epsilon_power_sum(n, r, weight,
                              {{8L * n + 1, 4L * n, a},
                               {4L * n + 1, 2L * n, b},
                               {2L * n + 1, n, c}});
      mod = Modulus::factored(
          q_integer_signature(2 * n + 1) * q_integer_signature(4 * n + 1) *
              qbinomial_signature(8 * n + 1, 3 * n),
          qint_desc(2 * n + 1) + "·" + qint_desc(4 * n + 1) + "·" +
              qbin_desc(8 * n + 1, 3 * n));
    } else {
      // the k range stops at n by definition even though these binomials
      // survive past it
      sum = epsilon_power_sum(n, r, weight,
                              {{8L * n + 1, 4L * n, a},
                               {6L * n + 1, 3L * n, b},
                               {4L * n + 1, 2L * n, c}});
      mod = Modulus::factored(
          q_integer_signature(4 * n + 1) *
              qbinomial_signature(8 * n + 1, 3 * n),
          qint_desc(4 * n + 1) + "·" + qbin_desc(8 * n + 1, 3 * n));
    }
  } else if (id == "C76") {
    const int m = get_param(params, "m");
    const int n = get_param(params, "n");
    const int r = get_param(params, "r");
    if (m < 2) throw constraint_violation("m >= 2 is required");
    require_positive(n, "n");
    check_r(r);
    const std::vector<int> exps = get_tuple(params, "a", m);
    long total = 0;
    for (int e : exps) {
      require_positive(e, "a_i");
      total += e;
    }
    check_j_bound(weight.j, total, allow_large_j);
    std::vector<BinPower> shape;
    shape.reserve(m);
    for (int i = 1; i <= m; ++i) {
      shape.push_back({2L * n + 2 * i - 1,
                       static_cast<long>(n) + i - 1, exps[i - 1]});
    }
    sum = epsilon_power_sum(n, r, weight, shape);
    mod = Modulus::factored(
        q_integer_signature(2 * n + 2 * m - 1) *
            qbinomial_signature(2 * n + 1, n),
        qint_desc(2 * n + 2 * m - 1) + "·" + qbin_desc(2 * n + 1, n));
  } else {
    throw argument_out_of_range("unknown corollary id: " + id);
  }
  return {std::move(mod), std::move(sum)};
}

Verdict corollary_check(const std::string& id, const ParamMap& params,
                        WeightVariant weight, Strategy strategy, bool recheck,
                        bool allow_large_j) {
  FamilyParts parts = corollary_parts(id, params, weight, allow_large_j);
  return divides(parts.modulus, parts.sum, strategy, recheck);
}

FamilyParts conjecture_parts(const std::string& id, const ParamMap& params,
                             WeightVariant weight) {
  if (weight.j < 0) throw negative_argument("j must be nonnegative");
  LaurentPoly sum;
  Modulus mod = Modulus::expanded(LaurentPoly(1));
  if (id == "Conj246n_1" || id == "Conj246n_2" || id == "Conj246n_3" ||
      id == "Conj246n_4") {
    const int n = get_param(params, "n");
    const int r = get_param(params, "r");
    const int s = get_param(params, "s");
    const int t = get_param(params, "t");
    require_positive(n, "n");
    require_positive(r, "r");
    require_positive(s, "s");
    require_positive(t, "t");
    require_odd(static_cast<long>(r) + s + t, "r + s + t must be odd");
    const long rate = eta_rate(weight.kind);
    if (id == "Conj246n_1" || id == "Conj246n_2") {
      sum = q_integer(4 * n + 1) *
            ballot_power_sum(n, 0, weight, rate,
                             {{3 * n, r}, {2 * n, s}, {n, t}});
      mod = id == "Conj246n_1"
                ? catalan_style_modulus(6 * n + 1, n, 6 * n + 1)
                : catalan_style_modulus(6 * n + 1, 3 * n, 6 * n + 1);
    } else if (id == "Conj246n_3") {
      sum = q_integer(8 * n + 1) *
            ballot_power_sum(n, 0, weight, rate,
                             {{4 * n, r}, {2 * n, s}, {n, t}});
      mod = Modulus::factored(qbinomial_signature(8 * n + 1, 3 * n),
                              qbin_desc(8 * n + 1, 3 * n));
    } else {
      sum = q_integer(6 * n + 1) * q_integer(8 * n + 1) *
            ballot_power_sum(n, 0, weight, rate,
                             {{4 * n, r}, {3 * n, s}, {2 * n, t}});
      mod = Modulus::factored(qbinomial_signature(8 * n + 1, 3 * n),
                              qbin_desc(8 * n + 1, 3 * n));
    }
  } else if (id == "ConjFinal") {
    const int m = get_param(params, "m");
    const int n = get_param(params, "n");
    require_positive(m, "m");
    require_positive(n, "n");
    const std::vector<int> exps = get_tuple(params, "r", m);
    long total = 0;
    for (int e : exps) {
      require_positive(e, "r_i");
      total += e;
    }
    require_odd(total, "r_1 + ... + r_m must be odd");
    std::vector<BallotPower> shape;
    shape.reserve(m);
    for (int i = 1; i <= m; ++i) shape.push_back({n + i - 1, exps[i - 1]});
    sum = ballot_power_sum(n, 0, weight, eta_rate(weight.kind), shape);
    mod = catalan_style_modulus(2 * n, n, n + 1);
  } else if (id == "ConjAllJ") {
    const int base = get_param(params, "base");
    const int m = get_param(params, "m");
    SumSpec spec;
    spec.ns = get_tuple(params, "n", m);
    spec.r = get_param(params, "r");
    spec.weight = weight;
    spec.allow_large_j = true;
    if (base == 1) {
      sum = theorem1_sum(spec);
      mod = theorem1_modulus(spec);
    } else if (base == 2) {
      sum = theorem2_sum(spec);
      mod = theorem2_modulus(spec);
    } else {
      throw argument_out_of_range("base must be 1 or 2");
    }
  } else {
    throw argument_out_of_range("unknown conjecture id: " + id);
  }
  return {std::move(mod), std::move(sum)};
}

Verdict conjecture_check(const std::string& id, const ParamMap& params,
                         WeightVariant weight, Strategy strategy,
                         bool recheck) {
  FamilyParts parts = conjecture_parts(id, params, weight);
  return divides(parts.modulus, parts.sum, strategy, recheck);
}

void clear_families_caches() {
  poch_pow_table().clear();
  summand_table().clear();
  pq_table().clear();
}

}  // namespace qcong
