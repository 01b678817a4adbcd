#include "qcong/congruence.hpp"

#include <algorithm>
#include <utility>

namespace qcong {
namespace {

std::optional<std::pair<long, mpz_class>> low_term(const LaurentPoly& r) {
  if (r.is_zero()) return std::nullopt;
  return std::make_pair(r.min_exp(), r.trailing_coeff());
}

void fingerprint(const LaurentPoly& quo, Verdict& v) {
  v.quotient_min_exp = quo.min_exp();
  v.quotient_max_exp = quo.max_exp();
  const auto& block = quo.coeff_block();
  std::size_t take = std::min<std::size_t>(3, block.size());
  v.sample_low.assign(block.begin(), block.begin() + take);
  v.sample_high.assign(block.end() - take, block.end());
  v.quotient_hash = content_hash(quo);
}

// One long division by the expanded divisor.
bool run_expanded(const Modulus& d, const LaurentPoly& a, Verdict& v,
                  LaurentPoly& quo) {
  LaurentPoly rem;
  auto res = try_exact_div(a, d.value, &rem);
  if (!res) {
    v.remainder_low_term = low_term(rem);
    return false;
  }
  quo = std::move(*res);
  return true;
}

// Chain of divisions by Phi_d^{e_d}, biggest index first; the unit part of
// the signature can never obstruct and is applied to the quotient at the
// end. Falls back to the single division when no signature is stored.
bool run_factorwise(const Modulus& d, const LaurentPoly& a, Verdict& v,
                    LaurentPoly& quo) {
  if (!d.signature) return run_expanded(d, a, v, quo);
  const CycSignature& sig = *d.signature;
  LaurentPoly acc = a;
  for (auto it = sig.exponents.rbegin(); it != sig.exponents.rend(); ++it) {
    const auto& [idx, e] = *it;
    LaurentPoly rem;
    auto res = try_exact_div(
        acc, pow(cyclotomic(idx), static_cast<unsigned long>(e)), &rem);
    if (!res) {
      v.remainder_low_term = low_term(rem);
      return false;
    }
    acc = std::move(*res);
  }
  acc = acc.shifted(-sig.unit_exp);
  quo = sig.unit_sign < 0 ? -acc : std::move(acc);
  return true;
}

}  // namespace

Modulus Modulus::expanded(LaurentPoly value, std::string description) {
  if (value.is_zero()) throw zero_base("modulus must be nonzero");
  Modulus m;
  m.description = std::move(description);
  m.value = std::move(value);
  return m;
}

Modulus Modulus::factored(CycSignature sig, std::string description) {
  if (!sig.all_nonnegative())
    throw negative_exponent("factored modulus wants exponents >= 0");
  Modulus m;
  m.description = std::move(description);
  m.value = expand_signature(sig);
  m.signature = std::move(sig);
  return m;
}

Verdict divides(const Modulus& d, const LaurentPoly& a, Strategy strategy,
                bool recheck) {
  auto start = std::chrono::steady_clock::now();
  Verdict v;
  v.strategy = strategy;

  LaurentPoly quo;
  switch (strategy) {
    case Strategy::expanded:
      v.holds = run_expanded(d, a, v, quo);
      break;
    case Strategy::factorwise:
      v.holds = run_factorwise(d, a, v, quo);
      break;
    case Strategy::both: {
      LaurentPoly quo2;
      Verdict v2;
      v.holds = run_expanded(d, a, v, quo);
      bool holds2 = run_factorwise(d, a, v2, quo2);
      if (v.holds != holds2 || (v.holds && !(quo == quo2)))
        throw constraint_violation(
            "expanded and factorwise strategies disagree on " + d.description);
      break;
    }
  }

  if (v.holds) {
    fingerprint(quo, v);
    if (recheck && !(quo * d.value == a))
      throw constraint_violation("quotient re-multiplication mismatch on " +
                                 d.description);
  }
  v.elapsed = std::chrono::steady_clock::now() - start;
  return v;
}

LaurentPoly quotient(const Modulus& d, const LaurentPoly& a) {
  return exact_div(a, d.value);
}

}  // namespace qcong
