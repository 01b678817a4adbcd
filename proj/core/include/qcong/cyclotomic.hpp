#pragma once

// Cyclotomic polynomials and factored ("signature") forms of the structured
// q-products this library works with: q-integers, q-factorials, Gaussian
// binomials and their ratios. A signature multiplies as exponent-wise
// addition, so gcds and divisibility of these products reduce to integer
// bookkeeping; expansion back to a Laurent polynomial is exact.

#include <map>
#include <string>
#include <vector>

#include "qcong/laurent.hpp"

namespace qcong {

// unit_sign * q^unit_exp * prod_d Phi_d^exponents[d]; zero exponents are
// never stored.
struct CycSignature {
  std::map<int, int> exponents;
  long unit_exp = 0;
  int unit_sign = 1;

  bool is_trivial() const noexcept {
    return exponents.empty() && unit_exp == 0 && unit_sign == 1;
  }
  bool all_nonnegative() const noexcept;
  int exponent_of(int d) const noexcept;

  CycSignature& operator*=(const CycSignature& rhs);
  CycSignature& operator/=(const CycSignature& rhs);
  CycSignature pow(int e) const;  // e >= 0

  friend CycSignature operator*(CycSignature lhs, const CycSignature& rhs) {
    lhs *= rhs;
    return lhs;
  }
  friend CycSignature operator/(CycSignature lhs, const CycSignature& rhs) {
    lhs /= rhs;
    return lhs;
  }
  friend bool operator==(const CycSignature& a,
                         const CycSignature& b) = default;
};

// Phi_d, monic over the integers, by recursive exact division of q^d - 1.
// Memoized; the returned reference stays valid for the process lifetime.
const LaurentPoly& cyclotomic(int d);

// [n] = prod over divisors d >= 2 of n; empty for n = 1. Rejects n < 1.
CycSignature q_integer_signature(int n);
// [n]! carries Phi_d to the power floor(n/d) for d in 2..n. The d = 1
// factors cancel against the (q-1) normalization exactly, so Phi_1 never
// appears in a factorial signature or ratio of them.
CycSignature q_factorial_signature(int n);
// Floor criterion: Phi_d divides the binomial exactly when the base-d
// addition of k and m-k carries. Every stored exponent is 1.
CycSignature qbinomial_signature(int m, int k);
// prod [n_i]! / prod [m_j]!; exponents may be negative.
CycSignature factorial_ratio_signature(const std::vector<int>& numer,
                                       const std::vector<int>& denom);
// [2m]! [2n]! / ([m+n]! [m]! [n]!)
CycSignature super_catalan_signature(int m, int n);

// Pointwise minimum of exponents; units are dropped. Both inputs must be
// polynomial (all exponents >= 0).
CycSignature signature_gcd(const CycSignature& a, const CycSignature& b);

// Multiplies the signature out. Rejects negative exponents; the Phi-product
// part is memoized across calls.
LaurentPoly expand_signature(const CycSignature& s);

// True when the super-Catalan signature for (m, n) shares no cyclotomic
// factor with [2m+1].
bool lemma61_check(int m, int n);

// "Φ3 · Φ4", exponents other than 1 rendered as "Φ2^3"; "1" when trivial.
std::string render_signature(const CycSignature& s);

void clear_cyclotomic_caches();

}  // namespace qcong
