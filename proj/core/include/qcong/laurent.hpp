#pragma once

// Dense Laurent polynomials in one variable q with arbitrary-precision
// integer coefficients. A value is a coefficient block starting at min_exp;
// the canonical form keeps the first and last stored coefficient nonzero,
// and the zero polynomial is the empty block with min_exp = 0.
// Values are immutable in spirit: every operation returns a fresh value.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcong/errors.hpp"

namespace qcong {

class LaurentPoly {
 public:
  LaurentPoly() = default;  // zero
  LaurentPoly(long constant) { *this = monomial(mpz_class(constant), 0); }
  LaurentPoly(const mpz_class& constant) { *this = monomial(constant, 0); }

  static LaurentPoly monomial(mpz_class c, long exp);
  static LaurentPoly q() { return monomial(1, 1); }
  // Takes ownership of the block and canonicalizes (trims zero fringes).
  static LaurentPoly from_coeffs(long min_exp, std::vector<mpz_class> coeffs);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept;
  bool is_monomial() const noexcept { return coeffs_.size() == 1; }

  long min_exp() const noexcept { return min_exp_; }
  // One past nothing for zero: max_exp() == min_exp() - 1.
  long max_exp() const noexcept {
    return min_exp_ + static_cast<long>(coeffs_.size()) - 1;
  }
  std::size_t term_count() const noexcept;
  const std::vector<mpz_class>& coeff_block() const noexcept { return coeffs_; }
  // Coefficient of q^exp; zero outside the stored block.
  const mpz_class& coeff(long exp) const noexcept;
  const mpz_class& leading_coeff() const;   // rejects zero
  const mpz_class& trailing_coeff() const;  // rejects zero

  LaurentPoly shifted(long exp) const;  // multiply by q^exp

  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);

  friend LaurentPoly operator-(const LaurentPoly& a);
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

 private:
  void canonicalize();

  long min_exp_ = 0;
  std::vector<mpz_class> coeffs_;
};

LaurentPoly pow(const LaurentPoly& base, unsigned long exp);

// Coefficient reversal q -> 1/q.  An involution.
LaurentPoly subst_qinv(const LaurentPoly& a);

// Raised when an exact quotient in Z[q,1/q] does not exist. remainder() is
// the full Euclidean remainder when the divisor's extreme coefficient is a
// unit (every divisor in this library), and the partial remainder at the
// failing step otherwise.
class not_divisible : public std::runtime_error {
 public:
  not_divisible(const std::string& what, LaurentPoly remainder);
  const LaurentPoly& remainder() const noexcept { return remainder_; }

 private:
  LaurentPoly remainder_;
};

// Exact division: returns q with a = q*d, or throws not_divisible.
// Division by zero is a domain error.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& d);
// Non-throwing form; on failure optionally reports the remainder.
std::optional<LaurentPoly> try_exact_div(const LaurentPoly& a,
                                         const LaurentPoly& d,
                                         LaurentPoly* remainder = nullptr);

// Exact rational evaluation. point == 0 is rejected (zero_base) when the
// value has negative exponents; otherwise it picks out the constant term.
mpq_class eval_at(const LaurentPoly& a, const mpq_class& point);

// Text form "2*q^-1 + 1 - q + 5*q^3": terms in ascending exponent,
// unit coefficients elided, exponents 0 and 1 written as "" and "q".
// render and parse round-trip exactly on canonical values.
std::string render(const LaurentPoly& a);
LaurentPoly parse_poly(std::string_view text);  // throws parse_error

// Order-sensitive 64-bit digest of (min_exp, coefficient block).
std::uint64_t content_hash(const LaurentPoly& a);

std::ostream& operator<<(std::ostream& os, const LaurentPoly& a);

}  // namespace qcong
