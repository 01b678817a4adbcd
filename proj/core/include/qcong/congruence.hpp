#pragma once

// Decides A = 0 modulo D in the Laurent ring. Two independent strategies:
// one long division by the expanded divisor, or a chain of divisions by the
// divisor's cyclotomic factors. Verdicts carry a quotient fingerprint small
// enough to persist, never the quotient itself.

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcong/cyclotomic.hpp"
#include "qcong/laurent.hpp"

namespace qcong {

// A divisor with a display name. Factored construction keeps the signature
// so divisibility can be tested one cyclotomic factor at a time.
struct Modulus {
  std::string description;
  std::optional<CycSignature> signature;
  LaurentPoly value;  // expanded divisor, never zero

  static Modulus expanded(LaurentPoly value, std::string description = "");
  static Modulus factored(CycSignature sig, std::string description = "");
};

enum class Strategy { expanded, factorwise, both };

struct Verdict {
  bool holds = false;
  Strategy strategy = Strategy::both;
  // quotient fingerprint: exponent span, up to three coefficients from each
  // end, order-sensitive digest
  long quotient_min_exp = 0;
  long quotient_max_exp = -1;
  std::vector<mpz_class> sample_low;
  std::vector<mpz_class> sample_high;
  std::uint64_t quotient_hash = 0;
  // lowest nonzero remainder term of the failing division
  std::optional<std::pair<long, mpz_class>> remainder_low_term;
  std::chrono::duration<double> elapsed{0};
};

// recheck re-multiplies the quotient by the divisor and verifies it
// reproduces the dividend on every positive verdict. `both` runs the two
// strategies and insists on identical outcomes.
Verdict divides(const Modulus& d, const LaurentPoly& a,
                Strategy strategy = Strategy::both, bool recheck = false);

// The exact quotient a / d; throws not_divisible.
LaurentPoly quotient(const Modulus& d, const LaurentPoly& a);

}  // namespace qcong
