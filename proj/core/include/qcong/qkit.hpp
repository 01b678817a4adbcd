#pragma once

// Constructors for the q-combinatorial building blocks: q-integers and
// factorials, Gaussian binomials, q-Pochhammer symbols, q-ballot numbers,
// q-super-Catalan polynomials and the cyclic binomial product. Quantities
// with two independent defining routes keep both routes callable so tests
// can cross-check them.

#include <vector>

#include "qcong/laurent.hpp"

namespace qcong {

LaurentPoly q_integer(int n);    // [n] = 1 + q + ... + q^{n-1}, [0] = 0
LaurentPoly q_factorial(int n);  // [n]! = [n][n-1]...[1], [0]! = 1

// Gaussian binomial, defined for every integer pair: zero when k < 0 or
// k > m >= 0, and the untruncated product-formula value (a q-power unit
// times a nonnegative binomial) when m < 0 <= k.
LaurentPoly q_binomial(long m, long k);

// Independent route by the addition recurrence; must agree with q_binomial
// on 0 <= k <= m. Unmemoized on purpose.
LaurentPoly q_binomial_pascal(int m, int k);

// (q^a; q)_s = (1 - q^a)(1 - q^{a+1})...(1 - q^{a+s-1}); zero exactly when
// -a lands in {0, ..., s-1}.
LaurentPoly q_pochhammer(long a, int s);

enum class BallotForm { difference, quotient };

// q-ballot number A_{n,k}. The difference form subtracts two binomials in
// row 2n; the quotient form divides q^{n-k} [2k+1] [2n+1 over n-k] by
// [2n+1] exactly. The two must coincide.
LaurentPoly ballot(int n, int k, BallotForm form = BallotForm::difference);

// [2m]! [2n]! / ([m+n]! [m]! [n]!), expanded from its cyclotomic signature.
LaurentPoly super_catalan(int m, int n);
// The same value by direct exact division of factorials.
LaurentPoly super_catalan_quotient(int m, int n);

// prod_i [a_i + a_{i+1} + 1 over a_i - k] with wraparound a_{l+1} = a_1.
LaurentPoly product_C(const std::vector<int>& a_list, int k);

// Memoized powers for the sum builders. References stay valid until the
// caches are cleared.
const LaurentPoly& q_integer_pow(int n, int e);
const LaurentPoly& q_binomial_pow(long m, long k, int e);
const LaurentPoly& ballot_pow(int n, int k, int e);

void clear_qkit_caches();

}  // namespace qcong
