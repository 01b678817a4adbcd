#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <thread>
#include <vector>

#include "qcong/qkit.hpp"
#include "test_util.hpp"

using namespace qcong;
using qtest::P;

namespace {

mpz_class int_binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

mpz_class int_factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace

TEST_CASE("q-integers") {
  CHECK(q_integer(0).is_zero());
  CHECK(q_integer(1) == LaurentPoly(1));
  CHECK(q_integer(3) == P("1 + q + q^2"));
  CHECK_THROWS_AS(q_integer(-1), negative_argument);
}

TEST_CASE("q-factorials") {
  CHECK(q_factorial(0) == LaurentPoly(1));
  CHECK(q_factorial(2) == P("1 + q"));
  CHECK(q_factorial(3) == P("1 + 2*q + 2*q^2 + q^3"));
  LaurentPoly direct(1);
  for (int i = 1; i <= 8; ++i) direct *= q_integer(i);
  CHECK(q_factorial(8) == direct);
  CHECK_THROWS_AS(q_factorial(-2), negative_argument);
}

TEST_CASE("Gaussian binomial basics") {
  CHECK(q_binomial(4, 2) == P("1 + q + 2*q^2 + q^3 + q^4"));
  for (int n = 0; n <= 8; ++n) CHECK(q_binomial(n, 0) == LaurentPoly(1));
  CHECK(q_binomial(2, 3).is_zero());
  CHECK(q_binomial(5, -1).is_zero());
  CHECK(q_binomial(0, 0) == LaurentPoly(1));
}

TEST_CASE("product formula agrees with the addition recurrence") {
  for (int m = 0; m <= 24; ++m)
    for (int k = 0; k <= m; ++k)
      CHECK(q_binomial(m, k) == q_binomial_pascal(m, k));
}

TEST_CASE("binomial symmetry and palindromicity") {
  for (int m = 0; m <= 16; ++m)
    for (int k = 0; k <= m; ++k) {
      CHECK(q_binomial(m, k) == q_binomial(m, m - k));
      CHECK(subst_qinv(q_binomial(m, k)) ==
            q_binomial(m, k).shifted(-static_cast<long>(k) * (m - k)));
    }
}

TEST_CASE("binomial row sums at q = 1") {
  for (int m = 0; m <= 20; ++m) {
    mpq_class total = 0;
    for (int k = 0; k <= m; ++k) total += eval_at(q_binomial(m, k), 1);
    mpz_class expected = mpz_class(1) << m;
    CHECK(total == mpq_class(expected));
  }
}

TEST_CASE("binomial with negative upper index") {
  // independent route: ratio of Pochhammer products, which is exact here
  for (long m = -6; m < 0; ++m)
    for (long k = 0; k <= 6; ++k) {
      LaurentPoly expected =
          exact_div(q_pochhammer(m - k + 1, static_cast<int>(k)),
                    q_pochhammer(1, static_cast<int>(k)));
      CHECK(q_binomial(m, k) == expected);
    }
  CHECK(q_binomial(-1, 0) == LaurentPoly(1));
  CHECK(q_binomial(-1, 2) == P("q^-3"));  // (-1)^2 q^{-2-1} [2 over 2]
  CHECK(q_binomial(-2, 1) == P("-q^-2 - q^-1"));  // -q^-2 (1 + q)
  CHECK(q_binomial(-3, -1).is_zero());
}

TEST_CASE("q-Pochhammer") {
  CHECK(q_pochhammer(1, 2) == P("1 - q") * P("1 - q^2"));
  CHECK(q_pochhammer(-1, 2).is_zero());
  CHECK(q_pochhammer(2, 1) == P("1 - q^2"));
  CHECK(q_pochhammer(5, 0) == LaurentPoly(1));
  for (long a = -5; a <= 5; ++a)
    for (int s = 0; s <= 5; ++s) {
      bool hits_zero = -a >= 0 && -a < s;
      CHECK(q_pochhammer(a, s).is_zero() == hits_zero);
    }
  CHECK_THROWS_AS(q_pochhammer(0, -1), negative_argument);
}

TEST_CASE("ballot numbers") {
  for (int n = 0; n <= 6; ++n)
    CHECK(ballot(n, n) == LaurentPoly(1));
  CHECK(ballot(1, 0) == P("q"));
  CHECK(ballot(2, 0) == P("q^2 + q^4"));

  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(ballot(n, k, BallotForm::difference) ==
            ballot(n, k, BallotForm::quotient));

  // q = 1 specializes to the integer ballot numbers
  for (int n = 0; n <= 10; ++n)
    for (int k = 0; k <= n; ++k) {
      mpz_class expected = int_binomial(2 * n, n - k);
      if (k + 1 <= n) expected -= int_binomial(2 * n, n - k - 1);
      CHECK(eval_at(ballot(n, k), 1) == mpq_class(expected));
    }

  CHECK_THROWS_AS(ballot(3, -1), argument_out_of_range);
  CHECK_THROWS_AS(ballot(3, 4), argument_out_of_range);
  CHECK_THROWS_AS(ballot(-1, 0), negative_argument);
}

TEST_CASE("super-Catalan polynomials") {
  for (int n = 0; n <= 6; ++n)
    CHECK(super_catalan(0, n) == q_binomial(2 * n, n));
  CHECK(super_catalan(1, 1) == P("1 + q"));

  // integer oracle first: 4! 6! / (5! 2! 3!) = 12
  mpz_class oracle = int_factorial(4) * int_factorial(6) /
                     (int_factorial(5) * int_factorial(2) * int_factorial(3));
  CHECK(oracle == 12);
  CHECK(eval_at(super_catalan(2, 3), 1) == mpq_class(oracle));

  // the signature route must match direct factorial division
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; n <= 10; ++n)
      CHECK(super_catalan(m, n) == super_catalan_quotient(m, n));

  // nonnegative coefficients on a moderate grid (the full documented range
  // is exercised by the acceptance checks)
  for (int m = 0; m <= 14; ++m)
    for (int n = m; n <= 14; ++n)
      for (const mpz_class& c : super_catalan(m, n).coeff_block())
        CHECK(c >= 0);

  CHECK_THROWS_AS(super_catalan(-1, 2), negative_argument);
}

TEST_CASE("cyclic binomial product") {
  CHECK(product_C({1}, 0) == P("1 + q + q^2"));
  CHECK(product_C({1, 1}, 1) == LaurentPoly(1));
  CHECK(product_C({2, 1}, 1) == P("1 + q + q^2 + q^3"));
  CHECK(product_C({1}, 2).is_zero());
  CHECK(product_C({3, 2, 1}, 0) ==
        q_binomial(6, 3) * q_binomial(4, 2) * q_binomial(5, 1));
  CHECK_THROWS_AS(product_C({}, 0), argument_out_of_range);
  CHECK_THROWS_AS(product_C({1, -1}, 0), negative_argument);
  CHECK_THROWS_AS(product_C({1}, -1), negative_argument);
}

TEST_CASE("memoized powers") {
  CHECK(q_binomial_pow(4, 2, 2) == q_binomial(4, 2) * q_binomial(4, 2));
  CHECK(q_binomial_pow(4, 2, 0) == LaurentPoly(1));
  CHECK(q_integer_pow(3, 3) == q_integer(3) * q_integer(3) * q_integer(3));
  CHECK(ballot_pow(2, 0, 2) == ballot(2, 0) * ballot(2, 0));
  CHECK(ballot_pow(2, 0, 0) == LaurentPoly(1));
  CHECK_THROWS_AS(q_binomial_pow(4, 2, -1), negative_exponent);

  clear_qkit_caches();
  CHECK(q_binomial_pow(4, 2, 2) == q_binomial_pascal(4, 2) *
                                       q_binomial_pascal(4, 2));
}

TEST_CASE("concurrent cache access returns consistent values") {
  clear_qkit_caches();
  std::vector<std::thread> workers;
  std::vector<int> failures(4, 0);
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([t, &failures] {
      for (int m = 0; m <= 14; ++m)
        for (int k = 0; k <= m; ++k)
          if (q_binomial_pow(m, k, 2) !=
              q_binomial(m, k) * q_binomial(m, k))
            ++failures[static_cast<std::size_t>(t)];
    });
  for (auto& w : workers) w.join();
  for (int f : failures) CHECK(f == 0);
}
