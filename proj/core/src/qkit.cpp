#include "qcong/qkit.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

#include "memo_table.hpp"
#include "qcong/cyclotomic.hpp"

namespace qcong {
namespace {

detail::MemoTable<int, LaurentPoly> factorial_table;
detail::MemoTable<std::pair<long, long>, LaurentPoly> binomial_table;
detail::MemoTable<std::pair<int, int>, LaurentPoly> ballot_table;
detail::MemoTable<std::pair<int, int>, LaurentPoly> integer_pow_table;
detail::MemoTable<std::tuple<long, long, int>, LaurentPoly> binomial_pow_table;
detail::MemoTable<std::tuple<int, int, int>, LaurentPoly> ballot_pow_table;

}  // namespace

LaurentPoly q_integer(int n) {
  if (n < 0) throw negative_argument("q_integer wants n >= 0");
  std::vector<mpz_class> ones(static_cast<std::size_t>(n), mpz_class(1));
  return LaurentPoly::from_coeffs(0, std::move(ones));
}

LaurentPoly q_factorial(int n) {
  if (n < 0) throw negative_argument("q_factorial wants n >= 0");
  return factorial_table.get_or_compute(n, [n] {
    if (n == 0) return LaurentPoly(1);
    return q_factorial(n - 1) * q_integer(n);
  });
}

LaurentPoly q_binomial(long m, long k) {
  if (k < 0) return LaurentPoly();
  if (m >= 0) {
    if (k > m) return LaurentPoly();
    long kk = std::min(k, m - k);  // the binomial is symmetric in k, m-k
    return binomial_table.get_or_compute({m, kk}, [m, kk] {
      LaurentPoly value(1);
      for (long i = 1; i <= kk; ++i)
        value = exact_div(value * q_integer(static_cast<int>(m - kk + i)),
                          q_integer(static_cast<int>(i)));
      return value;
    });
  }
  // m < 0: each numerator factor 1 - q^{m-i+1} flips to a positive
  // exponent, leaving (-1)^k q^{mk - k(k-1)/2} [k-m-1 over k].
  LaurentPoly body = q_binomial(k - m - 1, k).shifted(m * k - k * (k - 1) / 2);
  return (k % 2 != 0) ? -body : body;
}

LaurentPoly q_binomial_pascal(int m, int k) {
  if (m < 0 || k < 0 || k > m) return LaurentPoly();
  std::vector<LaurentPoly> row{LaurentPoly(1)};
  for (int mm = 1; mm <= m; ++mm) {
    std::vector<LaurentPoly> next(static_cast<std::size_t>(mm) + 1);
    next[0] = LaurentPoly(1);
    next[static_cast<std::size_t>(mm)] = LaurentPoly(1);
    for (int j = 1; j < mm; ++j)
      next[static_cast<std::size_t>(j)] =
          row[static_cast<std::size_t>(j) - 1] +
          row[static_cast<std::size_t>(j)].shifted(j);
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

LaurentPoly q_pochhammer(long a, int s) {
  if (s < 0) throw negative_argument("q_pochhammer wants s >= 0");
  LaurentPoly value(1);
  for (int i = 0; i < s; ++i)
    value *= LaurentPoly(1) - LaurentPoly::monomial(1, a + i);
  return value;
}

LaurentPoly ballot(int n, int k, BallotForm form) {
  if (n < 0) throw negative_argument("ballot wants n >= 0");
  if (k < 0 || k > n)
    throw argument_out_of_range("ballot wants 0 <= k <= n");
  if (form == BallotForm::quotient) {
    LaurentPoly numer = q_integer(2 * k + 1).shifted(n - k) *
                        q_binomial(2 * n + 1, n - k);
    return exact_div(numer, q_integer(2 * n + 1));
  }
  return ballot_table.get_or_compute({n, k}, [n, k] {
    return q_binomial(2 * n, n - k) - q_binomial(2 * n, n - k - 1);
  });
}

LaurentPoly super_catalan(int m, int n) {
  return expand_signature(super_catalan_signature(m, n));
}

LaurentPoly super_catalan_quotient(int m, int n) {
  if (m < 0 || n < 0) throw negative_argument("super_catalan wants m,n >= 0");
  return exact_div(q_factorial(2 * m) * q_factorial(2 * n),
                   q_factorial(m + n) * q_factorial(m) * q_factorial(n));
}

LaurentPoly product_C(const std::vector<int>& a_list, int k) {
  if (a_list.empty())
    throw argument_out_of_range("product_C wants a nonempty list");
  if (k < 0) throw negative_argument("product_C wants k >= 0");
  for (int a : a_list)
    if (a < 0) throw negative_argument("product_C wants a_i >= 0");
  LaurentPoly value(1);
  for (std::size_t i = 0; i < a_list.size(); ++i) {
    int ai = a_list[i];
    int an = a_list[(i + 1) % a_list.size()];
    value *= q_binomial(ai + an + 1, ai - k);
    if (value.is_zero()) return value;
  }
  return value;
}

const LaurentPoly& q_integer_pow(int n, int e) {
  if (n < 0) throw negative_argument("q_integer_pow wants n >= 0");
  if (e < 0) throw negative_exponent("q_integer_pow wants e >= 0");
  return integer_pow_table.get_or_compute({n, e}, [n, e] {
    return pow(q_integer(n), static_cast<unsigned long>(e));
  });
}

const LaurentPoly& q_binomial_pow(long m, long k, int e) {
  if (e < 0) throw negative_exponent("q_binomial_pow wants e >= 0");
  return binomial_pow_table.get_or_compute({m, k, e}, [m, k, e] {
    return pow(q_binomial(m, k), static_cast<unsigned long>(e));
  });
}

const LaurentPoly& ballot_pow(int n, int k, int e) {
  if (e < 0) throw negative_exponent("ballot_pow wants e >= 0");
  return ballot_pow_table.get_or_compute({n, k, e}, [n, k, e] {
    return pow(ballot(n, k), static_cast<unsigned long>(e));
  });
}

void clear_qkit_caches() {
  factorial_table.clear();
  binomial_table.clear();
  ballot_table.clear();
  integer_pow_table.clear();
  binomial_pow_table.clear();
  ballot_pow_table.clear();
}

}  // namespace qcong
