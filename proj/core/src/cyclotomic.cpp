#include "qcong/cyclotomic.hpp"

#include <algorithm>
#include <sstream>

#include "memo_table.hpp"

namespace qcong {
namespace {

detail::MemoTable<int, LaurentPoly> phi_table;
detail::MemoTable<std::map<int, int>, LaurentPoly> expand_table;

}  // namespace

bool CycSignature::all_nonnegative() const noexcept {
  for (const auto& [d, e] : exponents)
    if (e < 0) return false;
  return true;
}

int CycSignature::exponent_of(int d) const noexcept {
  auto it = exponents.find(d);
  return it == exponents.end() ? 0 : it->second;
}

CycSignature& CycSignature::operator*=(const CycSignature& rhs) {
  for (const auto& [d, e] : rhs.exponents) {
    int combined = exponent_of(d) + e;
    if (combined == 0)
      exponents.erase(d);
    else
      exponents[d] = combined;
  }
  unit_exp += rhs.unit_exp;
  unit_sign *= rhs.unit_sign;
  return *this;
}

CycSignature& CycSignature::operator/=(const CycSignature& rhs) {
  for (const auto& [d, e] : rhs.exponents) {
    int combined = exponent_of(d) - e;
    if (combined == 0)
      exponents.erase(d);
    else
      exponents[d] = combined;
  }
  unit_exp -= rhs.unit_exp;
  unit_sign *= rhs.unit_sign;  // signs are self-inverse
  return *this;
}

CycSignature CycSignature::pow(int e) const {
  if (e < 0) throw negative_exponent("signature pow wants e >= 0");
  CycSignature out;
  if (e == 0) return out;
  for (const auto& [d, ex] : exponents) out.exponents[d] = ex * e;
  out.unit_exp = unit_exp * e;
  out.unit_sign = (e % 2 == 0) ? 1 : unit_sign;
  return out;
}

const LaurentPoly& cyclotomic(int d) {
  if (d < 1) throw argument_out_of_range("cyclotomic index wants d >= 1");
  return phi_table.get_or_compute(d, [d] {
    LaurentPoly value =
        LaurentPoly::monomial(1, d) - LaurentPoly(1);  // q^d - 1
    for (int e = 1; e < d; ++e)
      if (d % e == 0) value = exact_div(value, cyclotomic(e));
    return value;
  });
}

CycSignature q_integer_signature(int n) {
  if (n < 1) throw argument_out_of_range("q_integer_signature wants n >= 1");
  CycSignature out;
  for (int d = 2; d <= n; ++d)
    if (n % d == 0) out.exponents[d] = 1;
  return out;
}

CycSignature q_factorial_signature(int n) {
  if (n < 0) throw negative_argument("q_factorial_signature wants n >= 0");
  CycSignature out;
  for (int d = 2; d <= n; ++d) out.exponents[d] = n / d;
  return out;
}

CycSignature qbinomial_signature(int m, int k) {
  if (m < 0 || k < 0 || k > m)
    throw argument_out_of_range("qbinomial_signature wants 0 <= k <= m");
  CycSignature out;
  for (int d = 1; d <= m; ++d) {
    bool qualifies = k / d + (m - k) / d < m / d;
    if (!qualifies) continue;
    // the criterion can never fire at d = 1; treat that as a broken build
    if (d == 1)
      throw constraint_violation("floor criterion qualified d = 1");
    out.exponents[d] = 1;
  }
  return out;
}

CycSignature factorial_ratio_signature(const std::vector<int>& numer,
                                       const std::vector<int>& denom) {
  int top = 0;
  for (int n : numer) {
    if (n < 0) throw negative_argument("factorial argument < 0");
    top = std::max(top, n);
  }
  for (int n : denom) {
    if (n < 0) throw negative_argument("factorial argument < 0");
    top = std::max(top, n);
  }
  CycSignature out;
  for (int d = 2; d <= top; ++d) {
    int e = 0;
    for (int n : numer) e += n / d;
    for (int n : denom) e -= n / d;
    if (e != 0) out.exponents[d] = e;
  }
  return out;
}

CycSignature super_catalan_signature(int m, int n) {
  if (m < 0 || n < 0) throw negative_argument("super_catalan wants m,n >= 0");
  return factorial_ratio_signature({2 * m, 2 * n}, {m + n, m, n});
}

CycSignature signature_gcd(const CycSignature& a, const CycSignature& b) {
  if (!a.all_nonnegative() || !b.all_nonnegative())
    throw negative_exponent("signature gcd wants polynomial inputs");
  CycSignature out;
  for (const auto& [d, e] : a.exponents) {
    int m = std::min(e, b.exponent_of(d));
    if (m > 0) out.exponents[d] = m;
  }
  return out;
}

LaurentPoly expand_signature(const CycSignature& s) {
  if (!s.all_nonnegative())
    throw negative_exponent("cannot expand a signature with negative exponents");
  const LaurentPoly& body =
      expand_table.get_or_compute(s.exponents, [&s] {
        LaurentPoly value(1);
        for (const auto& [d, e] : s.exponents)
          value *= pow(cyclotomic(d), static_cast<unsigned long>(e));
        return value;
      });
  LaurentPoly out = body.shifted(s.unit_exp);
  return s.unit_sign < 0 ? -out : out;
}

bool lemma61_check(int m, int n) {
  if (m < 1 || n < 1) throw argument_out_of_range("lemma61_check wants m,n >= 1");
  CycSignature sc = super_catalan_signature(m, n);
  return signature_gcd(sc, q_integer_signature(2 * m + 1)).exponents.empty();
}

std::string render_signature(const CycSignature& s) {
  std::ostringstream out;
  if (s.unit_sign < 0) out << "-";
  std::vector<std::string> parts;
  if (s.unit_exp != 0) {
    std::ostringstream u;
    u << "q";
    if (s.unit_exp != 1) u << "^" << s.unit_exp;
    parts.push_back(u.str());
  }
  for (const auto& [d, e] : s.exponents) {
    std::ostringstream p;
    p << "Φ" << d;
    if (e != 1) p << "^" << e;
    parts.push_back(p.str());
  }
  if (parts.empty()) return s.unit_sign < 0 ? "-1" : "1";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out << " · ";
    out << parts[i];
  }
  return out.str();
}

void clear_cyclotomic_caches() {
  phi_table.clear();
  expand_table.clear();
}

}  // namespace qcong
