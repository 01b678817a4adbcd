#include "qcong/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace qcong {

namespace {

const mpz_class mpz_zero_value{0};

bool is_unit_coeff(const mpz_class& c) { return c == 1 || c == -1; }

}  // namespace

void LaurentPoly::canonicalize() {
  std::size_t lo = 0;
  while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
  if (lo == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = 0;
    return;
  }
  std::size_t hi = coeffs_.size();
  while (hi > lo && coeffs_[hi - 1] == 0) --hi;
  if (lo > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lo));
    min_exp_ += static_cast<long>(lo);
  }
  coeffs_.resize(hi - lo);
}

LaurentPoly LaurentPoly::monomial(mpz_class c, long exp) {
  LaurentPoly r;
  if (c == 0) return r;
  r.min_exp_ = exp;
  r.coeffs_.push_back(std::move(c));
  return r;
}

LaurentPoly LaurentPoly::from_coeffs(long min_exp,
                                     std::vector<mpz_class> coeffs) {
  LaurentPoly r;
  r.min_exp_ = min_exp;
  r.coeffs_ = std::move(coeffs);
  r.canonicalize();
  return r;
}

bool LaurentPoly::is_one() const noexcept {
  return coeffs_.size() == 1 && min_exp_ == 0 && coeffs_[0] == 1;
}

std::size_t LaurentPoly::term_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : coeffs_)
    if (c != 0) ++n;
  return n;
}

const mpz_class& LaurentPoly::coeff(long exp) const noexcept {
  if (exp < min_exp_ || exp > max_exp()) return mpz_zero_value;
  return coeffs_[static_cast<std::size_t>(exp - min_exp_)];
}

const mpz_class& LaurentPoly::leading_coeff() const {
  if (is_zero()) throw std::domain_error("leading_coeff of zero");
  return coeffs_.back();
}

const mpz_class& LaurentPoly::trailing_coeff() const {
  if (is_zero()) throw std::domain_error("trailing_coeff of zero");
  return coeffs_.front();
}

LaurentPoly LaurentPoly::shifted(long exp) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.min_exp_ += exp;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  if (rhs.is_zero()) return *this;
  if (is_zero()) {
    *this = rhs;
    return *this;
  }
  const long lo = std::min(min_exp_, rhs.min_exp_);
  const long hi = std::max(max_exp(), rhs.max_exp());
  std::vector<mpz_class> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out[static_cast<std::size_t>(min_exp_ - lo) + i] = std::move(coeffs_[i]);
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
    out[static_cast<std::size_t>(rhs.min_exp_ - lo) + i] += rhs.coeffs_[i];
  min_exp_ = lo;
  coeffs_ = std::move(out);
  canonicalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  return *this += -rhs;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  r += b;
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  r -= b;
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Schoolbook, accumulating with addmul and skipping zero coefficients of
  // the shorter operand.
  const LaurentPoly& outer = a.coeffs_.size() <= b.coeffs_.size() ? a : b;
  const LaurentPoly& inner = a.coeffs_.size() <= b.coeffs_.size() ? b : a;
  std::vector<mpz_class> out(outer.coeffs_.size() + inner.coeffs_.size() - 1);
  for (std::size_t i = 0; i < outer.coeffs_.size(); ++i) {
    const mpz_class& oc = outer.coeffs_[i];
    if (oc == 0) continue;
    for (std::size_t k = 0; k < inner.coeffs_.size(); ++k) {
      const mpz_class& ic = inner.coeffs_[k];
      if (ic == 0) continue;
      mpz_addmul(out[i + k].get_mpz_t(), oc.get_mpz_t(), ic.get_mpz_t());
    }
  }
  return LaurentPoly::from_coeffs(outer.min_exp_ + inner.min_exp_,
                                  std::move(out));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

LaurentPoly pow(const LaurentPoly& base, unsigned long exp) {
  LaurentPoly acc = LaurentPoly(1);
  LaurentPoly sq = base;
  while (exp > 0) {
    if (exp & 1UL) acc *= sq;
    exp >>= 1UL;
    if (exp > 0) sq *= sq;
  }
  return acc;
}

LaurentPoly subst_qinv(const LaurentPoly& a) {
  if (a.is_zero()) return a;
  std::vector<mpz_class> rev(a.coeff_block().rbegin(), a.coeff_block().rend());
  return LaurentPoly::from_coeffs(-a.max_exp(), std::move(rev));
}

not_divisible::not_divisible(const std::string& what, LaurentPoly remainder)
    : std::runtime_error(what), remainder_(std::move(remainder)) {}

namespace {

// Integer synthetic division from the top once both sides are unit-aligned
// (min_exp 0). The quotient coefficients are forced, so a failed exact step
// proves non-divisibility over Z[q,1/q].
std::optional<LaurentPoly> divide_aligned(const std::vector<mpz_class>& num,
                                          const std::vector<mpz_class>& den,
                                          LaurentPoly* remainder) {
  const std::size_t dn = den.size();
  const mpz_class& lead = den.back();
  std::vector<mpz_class> rem = num;
  if (rem.size() < dn) {
    if (remainder) *remainder = LaurentPoly::from_coeffs(0, std::move(rem));
    return std::nullopt;
  }
  std::vector<mpz_class> quo(rem.size() - dn + 1);
  const bool unit_lead = is_unit_coeff(lead);
  for (std::size_t qi = quo.size(); qi-- > 0;) {
    mpz_class& top = rem[qi + dn - 1];
    if (top == 0) continue;
    mpz_class qc;
    if (unit_lead) {
      qc = lead == 1 ? top : -top;
    } else {
      if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
        if (remainder) {
          *remainder = LaurentPoly::from_coeffs(0, std::move(rem));
        }
        return std::nullopt;
      }
      qc = top / lead;
    }
    for (std::size_t k = 0; k + 1 < dn; ++k) {
      if (den[k] != 0)
        mpz_submul(rem[qi + k].get_mpz_t(), qc.get_mpz_t(), den[k].get_mpz_t());
    }
    top = 0;
    quo[qi] = std::move(qc);
  }
  for (const auto& c : rem) {
    if (c != 0) {
      if (remainder) *remainder = LaurentPoly::from_coeffs(0, std::move(rem));
      return std::nullopt;
    }
  }
  return LaurentPoly::from_coeffs(0, std::move(quo));
}

}  // namespace

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& a,
                                         const LaurentPoly& d,
                                         LaurentPoly* remainder) {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) {
    if (remainder) *remainder = {};
    return LaurentPoly{};
  }
  LaurentPoly rem_aligned;
  auto quo = divide_aligned(a.coeff_block(), d.coeff_block(),
                            remainder ? &rem_aligned : nullptr);
  const long shift = a.min_exp() - d.min_exp();
  if (!quo) {
    if (remainder) *remainder = rem_aligned.shifted(a.min_exp());
    return std::nullopt;
  }
  if (remainder) *remainder = {};
  return quo->shifted(shift);
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& d) {
  LaurentPoly rem;
  auto quo = try_exact_div(a, d, &rem);
  if (!quo) {
    throw not_divisible("exact_div: not divisible", std::move(rem));
  }
  return *quo;
}

mpq_class eval_at(const LaurentPoly& a, const mpq_class& point) {
  if (a.is_zero()) return 0;
  if (point == 0) {
    if (a.min_exp() < 0)
      throw zero_base("eval_at: q = 0 with negative exponents");
    return mpq_class(a.coeff(0));
  }
  // Horner over the block, then the q^min_exp prefactor.
  mpq_class acc = 0;
  const auto& cs = a.coeff_block();
  for (std::size_t i = cs.size(); i-- > 0;) {
    acc = acc * point + cs[i];
  }
  mpz_class num = point.get_num();
  mpz_class den = point.get_den();
  long e = a.min_exp();
  if (e < 0) {
    std::swap(num, den);
    e = -e;
  }
  mpq_class pre;
  mpz_pow_ui(pre.get_num_mpz_t(), num.get_mpz_t(),
             static_cast<unsigned long>(e));
  mpz_pow_ui(pre.get_den_mpz_t(), den.get_mpz_t(),
             static_cast<unsigned long>(e));
  pre.canonicalize();
  return acc * pre;
}

std::string render(const LaurentPoly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long e = a.min_exp(); e <= a.max_exp(); ++e) {
    const mpz_class& c = a.coeff(e);
    if (c == 0) continue;
    const bool neg = c < 0;
    mpz_class mag = neg ? mpz_class(-c) : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (e == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

struct Scanner {
  std::string_view s;
  std::size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_ws();
    std::size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return std::string(s.substr(b, i - b));
  }
  long integer() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    std::string d = digits();
    if (d.empty()) throw parse_error("expected integer in polynomial text");
    long v = std::stol(d);
    return neg ? -v : v;
  }
};

}  // namespace

LaurentPoly parse_poly(std::string_view text) {
  Scanner sc{text};
  if (sc.done()) throw parse_error("empty polynomial text");
  LaurentPoly acc;
  bool term_neg = sc.eat('-');
  while (true) {
    mpz_class coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      std::string d = sc.digits();
      coeff = mpz_class(d);
      have_coeff = true;
      sc.eat('*');
    }
    long exp = 0;
    if (sc.peek() == 'q') {
      sc.eat('q');
      exp = sc.eat('^') ? sc.integer() : 1;
    } else if (!have_coeff) {
      throw parse_error("expected coefficient or q in polynomial text");
    }
    if (term_neg) coeff = -coeff;
    acc += LaurentPoly::monomial(std::move(coeff), exp);
    if (sc.done()) break;
    if (sc.eat('+')) {
      term_neg = false;
    } else if (sc.eat('-')) {
      term_neg = true;
    } else {
      throw parse_error("unexpected character in polynomial text");
    }
    if (sc.done()) throw parse_error("dangling sign in polynomial text");
  }
  return acc;
}

std::uint64_t content_hash(const LaurentPoly& a) {
  // FNV-1a over min_exp and the sign/limb bytes of each coefficient.
  constexpr std::uint64_t offset = 1469598103934665603ULL;
  constexpr std::uint64_t prime = 1099511628211ULL;
  std::uint64_t h = offset;
  auto mix = [&](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < n; ++k) {
      h ^= p[k];
      h *= prime;
    }
  };
  const long me = a.min_exp();
  mix(&me, sizeof me);
  std::vector<unsigned char> buf;
  for (const auto& c : a.coeff_block()) {
    const int sign = sgn(c);
    mix(&sign, sizeof sign);
    if (sign != 0) {
      const std::size_t words =
          (mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8;
      buf.resize(words);
      std::size_t count = 0;
      mpz_export(buf.data(), &count, 1, 1, 1, 0, c.get_mpz_t());
      mix(buf.data(), count);
    }
  }
  return h;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& a) {
  return os << render(a);
}

}  // namespace qcong
