#pragma once

// The certified sum families. Theorem-style families expose a sum builder
// and the divisor it is claimed to vanish against; identity-style families
// expose both sides; the corollary and conjecture catalogues bundle sum and
// divisor behind a closed id registry. Everything is exact Laurent
// arithmetic; rational prefactors are handled by cross-multiplication or
// signature bookkeeping, never by rational-function types.

#include <map>
#include <string>
#include <vector>

#include "qcong/congruence.hpp"
#include "qcong/laurent.hpp"

namespace qcong {

enum class Sign { plus, minus };

// Summand prefactor: q^{j(k^2+k) - c k}, or alternating
// (-1)^k q^{binom(k,2) + j(k^2+k) - c k}. The linear rate c is fixed by
// each family; j is the free quadratic parameter.
struct WeightVariant {
  Sign kind = Sign::plus;
  int j = 0;
};

// One instance of a chain-product family: indices n_1..n_m plus the kernel
// power r. allow_large_j lifts the proved bound j <= m for conjectural
// sweeps.
struct SumSpec {
  std::vector<int> ns;
  int r = 0;
  WeightVariant weight;
  bool allow_large_j = false;
};

// sum_{k=0}^{n_1} w(k) [2k+1]^{2r+1} prod_i [n_i+n_{i+1}+1 over n_i-k]
// with wraparound n_{m+1} = n_1; rate c = 2r+1 (plus) or 2r (minus).
LaurentPoly theorem1_sum(const SumSpec& spec);
// [n_1+n_m+1] * [n_1+n_m over n_1], factored.
Modulus theorem1_modulus(const SumSpec& spec);

// Kernel [2k+1] [k]^r [k+1]^r over the same chain product; rate c = r+1
// (plus) or r (minus).
LaurentPoly theorem2_sum(const SumSpec& spec);
// Theorem-1 divisor strengthened by [n_1]^{min(1,r)} and by
// [n_m]^{min(1, r(r-1)/2)} (plus) or [n_m]^{min(1,r)} (minus).
Modulus theorem2_modulus(const SumSpec& spec);

// sum_{k=0}^n w(k) [2k+1]^r A_{n,k}^s; rate c = r (plus) or r-1 (minus).
// Requires r+s odd and j <= s unless the bound is lifted.
LaurentPoly theorem3_sum(int n, int s, int r, WeightVariant weight,
                         bool allow_large_j = false);
Modulus theorem3_modulus(int n);  // [2n over n]

// [m+n+1] sum_k w(k) [2k+1]^r A_{m,k}^s A_{n,k}^t, rate as above.
// Requires r+s+t odd and j <= s+t unless the bound is lifted.
LaurentPoly theorem4_sum(int m, int n, int s, int t, int r,
                         WeightVariant weight, bool allow_large_j = false);
Modulus theorem4_modulus(int m, int n);  // super-Catalan divisor

// A family instance reduced to the two polynomials its claim is about.
// The claim is always "modulus divides sum"; the quotient is the certified
// object when a caller wants more than the verdict.
struct FamilyParts {
  Modulus modulus;
  LaurentPoly sum;
};

// [n_1]! prod_i ([n_i+n_{i+1}+1]!/[2n_i+1]!) * sum_k w(k) [2k+1]^{2r+1}
// prod_i [2n_i+1 over n_i-k], with n_{m+1} = -1 in the prefactor only.
// Denominators are cleared through the factored form and divided out
// exactly; a nonzero remainder would refute the statement and surfaces as
// not_divisible. Optional structural exponents a_i (default all 1) raise
// the i-th binomial to a_i.
LaurentPoly theorem62_expression(const SumSpec& spec,
                                 const std::vector<int>& a = {});

// The same claim as a divisibility pair: sum carries the numerator-cleared
// weighted sum, modulus the denominator of the factorial prefactor, so the
// quotient is exactly theorem62_expression.
FamilyParts theorem62_parts(const SumSpec& spec,
                            const std::vector<int>& a = {});

// Both sides of an identity, compared exactly.
struct IdentityCheck {
  LaurentPoly lhs;
  LaurentPoly rhs;
  bool equal = false;
};

// The four-variant Pochhammer lemma: variant v weights the summand
// [2k+1] [2n+1 over n-k] (q^{-k};q)_s (q^{k+1};q)_s by
// v1: q^{-k}; v2: q^{k^2}; v3: (-1)^k q^{binom(k,2)};
// v4: (-1)^k q^{(3k^2+k)/2}; the right sides are the closed products.
// Variant 3 closes to zero except on the diagonal s = n, where the x -> 1
// limit of the x-shifted form leaves q^{-n} [2n+1] [2n over n] (q;q)_n^2.
IdentityCheck lemma21_check(int n, int s, int variant);

struct RemarkCheck {
  bool equal = false;
  bool degenerate = false;  // the cleared factor (q^a;q)_{n+1} vanished
};

// The x-generalization of the alternating lemma variant at x = q^a,
// checked in cross-multiplied form (both sides times (x;q)_{n+1}).
// Requires s >= n.
RemarkCheck remark_x_identity_check(int n, int s, int a);

// The four power-sum strengthenings of the lemma: weights
// v1: q^{-(2r+1)k}; v2: q^{k^2-2rk}; v3: (-1)^k q^{binom(k,2)-2rk};
// v4: (-1)^k q^{(3k^2+k)/2-2rk} on [2k+1]^{2r+1} [2n+1 over n-k]
// (q^{-k};q)_s (q^{k+1};q)_s. All four vanish against [2n+1][2n over n].
LaurentPoly theorem22_sum(int n, int r, int s, int variant);
Modulus theorem22_modulus(int n);

enum class PQ { P, Q };
enum class PQMethod { direct, recurrence };

// P_r(n,j) = sum_k q^{j(k^2+k)-(r+1)k} [2k+1][k]^r[k+1]^r [2n+1 over n-k]
// and the alternating partner Q_r (rate r); j in {0,1}. The recurrence
// route lowers r through
//   X_r(n,j) = q^{-n}[n][n+1] X_{r-1}(n,j) - q^{-n}[2n][2n+1] X_{r-1}(n-1,j)
// and must agree with the direct sum.
LaurentPoly pq_value(PQ which, int n, int j, int r,
                     PQMethod method = PQMethod::direct);

enum class ST { S, T };
enum class STKernel { standard, remark };

// S_r/T_r carry the rational prefactor
// (q;q)_{n_1}(q;q)_{n_m} / (q;q)_{n_1+n_m+1} on the theorem-2 kernel sum,
// so the recurrences are checked on cross-multiplied numerators. The
// standard kernel sums q^{l^2+l} [n_1 over l] [...] against the inner
// value at j-1 (so it needs j >= 1); the remark kernel uses
// q^{(n_1-l)(n_2-l)} and keeps j. m >= 2; the two-index form closes with
// [n_1 over l][n_2 over l].
bool st_recurrence_check(ST which, const std::vector<int>& ns, int j, int r,
                         STKernel kernel);

// Sum-level q -> 1/q symmetry of the bare kernel sum U: U at j=0 equals
// q^{N1+N2-r} subst_qinv(U at j=m) for S (j=m-1 for T), where
// N1 = sum_i n_i n_{i+1} including the wraparound term and N2 = sum_i n_i.
bool qinv_symmetry_check(ST which, const std::vector<int>& ns, int r);

// (q^a;q)_N = sum_k (-1)^k q^{binom(k,2)+ak} [N over k].
bool qbt_check(int N, int a);
// [n1+n2+1 over n1-k] = sum_s q^{s(s+2k+1)} [n1+k+1 over s+2k+1]
// [n2-k over s], checked for every k in 0..n1 (k > n2 exercises the
// reflected binomial).
bool chu_check(int n1, int n2);
// sum_{k=-n}^n (-1)^k q^{(3k^2+k)/2} [l+m over l+k][m+n over m+k]
// [n+l over n+k] = [l+m over l][l+m+n over n].
bool dixon_full_check(int l, int m, int n);
// The large-l,m limit: sum_{k=-n}^n (-1)^k q^{(3k^2+k)/2} [2n over n-k]
// = [2n over n] (q;q)_n.
bool dixon_limit_check(int n);

using ParamMap = std::map<std::string, int>;

// Proved catalogue congruences. Closed id set {C63a, C63b, C71, C72, C73,
// C74a, C74b, C75a, C75b, C76}; unknown ids throw. C76 takes structural
// exponents a1..am. Weight j rides in `weight`; every other parameter is
// named in `params`. holds=false on any of these means a bug unless the
// proved j bound was lifted.
FamilyParts corollary_parts(const std::string& id, const ParamMap& params,
                            WeightVariant weight, bool allow_large_j = false);
Verdict corollary_check(const std::string& id, const ParamMap& params,
                        WeightVariant weight,
                        Strategy strategy = Strategy::both,
                        bool recheck = false, bool allow_large_j = false);

// Conjectural congruences {Conj246n_1..4, ConjFinal, ConjAllJ}. ConjFinal
// takes exponents r1..rm; ConjAllJ takes base (1 or 2), m, n1..nm, r and
// reruns the theorem-1/2 families with the j bound lifted. holds=false is
// a counterexample report, not an error.
FamilyParts conjecture_parts(const std::string& id, const ParamMap& params,
                             WeightVariant weight);
Verdict conjecture_check(const std::string& id, const ParamMap& params,
                         WeightVariant weight,
                         Strategy strategy = Strategy::both,
                         bool recheck = false);

void clear_families_caches();

}  // namespace qcong
