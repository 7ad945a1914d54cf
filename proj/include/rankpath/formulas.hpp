#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rankpath/qpoly.hpp"
#include "rankpath/series.hpp"

namespace rankpath {

// Gaussian binomial coefficient, computed by the Pascal recurrence
//   qbin(n,k) = qbin(n-1,k-1) + q^k qbin(n-1,k)
// and zero outside 0 <= k <= n. Memoized; safe to call concurrently.
inline QPoly qbinom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return QPoly();
  if (k == 0 || k == n) return QPoly::one();
  static std::map<std::pair<int, int>, QPoly> memo;
  static std::recursive_mutex mu;
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  QPoly value = qbinom(n - 1, k - 1) + qbinom(n - 1, k).shifted(k);
  memo.emplace(std::make_pair(n, k), value);
  return value;
}

// The q,t-Catalan polynomial
//   C_n(q,t) = 1 + (1/[n]_q) sum_{i=1}^{n-1} t^i q^{i(i+1)} qbin(n,i) qbin(n,i+1),
// equal to the descent-major generating function over Dyck paths of
// semilength n. The division by [n]_q is exact and checked.
inline QTPoly catalan_qt(int n) {
  if (n < 0) throw std::domain_error("catalan_qt: n must be nonnegative");
  QTPoly out(QPoly::one());
  if (n <= 1) return out;
  QPoly nq = qbinom(n, 1);
  for (int i = 1; i < n; ++i) {
    QPoly num = (qbinom(n, i) * qbinom(n, i + 1)).shifted(i * (i + 1));
    auto [quo, rem] = divmod(num, nq);
    if (!rem.is_zero())
      throw std::logic_error("catalan_qt: division by [n]_q left a remainder");
    out.add_term(i, quo);
  }
  return out;
}

// Descent-major generating function over paths with m up and n down steps
// that never dip below zero (requires m >= n):
//   sum_i t^i q^{i^2} (qbin(m,i) qbin(n,i) - qbin(m-1,i-1) qbin(n+1,i+1)).
// With the complement flag, returns the subtracted sum alone, which covers
// the paths that do dip below zero.
inline QTPoly fh_formula(int m, int n, bool complement = false) {
  if (m < 0 || n < 0)
    throw std::domain_error("fh_formula: m and n must be nonnegative");
  if (!complement && m < n)
    throw std::domain_error("fh_formula: direct form needs m >= n");
  QTPoly out;
  for (int i = 0; i <= std::min(m, n); ++i) {
    QPoly second = qbinom(m - 1, i - 1) * qbinom(n + 1, i + 1);
    QPoly term = complement ? second : qbinom(m, i) * qbinom(n, i) - second;
    out.add_term(i, term.shifted(i * i));
  }
  return out;
}

// Durfee-square generating function over partitions in an m x n box whose
// successive ranks all exceed -ell. Two closed forms, valid on overlapping
// parameter ranges that agree where both apply:
//   ell <= m-n:  C_{n+ell}(q, t q^{-ell})
//   otherwise:   sum_i t^i q^{i(i-ell)} (qbin(n+ell,i) qbin(m,i)
//                                        - qbin(n+ell-1,i-1) qbin(m+1,i+1)).
inline QTPoly thm_lopsided(int m, int n, int ell) {
  if (m < 0 || n < 0 || ell < -n || ell > 1)
    throw std::domain_error(
        "thm_lopsided: needs m, n >= 0 and -n <= ell <= 1");
  if (ell <= m - n) return catalan_qt(n + ell).subst_t_qpow(-ell);
  QTPoly out;
  for (int i = 0; i <= std::min(n + ell, m); ++i) {
    QPoly term = qbinom(n + ell, i) * qbinom(m, i) -
                 qbinom(n + ell - 1, i - 1) * qbinom(m + 1, i + 1);
    out.add_term(i, term.shifted(i * (i - ell)));
  }
  return out;
}

namespace detail {

inline void check_box_family(const char* who, int m, int n, int ell) {
  if (m < 0 || n < 0 || ell < 0 || n + ell < m)
    throw std::domain_error(std::string(who) +
                            ": needs m, n, ell >= 0 and n + ell >= m");
}

}  // namespace detail

// The same family as thm_lopsided (ranks all exceed -ell) in the central
// parameter regime ell >= 0, n + ell >= m:
//   sum_i t^i q^{i^2} (qbin(n,i) qbin(m,i)
//                      - q^ell qbin(n+ell-1,i-1) qbin(m-ell+1,i+1)).
inline QTPoly thm_central_dsq(int m, int n, int ell) {
  detail::check_box_family("thm_central_dsq", m, n, ell);
  QTPoly out;
  int hi = std::max(std::min(n, m), std::min(n + ell, m - ell));
  for (int i = 0; i <= hi; ++i) {
    QPoly term =
        qbinom(n, i) * qbinom(m, i) -
        (qbinom(n + ell - 1, i - 1) * qbinom(m - ell + 1, i + 1)).shifted(ell);
    out.add_term(i, term.shifted(i * i));
  }
  return out;
}

// Durfee-rectangle analogue of thm_central_dsq (same rank family, t marks
// the rectangle side instead of the square side):
//   sum_i t^i q^{i(i+1)} (qbin(n-1,i) qbin(m+1,i+1)
//                         - q^{ell+1} qbin(n+ell,i) qbin(m-ell,i+1)).
// The display needs n >= 1; with n = 0 it does not reduce to the family's
// true generating function.
inline QTPoly thm_central_drect(int m, int n, int ell) {
  detail::check_box_family("thm_central_drect", m, n, ell);
  QTPoly out;
  int hi = std::max(std::min(n - 1, m), std::min(n + ell, m - ell - 1));
  for (int i = 0; i <= hi; ++i) {
    QPoly term =
        qbinom(n - 1, i) * qbinom(m + 1, i + 1) -
        (qbinom(n + ell, i) * qbinom(m - ell, i + 1)).shifted(ell + 1);
    out.add_term(i, term.shifted(i * (i + 1)));
  }
  return out;
}

// Area generating function of the same rank family at t = 1:
//   qbin(m+n,m) - q^{ell+1} qbin(m+n,m-ell-1).
inline QPoly thm_box_t1(int m, int n, int ell) {
  detail::check_box_family("thm_box_t1", m, n, ell);
  return qbinom(m + n, m) - qbinom(m + n, m - ell - 1).shifted(ell + 1);
}

// Peak statistics over paths with n up and m down steps that never dip
// below -ell:
//   sum_i t^i q^{i^2} (qbin(n,i) qbin(m,i) - qbin(n+ell+1,i) qbin(m-ell-1,i)).
// The display matches the path family when n + ell >= m; outside that range
// the family is smaller than the formula accounts for.
inline QTPoly keith_km(int m, int n, int ell) {
  if (m < 0 || n < 0 || ell < 0)
    throw std::domain_error("keith_km: needs m, n, ell >= 0");
  QTPoly out;
  int hi = std::max(std::min(n, m), std::min(n + ell + 1, m - ell - 1));
  for (int i = 0; i <= hi; ++i) {
    QPoly term = qbinom(n, i) * qbinom(m, i) -
                 qbinom(n + ell + 1, i) * qbinom(m - ell - 1, i);
    out.add_term(i, term.shifted(i * i));
  }
  return out;
}

namespace detail {

inline TruncatedSeries monomial_series(const std::vector<std::string>& vars,
                                       int order, std::vector<int> exps) {
  TruncatedSeries s(vars, order);
  s.add_monomial(exps, BigRat(1));
  return s;
}

// 1/(1-v^i) where v is the truncation variable.
inline TruncatedSeries geom_inverse(const std::vector<std::string>& vars,
                                    int order, int i) {
  TruncatedSeries s(vars, order);
  std::vector<int> e(vars.size(), 0);
  for (int j = 0; i * j <= order; ++j) {
    e.back() = i * j;
    s.add_monomial(e, BigRat(1));
  }
  return s;
}

// Product of 1/(1-q^i) over 1 <= i <= order with one index skipped; a skip
// outside that range leaves the full product.
inline TruncatedSeries avoiding_product(int order, int skip) {
  TruncatedSeries out =
      TruncatedSeries::constant({"q"}, order, BigRat(1));
  for (int i = 1; i <= order; ++i)
    if (i != skip) out = out * geom_inverse({"q"}, order, i);
  return out;
}

inline TruncatedSeries qpoly_series(const QPoly& p,
                                    const std::vector<std::string>& vars,
                                    int order) {
  TruncatedSeries s(vars, order);
  std::vector<int> e(vars.size(), 0);
  for (int j = 0; j <= p.degree() && j <= order; ++j) {
    e.back() = j;
    s.add_monomial(e, BigRat(p.coeff(j)));
  }
  return s;
}

inline int need_param(const std::optional<int>& v, const std::string& who,
                      const char* param) {
  if (!v)
    throw std::invalid_argument(who + " needs parameter " + param);
  return *v;
}

}  // namespace detail

struct SeriesParams {
  std::optional<int> b;
  std::optional<int> m;
  std::optional<int> ell;
};

// Truncated expansions of the limit identities, keyed by name:
//   no-part-one-limit   prod_{i>=2} 1/(1-q^i)
//   no-part-two-limit   prod_{i>=1, i!=2} 1/(1-q^i)
//   ab-product          prod_{i>=1, i!=ell+1} 1/(1-q^i)
//   lopsided-limit      1 + sum_i t^i q^{i(i+b)} / ((1-q) (1-q^2)^2 ...
//                       (1-q^i)^2 (1-q^{i+1}))
//   box-t1-m-limit      prod_{i<=m} 1/(1-q^i)
//                       - q^{ell+1} prod_{i<=m-ell-1} 1/(1-q^i)
//   drect-m-limit       sum_i t^i q^{i(i+1)}/(q)_i (qbin(m+1,i+1)
//                       - q^{ell+1} qbin(m-ell,i+1))
//   drect-limit         (1-q^{ell+1}) sum_i t^i q^{i(i+1)} / ((q)_i (q)_{i+1})
//   dsq-m-limit         sum_i t^i q^{i^2}/(q)_i (qbin(m,i)
//                       - q^ell (1-q^i) qbin(m-ell+1,i+1))
//   dsq-limit           sum_i t^i q^{i^2} ((1-q^{i+1}) - q^ell (1-q^i))
//                       / ((q)_i (q)_{i+1})
inline TruncatedSeries limit_series(const std::string& name, int D,
                                    SeriesParams params = {}) {
  const std::vector<std::string> qv = {"q"};
  const std::vector<std::string> tq = {"t", "q"};
  const std::string who = "limit_series: '" + name + "'";

  if (name == "no-part-one-limit") return detail::avoiding_product(D, 1);
  if (name == "no-part-two-limit") return detail::avoiding_product(D, 2);

  if (name == "ab-product") {
    int ell = detail::need_param(params.ell, who, "ell");
    if (ell < 0) throw std::domain_error(who + " needs ell >= 0");
    return detail::avoiding_product(D, ell + 1);
  }

  if (name == "lopsided-limit") {
    int b = detail::need_param(params.b, who, "b");
    if (b < 0) throw std::domain_error(who + " needs b >= 0");
    TruncatedSeries sum = TruncatedSeries::constant(tq, D, BigRat(1));
    TruncatedSeries core = detail::geom_inverse(tq, D, 1);
    for (int i = 1; static_cast<long long>(i) * (i + b) <= D; ++i) {
      if (i > 1) {
        TruncatedSeries g = detail::geom_inverse(tq, D, i);
        core = core * g * g;
      }
      TruncatedSeries term = core * detail::geom_inverse(tq, D, i + 1);
      sum = sum + term * detail::monomial_series(tq, D, {i, i * (i + b)});
    }
    return sum;
  }

  if (name == "box-t1-m-limit") {
    int m = detail::need_param(params.m, who, "m");
    int ell = detail::need_param(params.ell, who, "ell");
    if (m < 0 || ell < 0) throw std::domain_error(who + " needs m, ell >= 0");
    TruncatedSeries out = TruncatedSeries::constant(qv, D, BigRat(1));
    for (int i = 1; i <= m; ++i) out = out * detail::geom_inverse(qv, D, i);
    if (m - ell - 1 >= 0) {
      TruncatedSeries second = detail::monomial_series(qv, D, {ell + 1});
      for (int i = 1; i <= m - ell - 1; ++i)
        second = second * detail::geom_inverse(qv, D, i);
      out = out - second;
    }
    return out;
  }

  if (name == "drect-m-limit") {
    int m = detail::need_param(params.m, who, "m");
    int ell = detail::need_param(params.ell, who, "ell");
    if (m < 0 || ell < 0) throw std::domain_error(who + " needs m, ell >= 0");
    TruncatedSeries sum(tq, D);
    TruncatedSeries poch_inv = TruncatedSeries::constant(tq, D, BigRat(1));
    for (int i = 0; static_cast<long long>(i) * (i + 1) <= D; ++i) {
      if (i > 0) poch_inv = poch_inv * detail::geom_inverse(tq, D, i);
      QPoly bracket = qbinom(m + 1, i + 1) -
                      qbinom(m - ell, i + 1).shifted(ell + 1);
      TruncatedSeries term = poch_inv * detail::qpoly_series(bracket, tq, D);
      sum = sum + term * detail::monomial_series(tq, D, {i, i * (i + 1)});
    }
    return sum;
  }

  if (name == "drect-limit") {
    int ell = detail::need_param(params.ell, who, "ell");
    if (ell < 0) throw std::domain_error(who + " needs ell >= 0");
    TruncatedSeries sum(tq, D);
    TruncatedSeries poch_inv = TruncatedSeries::constant(tq, D, BigRat(1));
    for (int i = 0; static_cast<long long>(i) * (i + 1) <= D; ++i) {
      if (i > 0) poch_inv = poch_inv * detail::geom_inverse(tq, D, i);
      TruncatedSeries term =
          poch_inv * poch_inv * detail::geom_inverse(tq, D, i + 1);
      sum = sum + term * detail::monomial_series(tq, D, {i, i * (i + 1)});
    }
    QPoly front = QPoly::one() - QPoly::monomial(ell + 1);
    return detail::qpoly_series(front, tq, D) * sum;
  }

  if (name == "dsq-m-limit") {
    int m = detail::need_param(params.m, who, "m");
    int ell = detail::need_param(params.ell, who, "ell");
    if (m < 0 || ell < 0) throw std::domain_error(who + " needs m, ell >= 0");
    TruncatedSeries sum(tq, D);
    TruncatedSeries poch_inv = TruncatedSeries::constant(tq, D, BigRat(1));
    for (int i = 0; static_cast<long long>(i) * i <= D; ++i) {
      if (i > 0) poch_inv = poch_inv * detail::geom_inverse(tq, D, i);
      QPoly drop = QPoly::one() - QPoly::monomial(i);
      QPoly bracket =
          qbinom(m, i) - (drop * qbinom(m - ell + 1, i + 1)).shifted(ell);
      TruncatedSeries term = poch_inv * detail::qpoly_series(bracket, tq, D);
      sum = sum + term * detail::monomial_series(tq, D, {i, i * i});
    }
    return sum;
  }

  if (name == "dsq-limit") {
    int ell = detail::need_param(params.ell, who, "ell");
    if (ell < 0) throw std::domain_error(who + " needs ell >= 0");
    TruncatedSeries sum(tq, D);
    TruncatedSeries poch_inv = TruncatedSeries::constant(tq, D, BigRat(1));
    for (int i = 0; static_cast<long long>(i) * i <= D; ++i) {
      if (i > 0) poch_inv = poch_inv * detail::geom_inverse(tq, D, i);
      QPoly numer = (QPoly::one() - QPoly::monomial(i + 1)) -
                    (QPoly::one() - QPoly::monomial(i)).shifted(ell);
      TruncatedSeries term = poch_inv * poch_inv *
                             detail::geom_inverse(tq, D, i + 1) *
                             detail::qpoly_series(numer, tq, D);
      sum = sum + term * detail::monomial_series(tq, D, {i, i * i});
    }
    return sum;
  }

  throw std::invalid_argument("limit_series: unknown identity '" + name +
                              "'");
}

struct FiniteRankParams {
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> a;
  std::optional<int> D;
};

using FiniteRankGF = std::variant<QTPoly, TruncatedSeries>;

// Generating functions for partitions whose ranks are confined to a small
// fixed set, keyed by name. The boxed forms are exact polynomials marking
// the Durfee square; the limits are truncated series.
//   rr-box              ranks in {0,-1} inside an m x n box:
//                       sum_k t^k q^{k^2} qbin(M-k+1,k),
//                       M = 2m-1 if m <= n else 2n
//   rr2-box             ranks in {-1,-2}, m, n >= 2:
//                       sum_k t^k q^{k(k+1)} qbin(M-k,k),
//                       M = 2m-2 if m <= n+1 else 2n+1
//   rr1-limit           ranks in {0,-1}, unbounded:
//                       sum_k t^k q^{k^2} / (q)_k
//   zero-minus-a-limit  ranks in {0,-a}, unbounded:
//                       sum_k t^k q^{k^2} (1+q^a)...(1+q^{ak})
//                       / ((1-q^2)...(1-q^{2k}))
inline FiniteRankGF finite_rank_gf(const std::string& name,
                                   FiniteRankParams params = {}) {
  const std::vector<std::string> tq = {"t", "q"};
  const std::string who = "finite_rank_gf: '" + name + "'";

  if (name == "rr-box") {
    int m = detail::need_param(params.m, who, "m");
    int n = detail::need_param(params.n, who, "n");
    if (m < 0 || n < 0) throw std::domain_error(who + " needs m, n >= 0");
    int M = m <= n ? 2 * m - 1 : 2 * n;
    QTPoly out;
    for (int k = 0; k <= n; ++k)
      out.add_term(k, qbinom(M - k + 1, k).shifted(k * k));
    return out;
  }

  if (name == "rr2-box") {
    int m = detail::need_param(params.m, who, "m");
    int n = detail::need_param(params.n, who, "n");
    if (m < 2 || n < 2) throw std::domain_error(who + " needs m, n >= 2");
    int M = m <= n + 1 ? 2 * m - 2 : 2 * n + 1;
    QTPoly out;
    // The sum must run through k = n: when m >= n+1 the k = n binomial is
    // nonzero and the family does contain partitions with that Durfee side.
    for (int k = 0; k <= n; ++k)
      out.add_term(k, qbinom(M - k, k).shifted(k * (k + 1)));
    return out;
  }

  if (name == "rr1-limit") {
    int D = detail::need_param(params.D, who, "D");
    TruncatedSeries sum(tq, D);
    TruncatedSeries poch_inv = TruncatedSeries::constant(tq, D, BigRat(1));
    for (int k = 0; static_cast<long long>(k) * k <= D; ++k) {
      if (k > 0) poch_inv = poch_inv * detail::geom_inverse(tq, D, k);
      sum = sum + poch_inv * detail::monomial_series(tq, D, {k, k * k});
    }
    return sum;
  }

  if (name == "zero-minus-a-limit") {
    int a = detail::need_param(params.a, who, "a");
    int D = detail::need_param(params.D, who, "D");
    if (a < 1) throw std::domain_error(who + " needs a >= 1");
    TruncatedSeries sum(tq, D);
    TruncatedSeries factor = TruncatedSeries::constant(tq, D, BigRat(1));
    for (int k = 0; static_cast<long long>(k) * k <= D; ++k) {
      if (k > 0) {
        QPoly plus = QPoly::one() + QPoly::monomial(a * k);
        factor = factor * detail::qpoly_series(plus, tq, D) *
                 detail::geom_inverse(tq, D, 2 * k);
      }
      sum = sum + factor * detail::monomial_series(tq, D, {k, k * k});
    }
    return sum;
  }

  throw std::invalid_argument("finite_rank_gf: unknown identity '" + name +
                              "'");
}

// Joint distribution of odd and even rank counts over partitions in an
// n x n box, summed with z^n:
//   (1-(t-1)z) / sqrt((1-(t-1)z) (1-(u-1)z) (1+(u-1)(t-1)z^2 - (t+u+2)z)),
// expanded to z-order D. The rational arithmetic must cancel to integers.
inline TruncatedSeries rank_parity_closed_form(int D) {
  const std::vector<std::string> tuz = {"t", "u", "z"};
  TruncatedSeries f1 = TruncatedSeries::constant(tuz, D, BigRat(1));
  f1.add_monomial({1, 0, 1}, BigRat(-1));
  f1.add_monomial({0, 0, 1}, BigRat(1));

  TruncatedSeries f2 = TruncatedSeries::constant(tuz, D, BigRat(1));
  f2.add_monomial({0, 1, 1}, BigRat(-1));
  f2.add_monomial({0, 0, 1}, BigRat(1));

  TruncatedSeries f3 = TruncatedSeries::constant(tuz, D, BigRat(1));
  f3.add_monomial({1, 1, 2}, BigRat(1));
  f3.add_monomial({1, 0, 2}, BigRat(-1));
  f3.add_monomial({0, 1, 2}, BigRat(-1));
  f3.add_monomial({0, 0, 2}, BigRat(1));
  f3.add_monomial({1, 0, 1}, BigRat(-1));
  f3.add_monomial({0, 1, 1}, BigRat(-1));
  f3.add_monomial({0, 0, 1}, BigRat(-2));

  TruncatedSeries out = f1 * (f1 * f2 * f3).invsqrt();
  for (const auto& [exps, value] : out.terms())
    if (boost::multiprecision::denominator(value) != 1)
      throw std::logic_error(
          "rank_parity_closed_form: non-integer coefficient");
  return out;
}

}  // namespace rankpath
