#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rankpath {

using BigRat = boost::multiprecision::cpp_rational;

/**
 * A multivariate formal power series with exact rational coefficients,
 * truncated in its last variable only. The earlier variables are not
 * truncated; operations must therefore keep the coefficient of each power of
 * the truncation variable polynomial in the others (all the series built
 * here do, because every non-constant term carries the truncation variable).
 */
class TruncatedSeries {
 public:
  TruncatedSeries(std::vector<std::string> variables, int order)
      : vars_(std::move(variables)), order_(order) {
    if (vars_.empty())
      throw std::invalid_argument("series: needs at least one variable");
    if (order_ < 0)
      throw std::invalid_argument("series: negative truncation order");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j])
          throw std::invalid_argument("series: duplicate variable name");
  }

  static TruncatedSeries constant(std::vector<std::string> variables,
                                  int order, BigRat value) {
    TruncatedSeries s(std::move(variables), order);
    s.add_monomial(std::vector<int>(s.vars_.size(), 0), value);
    return s;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  int order() const { return order_; }
  const std::map<std::vector<int>, BigRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Accumulates value * Π vars[i]^{exps[i]}. Terms beyond the truncation
  // order in the last variable are discarded, matching ring semantics.
  void add_monomial(const std::vector<int>& exps, const BigRat& value) {
    check_exponents(exps);
    if (value == 0 || exps.back() > order_) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      terms_.emplace(exps, value);
    } else {
      it->second += value;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigRat coeff(const std::vector<int>& exps) const {
    check_exponents(exps);
    if (exps.back() > order_)
      throw std::invalid_argument("series: coefficient beyond truncation");
    auto it = terms_.find(exps);
    return it == terms_.end() ? BigRat(0) : it->second;
  }

  TruncatedSeries scaled(const BigRat& c) const {
    TruncatedSeries out(vars_, order_);
    if (c == 0) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
    return out;
  }

  TruncatedSeries truncated(int new_order) const {
    if (new_order < 0 || new_order > order_)
      throw std::invalid_argument("series: bad truncation order");
    TruncatedSeries out(vars_, new_order);
    for (const auto& [e, v] : terms_)
      if (e.back() <= new_order) out.terms_.emplace(e, v);
    return out;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    a.check_shape(b);
    TruncatedSeries out = a;
    for (const auto& [e, v] : b.terms_) out.add_monomial(e, v);
    return out;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    a.check_shape(b);
    TruncatedSeries out = a;
    for (const auto& [e, v] : b.terms_) out.add_monomial(e, -v);
    return out;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    a.check_shape(b);
    TruncatedSeries out(a.vars_, a.order_);
    std::vector<int> e(a.vars_.size());
    for (const auto& [ea, va] : a.terms_) {
      for (const auto& [eb, vb] : b.terms_) {
        if (ea.back() + eb.back() > a.order_) continue;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_monomial(e, va * vb);
      }
    }
    return out;
  }

  // Multiplicative inverse by Newton iteration y <- y(2 - f y). Requires the
  // part of f free of the truncation variable to be a nonzero constant, so
  // that each iteration doubles the number of correct orders.
  TruncatedSeries inverse() const {
    BigRat c0 = unit_part("inverse");
    TruncatedSeries y = constant(vars_, order_, BigRat(1) / c0);
    TruncatedSeries two = constant(vars_, order_, BigRat(2));
    for (long long prec = 1; prec <= order_; prec *= 2)
      y = y * (two - (*this) * y);
    return y;
  }

  // Inverse square root by Newton iteration y <- y(3 - f y^2)/2. Requires
  // the part free of the truncation variable to equal 1 exactly.
  TruncatedSeries invsqrt() const {
    BigRat c0 = unit_part("invsqrt");
    if (c0 != 1)
      throw std::invalid_argument(
          "series: invsqrt needs constant term exactly 1");
    TruncatedSeries y = constant(vars_, order_, BigRat(1));
    TruncatedSeries three = constant(vars_, order_, BigRat(3));
    BigRat half(1, 2);
    for (long long prec = 1; prec <= order_; prec *= 2)
      y = (y * (three - (*this) * y * y)).scaled(half);
    return y;
  }

  // Specialises one of the non-truncation variables to 1 by dropping its
  // exponent and merging coefficients.
  TruncatedSeries set_to_one(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end())
      throw std::invalid_argument("series: unknown variable '" + var + "'");
    std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
    if (idx + 1 == vars_.size())
      throw std::invalid_argument(
          "series: cannot eliminate the truncation variable");
    std::vector<std::string> nv = vars_;
    nv.erase(nv.begin() + static_cast<std::ptrdiff_t>(idx));
    TruncatedSeries out(std::move(nv), order_);
    std::vector<int> e;
    for (const auto& [exps, v] : terms_) {
      e = exps;
      e.erase(e.begin() + static_cast<std::ptrdiff_t>(idx));
      out.add_monomial(e, v);
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.vars_ == b.vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    if (s.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [exps, v] : s.terms_) {
      BigRat mag = v < 0 ? BigRat(-v) : v;
      if (first)
        os << (v < 0 ? "-" : "");
      else
        os << (v < 0 ? " - " : " + ");
      first = false;
      std::string factors;
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += s.vars_[i];
        if (exps[i] > 1) factors += "^" + std::to_string(exps[i]);
      }
      if (factors.empty())
        os << mag;
      else if (mag == 1)
        os << factors;
      else
        os << mag << "*" << factors;
    }
    return os;
  }

 private:
  void check_exponents(const std::vector<int>& exps) const {
    if (exps.size() != vars_.size())
      throw std::invalid_argument("series: exponent arity mismatch");
    for (int e : exps)
      if (e < 0) throw std::invalid_argument("series: negative exponent");
  }

  void check_shape(const TruncatedSeries& o) const {
    if (vars_ != o.vars_ || order_ != o.order_)
      throw std::invalid_argument(
          "series: operands have different variables or truncation");
  }

  // The coefficient of (truncation variable)^0, which must involve no other
  // variable; used as the starting point of the Newton iterations.
  BigRat unit_part(const char* who) const {
    BigRat c0 = 0;
    for (const auto& [exps, v] : terms_) {
      if (exps.back() != 0) continue;
      for (std::size_t i = 0; i + 1 < exps.size(); ++i)
        if (exps[i] != 0)
          throw std::invalid_argument(std::string("series: ") + who +
                                      " needs a constant unit part");
      c0 = v;
    }
    if (c0 == 0)
      throw std::invalid_argument(std::string("series: ") + who +
                                  " of a series with zero constant term");
    return c0;
  }

  std::vector<std::string> vars_;
  int order_;
  std::map<std::vector<int>, BigRat> terms_;
};

/**
 * The exponent sequence of a product expansion: s[i-1] holds s_i in
 * Π_{i≥1} (1-q^i)^{-s_i}.
 */
struct ExponentSequence {
  std::vector<long long> s;

  friend bool operator==(const ExponentSequence&,
                         const ExponentSequence&) = default;

  friend std::ostream& operator<<(std::ostream& os,
                                  const ExponentSequence& e) {
    os << "(";
    for (std::size_t i = 0; i < e.s.size(); ++i)
      os << (i ? ", " : "") << e.s[i];
    return os << ")";
  }
};

// Peels a univariate series with constant term 1 into the exponents of its
// expansion as a product of factors 1/(1-q^i), order by order.
inline ExponentSequence product_exponents(const TruncatedSeries& f, int D) {
  if (f.variables().size() != 1)
    throw std::invalid_argument("product_exponents: series must be univariate");
  if (D < 0 || f.order() < D)
    throw std::invalid_argument(
        "product_exponents: series is not expanded far enough");
  if (f.coeff({0}) != 1)
    throw std::invalid_argument("product_exponents: constant term must be 1");

  TruncatedSeries r = f.truncated(D);
  ExponentSequence out;
  out.s.reserve(static_cast<std::size_t>(D));
  for (int i = 1; i <= D; ++i) {
    BigRat c = r.coeff({i});
    if (boost::multiprecision::denominator(c) != 1)
      throw std::invalid_argument("product_exponents: non-integer exponent");
    long long si =
        static_cast<long long>(boost::multiprecision::numerator(c));
    out.s.push_back(si);
    if (si > 0) {
      TruncatedSeries factor =
          TruncatedSeries::constant(f.variables(), D, BigRat(1));
      factor.add_monomial({i}, BigRat(-1));
      for (long long k = 0; k < si; ++k) r = r * factor;
    } else if (si < 0) {
      TruncatedSeries geom(f.variables(), D);
      for (int j = 0; i * j <= D; ++j) geom.add_monomial({i * j}, BigRat(1));
      for (long long k = 0; k < -si; ++k) r = r * geom;
    }
  }
  return out;
}

}  // namespace rankpath
