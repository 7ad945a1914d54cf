#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rankpath {

using BigInt = boost::multiprecision::cpp_int;

/**
 * A polynomial in q with exact integer coefficients, stored densely.
 * The zero polynomial is the empty coefficient list and has degree -1;
 * otherwise the trailing coefficient is nonzero and degree = size - 1.
 */
class QPoly {
 public:
  QPoly() = default;

  explicit QPoly(BigInt constant) {
    if (constant != 0) c_.push_back(std::move(constant));
  }

  explicit QPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly one() { return QPoly(BigInt(1)); }

  static QPoly monomial(int exp, BigInt coeff = BigInt(1)) {
    if (exp < 0) throw std::invalid_argument("qpoly: negative exponent");
    QPoly p;
    if (coeff != 0) {
      p.c_.assign(static_cast<std::size_t>(exp) + 1, BigInt(0));
      p.c_.back() = std::move(coeff);
    }
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const BigInt& coeff(int j) const {
    static const BigInt zero(0);
    return (j >= 0 && j <= degree()) ? c_[static_cast<std::size_t>(j)] : zero;
  }

  BigInt at_one() const {
    BigInt s = 0;
    for (const BigInt& c : c_) s += c;
    return s;
  }

  // Multiplication by q^k. A negative k is allowed only when the low-order
  // coefficients it would push below q^0 are all zero.
  QPoly shifted(int k) const {
    if (is_zero()) return QPoly();
    QPoly out;
    if (k >= 0) {
      out.c_.assign(static_cast<std::size_t>(k), BigInt(0));
      out.c_.insert(out.c_.end(), c_.begin(), c_.end());
    } else {
      int drop = -k;
      if (degree() < drop)
        throw std::logic_error("qpoly: shift would truncate nonzero terms");
      for (int j = 0; j < drop; ++j)
        if (c_[static_cast<std::size_t>(j)] != 0)
          throw std::logic_error("qpoly: shift would truncate nonzero terms");
      out.c_.assign(c_.begin() + drop, c_.end());
    }
    return out;
  }

  friend QPoly operator+(const QPoly& a, const QPoly& b) {
    QPoly out;
    out.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t j = 0; j < out.c_.size(); ++j)
      out.c_[j] = a.coeff(static_cast<int>(j)) + b.coeff(static_cast<int>(j));
    out.trim();
    return out;
  }

  friend QPoly operator-(const QPoly& a, const QPoly& b) {
    QPoly out;
    out.c_.resize(std::max(a.c_.size(), b.c_.size()), BigInt(0));
    for (std::size_t j = 0; j < out.c_.size(); ++j)
      out.c_[j] = a.coeff(static_cast<int>(j)) - b.coeff(static_cast<int>(j));
    out.trim();
    return out;
  }

  friend QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly();
    QPoly out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    out.trim();
    return out;
  }

  friend bool operator==(const QPoly& a, const QPoly& b) {
    return a.c_ == b.c_;
  }

  friend std::ostream& operator<<(std::ostream& os, const QPoly& p) {
    return os << render(p, -1);
  }

 private:
  friend class QTPoly;
  friend std::pair<QPoly, QPoly> divmod(const QPoly&, const QPoly&);

  // Shared with QTPoly's printer: renders the terms of p, each multiplied by
  // t^{t_exp} (no t factor when t_exp < 0), as "c*t^i*q^j" pieces.
  static std::string render(const QPoly& p, int t_exp) {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j <= p.degree(); ++j) {
      const BigInt& c = p.coeff(j);
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      std::string factors;
      if (t_exp == 1) factors += "t";
      if (t_exp > 1) factors += "t^" + std::to_string(t_exp);
      if (j == 1) factors += std::string(factors.empty() ? "" : "*") + "q";
      if (j > 1)
        factors +=
            std::string(factors.empty() ? "" : "*") + "q^" + std::to_string(j);
      if (factors.empty())
        os << mag;
      else if (mag == 1)
        os << factors;
      else
        os << mag << "*" << factors;
    }
    if (first) os << "0";
    return os.str();
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

// Long division; requires each leading-coefficient step to divide exactly,
// which always holds for the monic (up to sign) divisors used here.
inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("qpoly: division by zero");
  int db = b.degree();
  const BigInt& lead = b.coeff(db);
  std::vector<BigInt> rem = a.c_;
  std::vector<BigInt> quo(
      a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0,
      BigInt(0));
  for (int d = a.degree(); d >= db; --d) {
    BigInt& cur = rem[static_cast<std::size_t>(d)];
    if (cur == 0) continue;
    if (cur % lead != 0)
      throw std::invalid_argument("qpoly: inexact division step");
    BigInt fac = cur / lead;
    quo[static_cast<std::size_t>(d - db)] = fac;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(d - db + j)] -= fac * b.coeff(j);
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

/**
 * A polynomial in t whose coefficients are QPoly values, i.e. an element of
 * Z[q][t]. Zero coefficients are never stored.
 */
class QTPoly {
 public:
  QTPoly() = default;

  explicit QTPoly(QPoly constant) { add_term(0, std::move(constant)); }

  static QTPoly term(int t_exp, QPoly p) {
    QTPoly out;
    out.add_term(t_exp, std::move(p));
    return out;
  }

  // Adds p * t^{t_exp} into this polynomial.
  void add_term(int t_exp, QPoly p) {
    if (t_exp < 0) throw std::invalid_argument("qtpoly: negative t exponent");
    if (p.is_zero()) return;
    auto it = terms_.find(t_exp);
    if (it == terms_.end()) {
      terms_.emplace(t_exp, std::move(p));
    } else {
      it->second = it->second + p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  int t_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  QPoly coeff_t(int t_exp) const {
    auto it = terms_.find(t_exp);
    return it == terms_.end() ? QPoly() : it->second;
  }

  const std::map<int, QPoly>& terms() const { return terms_; }

  QPoly at_t1() const {
    QPoly s;
    for (const auto& [e, p] : terms_) s = s + p;
    return s;
  }

  // The substitution t -> t q^e, which multiplies the coefficient of t^i by
  // q^{e i}. For negative e every coefficient must be divisible by q^{-e i}.
  QTPoly subst_t_qpow(int e) const {
    QTPoly out;
    for (const auto& [i, p] : terms_) out.add_term(i, p.shifted(e * i));
    return out;
  }

  friend QTPoly operator+(const QTPoly& a, const QTPoly& b) {
    QTPoly out = a;
    for (const auto& [e, p] : b.terms_) out.add_term(e, p);
    return out;
  }

  friend QTPoly operator-(const QTPoly& a, const QTPoly& b) {
    QTPoly out = a;
    for (const auto& [e, p] : b.terms_) out.add_term(e, QPoly() - p);
    return out;
  }

  friend QTPoly operator*(const QTPoly& a, const QTPoly& b) {
    QTPoly out;
    for (const auto& [ea, pa] : a.terms_)
      for (const auto& [eb, pb] : b.terms_) out.add_term(ea + eb, pa * pb);
    return out;
  }

  friend bool operator==(const QTPoly& a, const QTPoly& b) {
    return a.terms_ == b.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const QTPoly& p) {
    return p.print(os);
  }

 private:
  std::ostream& print(std::ostream& os) const {
    if (terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      os << QPoly::render(c, e == 0 ? -1 : e);
      first = false;
    }
    return os;
  }

  std::map<int, QPoly> terms_;
};

}  // namespace rankpath
