#pragma once

/**
 * @file ring.hpp
 * @brief Exact scalar arithmetic: rationals, multivariate polynomials over a
 * declared parameter list, and content-normalized polynomial quotients.
 *
 * Polynomials keep their terms in graded-lexicographic order with the
 * leading term first, so two polynomials are mathematically equal exactly
 * when their term maps are equal. Values are immutable once built.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "statman/errors.hpp"

namespace statman {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using ParamList = std::vector<std::string>;
using ParamsPtr = std::shared_ptr<const ParamList>;
using Exponents = std::vector<int>;
using Assignment = std::map<std::string, Rational>;

enum class Sign { negative, zero, positive };

inline const char* to_string(Sign s) {
  switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "?";
}

inline Sign sign_of(const Rational& r) {
  if (r < 0) return Sign::negative;
  if (r > 0) return Sign::positive;
  return Sign::zero;
}

inline std::string rational_str(const Rational& r) {
  const Integer& num = boost::multiprecision::numerator(r);
  const Integer& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline ParamsPtr make_params(ParamList names) {
  return std::make_shared<const ParamList>(std::move(names));
}

/// Leading term first: higher total degree wins, ties broken lexicographically
/// with the first declared parameter most significant.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  Poly() = default;

  // NOLINTNEXTLINE(google-explicit-constructor): constants promote freely.
  Poly(Rational c) {
    if (c != 0) terms_.emplace(Exponents{}, std::move(c));
  }
  // NOLINTNEXTLINE(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}

  static Poly constant(const ParamsPtr& params, const Rational& c) {
    Poly p;
    p.params_ = params;
    if (c != 0) p.terms_.emplace(Exponents(p.nparams(), 0), c);
    return p;
  }

  static Poly variable(const ParamsPtr& params, const std::string& name) {
    const auto& names = *params;
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw StructuralError("unknown parameter '" + name + "'");
    Exponents e(names.size(), 0);
    e[static_cast<std::size_t>(it - names.begin())] = 1;
    Poly p;
    p.params_ = params;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }

  static Poly from_terms(const ParamsPtr& params, const TermMap& terms) {
    Poly p;
    p.params_ = params;
    for (const auto& [e, c] : terms) {
      if (c == 0) continue;
      if (e.size() != p.nparams()) throw StructuralError("exponent vector length does not match parameter list");
      p.terms_.emplace(e, c);
    }
    return p;
  }

  const ParamsPtr& params() const { return params_; }
  std::size_t nparams() const { return params_ ? params_->size() : 0; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
  }
  Rational constant_term() const {
    for (const auto& [e, c] : terms_)
      if (std::all_of(e.begin(), e.end(), [](int k) { return k == 0; })) return c;
    return 0;
  }
  int degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
  }
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  /// Same polynomial viewed over `params`. Only legal when this polynomial has
  /// no parameters of its own or already uses an equal list.
  Poly rebased(const ParamsPtr& params) const {
    if (params_ == params) return *this;
    const std::size_t n = params ? params->size() : 0;
    if (nparams() == 0) {
      Poly p;
      p.params_ = params;
      for (const auto& [e, c] : terms_) p.terms_.emplace(Exponents(n, 0), c);
      return p;
    }
    if (params && *params == *params_) {
      Poly p = *this;
      p.params_ = params;
      return p;
    }
    throw StructuralError("parameter-list mismatch");
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator+(const Poly& p, const Poly& q) { return combine(p, q, 1); }
  friend Poly operator-(const Poly& p, const Poly& q) { return combine(p, q, -1); }

  friend Poly operator*(const Poly& p, const Poly& q) {
    const ParamsPtr params = unify(p, q);
    const Poly a = p.rebased(params);
    const Poly b = q.rebased(params);
    Poly r;
    r.params_ = params;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  Poly scaled(const Rational& s) const {
    if (s == 0) return Poly::constant(params_, 0);
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c *= s;
    return r;
  }

  Poly& operator+=(const Poly& q) { return *this = *this + q; }
  Poly& operator-=(const Poly& q) { return *this = *this - q; }
  Poly& operator*=(const Poly& q) { return *this = *this * q; }

  friend bool operator==(const Poly& p, const Poly& q) {
    if (p.nparams() == 0 || q.nparams() == 0 || p.params_ == q.params_) {
      if (p.terms_.size() != q.terms_.size()) return false;
      auto it = q.terms_.begin();
      for (const auto& [e, c] : p.terms_) {
        const bool same_exp = e == it->first ||
            (std::all_of(e.begin(), e.end(), [](int k) { return k == 0; }) &&
             std::all_of(it->first.begin(), it->first.end(), [](int k) { return k == 0; }));
        if (!same_exp || c != it->second) return false;
        ++it;
      }
      return true;
    }
    return (p - q).is_zero();
  }
  friend bool operator!=(const Poly& p, const Poly& q) { return !(p == q); }

  /// Exact value at `assignment`; every parameter that actually occurs must be
  /// assigned.
  Rational eval(const Assignment& assignment) const {
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        const auto& name = (*params_)[i];
        auto it = assignment.find(name);
        if (it == assignment.end()) throw EvaluationError("no value assigned to parameter '" + name + "'");
        for (int k = 0; k < e[i]; ++k) term *= it->second;
      }
      total += term;
    }
    return total;
  }

  /// Partial substitution; unassigned parameters stay symbolic.
  Poly substitute(const Assignment& assignment) const {
    Poly r;
    r.params_ = params_;
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      Rational coef = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        auto it = assignment.find((*params_)[i]);
        if (it == assignment.end() || e[i] == 0) continue;
        for (int k = 0; k < e[i]; ++k) coef *= it->second;
        rest[i] = 0;
      }
      r.add_term(rest, coef);
    }
    return r;
  }

  /// Canonical text: leading term first, explicit '*', integer fractions,
  /// e.g. "3*a - 15" or "3/2*b^2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      const std::string mono = monomial_str(e);
      if (mono.empty()) {
        out += rational_str(mag);
      } else if (mag == 1) {
        out += mono;
      } else {
        out += rational_str(mag) + "*" + mono;
      }
    }
    return out;
  }

 /// Common parameter list of two operands, or StructuralError.
  static ParamsPtr unify(const Poly& p, const Poly& q) {
    if (p.params_ == q.params_) return p.params_;
    if (p.nparams() == 0) return q.params_ ? q.params_ : p.params_;
    if (q.nparams() == 0) return p.params_;
    if (*p.params_ == *q.params_) return p.params_;
    throw StructuralError("parameter-list mismatch");
  }

  static Poly combine(const Poly& p, const Poly& q, int s) {
    const ParamsPtr params = unify(p, q);
    Poly r = p.rebased(params);
    for (const auto& [e, c] : q.rebased(params).terms_) r.add_term(e, s > 0 ? c : Rational(-c));
    return r;
  }

 private:
  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::string monomial_str(const Exponents& e) const {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += (*params_)[i];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }

  ParamsPtr params_;
  TermMap terms_;
};

inline Sign poly_sign(const Poly& p, const Assignment& assignment) { return sign_of(p.eval(assignment)); }

/// Exact division when `divisor` divides `dividend` over the rationals.
/// A single polynomial is a Groebner basis of its ideal, so the division
/// algorithm leaves remainder zero exactly in the divisible case.
inline std::optional<Poly> divide_exact(const Poly& dividend, const Poly& divisor) {
  if (divisor.is_zero()) throw DivisionError("division by the zero polynomial");
  const ParamsPtr params = Poly::unify(dividend, divisor);
  Poly rest = dividend.rebased(params);
  const Poly d = divisor.rebased(params);
  Poly quotient = Poly::constant(params, 0);
  const std::size_t n = d.nparams();
  while (!rest.is_zero()) {
    const Exponents& er = rest.leading_exponents();
    const Exponents& ed = d.leading_exponents();
    Exponents shift(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      shift[i] = er[i] - ed[i];
      if (shift[i] < 0) return std::nullopt;
    }
    Poly::TermMap single;
    single.emplace(shift, rest.leading_coefficient() / d.leading_coefficient());
    const Poly step = Poly::from_terms(params, single);
    quotient += step;
    rest = rest - step * d;
  }
  return quotient;
}

/// A lazy numerator/denominator pair. Equality is decided by
/// cross-multiplication; the stored representative is content-normalized
/// (integer coefficients without a common factor, positive leading
/// denominator coefficient, no shared monomial factor), and collapsed to a
/// polynomial whenever the denominator divides the numerator exactly.
class RingQuotient {
 public:
  RingQuotient() : num_(0), den_(1) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  RingQuotient(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.params(), 1)) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  RingQuotient(const Rational& r) : RingQuotient(Poly(r)) {}
  // NOLINTNEXTLINE(google-explicit-constructor)
  RingQuotient(int r) : RingQuotient(Poly(r)) {}

  RingQuotient(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Only meaningful when is_polynomial().
  Poly as_poly() const { return num_.scaled(Rational(1) / den_.constant_term()); }

  Rational eval(const Assignment& assignment) const {
    const Rational d = den_.eval(assignment);
    if (d == 0) throw DivisionError("denominator vanishes at the given assignment");
    return num_.eval(assignment) / d;
  }

  RingQuotient operator-() const { return RingQuotient(-num_, den_, raw_tag{}); }
  friend RingQuotient operator+(const RingQuotient& x, const RingQuotient& y) {
    if (x.den_ == y.den_) return {x.num_ + y.num_, x.den_};
    return {x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_};
  }
  friend RingQuotient operator-(const RingQuotient& x, const RingQuotient& y) { return x + (-y); }
  friend RingQuotient operator*(const RingQuotient& x, const RingQuotient& y) {
    return {x.num_ * y.num_, x.den_ * y.den_};
  }
  friend RingQuotient operator/(const RingQuotient& x, const RingQuotient& y) {
    if (y.is_zero()) throw DivisionError("division by a zero quotient");
    return {x.num_ * y.den_, x.den_ * y.num_};
  }
  friend bool operator==(const RingQuotient& x, const RingQuotient& y) {
    return x.num_ * y.den_ == y.num_ * x.den_;
  }
  friend bool operator!=(const RingQuotient& x, const RingQuotient& y) { return !(x == y); }

  std::string str() const {
    if (den_.is_constant() && den_.constant_term() == 1) return num_.str();
    std::string n = num_.str();
    std::string d = den_.str();
    if (num_.terms().size() > 1) n = "(" + n + ")";
    if (den_.terms().size() > 1 || !den_.is_constant()) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  struct raw_tag {};
  RingQuotient(Poly num, Poly den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw DivisionError("zero denominator");
    if (num_.is_zero()) {
      num_ = Poly::constant(num_.params() ? num_.params() : den_.params(), 0);
      den_ = Poly::constant(num_.params(), 1);
      return;
    }
    if (auto q = divide_exact(num_, den_)) {
      num_ = *q;
      den_ = Poly::constant(num_.params(), 1);
      return;
    }
    remove_monomial_content();
    // Clear fractions, then strip the integer content shared by both sides.
    Integer l = 1;
    Integer g = 0;
    for (const Poly* p : {&num_, &den_})
      for (const auto& [e, c] : p->terms()) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
    for (const Poly* p : {&num_, &den_})
      for (const auto& [e, c] : p->terms()) {
        const Integer scaled = boost::multiprecision::numerator(c * Rational(l));
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(scaled));
      }
    Rational factor = Rational(l) / Rational(g);
    if (den_.leading_coefficient() < 0) factor = -factor;
    num_ = num_.scaled(factor);
    den_ = den_.scaled(factor);
  }

  void remove_monomial_content() {
    const ParamsPtr params = num_.nparams() ? num_.params() : den_.params();
    const std::size_t n = params ? params->size() : 0;
    if (n == 0) return;
    const Poly a = num_.rebased(params);
    const Poly b = den_.rebased(params);
    Exponents low(n, 1 << 20);
    for (const Poly* p : {&a, &b})
      for (const auto& [e, c] : p->terms())
        for (std::size_t i = 0; i < n; ++i) low[i] = std::min(low[i], e[i]);
    if (std::all_of(low.begin(), low.end(), [](int k) { return k == 0; })) return;
    auto shift = [&](const Poly& p) {
      Poly::TermMap t;
      for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        for (std::size_t i = 0; i < n; ++i) f[i] -= low[i];
        t.emplace(std::move(f), c);
      }
      return Poly::from_terms(params, t);
    };
    num_ = shift(a);
    den_ = shift(b);
  }

  Poly num_;
  Poly den_;
};

inline RingQuotient quotient_normalize(const RingQuotient& q) {
  return RingQuotient(q.numerator(), q.denominator());
}

inline Sign quotient_sign(const RingQuotient& q, const Assignment& assignment) {
  return sign_of(q.eval(assignment));
}

/// Parses "3", "-2/5", "0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw StructuralError("empty rational literal");
  std::string s = text;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  Rational value;
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  auto integer = [&](const std::string& digits) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw StructuralError("malformed rational literal '" + text + "'");
    return Integer(digits);
  };
  if (slash != std::string::npos) {
    const Integer d = integer(s.substr(slash + 1));
    if (d == 0) throw DivisionError("zero denominator in literal '" + text + "'");
    value = Rational(integer(s.substr(0, slash))) / Rational(d);
  } else if (dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(whole.empty() ? Integer(0) : integer(whole)) + Rational(frac.empty() ? Integer(0) : integer(frac)) / Rational(scale);
  } else {
    value = Rational(integer(s));
  }
  return negative ? Rational(-value) : value;
}

/// Parses "a=0,beta=1/2" style assignments.
inline Assignment parse_assignment(const std::string& text) {
  Assignment out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw StructuralError("assignment item '" + item + "' lacks '='");
    out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
  }
  return out;
}

}  // namespace statman
