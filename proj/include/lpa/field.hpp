#pragma once

// Exact coefficient fields: Q, prime fields F_p and simple extensions
// K[t]/(f) of either, plus univariate polynomials over any of them.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpa/error.hpp"

namespace lpa {

using Rational = mpq_class;
using Integer = mpz_class;

// Coefficient list, lowest degree first, over Q or a prime field.
using RawPoly = std::vector<Rational>;

namespace detail {

inline bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Integer floor_mod(const Integer& a, unsigned long p) {
  Integer r;
  Integer m(p);
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Canonical representative of x in Q (p == 0) or in F_p as an integer in [0, p).
inline Rational reduce_base(unsigned long p, Rational x) {
  x.canonicalize();
  if (p == 0) return x;
  Integer num = floor_mod(x.get_num(), p);
  const Integer& den = x.get_den();
  if (den != 1) {
    Integer inv;
    Integer m(p);
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
      throw ArithmeticError("denominator " + den.get_str() + " is not invertible mod "
                            + std::to_string(p));
    num = floor_mod(Integer(num * inv), p);
  }
  return Rational(num);
}

inline Rational base_inverse(unsigned long p, const Rational& x) {
  if (x == 0) throw ArithmeticError("inverse of zero");
  return reduce_base(p, Rational(Rational(1) / x));
}

inline void trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RawPoly raw_add(unsigned long p, const RawPoly& a, const RawPoly& b) {
  RawPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  for (auto& c : r) c = reduce_base(p, c);
  trim(r);
  return r;
}

inline RawPoly raw_scale(unsigned long p, const RawPoly& a, const Rational& s) {
  RawPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce_base(p, Rational(a[i] * s));
  trim(r);
  return r;
}

inline RawPoly raw_mul(unsigned long p, const RawPoly& a, const RawPoly& b) {
  if (a.empty() || b.empty()) return {};
  RawPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (auto& c : r) c = reduce_base(p, c);
  trim(r);
  return r;
}

// a = q*b + r with deg r < deg b; b must be nonzero.
inline void raw_divmod(unsigned long p, RawPoly a, const RawPoly& b, RawPoly& q, RawPoly& r) {
  if (b.empty()) throw ArithmeticError("polynomial division by zero");
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead_inv = base_inverse(p, b.back());
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational factor = reduce_base(p, Rational(a.back() * lead_inv));
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = reduce_base(p, Rational(a[shift + i] - factor * b[i]));
    trim(a);
  }
  trim(q);
  r = std::move(a);
}

inline RawPoly raw_mod(unsigned long p, const RawPoly& a, const RawPoly& f) {
  RawPoly q, r;
  raw_divmod(p, a, f, q, r);
  return r;
}

// Inverse of a modulo f; throws when gcd(a, f) != 1.
inline RawPoly raw_inverse_mod(unsigned long p, const RawPoly& a, const RawPoly& f) {
  RawPoly r0 = f, r1 = raw_mod(p, a, f);
  RawPoly s0, s1{Rational(1)};
  if (r1.empty()) throw ArithmeticError("inverse of zero");
  while (!r1.empty()) {
    RawPoly q, r;
    raw_divmod(p, r0, r1, q, r);
    RawPoly s = raw_add(p, s0, raw_scale(p, raw_mul(p, q, s1), Rational(-1)));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw ArithmeticError("element is not invertible modulo the field modulus");
  return raw_scale(p, s0, base_inverse(p, r0[0]));
}

inline std::string rational_to_string(const Rational& x) { return x.get_str(); }

// Prints "t^3+t+1", "2*t^2-1/2", "0".
inline std::string raw_to_string(const RawPoly& a, std::string_view var = "t") {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t k = a.size(); k-- > 0;) {
    const Rational& c = a[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (!out.empty())
      out += negative ? "-" : "+";
    else if (negative)
      out += "-";
    if (k == 0) {
      out += rational_to_string(mag);
      continue;
    }
    if (mag != 1) out += rational_to_string(mag) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// A coefficient field. Immutable; shared through FieldPtr.
class Field {
  struct Private {};

 public:
  enum class Kind { Rationals, Prime, Extension };

  Field(Private, Kind kind, unsigned long p, RawPoly modulus, bool assumed)
      : kind_(kind), p_(p), modulus_(std::move(modulus)), assumed_(assumed) {}

  static FieldPtr rationals() {
    static const FieldPtr q = std::make_shared<const Field>(Private{}, Kind::Rationals, 0, RawPoly{}, false);
    return q;
  }

  static FieldPtr prime(unsigned long p) {
    if (!detail::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    return std::make_shared<const Field>(Private{}, Kind::Prime, p, RawPoly{}, false);
  }

  // K[t]/(f) for a base field K; f monic, irreducible, f(0) != 0. Over Q,
  // irreducibility is only decidable here up to degree 3; larger moduli
  // need assume_irreducible, which is recorded on the field.
  static FieldPtr extension(const FieldPtr& base, RawPoly modulus, bool assume_irreducible = false);

  Kind kind() const noexcept { return kind_; }
  bool is_extension() const noexcept { return kind_ == Kind::Extension; }
  bool is_base() const noexcept { return kind_ != Kind::Extension; }
  unsigned long characteristic() const noexcept { return p_; }
  std::size_t degree() const noexcept { return modulus_.empty() ? 1 : modulus_.size() - 1; }
  const RawPoly& modulus() const noexcept { return modulus_; }
  bool irreducibility_assumed() const noexcept { return assumed_; }
  bool is_finite() const noexcept { return p_ != 0; }

  std::optional<Integer> order() const {
    if (p_ == 0) return std::nullopt;
    Integer q;
    mpz_ui_pow_ui(q.get_mpz_t(), p_, degree());
    return q;
  }

  FieldPtr base_field() const { return p_ == 0 ? rationals() : prime(p_); }

  std::string name() const {
    std::string b = p_ == 0 ? "Q" : "F" + std::to_string(p_);
    if (!is_extension()) return b;
    return b + "[t]/(" + detail::raw_to_string(modulus_) + ")";
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  Kind kind_;
  unsigned long p_;
  RawPoly modulus_;
  bool assumed_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!same_field(a, b))
    throw ArithmeticError("field mismatch: " + (a ? a->name() : "?") + " vs " + (b ? b->name() : "?"));
}

// An element of a Field. Base-field elements carry one coefficient;
// extension elements carry their residue modulo the field modulus.
class Scalar {
 public:
  Scalar() = default;
  Scalar(FieldPtr f, long v) : Scalar(std::move(f), Rational(v)) {}
  Scalar(FieldPtr f, const Rational& v) : field_(std::move(f)) {
    RawPoly c{detail::reduce_base(field_->characteristic(), v)};
    detail::trim(c);
    coeffs_ = std::move(c);
  }

  static Scalar from_coefficients(FieldPtr f, RawPoly c) {
    Scalar s;
    const unsigned long p = f->characteristic();
    for (auto& x : c) x = detail::reduce_base(p, x);
    detail::trim(c);
    if (f->is_extension()) c = detail::raw_mod(p, c, f->modulus());
    if (c.size() > f->degree()) throw ArithmeticError("coefficient vector too long for field");
    s.field_ = std::move(f);
    s.coeffs_ = std::move(c);
    return s;
  }

  static Scalar zero(FieldPtr f) { return Scalar(std::move(f), 0L); }
  static Scalar one(FieldPtr f) { return Scalar(std::move(f), 1L); }

  // The class of t in K[t]/(f).
  static Scalar generator(FieldPtr f) {
    if (!f->is_extension()) throw PreconditionError("generator() needs an extension field");
    return from_coefficients(std::move(f), RawPoly{Rational(0), Rational(1)});
  }

  const FieldPtr& field() const noexcept { return field_; }
  // Trimmed coefficients (empty means zero).
  const RawPoly& coefficients() const noexcept { return coeffs_; }
  // Coefficient i in the power basis 1, t, ..., t^{d-1}.
  Rational coordinate(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

  Scalar operator-() const {
    Scalar r = *this;
    for (auto& c : r.coeffs_) c = detail::reduce_base(p(), Rational(-c));
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    require_same_field(field_, o.field_);
    coeffs_ = detail::raw_add(p(), coeffs_, o.coeffs_);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    require_same_field(field_, o.field_);
    RawPoly prod = detail::raw_mul(p(), coeffs_, o.coeffs_);
    if (field_->is_extension()) prod = detail::raw_mod(p(), prod, field_->modulus());
    coeffs_ = std::move(prod);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const {
    if (is_zero()) throw ArithmeticError("inverse of zero");
    Scalar r = *this;
    if (field_->is_extension())
      r.coeffs_ = detail::raw_inverse_mod(p(), coeffs_, field_->modulus());
    else
      r.coeffs_ = {detail::base_inverse(p(), coeffs_[0])};
    return r;
  }

  Scalar pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result = one(field_), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return same_field(a.field_, b.field_) && a.coeffs_ == b.coeffs_;
  }

  // Deterministic total order within one field (for canonical output).
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (std::size_t i = a.coeffs_.size(); i-- > 0;)
      if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    return false;
  }

  std::string to_string() const {
    if (!field_) return "<null>";
    if (field_->is_extension()) return detail::raw_to_string(coeffs_);
    return is_zero() ? "0" : detail::rational_to_string(coeffs_[0]);
  }

 private:
  unsigned long p() const { return field_->characteristic(); }

  FieldPtr field_;
  RawPoly coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

// Random element: uniform over finite fields, small fractions over Q.
template <class Rng>
Scalar random_scalar(const FieldPtr& f, Rng& rng) {
  RawPoly c(f->degree());
  const unsigned long p = f->characteristic();
  for (auto& x : c) {
    if (p != 0) {
      x = Rational(static_cast<long>(std::uniform_int_distribution<unsigned long>(0, p - 1)(rng)));
    } else {
      const long num = std::uniform_int_distribution<long>(-4, 4)(rng);
      const long den = std::uniform_int_distribution<long>(1, 3)(rng);
      x = Rational(num, den);
    }
  }
  return Scalar::from_coefficients(f, std::move(c));
}

template <class Rng>
Scalar random_nonzero_scalar(const FieldPtr& f, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

// All elements of a finite field, ordered by their base-p digit encoding.
inline std::vector<Scalar> field_elements(const FieldPtr& f) {
  if (!f->is_finite()) throw PreconditionError("field_elements needs a finite field");
  const unsigned long p = f->characteristic();
  const std::size_t d = f->degree();
  std::vector<Scalar> out;
  std::vector<unsigned long> digits(d, 0);
  for (;;) {
    RawPoly c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = Rational(static_cast<long>(digits[i]));
    out.push_back(Scalar::from_coefficients(f, std::move(c)));
    std::size_t i = 0;
    while (i < d && ++digits[i] == p) digits[i++] = 0;
    if (i == d) break;
  }
  return out;
}

// Univariate polynomial over a Field; coefficients lowest degree first.
class Poly {
 public:
  explicit Poly(FieldPtr f) : field_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Scalar> c) : field_(std::move(f)), coeffs_(std::move(c)) {
    for (const auto& s : coeffs_) require_same_field(field_, s.field());
    trim();
  }

  static Poly from_raw(const FieldPtr& base, const RawPoly& raw) {
    std::vector<Scalar> c;
    c.reserve(raw.size());
    for (const auto& r : raw) c.emplace_back(base, r);
    return Poly(base, std::move(c));
  }

  static Poly monomial(const FieldPtr& f, const Scalar& c, std::size_t deg) {
    std::vector<Scalar> v(deg + 1, Scalar::zero(f));
    v[deg] = c;
    return Poly(f, std::move(v));
  }
  static Poly variable(const FieldPtr& f) { return monomial(f, Scalar::one(f), 1); }
  static Poly constant(const FieldPtr& f, const Scalar& c) { return monomial(f, c, 0); }

  const FieldPtr& field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }
  Scalar coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar::zero(field_); }
  Scalar leading() const { return is_zero() ? Scalar::zero(field_) : coeffs_.back(); }
  bool is_monic() const { return !is_zero() && leading().is_one(); }
  // True for the polynomial t itself.
  bool is_variable() const { return degree() == 1 && coeffs_[0].is_zero() && coeffs_[1].is_one(); }

  RawPoly raw() const {
    if (!field_->is_base()) throw PreconditionError("raw() needs a polynomial over a base field");
    RawPoly r;
    for (const auto& c : coeffs_) r.push_back(c.coordinate(0));
    return r;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    const Scalar inv = leading().inverse();
    Poly r = *this;
    for (auto& c : r.coeffs_) c *= inv;
    return r;
  }

  Scalar eval(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    require_same_field(field_, o.field_);
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar::zero(field_));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    require_same_field(a.field_, b.field_);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<Scalar> r(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(a.field_, std::move(r));
  }

  // (quotient, remainder)
  std::pair<Poly, Poly> divmod(const Poly& b) const {
    require_same_field(field_, b.field_);
    if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
    Poly r = *this;
    std::vector<Scalar> q(coeffs_.size() >= b.coeffs_.size() ? coeffs_.size() - b.coeffs_.size() + 1 : 0,
                          Scalar::zero(field_));
    const Scalar lead_inv = b.leading().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      const std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      const Scalar factor = r.leading() * lead_inv;
      q[shift] = factor;
      for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[shift + i] -= factor * b.coeffs_[i];
      r.trim();
    }
    return {Poly(field_, std::move(q)), std::move(r)};
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }

  friend Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return same_field(a.field_, b.field_) && a.coeffs_ == b.coeffs_;
  }

  // Degree first, then coefficients from the top: matches sorting by the
  // base-p encoding sum c_i p^i over a prime field.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.coeffs_.size(); i-- > 0;)
      if (!(a.coeffs_[i] == b.coeffs_[i])) return a.coeffs_[i] < b.coeffs_[i];
    return false;
  }

  std::string to_string(std::string_view var = "t") const {
    if (field_->is_base()) return detail::raw_to_string(raw(), var);
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      if (coeffs_[k].is_zero()) continue;
      if (!out.empty()) out += "+";
      std::string term = "[" + coeffs_[k].to_string() + "]";
      if (k > 0) term += std::string("*") + std::string(var) + (k > 1 ? "^" + std::to_string(k) : "");
      out += term;
    }
    return out;
  }

  // Parses text such as "t^3+t+1", "2*t^2 - 1/3", "t-2" over a base field.
  static Poly parse(const FieldPtr& base, std::string_view text, std::string_view var = "t");

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  FieldPtr field_;
  std::vector<Scalar> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

namespace detail {

// Minimal recursive-descent reader for polynomial text in one variable.
class PolyReader {
 public:
  PolyReader(std::string_view text, std::string_view var) : s_(text), var_(var) {}

  RawPoly read(unsigned long p) {
    RawPoly acc;
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [coef, deg] = term();
      RawPoly t(deg + 1, Rational(0));
      t[deg] = sign * coef;
      acc = raw_add(p, acc, t);
      skip();
    }
    return acc;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial: " + msg, 1, pos_ + 1);
  }
  Integer integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  bool at_var() const { return s_.substr(pos_, var_.size()) == var_; }

  std::pair<Rational, std::size_t> term() {
    Rational coef(1);
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer num = integer();
      Integer den(1);
      skip();
      if (peek() == '/') {
        ++pos_;
        skip();
        den = integer();
        if (den == 0) fail("zero denominator");
      }
      coef = Rational(num, den);
      coef.canonicalize();
      have_coef = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (!at_var()) fail("expected variable after '*'");
      }
    }
    if (!at_var()) {
      if (!have_coef) fail("expected a coefficient or the variable");
      return {coef, 0};
    }
    pos_ += var_.size();
    skip();
    std::size_t deg = 1;
    if (peek() == '^') {
      ++pos_;
      skip();
      deg = static_cast<std::size_t>(integer().get_ui());
    }
    return {coef, deg};
  }

  std::string_view s_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(const FieldPtr& base, std::string_view text, std::string_view var) {
  if (!base->is_base()) throw PreconditionError("polynomial text is parsed over a base field");
  return from_raw(base, detail::PolyReader(text, var).read(base->characteristic()));
}

// Every monic polynomial of exactly the given degree over a finite field.
inline std::vector<Poly> monic_polynomials(const FieldPtr& f, int degree) {
  const auto elems = field_elements(f);
  std::vector<Poly> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  for (;;) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < idx.size(); ++i) c.push_back(elems[idx[i]]);
    c.push_back(Scalar::one(f));
    out.emplace_back(f, std::move(c));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(Integer(n / d));
    }
  }
  return out;
}

// A rational root of a polynomial over Q, if any.
inline std::optional<Rational> rational_root(const Poly& f) {
  RawPoly raw = f.raw();
  Integer lcm_den(1);
  for (const auto& c : raw) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  for (const auto& c : raw) ints.push_back(Integer(c.get_num() * (lcm_den / c.get_den())));
  if (ints.front() == 0) return Rational(0);
  for (const auto& num : positive_divisors(ints.front())) {
    for (const auto& den : positive_divisors(ints.back())) {
      for (int sgn : {1, -1}) {
        Rational r(Integer(sgn * num), den);
        r.canonicalize();
        if (f.eval(Scalar(f.field(), r)).is_zero()) return r;
      }
    }
  }
  return std::nullopt;
}

inline bool has_rational_root(const Poly& f) { return rational_root(f).has_value(); }

}  // namespace detail

// Irreducibility over the polynomial's field. Finite fields: trial division
// by every monic polynomial of degree <= deg/2. Q: exact up to degree 3.
inline bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const FieldPtr& k = f.field();
  if (k->is_finite()) {
    for (int d = 1; d <= f.degree() / 2; ++d)
      for (const auto& g : monic_polynomials(k, d))
        if ((f % g).is_zero()) return false;
    return true;
  }
  if (k->is_extension()) throw PreconditionError("irreducibility over infinite extension fields is not supported");
  if (f.degree() <= 3) return !detail::has_rational_root(f);
  throw PreconditionError("irreducibility over Q is decided only up to degree 3; assert it explicitly");
}

struct IrreducibilityReport {
  bool irreducible = false;
  bool excluded = false;  // f == t, which is never an admissible modulus
};

inline IrreducibilityReport irreducible_over_prime_field(const Poly& f, unsigned long p) {
  if (!f.field()->is_base() || f.field()->characteristic() != p)
    throw PreconditionError("polynomial is not over F_" + std::to_string(p));
  if (!f.is_monic() || f.degree() < 1) throw PreconditionError("polynomial must be monic of degree >= 1");
  return {is_irreducible(f), f.is_variable()};
}

// Monic irreducibles over F_p of degree 1..max_degree other than t, sorted.
inline std::vector<Poly> enumerate_monic_irreducibles(unsigned long p, int max_degree) {
  if (max_degree < 1) throw PreconditionError("max_degree must be >= 1");
  const FieldPtr fp = Field::prime(p);
  std::vector<Poly> out;
  for (int d = 1; d <= max_degree; ++d)
    for (auto& g : monic_polynomials(fp, d))
      if (!g.is_variable() && is_irreducible(g)) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

inline FieldPtr Field::extension(const FieldPtr& base, RawPoly modulus, bool assume_irreducible) {
  if (!base->is_base()) throw InputError("extension base must be Q or a prime field");
  const unsigned long p = base->characteristic();
  for (auto& c : modulus) c = detail::reduce_base(p, c);
  detail::trim(modulus);
  if (modulus.size() < 2) throw InputError("field modulus must have degree >= 1");
  if (modulus.back() != 1) throw InputError("field modulus must be monic");
  if (modulus.front() == 0) throw InputError("field modulus must have nonzero constant term");
  const Poly f = Poly::from_raw(base, modulus);
  bool assumed = false;
  if (!base->is_finite() && f.degree() > 3) {
    if (!assume_irreducible)
      throw InputError("irreducibility over Q is verified only up to degree 3; pass the assert-irreducible flag");
    assumed = true;
  } else if (!is_irreducible(f)) {
    throw InputError("field modulus " + f.to_string() + " is reducible over " + base->name());
  }
  return std::make_shared<const Field>(Private{}, Kind::Extension, p, std::move(modulus), assumed);
}

// Companion matrix entries are produced by the matrix module; here only the
// coordinates of t^k in K[t]/(f), which the module actions need.
inline RawPoly power_of_generator(const FieldPtr& ext, std::int64_t k) {
  return Scalar::generator(ext).pow(k).coefficients();
}

// Parses "Q", "F7", "Q[t]/(t^2+1)", "F2[t]/(t^2+t+1)".
inline FieldPtr parse_field(std::string_view spec, bool assume_irreducible = false) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  spec = strip(spec);
  const auto bracket = spec.find('[');
  const std::string_view head = strip(spec.substr(0, bracket));
  FieldPtr base;
  if (head == "Q") {
    base = Field::rationals();
  } else if (head.size() > 1 && head[0] == 'F') {
    unsigned long p = 0;
    for (char ch : head.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw InputError("unknown field spec '" + std::string(spec) + "'");
      p = p * 10 + static_cast<unsigned long>(ch - '0');
    }
    base = Field::prime(p);
  } else {
    throw InputError("unknown field spec '" + std::string(spec) + "'");
  }
  if (bracket == std::string_view::npos) return base;
  const std::string_view rest = spec.substr(bracket);
  const std::string_view prefix = "[t]/(";
  if (rest.substr(0, prefix.size()) != prefix || rest.back() != ')')
    throw InputError("unknown field spec '" + std::string(spec) + "'");
  const auto inner = rest.substr(prefix.size(), rest.size() - prefix.size() - 1);
  return Field::extension(base, Poly::parse(base, inner).raw(), assume_irreducible);
}

}  // namespace lpa
