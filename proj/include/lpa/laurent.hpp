#pragma once

// Elements of the graded Laurent ring K[t^n, t^{-n}]: finitely supported maps
// from exponents in nZ to nonzero scalars.

#include <cstdint>
#include <map>
#include <string>

#include "lpa/error.hpp"
#include "lpa/field.hpp"

namespace lpa {

class LaurentElement {
 public:
  LaurentElement(FieldPtr f, std::int64_t step) : field_(std::move(f)), step_(step) {
    if (step_ < 1) throw PreconditionError("Laurent step must be positive");
  }

  static LaurentElement monomial(const FieldPtr& f, std::int64_t step, std::int64_t exponent, const Scalar& c) {
    LaurentElement r(f, step);
    r.add_term(exponent, c);
    return r;
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::int64_t step() const noexcept { return step_; }
  const std::map<std::int64_t, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(std::int64_t exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  void add_term(std::int64_t exponent, const Scalar& c) {
    if (exponent % step_ != 0)
      throw PreconditionError("exponent " + std::to_string(exponent) + " not divisible by step "
                              + std::to_string(step_));
    require_same_field(field_, c.field());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentElement& operator+=(const LaurentElement& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  friend LaurentElement operator+(LaurentElement a, const LaurentElement& b) { return a += b; }

  friend LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
    a.check(b);
    LaurentElement r(a.field_, a.step_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  // Component of degree d. Exponents are degrees in the unshifted ring.
  LaurentElement homogeneous_component(std::int64_t degree) const {
    LaurentElement r(field_, step_);
    if (auto it = terms_.find(degree); it != terms_.end()) r.terms_.insert(*it);
    return r;
  }

  // Degree of the term t^e inside the shifted module K[t^n,t^{-n}](m):
  // since M(m)_d = M_{d+m}, the term sits in degree e - m.
  static std::int64_t shifted_degree(std::int64_t exponent, std::int64_t shift) { return exponent - shift; }

  // Homogeneous component of degree d in the shifted module (m).
  LaurentElement shifted_component(std::int64_t degree, std::int64_t shift) const {
    return homogeneous_component(degree + shift);
  }

  friend bool operator==(const LaurentElement& a, const LaurentElement& b) {
    return a.step_ == b.step_ && same_field(a.field_, b.field_) && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += c.to_string();
      if (e != 0) s += "*t^" + std::to_string(e);
    }
    return s;
  }

 private:
  void check(const LaurentElement& o) const {
    if (step_ != o.step_) throw PreconditionError("Laurent step mismatch");
    require_same_field(field_, o.field_);
  }

  FieldPtr field_;
  std::int64_t step_;
  std::map<std::int64_t, Scalar> terms_;
};

}  // namespace lpa
