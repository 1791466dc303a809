#pragma once
// Brute-force reference computations, kept independent of the library's
// own algorithms (they only use paths, polynomials and plain loops).

#include <cstdint>
#include <set>
#include <vector>

#include "lpa/lpa.hpp"

namespace oracle {

using namespace lpa;

// Monic irreducibles of degree d over F_p other than t, found by striking out
// every product of two monic polynomials of positive degree.
inline std::size_t count_admissible_irreducibles(unsigned long p, int d) {
  const FieldPtr k = Field::prime(p);
  std::set<std::vector<Rational>> reducible;
  for (int a = 1; a < d; ++a)
    for (const auto& f : monic_polynomials(k, a))
      for (const auto& g : monic_polynomials(k, d - a)) {
        const Poly h = f * g;
        std::vector<Rational> key;
        for (int i = 0; i <= h.degree(); ++i) key.push_back(h.coeff(static_cast<std::size_t>(i)).coordinate(0));
        reducible.insert(key);
      }
  std::size_t n = 0;
  for (const auto& f : monic_polynomials(k, d)) {
    if (f.is_variable()) continue;
    std::vector<Rational> key;
    for (int i = 0; i <= f.degree(); ++i) key.push_back(f.coeff(static_cast<std::size_t>(i)).coordinate(0));
    if (!reducible.contains(key)) ++n;
  }
  return n;
}

// Whether x with its first i edges removed equals y with its first j removed.
inline bool shifted_equal(const BoundaryPath& x, std::size_t i, const BoundaryPath& y, std::size_t j) {
  if (x.is_finite() != y.is_finite()) return false;
  if (x.is_finite()) {
    if (i > x.length() || j > y.length()) return false;
    if (x.length() - i != y.length() - j) return false;
    const auto rx = x.prefix().range(), ry = y.prefix().range();
    if (x.length() - i == 0) return rx == ry;
    for (std::size_t t = 0; t < x.length() - i; ++t)
      if (x.edge_at(i + t) != y.edge_at(j + t)) return false;
    return true;
  }
  // Both eventually periodic: agreeing on preperiod + product of periods suffices.
  const std::size_t span = x.prefix().length() + y.prefix().length() + x.period() * y.period() + 1;
  for (std::size_t t = 0; t < span; ++t)
    if (x.edge_at(i + t) != y.edge_at(j + t)) return false;
  return true;
}

// Lags k in [-r, r] realised by some pair of shifts.
inline std::set<std::int64_t> lags_in_range(const BoundaryPath& x, const BoundaryPath& y, std::int64_t r) {
  std::size_t reach = static_cast<std::size_t>(r) + 1;
  reach += x.is_finite() ? x.length() : x.prefix().length() + x.period();
  reach += y.is_finite() ? y.length() : y.prefix().length() + y.period();
  std::set<std::int64_t> out;
  for (std::size_t i = 0; i <= reach; ++i)
    for (std::size_t j = 0; j <= reach; ++j) {
      const auto k = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j);
      if (k < -r || k > r || out.contains(k)) continue;
      if (shifted_equal(x, i, y, j)) out.insert(k);
    }
  return out;
}

}  // namespace oracle
