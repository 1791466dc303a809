#pragma once

// The graph groupoid G_E = {(x, k, y) : x ~_k y}, compact open bisections
// Z((mu, nu) \ F) with their product calculus, isotropy and orbits.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/cycles.hpp"
#include "lpa/error.hpp"
#include "lpa/path.hpp"

namespace lpa {

class GroupoidElement {
 public:
  GroupoidElement(BoundaryPath x, std::int64_t k, BoundaryPath y) : x_(std::move(x)), k_(k), y_(std::move(y)) {
    if (!tail_lags(x_, y_).contains(k_)) throw PreconditionError("not tail-equivalent with lag " + std::to_string(k_));
  }

  static GroupoidElement unit(const BoundaryPath& x) { return {x, 0, x}; }

  const BoundaryPath& x() const noexcept { return x_; }
  const BoundaryPath& y() const noexcept { return y_; }
  std::int64_t degree() const noexcept { return k_; }
  const BoundaryPath& codomain() const noexcept { return x_; }
  const BoundaryPath& domain() const noexcept { return y_; }

  GroupoidElement inverse() const { return {y_, -k_, x_}; }

  friend GroupoidElement compose(const GroupoidElement& g, const GroupoidElement& h) {
    if (!(g.y_ == h.x_)) throw PreconditionError("elements are not composable");
    return {g.x_, g.k_ + h.k_, h.y_};
  }

  friend bool operator==(const GroupoidElement&, const GroupoidElement&) = default;
  friend std::strong_ordering operator<=>(const GroupoidElement& a, const GroupoidElement& b) {
    if (auto c = a.y_ <=> b.y_; c != 0) return c;
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.k_ <=> b.k_;
  }

 private:
  BoundaryPath x_;
  std::int64_t k_;
  BoundaryPath y_;
};

inline std::string to_string(const Graph& g, const GroupoidElement& h) {
  return "(" + to_string(g, h.x()) + ", " + std::to_string(h.degree()) + ", " + to_string(g, h.y()) + ")";
}

// Z((mu, nu) \ F) = {(mu p, |mu|-|nu|, nu p) : p does not start with an edge of F}.
struct Bisection {
  FinitePath mu;
  FinitePath nu;
  std::set<EdgeId> excluded;

  Bisection(FinitePath m, FinitePath n, std::set<EdgeId> f = {})
      : mu(std::move(m)), nu(std::move(n)), excluded(std::move(f)) {
    if (mu.range() != nu.range()) throw PreconditionError("bisection needs r(mu) = r(nu)");
  }

  static Bisection of(const Monomial& m) { return {m.mu, m.nu}; }

  std::int64_t degree() const {
    return static_cast<std::int64_t>(mu.length()) - static_cast<std::int64_t>(nu.length());
  }

  bool allows(const BoundaryPath& p) const {
    if (p.is_finite() && p.length() == 0) return true;
    return !excluded.contains(p.edge_at(0));
  }

  // The unique element with domain z, if there is one.
  std::optional<GroupoidElement> element_with_domain(const Graph& g, const BoundaryPath& z) const {
    auto p = z.strip_prefix(g, nu);
    if (!p || !allows(*p)) return std::nullopt;
    return GroupoidElement(p->prepend(g, mu), degree(), z);
  }

  friend bool operator==(const Bisection&, const Bisection&) = default;
};

inline std::string to_string(const Graph& g, const Bisection& b) {
  std::string s = "Z(" + to_string(g, b.mu) + ", " + to_string(g, b.nu) + ")";
  if (!b.excluded.empty()) {
    s += " \\ {";
    bool first = true;
    for (auto e : b.excluded) {
      s += (first ? "" : ",") + g.name(e);
      first = false;
    }
    s += "}";
  }
  return s;
}

inline bool membership(const Graph& g, const GroupoidElement& h, const Bisection& b) {
  if (h.degree() != b.degree()) return false;
  auto p = h.x().strip_prefix(g, b.mu);
  if (!p || !b.allows(*p)) return false;
  return p->prepend(g, b.nu) == h.y();
}

// Product of bisections, as a list of bisections (at most one here).
inline std::vector<Bisection> bisection_product(const Graph& g, const Bisection& b1, const Bisection& b2) {
  (void)g;
  if (auto gamma = b2.mu.strip_prefix(b1.nu)) {
    if (gamma->is_vertex()) {
      std::set<EdgeId> f = b1.excluded;
      f.insert(b2.excluded.begin(), b2.excluded.end());
      return {Bisection(b1.mu, b2.nu, std::move(f))};
    }
    if (b1.excluded.contains((*gamma)[0])) return {};
    return {Bisection(concat(b1.mu, *gamma), b2.nu, b2.excluded)};
  }
  if (auto gamma = b1.nu.strip_prefix(b2.mu)) {
    if (b2.excluded.contains((*gamma)[0])) return {};
    return {Bisection(b1.mu, concat(b2.nu, *gamma), b1.excluded)};
  }
  return {};
}

using BisectionProductRule = std::function<std::vector<Bisection>(const Graph&, const Bisection&, const Bisection&)>;

// Canonical boundary paths whose finite part has length <= depth: sink paths
// and lassos alpha c_j^inf over every elementary cycle.
inline std::vector<BoundaryPath> boundary_window(const Graph& g, std::size_t depth) {
  std::set<BoundaryPath> out;
  for (const auto& p : all_paths_up_to(g, depth)) {
    if (g.is_sink(p.range())) out.insert(BoundaryPath::finite(g, p));
  }
  for (const auto& c : elementary_cycles(g))
    for (std::size_t j = 0; j < c.length(); ++j)
      for (const auto& p : all_paths_up_to(g, depth))
        if (p.range() == g.src(c[j])) out.insert(BoundaryPath::lasso(g, p, c, j));
  return {out.begin(), out.end()};
}

struct PiCheck {
  bool pass = true;
  std::string detail;
};

// Compares mono_mul(m1, m2) with the bisection product of Z(m1) and Z(m2):
// syntactically, and pointwise on every boundary point in a window by
// composing the unique elements with a given domain.
inline PiCheck pi_consistency(const Graph& g, const Monomial& m1, const Monomial& m2,
                              const std::vector<BoundaryPath>& points,
                              const BisectionProductRule& rule = bisection_product) {
  const auto algebra_side = mono_mul(m1, m2);
  const Bisection b1 = Bisection::of(m1), b2 = Bisection::of(m2);
  const auto product = rule(g, b1, b2);
  auto describe = [&] {
    return to_string(g, b1) + " * " + to_string(g, b2) + " vs "
           + (algebra_side ? to_string(g, Bisection::of(*algebra_side)) : std::string("0"));
  };
  if (!algebra_side) {
    if (!product.empty()) return {false, "expected empty product: " + describe()};
  } else if (product.size() != 1 || !(product[0] == Bisection::of(*algebra_side))) {
    return {false, "syntactic mismatch: " + describe()};
  }
  for (const auto& z : points) {
    std::optional<GroupoidElement> composed;
    if (auto h2 = b2.element_with_domain(g, z))
      if (auto h1 = b1.element_with_domain(g, h2->x())) composed = compose(*h1, *h2);
    std::optional<GroupoidElement> predicted;
    for (const auto& b : product)
      if (auto h = b.element_with_domain(g, z)) predicted = h;
    if (composed != predicted) return {false, "pointwise mismatch at " + to_string(g, z) + ": " + describe()};
  }
  return {};
}

// ---- isotropy and orbits ----

struct Isotropy {
  bool trivial = true;
  std::int64_t generator_lag = 0;  // |c| for rational base points
  FinitePath cycle;
};

inline Isotropy isotropy(const BoundaryPath& x) {
  if (x.is_finite()) return {};
  return {false, static_cast<std::int64_t>(x.period()), x.cycle()};
}

struct Orbit {
  std::vector<BoundaryPath> points;
  bool exact = false;
};

// Canonical elements of [x]. Exact (bound ignored) when x ends at a maximal
// sink or runs into a maximal cycle; otherwise points with finite part <= bound.
inline Orbit orbit(const Graph& g, const BoundaryPath& x, std::size_t bound) {
  Orbit o;
  if (x.is_finite()) {
    const auto paths = enumerate_paths_ending_at(g, x.prefix().range(), bound);
    o.exact = paths.exact;
    for (const auto& p : paths.paths) o.points.push_back(BoundaryPath::finite(g, p));
    return o;
  }
  const FinitePath& c = x.cycle();
  const std::size_t n = c.length();
  const auto maximal = maximal_cycles(g);
  o.exact = std::find(maximal.begin(), maximal.end(), c) != maximal.end();
  std::set<BoundaryPath> found;
  for (std::size_t j = 0; j < n; ++j) {
    const EdgeId entering = c[(j + n - 1) % n];
    const VertexId start = g.src(c[j]);
    std::vector<EdgeId> rev;
    std::function<void(VertexId)> back = [&](VertexId w) {
      const FinitePath alpha =
          rev.empty() ? FinitePath::vertex(start) : FinitePath::from_edges(g, {rev.rbegin(), rev.rend()});
      found.insert(BoundaryPath::lasso(g, alpha, c, j));
      if (!o.exact && rev.size() == bound) return;
      for (auto e : g.in_edges(w)) {
        if (rev.empty() && e == entering) continue;
        rev.push_back(e);
        back(g.src(e));
        rev.pop_back();
      }
    };
    back(start);
  }
  o.points.assign(found.begin(), found.end());
  return o;
}

}  // namespace lpa
