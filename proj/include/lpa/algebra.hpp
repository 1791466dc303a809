#pragma once

// The Leavitt path algebra L_K(E): elements are sparse combinations of
// monomials mu nu^* kept in a normal form. The normal form eliminates every
// monomial whose two paths both end in the special edge of one regular vertex,
// rewriting with v = sum_{s(e)=v} e e^*.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lpa/error.hpp"
#include "lpa/field.hpp"
#include "lpa/graph.hpp"
#include "lpa/path.hpp"

namespace lpa {

struct Monomial {
  FinitePath mu;
  FinitePath nu;

  Monomial() = default;
  Monomial(FinitePath m, FinitePath n) : mu(std::move(m)), nu(std::move(n)) {
    if (mu.range() != nu.range()) throw PreconditionError("monomial needs r(mu) = r(nu)");
  }

  static Monomial vertex(VertexId v) { return {FinitePath::vertex(v), FinitePath::vertex(v)}; }

  std::int64_t degree() const {
    return static_cast<std::int64_t>(mu.length()) - static_cast<std::int64_t>(nu.length());
  }
  std::size_t total_length() const { return mu.length() + nu.length(); }

  Monomial adjoint() const { return {nu, mu}; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.total_length() <=> b.total_length(); c != 0) return c;
    if (auto c = a.mu <=> b.mu; c != 0) return c;
    return a.nu <=> b.nu;
  }
};

// (mu nu^*)(alpha beta^*): mu gamma beta^* if alpha = nu gamma, mu (beta gamma)^*
// if nu = alpha gamma, otherwise zero.
inline std::optional<Monomial> mono_mul(const Monomial& a, const Monomial& b) {
  if (auto gamma = b.mu.strip_prefix(a.nu)) return Monomial(concat(a.mu, *gamma), b.nu);
  if (auto gamma = a.nu.strip_prefix(b.mu)) return Monomial(a.mu, concat(b.nu, *gamma));
  return std::nullopt;
}

// One chosen edge out of every regular vertex.
class SpecialEdgeChoice {
 public:
  // Least edge name at each regular vertex.
  explicit SpecialEdgeChoice(const Graph& g) {
    for (auto v : g.vertices())
      choice_.push_back(g.is_sink(v) ? std::nullopt : std::optional<EdgeId>(g.out_edges(v).front()));
  }

  SpecialEdgeChoice(const Graph& g, const std::map<VertexId, EdgeId>& overrides) : SpecialEdgeChoice(g) {
    for (const auto& [v, e] : overrides) {
      if (g.src(e) != v) throw PreconditionError("special edge '" + g.name(e) + "' does not leave '" + g.name(v) + "'");
      choice_[v.value] = e;
    }
  }

  std::optional<EdgeId> at(VertexId v) const { return choice_.at(v.value); }

 private:
  std::vector<std::optional<EdgeId>> choice_;
};

class LeavittPathAlgebra;
using AlgebraPtr = std::shared_ptr<const LeavittPathAlgebra>;

class LeavittPathAlgebra {
 public:
  LeavittPathAlgebra(GraphPtr g, FieldPtr k) : graph_(std::move(g)), field_(std::move(k)), choice_(*graph_) {}
  LeavittPathAlgebra(GraphPtr g, FieldPtr k, SpecialEdgeChoice choice)
      : graph_(std::move(g)), field_(std::move(k)), choice_(std::move(choice)) {}

  static AlgebraPtr make(GraphPtr g, FieldPtr k) { return std::make_shared<const LeavittPathAlgebra>(g, k); }

  const Graph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const FieldPtr& field() const noexcept { return field_; }
  const SpecialEdgeChoice& special() const noexcept { return choice_; }

  // Whether mu nu^* is a normal-form basis monomial.
  bool is_normal(const Monomial& m) const {
    if (m.mu.is_vertex() || m.nu.is_vertex()) return true;
    const EdgeId e = m.mu.back();
    if (e != m.nu.back()) return true;
    return choice_.at(graph_->src(e)) != e;
  }

 private:
  GraphPtr graph_;
  FieldPtr field_;
  SpecialEdgeChoice choice_;
};

class Element {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit Element(AlgebraPtr a) : alg_(std::move(a)) {}

  static Element zero(const AlgebraPtr& a) { return Element(a); }
  static Element monomial(const AlgebraPtr& a, const Monomial& m, const Scalar& c) {
    Element x(a);
    x.add_normalized(m, c);
    return x;
  }
  static Element monomial(const AlgebraPtr& a, const Monomial& m) { return monomial(a, m, Scalar::one(a->field())); }
  static Element vertex(const AlgebraPtr& a, VertexId v) { return monomial(a, Monomial::vertex(v)); }
  static Element edge(const AlgebraPtr& a, EdgeId e) {
    const Graph& g = a->graph();
    return monomial(a, Monomial(FinitePath::edge(g, e), FinitePath::vertex(g.rng(e))));
  }
  static Element ghost(const AlgebraPtr& a, EdgeId e) {
    const Graph& g = a->graph();
    return monomial(a, Monomial(FinitePath::vertex(g.rng(e)), FinitePath::edge(g, e)));
  }
  static Element path(const AlgebraPtr& a, const FinitePath& mu) {
    return monomial(a, Monomial(mu, FinitePath::vertex(mu.range())));
  }
  // Sum of all vertices: the unit of L_K(E) for a finite graph.
  static Element unit(const AlgebraPtr& a) {
    Element x(a);
    for (auto v : a->graph().vertices()) x += vertex(a, v);
    return x;
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(alg_->field()) : it->second;
  }

  Element& operator+=(const Element& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    return *this;
  }
  Element operator-() const { return scaled(-Scalar::one(alg_->field())); }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }

  Element scaled(const Scalar& s) const {
    Element r(alg_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }

  friend Element operator*(const Element& a, const Element& b) {
    a.check(b);
    Element r(a.alg_);
    for (const auto& [m1, c1] : a.terms_)
      for (const auto& [m2, c2] : b.terms_)
        if (auto m = mono_mul(m1, m2)) r.add_normalized(*m, c1 * c2);
    return r;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.alg_ == b.alg_ && a.terms_ == b.terms_;
  }

  Element homogeneous_component(std::int64_t k) const {
    Element r(alg_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == k) r.terms_.emplace(m, c);
    return r;
  }

  std::set<std::int64_t> degrees() const {
    std::set<std::int64_t> d;
    for (const auto& [m, c] : terms_) d.insert(m.degree());
    return d;
  }

  // Degree of a nonzero homogeneous element.
  std::optional<std::int64_t> degree() const {
    const auto d = degrees();
    if (d.size() != 1) return std::nullopt;
    return *d.begin();
  }

  // Swap mu and nu in every term (coefficients unchanged).
  Element ghost_transpose() const {
    Element r(alg_);
    for (const auto& [m, c] : terms_) r.add_normalized(m.adjoint(), c);
    return r;
  }

  // Adds c * m, rewriting m into normal form first.
  void add_normalized(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    std::vector<std::pair<Monomial, Scalar>> work{{m, c}};
    while (!work.empty()) {
      auto [cur, coef] = std::move(work.back());
      work.pop_back();
      expand(cur, coef, work);
    }
  }

  // Same rewriting with a random worklist order; the result must not depend on it.
  template <class Rng>
  void add_normalized_shuffled(const Monomial& m, const Scalar& c, Rng& rng) {
    if (c.is_zero()) return;
    std::vector<std::pair<Monomial, Scalar>> work{{m, c}};
    while (!work.empty()) {
      const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, work.size() - 1)(rng);
      std::swap(work[pick], work.back());
      auto [cur, coef] = std::move(work.back());
      work.pop_back();
      expand(cur, coef, work);
    }
  }

  // Builds an element from arbitrary (possibly non-normal) terms.
  static Element from_terms(const AlgebraPtr& a, const std::vector<std::pair<Monomial, Scalar>>& terms) {
    Element x(a);
    for (const auto& [m, c] : terms) x.add_normalized(m, c);
    return x;
  }

 private:
  void check(const Element& o) const {
    if (alg_ != o.alg_) throw PreconditionError("elements of different algebras");
  }

  void accumulate(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // Normal monomials are accumulated; mu0 e (nu0 e)^* with e special at v
  // becomes mu0 nu0^* - sum_{f != e} mu0 f (nu0 f)^*.
  void expand(const Monomial& m, const Scalar& c, std::vector<std::pair<Monomial, Scalar>>& work) {
    if (alg_->is_normal(m)) {
      accumulate(m, c);
      return;
    }
    const Graph& g = alg_->graph();
    const EdgeId e = m.mu.back();
    const VertexId v = g.src(e);
    const FinitePath mu0 = m.mu.drop_last(g), nu0 = m.nu.drop_last(g);
    work.emplace_back(Monomial(mu0, nu0), c);
    for (auto f : g.out_edges(v)) {
      if (f == e) continue;
      work.emplace_back(Monomial(mu0.append(g, f), nu0.append(g, f)), -c);
    }
  }

  AlgebraPtr alg_;
  Terms terms_;
};

// ---- twists ----

// Nonzero scalars a_e on the edges; a_mu is the product along mu, a_v = 1.
class TwistVector {
 public:
  TwistVector(const Graph& g, const FieldPtr& k) : values_(g.num_edges(), Scalar::one(k)), field_(k) {}

  void set(EdgeId e, const Scalar& a) {
    if (a.is_zero()) throw PreconditionError("twist entries must be invertible");
    require_same_field(field_, a.field());
    values_.at(e.value) = a;
  }
  const Scalar& at(EdgeId e) const { return values_.at(e.value); }
  const FieldPtr& field() const noexcept { return field_; }

  Scalar a_mu(const FinitePath& mu) const {
    Scalar r = Scalar::one(field_);
    for (auto e : mu.edges()) r *= values_.at(e.value);
    return r;
  }

  bool is_c_stable(const FinitePath& c) const { return a_mu(c).is_one(); }

  TwistVector inverse() const {
    TwistVector r = *this;
    for (auto& s : r.values_) s = s.inverse();
    return r;
  }

  bool is_trivial() const {
    return std::all_of(values_.begin(), values_.end(), [](const Scalar& s) { return s.is_one(); });
  }

  friend bool operator==(const TwistVector&, const TwistVector&) = default;

 private:
  std::vector<Scalar> values_;
  FieldPtr field_;
};

// sigma_a: mu nu^* -> a_mu a_nu^{-1} mu nu^*.
inline Element sigma_twist(const TwistVector& a, const Element& x) {
  Element r(x.algebra());
  for (const auto& [m, c] : x.terms()) r += Element::monomial(x.algebra(), m, c * a.a_mu(m.mu) * a.a_mu(m.nu).inverse());
  return r;
}

// ---- enumeration helpers ----

// All finite paths of length <= bound, shortest first.
inline std::vector<FinitePath> all_paths_up_to(const Graph& g, std::size_t bound) {
  std::vector<FinitePath> out;
  std::vector<FinitePath> layer;
  for (auto v : g.vertices()) layer.push_back(FinitePath::vertex(v));
  for (std::size_t len = 0;; ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    if (len == bound) break;
    std::vector<FinitePath> next;
    for (const auto& p : layer)
      for (auto e : g.out_edges(p.range())) next.push_back(p.append(g, e));
    layer = std::move(next);
  }
  return out;
}

// All monomials mu nu^* with |mu|, |nu| <= bound (normal or not).
inline std::vector<Monomial> all_monomials_up_to(const Graph& g, std::size_t bound) {
  const auto paths = all_paths_up_to(g, bound);
  std::vector<Monomial> out;
  for (const auto& mu : paths)
    for (const auto& nu : paths)
      if (mu.range() == nu.range()) out.emplace_back(mu, nu);
  return out;
}

// Generators v, e, e^* of L_K(E).
inline std::vector<Element> algebra_generators(const AlgebraPtr& a) {
  std::vector<Element> gens;
  const Graph& g = a->graph();
  for (auto v : g.vertices()) gens.push_back(Element::vertex(a, v));
  for (auto e : g.edges()) {
    gens.push_back(Element::edge(a, e));
    gens.push_back(Element::ghost(a, e));
  }
  return gens;
}

template <class Rng>
Element random_element(const AlgebraPtr& a, const std::vector<Monomial>& pool, std::size_t max_terms, Rng& rng) {
  Element x(a);
  const std::size_t terms = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
  for (std::size_t i = 0; i < terms; ++i) {
    const auto& m = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    x += Element::monomial(a, m, random_scalar(a->field(), rng));
  }
  return x;
}

}  // namespace lpa
