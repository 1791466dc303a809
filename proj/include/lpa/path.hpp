#pragma once

// Finite paths, closed paths, boundary paths (sink paths and lassos alpha c_i^inf)
// and tail-equivalence lag sets.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lpa/error.hpp"
#include "lpa/graph.hpp"

namespace lpa {

// A finite path: an edge sequence, or a bare vertex when empty.
class FinitePath {
 public:
  FinitePath() = default;

  static FinitePath vertex(VertexId v) {
    FinitePath p;
    p.source_ = p.range_ = v;
    return p;
  }

  static FinitePath edge(const Graph& g, EdgeId e) { return vertex(g.src(e)).append(g, e); }

  // Validates r(e_i) = s(e_{i+1}).
  static FinitePath from_edges(const Graph& g, const std::vector<EdgeId>& edges) {
    if (edges.empty()) throw PreconditionError("empty edge sequence needs a vertex");
    FinitePath p = vertex(g.src(edges.front()));
    for (auto e : edges) {
      if (g.src(e) != p.range_)
        throw InputError("edges '" + g.name(p.edges_.back()) + "' and '" + g.name(e) + "' do not compose");
      p.edges_.push_back(e);
      p.range_ = g.rng(e);
    }
    return p;
  }

  VertexId source() const noexcept { return source_; }
  VertexId range() const noexcept { return range_; }
  std::size_t length() const noexcept { return edges_.size(); }
  bool is_vertex() const noexcept { return edges_.empty(); }
  const std::vector<EdgeId>& edges() const noexcept { return edges_; }
  EdgeId operator[](std::size_t i) const { return edges_.at(i); }
  EdgeId back() const { return edges_.back(); }

  std::int64_t count(EdgeId e) const { return std::count(edges_.begin(), edges_.end(), e); }

  bool starts_with(const FinitePath& mu) const {
    if (mu.source_ != source_ || mu.length() > length()) return false;
    return std::equal(mu.edges_.begin(), mu.edges_.end(), edges_.begin());
  }

  // p with *this = mu p, if mu is an initial subpath.
  std::optional<FinitePath> strip_prefix(const FinitePath& mu) const {
    if (!starts_with(mu)) return std::nullopt;
    FinitePath r;
    r.source_ = mu.range_;
    r.range_ = range_;
    r.edges_.assign(edges_.begin() + static_cast<std::ptrdiff_t>(mu.length()), edges_.end());
    return r;
  }

  FinitePath prefix(const Graph& g, std::size_t k) const {
    if (k > length()) throw PreconditionError("prefix longer than path");
    FinitePath r = vertex(source_);
    for (std::size_t i = 0; i < k; ++i) r = r.append(g, edges_[i]);
    return r;
  }

  FinitePath drop_last(const Graph& g) const {
    if (is_vertex()) throw PreconditionError("cannot drop an edge from a vertex");
    FinitePath r = *this;
    r.edges_.pop_back();
    r.range_ = g.src(edges_.back());
    return r;
  }

  FinitePath append(const Graph& g, EdgeId e) const {
    if (g.src(e) != range_) throw PreconditionError("append: edge does not start at path range");
    FinitePath r = *this;
    r.edges_.push_back(e);
    r.range_ = g.rng(e);
    return r;
  }

  friend FinitePath concat(const FinitePath& p, const FinitePath& q) {
    if (p.range_ != q.source_) throw PreconditionError("concat: r(p) != s(q)");
    FinitePath r = p;
    r.edges_.insert(r.edges_.end(), q.edges_.begin(), q.edges_.end());
    r.range_ = q.range_;
    return r;
  }

  friend bool operator==(const FinitePath& a, const FinitePath& b) {
    return a.source_ == b.source_ && a.edges_ == b.edges_;
  }
  // Length first, then edge names, then source.
  friend std::strong_ordering operator<=>(const FinitePath& a, const FinitePath& b) {
    if (auto c = a.edges_.size() <=> b.edges_.size(); c != 0) return c;
    if (auto c = a.edges_ <=> b.edges_; c != 0) return c;
    return a.source_ <=> b.source_;
  }

 private:
  VertexId source_{}, range_{};
  std::vector<EdgeId> edges_;
};

inline std::string to_string(const Graph& g, const FinitePath& p) {
  if (p.is_vertex()) return g.name(p.source());
  std::string s;
  for (auto e : p.edges()) {
    if (!s.empty()) s += ".";
    s += g.name(e);
  }
  return s;
}

// ---- closed paths ----

inline bool is_closed(const FinitePath& c) { return !c.is_vertex() && c.source() == c.range(); }

// Smallest d with c = (e_1...e_d)^{n/d}.
inline std::size_t primitive_period(const FinitePath& c) {
  const std::size_t n = c.length();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = c[i] == c[i - d];
    if (ok) return d;
  }
  return n;
}

// Not a proper power c = d^k, k >= 2.
inline bool is_simple_closed(const FinitePath& c) { return is_closed(c) && primitive_period(c) == c.length(); }

// No repeated vertex.
inline bool is_cycle(const Graph& g, const FinitePath& c) {
  if (!is_closed(c)) return false;
  std::vector<VertexId> seen;
  for (auto e : c.edges()) seen.push_back(g.src(e));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

// Some vertex on c emits an edge that c does not take there.
inline bool has_exit(const Graph& g, const FinitePath& c) {
  for (std::size_t i = 0; i < c.length(); ++i)
    for (auto f : g.out_edges(g.src(c[i]))) {
      bool taken = false;
      for (std::size_t j = 0; j < c.length() && !taken; ++j) taken = g.src(c[j]) == g.src(c[i]) && c[j] == f;
      if (!taken) return true;
    }
  return false;
}

inline FinitePath primitive_root(const Graph& g, const FinitePath& c) { return c.prefix(g, primitive_period(c)); }

// c_i = e_{i+1} ... e_n e_1 ... e_i (0-based: starts with edge c[i]).
inline FinitePath rotation(const Graph& g, const FinitePath& c, std::size_t i) {
  const std::size_t n = c.length();
  std::vector<EdgeId> e;
  for (std::size_t k = 0; k < n; ++k) e.push_back(c[(i + k) % n]);
  return FinitePath::from_edges(g, e);
}

// Least rotation by edge names, and j with c = canonical_j.
inline std::pair<FinitePath, std::size_t> canonical_rotation(const Graph& g, const FinitePath& c) {
  const std::size_t n = c.length();
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const EdgeId a = c[(i + k) % n], b = c[(best + k) % n];
      if (a != b) {
        if (a < b) best = i;
        break;
      }
    }
  }
  // canonical = c_best, so c = canonical_{(n - best) mod n}.
  return {rotation(g, c, best), (n - best) % n};
}

// ---- boundary paths ----

// Either a finite path ending at a sink, or a lasso alpha c_i^inf with c a
// primitive closed path in least rotation and alpha not ending in the cycle
// edge that enters s(c_i).
class BoundaryPath {
 public:
  static BoundaryPath finite(const Graph& g, const FinitePath& p) {
    if (!g.is_sink(p.range()))
      throw PreconditionError("finite boundary path must end at a sink, '" + to_string(g, p) + "' does not");
    BoundaryPath b;
    b.prefix_ = p;
    return b;
  }

  // alpha c_i^inf for any closed path c with r(alpha) = s(c_i).
  static BoundaryPath lasso(const Graph& g, const FinitePath& alpha, const FinitePath& c, std::size_t i = 0) {
    if (!is_closed(c)) throw PreconditionError("lasso needs a closed path");
    if (i >= c.length()) throw PreconditionError("rotation index out of range");
    if (g.src(c[i]) != alpha.range()) throw PreconditionError("lasso prefix does not end at s(c_i)");
    const FinitePath root = primitive_root(g, c);
    const std::size_t d = root.length();
    auto [canon, j] = canonical_rotation(g, root);
    BoundaryPath b;
    b.prefix_ = alpha;
    b.cycle_ = canon;
    b.rotation_ = (j + i) % d;
    b.absorb(g);
    return b;
  }

  bool is_finite() const noexcept { return cycle_.is_vertex(); }
  bool is_lasso() const noexcept { return !is_finite(); }
  const FinitePath& prefix() const noexcept { return prefix_; }
  // Canonical primitive cycle (lasso only).
  const FinitePath& cycle() const noexcept { return cycle_; }
  std::size_t rotation() const noexcept { return rotation_; }
  std::size_t period() const noexcept { return cycle_.length(); }
  VertexId source() const noexcept { return prefix_.source(); }

  // Length of a finite boundary path.
  std::size_t length() const {
    if (!is_finite()) throw PreconditionError("infinite path has no length");
    return prefix_.length();
  }

  // Edge at position t (0-based); lassos unroll the cycle.
  EdgeId edge_at(std::size_t t) const {
    if (t < prefix_.length()) return prefix_[t];
    if (is_finite()) throw PreconditionError("position beyond finite path");
    const std::size_t n = cycle_.length();
    return cycle_[(rotation_ + t - prefix_.length()) % n];
  }

  // First k edges as a finite path.
  FinitePath initial_segment(const Graph& g, std::size_t k) const {
    if (is_finite() && k > prefix_.length()) throw PreconditionError("segment longer than finite path");
    FinitePath r = FinitePath::vertex(source());
    for (std::size_t t = 0; t < k; ++t) r = r.append(g, edge_at(t));
    return r;
  }

  // mu x, requiring r(mu) = s(x).
  BoundaryPath prepend(const Graph& g, const FinitePath& mu) const {
    if (mu.range() != source()) throw PreconditionError("prepend: r(mu) != s(x)");
    BoundaryPath b = *this;
    b.prefix_ = concat(mu, prefix_);
    if (b.is_lasso()) b.absorb(g);
    return b;
  }

  bool has_initial_subpath(const FinitePath& mu) const {
    if (mu.source() != source()) return false;
    if (is_finite() && mu.length() > prefix_.length()) return false;
    for (std::size_t t = 0; t < mu.length(); ++t)
      if (mu[t] != edge_at(t)) return false;
    return true;
  }

  // p with x = mu p, if mu is an initial subpath; lassos unroll as needed.
  std::optional<BoundaryPath> strip_prefix(const Graph& g, const FinitePath& mu) const {
    if (!has_initial_subpath(mu)) return std::nullopt;
    BoundaryPath b = *this;
    if (mu.length() <= prefix_.length()) {
      b.prefix_ = *prefix_.strip_prefix(mu);
      return b;
    }
    const std::size_t n = cycle_.length();
    b.rotation_ = (rotation_ + mu.length() - prefix_.length()) % n;
    b.prefix_ = FinitePath::vertex(g.src(cycle_[b.rotation_]));
    return b;
  }

  friend bool operator==(const BoundaryPath& a, const BoundaryPath& b) = default;
  friend std::strong_ordering operator<=>(const BoundaryPath& a, const BoundaryPath& b) {
    if (auto c = a.is_lasso() <=> b.is_lasso(); c != 0) return c;
    if (auto c = a.prefix_ <=> b.prefix_; c != 0) return c;
    if (auto c = a.cycle_ <=> b.cycle_; c != 0) return c;
    return a.rotation_ <=> b.rotation_;
  }

 private:
  // Move trailing prefix edges into the rotation while they agree with the cycle.
  void absorb(const Graph& g) {
    const std::size_t n = cycle_.length();
    while (!prefix_.is_vertex()) {
      const std::size_t prev = (rotation_ + n - 1) % n;
      if (prefix_.back() != cycle_[prev]) break;
      prefix_ = prefix_.drop_last(g);
      rotation_ = prev;
    }
  }

  FinitePath prefix_;
  FinitePath cycle_;  // vertex path when finite
  std::size_t rotation_ = 0;
};

// "f.g" for sink paths; "g.(e1.e2)" for lassos, the parenthesised part being
// the rotated cycle c_i that repeats forever.
inline std::string to_string(const Graph& g, const BoundaryPath& x) {
  if (x.is_finite()) return to_string(g, x.prefix());
  std::string s = x.prefix().is_vertex() ? "" : to_string(g, x.prefix()) + ".";
  return s + "(" + to_string(g, rotation(g, x.cycle(), x.rotation())) + ")";
}

// ---- lag sets ----

class LagSet {
 public:
  struct Empty {
    bool operator==(const Empty&) const = default;
  };
  struct Single {
    std::int64_t k;
    bool operator==(const Single&) const = default;
  };
  struct Coset {
    std::int64_t k0;
    std::int64_t n;
    bool operator==(const Coset&) const = default;
  };

  LagSet() : v_(Empty{}) {}
  static LagSet empty() { return LagSet(); }
  static LagSet single(std::int64_t k) {
    LagSet s;
    s.v_ = Single{k};
    return s;
  }
  static LagSet coset(std::int64_t k0, std::int64_t n) {
    if (n < 1) throw PreconditionError("coset modulus must be positive");
    LagSet s;
    s.v_ = Coset{((k0 % n) + n) % n, n};
    return s;
  }

  bool is_empty() const { return std::holds_alternative<Empty>(v_); }
  bool is_single() const { return std::holds_alternative<Single>(v_); }
  bool is_coset() const { return std::holds_alternative<Coset>(v_); }
  const Single& as_single() const { return std::get<Single>(v_); }
  const Coset& as_coset() const { return std::get<Coset>(v_); }

  bool contains(std::int64_t k) const {
    if (auto s = std::get_if<Single>(&v_)) return s->k == k;
    if (auto c = std::get_if<Coset>(&v_)) return ((k - c->k0) % c->n) == 0;
    return false;
  }

  LagSet negated() const {
    if (auto s = std::get_if<Single>(&v_)) return single(-s->k);
    if (auto c = std::get_if<Coset>(&v_)) return coset(-c->k0, c->n);
    return empty();
  }

  // Some element, preferring the least non-negative one for cosets.
  std::optional<std::int64_t> representative() const {
    if (auto s = std::get_if<Single>(&v_)) return s->k;
    if (auto c = std::get_if<Coset>(&v_)) return c->k0;
    return std::nullopt;
  }

  std::string to_string() const {
    if (auto s = std::get_if<Single>(&v_)) return "{" + std::to_string(s->k) + "}";
    if (auto c = std::get_if<Coset>(&v_)) return std::to_string(c->k0) + "+" + std::to_string(c->n) + "Z";
    return "{}";
  }

  friend bool operator==(const LagSet&, const LagSet&) = default;

 private:
  std::variant<Empty, Single, Coset> v_;
};

// All k with x ~_k y, i.e. x = mu p, y = nu p, |mu| - |nu| = k.
inline LagSet tail_lags(const BoundaryPath& x, const BoundaryPath& y) {
  if (x.is_finite() != y.is_finite()) return LagSet::empty();
  if (x.is_finite()) {
    if (x.prefix().range() != y.prefix().range()) return LagSet::empty();
    return LagSet::single(static_cast<std::int64_t>(x.prefix().length())
                          - static_cast<std::int64_t>(y.prefix().length()));
  }
  if (!(x.cycle() == y.cycle())) return LagSet::empty();
  const auto n = static_cast<std::int64_t>(x.period());
  const auto i = static_cast<std::int64_t>(x.rotation());
  const auto j = static_cast<std::int64_t>(y.rotation());
  // x = alpha_x c_i[0 .. (j-i) mod n] c_j^inf and y = alpha_y c_j^inf.
  const std::int64_t k0 = static_cast<std::int64_t>(x.prefix().length()) + (((j - i) % n) + n) % n
                          - static_cast<std::int64_t>(y.prefix().length());
  return LagSet::coset(k0, n);
}

}  // namespace lpa
