#pragma once

// Modules over L_K(E) realised on explicit bases:
//   Chen V_[x] (optionally twisted by a), the extension module V^f_[c^inf],
//   N_vc for a cycle without exits, and induced modules KL_x (x) N for the
//   isotropy coefficient modules K(n), K^(a), K[t]/(f), K[t^n, t^-n](m).
// Infinite-dimensional modules live on finite windows; an action that leaves
// the window throws OutOfWindow rather than truncating.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/error.hpp"
#include "lpa/field.hpp"
#include "lpa/groupoid.hpp"
#include "lpa/matrix.hpp"
#include "lpa/path.hpp"

namespace lpa {

// ---- coefficient modules over the isotropy group algebra ----

enum class CoeffKind { TrivialK, Ka, QuotField, LaurentShift };

struct CoeffSpec {
  CoeffKind kind = CoeffKind::TrivialK;
  std::int64_t n = 0;            // shift of K(n), or m of K[t^n, t^-n](m)
  std::optional<Scalar> a;       // K^(a)
  std::optional<Poly> f;         // K[t]/(f)
  bool assume_irreducible = false;

  static CoeffSpec trivial(std::int64_t shift = 0) { return {CoeffKind::TrivialK, shift, {}, {}, false}; }
  static CoeffSpec ka(const Scalar& a) { return {CoeffKind::Ka, 0, a, {}, false}; }
  static CoeffSpec quot(const Poly& f, bool assume = false) { return {CoeffKind::QuotField, 0, {}, f, assume}; }
  static CoeffSpec laurent(std::int64_t m) { return {CoeffKind::LaurentShift, m, {}, {}, false}; }
};

enum class ModuleKind { Chen, ChenExt, Nvc, Induced };

struct ModuleSpec {
  ModuleKind kind = ModuleKind::Chen;
  BoundaryPath base;                 // Chen, Induced
  std::optional<TwistVector> twist;  // Chen
  FinitePath cycle;                  // ChenExt, Nvc: closed path c = e_1 ... e_n based at s(c)
  std::optional<Poly> modulus;       // ChenExt
  bool assume_irreducible = false;   // ChenExt over Q beyond degree 3
  CoeffSpec coeff;                   // Induced
  std::int64_t shift = 0;            // M(shift)_d = M_{d + shift}

  static ModuleSpec chen(const BoundaryPath& x, std::optional<TwistVector> a = std::nullopt) {
    ModuleSpec s;
    s.kind = ModuleKind::Chen;
    s.base = x;
    s.twist = std::move(a);
    return s;
  }
  static ModuleSpec chen_ext(const FinitePath& c, const Poly& f, bool assume = false) {
    ModuleSpec s;
    s.kind = ModuleKind::ChenExt;
    s.cycle = c;
    s.modulus = f;
    s.assume_irreducible = assume;
    return s;
  }
  static ModuleSpec nvc(const FinitePath& c) {
    ModuleSpec s;
    s.kind = ModuleKind::Nvc;
    s.cycle = c;
    return s;
  }
  static ModuleSpec induced(const BoundaryPath& x, const CoeffSpec& n) {
    ModuleSpec s;
    s.kind = ModuleKind::Induced;
    s.base = x;
    s.coeff = n;
    return s;
  }
  ModuleSpec shifted(std::int64_t by) const {
    ModuleSpec s = *this;
    s.shift += by;
    return s;
  }
};

// ---- basis elements ----

// A point of [x] tensored with t^j of K[t]/(f) (j = 0 without an extension).
struct ChenBasis {
  BoundaryPath y;
  std::size_t factor = 0;
  friend bool operator==(const ChenBasis&, const ChenBasis&) = default;
  friend auto operator<=>(const ChenBasis& a, const ChenBasis& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.factor <=> b.factor;
  }
};

struct NvcBasis {
  Monomial mono;
  friend bool operator==(const NvcBasis&, const NvcBasis&) = default;
  friend auto operator<=>(const NvcBasis& a, const NvcBasis& b) { return a.mono <=> b.mono; }
};

// (y, k, x) (x) t^j, with k the canonical coset representative when x is rational.
struct CosetBasis {
  BoundaryPath y;
  std::int64_t k = 0;
  std::size_t factor = 0;
  friend bool operator==(const CosetBasis&, const CosetBasis&) = default;
  friend auto operator<=>(const CosetBasis& a, const CosetBasis& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    if (auto c = a.k <=> b.k; c != 0) return c;
    return a.factor <=> b.factor;
  }
};

using BasisElement = std::variant<ChenBasis, NvcBasis, CosetBasis>;

// Sparse vector over basis indices.
using ModuleVector = std::map<std::size_t, Scalar>;

inline void add_to(ModuleVector& v, std::size_t i, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

inline ModuleVector add(ModuleVector a, const ModuleVector& b) {
  for (const auto& [i, c] : b) add_to(a, i, c);
  return a;
}

inline ModuleVector scale(const ModuleVector& a, const Scalar& s) {
  ModuleVector r;
  for (const auto& [i, c] : a) add_to(r, i, c * s);
  return r;
}

// ---- path bookkeeping shared by modules and certificates ----

// c_j^m as a finite path from s(c_j).
inline FinitePath cycle_power(const Graph& g, const FinitePath& c, std::size_t j, std::size_t m) {
  const FinitePath cj = rotation(g, c, j);
  FinitePath r = FinitePath::vertex(cj.source());
  for (std::size_t i = 0; i < m; ++i) r = concat(r, cj);
  return r;
}

// mu, nu with y = mu p, x = nu p and |mu| - |nu| = k; requires y ~_k x.
inline std::pair<FinitePath, FinitePath> decompose(const Graph& g, const BoundaryPath& y, const BoundaryPath& x,
                                                   std::int64_t k) {
  if (!tail_lags(y, x).contains(k)) throw PreconditionError("decompose: paths are not tail-equivalent with this lag");
  if (y.is_finite()) return {y.prefix(), x.prefix()};
  const FinitePath& c = y.cycle();
  const auto n = static_cast<std::int64_t>(c.length());
  const auto i = static_cast<std::int64_t>(x.rotation()), j = static_cast<std::int64_t>(y.rotation());
  const std::size_t d = static_cast<std::size_t>(((j - i) % n + n) % n);
  // x = alpha c_i[0..d) c_j^inf
  FinitePath nu = concat(x.prefix(), rotation(g, c, x.rotation()).prefix(g, d));
  FinitePath mu = y.prefix();
  const std::int64_t diff = static_cast<std::int64_t>(mu.length()) - static_cast<std::int64_t>(nu.length()) - k;
  if (diff >= 0)
    nu = concat(nu, cycle_power(g, c, y.rotation(), static_cast<std::size_t>(diff / n)));
  else
    mu = concat(mu, cycle_power(g, c, y.rotation(), static_cast<std::size_t>(-diff / n)));
  return {mu, nu};
}

// The canonical base point c^inf for a closed path c.
inline BoundaryPath cycle_point(const Graph& g, const FinitePath& c) {
  return BoundaryPath::lasso(g, FinitePath::vertex(c.source()), c, 0);
}

inline std::string to_string(CoeffKind k) {
  switch (k) {
    case CoeffKind::TrivialK: return "trivial";
    case CoeffKind::Ka: return "ka";
    case CoeffKind::QuotField: return "quot";
    case CoeffKind::LaurentShift: return "laurent";
  }
  return "?";
}

class Module {
 public:
  // bound: path-length window for infinite orbits / lag window for Laurent
  // coefficients. Ignored where the basis is provably finite.
  Module(AlgebraPtr alg, ModuleSpec spec, std::size_t bound)
      : alg_(std::move(alg)), spec_(std::move(spec)), bound_(bound) {
    const Graph& g = alg_->graph();
    switch (spec_.kind) {
      case ModuleKind::Chen: build_chen(g); break;
      case ModuleKind::ChenExt: build_chen_ext(g); break;
      case ModuleKind::Nvc: build_nvc(g); break;
      case ModuleKind::Induced: build_induced(g); break;
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  const Graph& graph() const { return alg_->graph(); }
  const FieldPtr& field() const { return alg_->field(); }
  const ModuleSpec& spec() const noexcept { return spec_; }
  std::size_t bound() const noexcept { return bound_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  // True when the basis is the whole module (finite-dimensional).
  bool exact() const noexcept { return exact_; }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  const BasisElement& basis_element(std::size_t i) const { return basis_.at(i); }
  // The base point x (c^inf for ChenExt and Nvc).
  const BoundaryPath& base_point() const noexcept { return x_; }
  // Extension field K[t]/(f) for ChenExt and QuotField coefficients.
  const FieldPtr& extension_field() const noexcept { return ext_; }
  // The edge carrying t in ChenExt (first edge of the given cycle).
  std::optional<EdgeId> twisted_edge() const noexcept { return e1_; }

  std::optional<std::size_t> index_of(const BasisElement& b) const {
    auto it = index_.find(b);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ModuleVector unit_vector(std::size_t i) const { return {{i, Scalar::one(field())}}; }

  // mu nu^* acting on basis element i.
  ModuleVector act_monomial(const Monomial& m, std::size_t i) const {
    const Graph& g = graph();
    ModuleVector out;
    const BasisElement& b = basis_.at(i);
    if (const auto* cb = std::get_if<ChenBasis>(&b)) {
      auto p = cb->y.strip_prefix(g, m.nu);
      if (!p) return out;
      const BoundaryPath y = p->prepend(g, m.mu);
      if (spec_.kind == ModuleKind::ChenExt) {
        const std::int64_t d = m.mu.count(*e1_) - m.nu.count(*e1_);
        add_ext(out, y, 0, cb->factor, d, Scalar::one(field()), [&](const BoundaryPath& yy, std::int64_t, std::size_t j) {
          return BasisElement(ChenBasis{yy, j});
        });
        return out;
      }
      Scalar s = Scalar::one(field());
      if (spec_.twist) s = spec_.twist->a_mu(m.mu) * spec_.twist->a_mu(m.nu).inverse();
      add_to(out, lookup(ChenBasis{y, 0}), s);
      return out;
    }
    if (const auto* nb = std::get_if<NvcBasis>(&b)) {
      auto prod = mono_mul(m, nb->mono);
      if (!prod) return out;
      const Element e = Element::monomial(alg_, *prod);
      for (const auto& [mono, c] : e.terms()) add_to(out, lookup(NvcBasis{mono}), c);
      return out;
    }
    const auto& co = std::get<CosetBasis>(b);
    auto p = co.y.strip_prefix(g, m.nu);
    if (!p) return out;
    const BoundaryPath y = p->prepend(g, m.mu);
    const std::int64_t k = co.k + m.degree();
    switch (spec_.coeff.kind) {
      case CoeffKind::TrivialK:
      case CoeffKind::LaurentShift:
        add_to(out, lookup(CosetBasis{y, k, 0}), Scalar::one(field()));
        break;
      case CoeffKind::Ka: {
        auto [kc, j] = canonical_lag(y, k);
        add_to(out, lookup(CosetBasis{y, kc, 0}), spec_.coeff.a->pow(j));
        break;
      }
      case CoeffKind::QuotField: {
        auto [kc, j] = canonical_lag(y, k);
        add_ext(out, y, kc, co.factor, j, Scalar::one(field()), [&](const BoundaryPath& yy, std::int64_t kk, std::size_t jj) {
          return BasisElement(CosetBasis{yy, kk, jj});
        });
        break;
      }
    }
    return out;
  }

  ModuleVector act(const Element& eta, const ModuleVector& v) const {
    if (eta.algebra() != alg_) throw PreconditionError("element and module over different algebras");
    ModuleVector out;
    for (const auto& [i, ci] : v)
      for (const auto& [m, cm] : eta.terms())
        for (const auto& [j, cj] : act_monomial(m, i)) add_to(out, j, ci * cm * cj);
    return out;
  }

  // Matrix of eta on the basis (columns are images of basis vectors).
  Matrix matrix_of(const Element& eta) const {
    Matrix mat(field(), dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& [j, c] : act(eta, unit_vector(i))) mat(j, i) = c;
    return mat;
  }

  bool gradable() const {
    switch (spec_.kind) {
      case ModuleKind::Chen: return !x_.is_lasso();
      case ModuleKind::ChenExt: return false;
      case ModuleKind::Nvc: return true;
      case ModuleKind::Induced:
        return spec_.coeff.kind == CoeffKind::TrivialK || spec_.coeff.kind == CoeffKind::LaurentShift;
    }
    return false;
  }

  // Degree of basis element i; M(s)_d = M_{d+s}, so shifting lowers degrees by s.
  std::int64_t grade_of(std::size_t i) const {
    if (!gradable()) throw NotGradable(describe_kind() + " carries no Z-grading");
    const BasisElement& b = basis_.at(i);
    std::int64_t d = 0;
    if (const auto* cb = std::get_if<ChenBasis>(&b)) {
      d = tail_lags(cb->y, x_).as_single().k;
    } else if (const auto* nb = std::get_if<NvcBasis>(&b)) {
      d = nb->mono.degree();
    } else {
      d = std::get<CosetBasis>(b).k - spec_.coeff.n;
    }
    return d - spec_.shift;
  }

  std::string describe_kind() const {
    switch (spec_.kind) {
      case ModuleKind::Chen: return x_.is_lasso() ? "Chen module over a rational path" : "Chen module";
      case ModuleKind::ChenExt: return "extension Chen module";
      case ModuleKind::Nvc: return "N_vc";
      case ModuleKind::Induced: return "induced module with " + to_string(spec_.coeff.kind) + " coefficients";
    }
    return "module";
  }

  // (k mod n representative in [0, n), exponent j with k = k0 + j n)
  std::pair<std::int64_t, std::int64_t> canonical_lag(const BoundaryPath& y, std::int64_t k) const {
    const LagSet lags = tail_lags(y, x_);
    if (!lags.is_coset()) throw PreconditionError("canonical_lag needs a rational base point");
    const auto& c = lags.as_coset();
    if ((k - c.k0) % c.n != 0) throw PreconditionError("lag outside the coset");
    return {c.k0, (k - c.k0) / c.n};
  }

 private:
  std::size_t lookup(const BasisElement& b) const {
    auto it = index_.find(b);
    if (it == index_.end()) throw OutOfWindow("action leaves the basis window (bound " + std::to_string(bound_) + ")");
    return it->second;
  }

  // Adds s * t^{factor + d} placed at y, spread over the K-basis of K[t]/(f).
  template <class Make>
  void add_ext(ModuleVector& out, const BoundaryPath& y, std::int64_t k, std::size_t factor, std::int64_t d,
               const Scalar& s, Make make) const {
    const Scalar t = Scalar::generator(ext_).pow(static_cast<std::int64_t>(factor) + d);
    for (std::size_t jj = 0; jj < ext_->degree(); ++jj) {
      const Rational coord = t.coordinate(jj);
      if (coord == 0) continue;
      add_to(out, lookup(make(y, k, jj)), s * Scalar(field(), coord));
    }
  }

  void require_base_field(const char* what) const {
    if (!field()->is_base()) throw PreconditionError(std::string(what) + " needs the algebra over Q or a prime field");
  }

  FieldPtr make_extension(const Poly& f, bool assume) const {
    require_base_field("an extension coefficient module");
    if (!same_field(f.field(), field())) throw PreconditionError("modulus is over a different field");
    if (!f.is_monic() || f.degree() < 1) throw PreconditionError("modulus must be monic of degree >= 1");
    if (f.is_variable()) throw PreconditionError("modulus t is excluded");
    try {
      return Field::extension(field(), f.raw(), assume);
    } catch (const InputError& e) {
      throw PreconditionError(e.what());
    }
  }

  void build_chen(const Graph& g) {
    x_ = spec_.base;
    if (spec_.twist && !same_field(spec_.twist->field(), field())) throw PreconditionError("twist over a different field");
    const Orbit o = orbit(g, x_, bound_);
    exact_ = o.exact;
    for (const auto& y : o.points) basis_.push_back(ChenBasis{y, 0});
  }

  void build_chen_ext(const Graph& g) {
    if (!is_cycle(g, spec_.cycle)) throw PreconditionError("extension Chen modules need a cycle");
    ext_ = make_extension(*spec_.modulus, spec_.assume_irreducible);
    e1_ = spec_.cycle[0];
    x_ = cycle_point(g, spec_.cycle);
    const Orbit o = orbit(g, x_, bound_);
    exact_ = o.exact;
    for (const auto& y : o.points)
      for (std::size_t j = 0; j < ext_->degree(); ++j) basis_.push_back(ChenBasis{y, j});
  }

  void build_nvc(const Graph& g) {
    const FinitePath& c = spec_.cycle;
    if (!is_cycle(g, c)) throw PreconditionError("N_vc needs a cycle");
    if (has_exit(g, c)) throw PreconditionError("N_vc needs a cycle without exits");
    x_ = cycle_point(g, c);
    exact_ = false;
    const VertexId v = c.source();
    std::set<Monomial> found;
    const auto paths = all_paths_up_to(g, bound_);
    FinitePath nu = FinitePath::vertex(v);
    for (std::size_t len = 0; len <= bound_; ++len) {
      for (const auto& mu : paths) {
        if (mu.range() != nu.range()) continue;
        Monomial m(mu, nu);
        if (alg_->is_normal(m)) found.insert(m);
      }
      nu = nu.append(g, c[len % c.length()]);
    }
    for (const auto& m : found) basis_.push_back(NvcBasis{m});
  }

  void build_induced(const Graph& g) {
    x_ = spec_.base;
    const CoeffSpec& n = spec_.coeff;
    const bool rational = x_.is_lasso();
    if (n.kind == CoeffKind::TrivialK && rational) throw PreconditionError("trivial coefficients need a non-rational base point");
    if (n.kind != CoeffKind::TrivialK && !rational) throw PreconditionError(to_string(n.kind) + " coefficients need a rational base point");
    if (n.kind == CoeffKind::Ka) {
      if (!n.a || n.a->is_zero()) throw PreconditionError("K^(a) needs a nonzero scalar a");
      if (!same_field(n.a->field(), field())) throw PreconditionError("scalar a is over a different field");
    }
    if (n.kind == CoeffKind::QuotField) ext_ = make_extension(*n.f, n.assume_irreducible);
    const Orbit o = orbit(g, x_, bound_);
    exact_ = o.exact && n.kind != CoeffKind::LaurentShift;
    for (const auto& y : o.points) {
      const LagSet lags = tail_lags(y, x_);
      switch (n.kind) {
        case CoeffKind::TrivialK: basis_.push_back(CosetBasis{y, lags.as_single().k, 0}); break;
        case CoeffKind::Ka: basis_.push_back(CosetBasis{y, lags.as_coset().k0, 0}); break;
        case CoeffKind::QuotField:
          for (std::size_t j = 0; j < ext_->degree(); ++j) basis_.push_back(CosetBasis{y, lags.as_coset().k0, j});
          break;
        case CoeffKind::LaurentShift: {
          const auto& cs = lags.as_coset();
          const auto b = static_cast<std::int64_t>(bound_);
          std::int64_t k = cs.k0 - ((cs.k0 + b) / cs.n) * cs.n;
          for (; k <= b; k += cs.n)
            if (k >= -b) basis_.push_back(CosetBasis{y, k, 0});
          break;
        }
      }
    }
  }

  AlgebraPtr alg_;
  ModuleSpec spec_;
  std::size_t bound_;
  bool exact_ = false;
  BoundaryPath x_;
  FieldPtr ext_;
  std::optional<EdgeId> e1_;
  std::vector<BasisElement> basis_;
  std::map<BasisElement, std::size_t> index_;
};

inline Vector to_dense(const Module& m, const ModuleVector& v) {
  Vector d = zero_vector(m.field(), m.dim());
  for (const auto& [i, c] : v) d.at(i) = c;
  return d;
}

inline ModuleVector from_dense(const Vector& d) {
  ModuleVector v;
  for (std::size_t i = 0; i < d.size(); ++i) add_to(v, i, d[i]);
  return v;
}

// Dimension of the degree-d part of a gradable module's window.
inline std::size_t graded_component_dim(const Module& m, std::int64_t d) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (m.grade_of(i) == d) ++count;
  return count;
}

}  // namespace lpa
