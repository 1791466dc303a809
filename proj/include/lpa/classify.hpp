#pragma once

// Lists of spectral graded simple and spectral simple modules of L_K(E), and
// the probe that decides simplicity of a concrete finite-dimensional module.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "lpa/certificates.hpp"
#include "lpa/cycles.hpp"
#include "lpa/field.hpp"
#include "lpa/groupoid.hpp"
#include "lpa/intertwiner.hpp"
#include "lpa/module.hpp"

namespace lpa {

// ---- irrational paths ----

struct IrrationalFlag {
  bool present = false;
  std::optional<std::pair<FinitePath, FinitePath>> witness;
};

// Irrational infinite paths exist iff some strongly connected component holds
// two distinct cycles (a path can then alternate between them forever).
inline IrrationalFlag irrational_flag(const Graph& g) {
  const auto scc = strongly_connected_components(g);
  const auto cycles = elementary_cycles(g);
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j)
      if (scc.component[cycles[i].source().value] == scc.component[cycles[j].source().value])
        return {true, std::make_pair(cycles[i], cycles[j])};
  return {};
}

// ---- graded ----

struct SinkFamily {
  VertexId sink;
  bool finite = false;
  std::optional<std::uint64_t> dim;
};

struct LaurentFamily {
  FinitePath cycle;
  std::vector<std::int64_t> shifts;  // m = 0 .. |c|-1
};

struct GradedReport {
  std::vector<SinkFamily> sinks;
  IrrationalFlag irrational;
  std::vector<LaurentFamily> laurent;
  bool complete = false;
  std::size_t cycle_bound = 0;
};

inline GradedReport classify_graded(const Graph& g, std::size_t cycle_bound) {
  GradedReport r;
  r.cycle_bound = cycle_bound;
  for (auto v : g.sinks()) {
    SinkFamily f{v, !reached_by_cycle(g, v), std::nullopt};
    if (f.finite) f.dim = count_paths_ending_at(g, v);
    r.sinks.push_back(f);
  }
  r.irrational = irrational_flag(g);
  const auto scp = simple_closed_paths(g, cycle_bound);
  for (const auto& c : scp.paths) {
    LaurentFamily f{c, {}};
    for (std::size_t m = 0; m < c.length(); ++m) f.shifts.push_back(static_cast<std::int64_t>(m));
    r.laurent.push_back(std::move(f));
  }
  r.complete = scp.complete && !r.irrational.present;
  return r;
}

// ---- non-graded ----

enum class SimpleKind { SinkSimple, CycleSimple, InfiniteDimFlagged };

struct SimpleEntry {
  SimpleKind kind;
  std::optional<VertexId> sink;
  std::optional<FinitePath> cycle;
  std::optional<Poly> f;
  std::optional<std::uint64_t> dim;
  std::string reason;  // InfiniteDimFlagged
};

struct SimpleReport {
  std::vector<SimpleEntry> entries;
  bool finite_complete = false;  // finite-dimensional list complete up to the degree bound
  std::size_t poly_degree = 0;
  std::size_t cycle_bound = 0;
};

struct SimpleOptions {
  std::size_t poly_degree = 1;
  std::size_t cycle_bound = 4;
  std::vector<Rational> samples;  // over Q: f = t - a
  std::vector<Poly> polys;        // extra user polynomials
  bool assume_irreducible = false;
};

inline std::size_t orbit_size(const Graph& g, const FinitePath& c) {
  const Orbit o = orbit(g, cycle_point(g, c), 0);
  if (!o.exact) throw PreconditionError("orbit of " + to_string(g, c) + "^inf is infinite");
  return o.points.size();
}

// Admissible f: monic irreducible, f != t.
inline std::vector<Poly> admissible_polynomials(const FieldPtr& k, const SimpleOptions& opt) {
  std::vector<Poly> out;
  auto admit = [&](const Poly& f) {
    if (!f.is_monic() || f.degree() < 1 || f.is_variable()) throw PreconditionError("f must be monic, non-constant and != t");
    if (!opt.assume_irreducible && !is_irreducible(f)) throw PreconditionError(f.to_string() + " is reducible");
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  if (k->characteristic() != 0) {
    for (const auto& f : enumerate_monic_irreducibles(static_cast<std::uint32_t>(k->characteristic()), opt.poly_degree))
      out.push_back(Poly::from_raw(k, f.raw()));
  } else {
    for (const auto& a : opt.samples) {
      if (a == 0) throw PreconditionError("t - 0 = t is excluded");
      admit(Poly::variable(k) - Poly::constant(k, Scalar(k, a)));
    }
  }
  for (const auto& f : opt.polys) admit(f);
  std::sort(out.begin(), out.end());
  return out;
}

inline SimpleReport classify_simple(const Graph& g, const FieldPtr& k, const SimpleOptions& opt) {
  if (!k->is_base()) throw PreconditionError("simple classification runs over Q or a prime field");
  SimpleReport r;
  r.poly_degree = opt.poly_degree;
  r.cycle_bound = opt.cycle_bound;
  r.finite_complete = k->characteristic() != 0 && opt.polys.empty();
  for (const auto& s : maximal_sinks(g))
    r.entries.push_back({SimpleKind::SinkSimple, s.vertex, std::nullopt, std::nullopt, s.path_count, {}});
  const auto fs = admissible_polynomials(k, opt);
  const auto maximal = maximal_cycles(g);
  for (const auto& c : maximal) {
    const std::size_t n = orbit_size(g, c);
    for (const auto& f : fs)
      r.entries.push_back({SimpleKind::CycleSimple, std::nullopt, c, f, n * static_cast<std::uint64_t>(f.degree()), {}});
  }
  for (auto v : g.sinks())
    if (reached_by_cycle(g, v))
      r.entries.push_back({SimpleKind::InfiniteDimFlagged, v, std::nullopt, std::nullopt, std::nullopt,
                           "infinitely many paths end at the sink"});
  for (const auto& c : simple_closed_paths(g, opt.cycle_bound).paths)
    if (std::find(maximal.begin(), maximal.end(), c) == maximal.end())
      r.entries.push_back({SimpleKind::InfiniteDimFlagged, std::nullopt, c, std::nullopt, std::nullopt,
                           is_cycle(g, c) ? "cycle is not maximal" : "closed path is not a cycle"});
  if (const auto irr = irrational_flag(g); irr.present)
    r.entries.push_back({SimpleKind::InfiniteDimFlagged, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
                         "irrational paths (" + to_string(g, irr.witness->first) + ", " + to_string(g, irr.witness->second) + ")"});
  return r;
}

inline std::vector<SimpleEntry> finite_entries(const SimpleReport& r) {
  std::vector<SimpleEntry> out;
  for (const auto& e : r.entries)
    if (e.kind != SimpleKind::InfiniteDimFlagged) out.push_back(e);
  return out;
}

// Dimension recomputed from the graph: path count, or orbit size times deg f.
inline std::uint64_t dimension_oracle(const Graph& g, const SimpleEntry& e) {
  switch (e.kind) {
    case SimpleKind::SinkSimple: return count_paths_ending_at(g, *e.sink);
    case SimpleKind::CycleSimple: return orbit_size(g, *e.cycle) * static_cast<std::uint64_t>(e.f->degree());
    case SimpleKind::InfiniteDimFlagged: break;
  }
  throw PreconditionError("entry is infinite-dimensional");
}

// The module realising a finite-dimensional entry.
inline ModuleSpec entry_module(const Graph& g, const SimpleEntry& e) {
  if (e.kind == SimpleKind::SinkSimple) return ModuleSpec::chen(BoundaryPath::finite(g, FinitePath::vertex(*e.sink)));
  if (e.kind == SimpleKind::CycleSimple) return ModuleSpec::chen_ext(*e.cycle, *e.f, true);
  throw PreconditionError("entry is infinite-dimensional");
}

// ---- simplicity ----

enum class Verdict { Simple, NotSimple, GradedSimpleNotSimple, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Simple: return "simple";
    case Verdict::NotSimple: return "not-simple";
    case Verdict::GradedSimpleNotSimple: return "graded-simple-not-simple";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct SimplicityReport {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::vector<Vector> submodule;  // proper nonzero submodule witness
  std::size_t end_dim = 0;
  std::size_t image_dim = 0;
  nlohmann::json witness = nlohmann::json::object();
};

// A proper monic factor of f, where one can be found (F_p: trial division; Q: rational roots).
inline std::optional<Poly> proper_factor(const Poly& f) {
  const FieldPtr& k = f.field();
  if (!k->is_base() || f.degree() < 2) return std::nullopt;
  if (k->characteristic() != 0) {
    for (int d = 1; 2 * d <= f.degree(); ++d)
      for (const auto& q : monic_polynomials(k, d))
        if ((f % q).degree() < 0) return q;
    return std::nullopt;
  }
  if (auto root = detail::rational_root(f)) return Poly::variable(k) - Poly::constant(k, Scalar(k, *root));
  return std::nullopt;
}

inline Matrix eval_poly(const Poly& p, const Matrix& a) {
  Matrix r(a.field(), a.rows(), a.cols());
  for (int i = p.degree(); i >= 0; --i) r = r * a + Matrix::identity(a.field(), a.rows()).scaled(p.coeff(i));
  return r;
}

// Finite-dimensional M is simple iff End(M) = D is a division algebra and the
// image of L_K(E) is all of End_D(M), of dimension (dim M / dim D)^2 dim D.
// D is certified a field by a generator whose minimal polynomial is irreducible
// of degree dim D, with D commutative.
inline SimplicityReport probe_finite(const Module& m, std::uint64_t seed = 1) {
  SimplicityReport r;
  const FieldPtr& k = m.field();
  const std::size_t n = m.dim();
  if (n == 0) {
    r.reason = "zero module";
    return r;
  }
  // Cyclic seeds: a basis vector generating a proper submodule settles it.
  for (std::size_t i = 0; i < n; ++i) {
    Vector v = zero_vector(k, n);
    v[i] = Scalar::one(k);
    auto sub = generated_submodule(m, v);
    if (sub.size() < n) {
      r.verdict = Verdict::NotSimple;
      r.reason = "basis vector " + describe(m, i) + " generates a submodule of dimension " + std::to_string(sub.size());
      r.submodule = std::move(sub);
      return r;
    }
  }
  const auto end = intertwiner_space(m, m);
  r.end_dim = end.size();
  r.image_dim = image_algebra_dimension(m);
  for (const auto& a : end)
    for (const auto& b : end)
      if (!(a * b == b * a)) {
        r.reason = "End(M) is not commutative";
        return r;
      }
  std::vector<Matrix> candidates = end;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 8 && !end.empty(); ++t) {
    Matrix s(k, n, n);
    for (const auto& e : end) s = s + e.scaled(random_scalar(k, rng));
    candidates.push_back(s);
  }
  for (const auto& d : candidates) {
    const Poly mp = minimal_polynomial(d);
    if (auto q = proper_factor(mp)) {
      const auto kernel = eval_poly(*q, d).nullspace();
      r.verdict = Verdict::NotSimple;
      r.reason = "endomorphism with reducible minimal polynomial " + mp.to_string();
      r.submodule = kernel;
      return r;
    }
    if (static_cast<std::size_t>(mp.degree()) != end.size()) continue;
    bool field_generator = mp.degree() <= 1;
    if (!field_generator) {
      try {
        field_generator = is_irreducible(mp);
      } catch (const PreconditionError&) {
        continue;
      }
    }
    if (field_generator) {
      const std::size_t dd = end.size();
      if (n % dd != 0) {
        r.reason = "dim M not divisible by dim End(M)";
        return r;
      }
      const std::size_t rr = n / dd;
      if (r.image_dim == rr * rr * dd) {
        r.verdict = Verdict::Simple;
        r.reason = "End(M) is a field of dimension " + std::to_string(dd) + " and the image of L_K(E) is End_D(M)";
      } else {
        r.verdict = Verdict::NotSimple;
        r.reason = "image of L_K(E) has dimension " + std::to_string(r.image_dim) + " < " + std::to_string(rr * rr * dd);
      }
      return r;
    }
  }
  r.reason = "no field generator found in End(M)";
  return r;
}

// Ind_{c^inf}(K[t^n,t^-n]) is graded simple but maps onto V^{t-1}_[c^inf]
// with a nonzero kernel; the witness is checked on the window.
inline SimplicityReport probe_laurent(const Module& m, std::size_t inner) {
  SimplicityReport r;
  const Graph& g = m.graph();
  const AlgebraPtr& alg = m.algebra();
  const FieldPtr& k = m.field();
  const BoundaryPath& x = m.base_point();
  const FinitePath c = rotation(g, x.cycle(), x.rotation());
  const auto n = static_cast<std::int64_t>(c.length());
  Module target(alg, ModuleSpec::chen_ext(c, Poly::variable(k) - Poly::constant(k, Scalar::one(k))), m.bound());
  LinearMap theta(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const auto& b = std::get<CosetBasis>(m.basis_element(i));
    if (auto j = target.index_of(ChenBasis{b.y, 0})) theta[i] = ModuleVector{{*j, Scalar::one(k)}};
  }
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const auto& b = std::get<CosetBasis>(m.basis_element(i));
    if (b.y.prefix().length() <= inner && std::abs(b.k) <= static_cast<std::int64_t>(inner)) in.push_back(i);
  }
  const MapChecks eq = check_equivariance(m, target, theta, algebra_generators(alg), in);
  bool onto = true;
  for (std::size_t j = 0; j < target.dim(); ++j) {
    bool hit = false;
    for (const auto& t : theta)
      if (t && t->contains(j)) hit = true;
    onto = onto && hit;
  }
  std::optional<ModuleVector> kernel;
  const auto a0 = m.index_of(CosetBasis{x, 0, 0}), an = m.index_of(CosetBasis{x, n, 0});
  if (a0 && an) {
    ModuleVector v;
    add_to(v, *a0, Scalar::one(k));
    add_to(v, *an, -Scalar::one(k));
    if (auto img = apply_map(theta, v); img && img->empty()) kernel = v;
  }
  // Graded simplicity: every degree-d piece of the window is one-dimensional.
  bool one_dim = true;
  if (x.prefix().is_vertex() && orbit(g, x, m.bound()).points.size() == 1)
    for (std::int64_t d = -static_cast<std::int64_t>(inner); d <= static_cast<std::int64_t>(inner); ++d)
      one_dim = one_dim && graded_component_dim(m, d) == 1;
  r.witness = {{"target", "V^(t-1)_[" + to_string(g, x) + "]"},
               {"target_dim", target.dim()},
               {"equivariance_checked", eq.checked},
               {"equivariant", !eq.failure && eq.checked > 0},
               {"surjective", onto},
               {"kernel", kernel ? "(" + to_string(g, x) + ",0) - (" + to_string(g, x) + "," + std::to_string(n) + ")" : "none"}};
  if (!eq.failure && eq.checked > 0 && onto && kernel) {
    r.verdict = Verdict::GradedSimpleNotSimple;
    r.reason = "surjection onto V^(t-1) with nonzero kernel";
    r.submodule.push_back(to_dense(m, *kernel));
  } else {
    r.reason = eq.failure.value_or("witness incomplete");
  }
  r.witness["graded_components_one_dimensional"] = one_dim;
  return r;
}

inline SimplicityReport simplicity_probe(const Module& m, std::size_t inner = 2) {
  if (m.spec().kind == ModuleKind::Induced && m.spec().coeff.kind == CoeffKind::LaurentShift) return probe_laurent(m, inner);
  if (m.spec().kind == ModuleKind::Nvc) {
    SimplicityReport r;
    r.reason = "N_vc: use its induced form";
    return r;
  }
  if (!m.exact()) {
    SimplicityReport r;
    r.reason = "infinite-dimensional module";
    return r;
  }
  return probe_finite(m);
}

// ---- JSON ----

inline nlohmann::json to_json(const Graph& g, const GradedReport& r) {
  nlohmann::json j;
  j["families"] = nlohmann::json::array();
  for (const auto& s : r.sinks) {
    nlohmann::json f{{"type", "sink"}, {"sink", g.name(s.sink)}, {"shifts", "all n"}, {"finite", s.finite}};
    f["dim"] = s.dim ? nlohmann::json(*s.dim) : nlohmann::json("infinite");
    j["families"].push_back(f);
  }
  if (r.irrational.present)
    j["families"].push_back({{"type", "irrational"},
                             {"witness", {to_string(g, r.irrational.witness->first), to_string(g, r.irrational.witness->second)}}});
  for (const auto& l : r.laurent)
    j["families"].push_back({{"type", "laurent"}, {"cycle", to_string(g, l.cycle)}, {"shifts", l.shifts}});
  j["complete"] = r.complete;
  j["bounds"] = {{"cycles_up_to", r.cycle_bound}};
  return j;
}

inline nlohmann::json to_json(const Graph& g, const SimpleEntry& e) {
  nlohmann::json j;
  switch (e.kind) {
    case SimpleKind::SinkSimple: j = {{"type", "sink"}, {"sink", g.name(*e.sink)}, {"dim", *e.dim}}; break;
    case SimpleKind::CycleSimple:
      j = {{"type", "cycle"}, {"cycle", to_string(g, *e.cycle)}, {"f", e.f->to_string()}, {"dim", *e.dim}};
      break;
    case SimpleKind::InfiniteDimFlagged:
      j = {{"type", "infinite"}, {"reason", e.reason}};
      if (e.sink) j["sink"] = g.name(*e.sink);
      if (e.cycle) j["cycle"] = to_string(g, *e.cycle);
      break;
  }
  return j;
}

inline nlohmann::json to_json(const Graph& g, const SimpleReport& r) {
  nlohmann::json j;
  j["families"] = nlohmann::json::array();
  for (const auto& e : r.entries) j["families"].push_back(to_json(g, e));
  j["complete"] = r.finite_complete;
  j["bounds"] = {{"poly_deg", r.poly_degree}, {"cycles_up_to", r.cycle_bound}};
  return j;
}

}  // namespace lpa
