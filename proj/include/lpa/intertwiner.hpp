#pragma once

// Linear algebra over modules: intertwiner spaces, submodules generated by a
// vector, the image of L_K(E) in End(M), and restriction Res_x.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpa/algebra.hpp"
#include "lpa/error.hpp"
#include "lpa/matrix.hpp"
#include "lpa/module.hpp"

namespace lpa {

// Matrices of the generators v, e, e^*; throws NonClosed if the window is not closed.
class NonClosed : public Error {
 public:
  using Error::Error;
};

inline std::vector<Matrix> generator_matrices(const Module& m) {
  std::vector<Matrix> out;
  try {
    for (const auto& g : algebra_generators(m.algebra())) out.push_back(m.matrix_of(g));
  } catch (const OutOfWindow& e) {
    throw NonClosed(std::string("module window is not closed under the action: ") + e.what());
  }
  return out;
}

struct IntertwinerOptions {
  bool graded = false;
  std::int64_t degree = 0;
};

// Basis of Hom(A, B): matrices T (dim B x dim A) with T rho_A(g) = rho_B(g) T
// for all generators g. In graded mode T maps A_d into B_{d + degree}.
inline std::vector<Matrix> intertwiner_space(const Module& a, const Module& b, IntertwinerOptions opt = {}) {
  if (a.algebra() != b.algebra()) throw PreconditionError("modules over different algebras");
  const FieldPtr& k = a.field();
  const std::size_t da = a.dim(), db = b.dim();
  const auto ga = generator_matrices(a), gb = generator_matrices(b);
  // Unknown T(i, j) sits at position i * da + j.
  std::vector<bool> allowed(db * da, true);
  if (opt.graded)
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j) allowed[i * da + j] = b.grade_of(i) == a.grade_of(j) + opt.degree;
  std::vector<std::size_t> vars;
  for (std::size_t p = 0; p < allowed.size(); ++p)
    if (allowed[p]) vars.push_back(p);
  std::vector<std::size_t> column(db * da, SIZE_MAX);
  for (std::size_t c = 0; c < vars.size(); ++c) column[vars[c]] = c;

  // One equation per generator and entry (r, s) of T A_g - B_g T.
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t gi = 0; gi < ga.size(); ++gi) {
    const Matrix& ma = ga[gi];
    const Matrix& mb = gb[gi];
    for (std::size_t r = 0; r < db; ++r)
      for (std::size_t s = 0; s < da; ++s) {
        std::vector<Scalar> row(vars.size(), Scalar::zero(k));
        bool nonzero = false;
        for (std::size_t j = 0; j < da; ++j)  // (T A)(r, s) = sum_j T(r, j) A(j, s)
          if (!ma(j, s).is_zero() && column[r * da + j] != SIZE_MAX) {
            row[column[r * da + j]] += ma(j, s);
            nonzero = true;
          }
        for (std::size_t i = 0; i < db; ++i)  // (B T)(r, s) = sum_i B(r, i) T(i, s)
          if (!mb(r, i).is_zero() && column[i * da + s] != SIZE_MAX) {
            row[column[i * da + s]] -= mb(r, i);
            nonzero = true;
          }
        if (nonzero) rows.push_back(std::move(row));
      }
  }
  Matrix sys(k, rows.size(), vars.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < vars.size(); ++c) sys(r, c) = rows[r][c];
  std::vector<Matrix> out;
  for (const auto& sol : sys.nullspace()) {
    Matrix t(k, db, da);
    for (std::size_t c = 0; c < vars.size(); ++c) t(vars[c] / da, vars[c] % da) = sol[c];
    out.push_back(std::move(t));
  }
  return out;
}

// Basis of the submodule generated by v (closure under the generators).
inline std::vector<Vector> generated_submodule(const Module& m, const Vector& v) {
  const auto gens = generator_matrices(m);
  std::vector<Vector> basis = span_basis(m.field(), m.dim(), {v});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& g : gens) {
      const Vector w = g.apply(basis[i]);
      std::vector<Vector> trial = basis;
      trial.push_back(w);
      if (span_dimension(m.field(), m.dim(), trial) > basis.size()) basis.push_back(w);
    }
  }
  return basis;
}

// K-dimension of the image of L_K(E) in End_K(M): span of all words in the
// generator matrices.
inline std::size_t image_algebra_dimension(const Module& m) {
  const auto gens = generator_matrices(m);
  const std::size_t n = m.dim();
  auto flatten = [&](const Matrix& a) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v.push_back(a(i, j));
    return v;
  };
  std::vector<Matrix> basis;
  std::vector<Vector> flat;
  auto try_add = [&](const Matrix& a) {
    std::vector<Vector> trial = flat;
    trial.push_back(flatten(a));
    if (span_dimension(m.field(), n * n, trial) > flat.size()) {
      basis.push_back(a);
      flat.push_back(flatten(a));
    }
  };
  for (const auto& g : gens) try_add(g);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& g : gens) try_add(g * basis[i]);
  return basis.size();
}

struct Restriction {
  std::size_t dim = 0;
  std::vector<Vector> basis;             // of Res_x(M) inside M
  std::optional<Matrix> generator;       // action of (x, |c|, x) in that basis; nullopt when isotropy is trivial
  std::size_t steps = 0;                 // idempotents mu mu^* examined
  std::vector<std::size_t> chain_dims;   // dim of the image after each step
};

// Res_x(M) as the intersection of the images of mu mu^* over initial
// subpaths mu of x. Sink paths use every prefix (the last one cuts out {x}).
// Lassos alpha c_i^inf stop at the first l > |alpha| where two consecutive
// images coincide; for cycles with finitely many predecessors this is exact.
inline Restriction restrict_module(const Module& m, const BoundaryPath& x, std::size_t cap) {
  const Graph& g = m.graph();
  const FieldPtr& k = m.field();
  const AlgebraPtr& alg = m.algebra();
  if (!m.exact()) throw PreconditionError("restriction needs a finite-dimensional module");
  Restriction r;
  std::vector<Vector> current;
  for (std::size_t l = 0;; ++l) {
    if (x.is_finite() && l > x.length()) break;
    if (l > cap) throw PreconditionError("restriction did not stabilise within " + std::to_string(cap) + " steps");
    const FinitePath mu = x.initial_segment(g, l);
    const Matrix p = m.matrix_of(Element::monomial(alg, Monomial(mu, mu)));
    const auto image = p.column_space();
    std::vector<Vector> next = l == 0 ? span_basis(k, m.dim(), image) : intersect_subspaces(k, m.dim(), current, image);
    ++r.steps;
    r.chain_dims.push_back(next.size());
    const bool same = l > 0 && next.size() == current.size();
    current = std::move(next);
    if (x.is_lasso() && l > x.prefix().length() && same) break;
  }
  r.basis = current;
  r.dim = current.size();
  if (x.is_lasso() && r.dim > 0) {
    // (x, n, x) lies in Z(alpha c_i, alpha).
    const FinitePath alpha = x.prefix();
    const FinitePath loop = concat(alpha, rotation(g, x.cycle(), x.rotation()));
    const Matrix act = m.matrix_of(Element::monomial(alg, Monomial(loop, alpha)));
    const Matrix basis = Matrix::from_columns(k, m.dim(), current);
    Matrix gen(k, r.dim, r.dim);
    for (std::size_t j = 0; j < r.dim; ++j) {
      auto coords = basis.solve(act.apply(current[j]));
      if (!coords) throw ArithmeticError("isotropy generator does not preserve the restriction");
      for (std::size_t i = 0; i < r.dim; ++i) gen(i, j) = (*coords)[i];
    }
    r.generator = std::move(gen);
  }
  return r;
}

}  // namespace lpa
