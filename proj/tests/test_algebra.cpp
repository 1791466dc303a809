#include <gtest/gtest.h>

#include <random>

#include "graphs.hpp"
#include "lpa/lpa.hpp"

using namespace lpa;
using namespace testgraphs;

namespace {

Element elt(const AlgebraPtr& a, std::string_view s) { return parse_element(a, s); }

// Matrix units: for acyclic graphs with one sink, L_K(E) is a full matrix
// algebra indexed by the paths into the sink; here we only need the edge
// images, which are elementary matrices E_{s(e), r(e)} on vertices.
Matrix unit(const FieldPtr& k, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(k, n, n);
  m(i, j) = Scalar::one(k);
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

// mu nu^* |-> M(mu) M(nu)^T with edges sent to vertex matrix units.
Matrix to_matrix(const Element& x) {
  const Graph& g = x.algebra()->graph();
  const FieldPtr& k = x.algebra()->field();
  const std::size_t n = g.num_vertices();
  auto path_matrix = [&](const FinitePath& p) {
    if (p.is_vertex()) return unit(k, n, p.source().value, p.source().value);
    Matrix m = Matrix::identity(k, n);
    for (std::size_t i = 0; i < p.length(); ++i) m = m * unit(k, n, g.src(p[i]).value, g.rng(p[i]).value);
    return m;
  };
  Matrix out(k, n, n);
  for (const auto& [m, c] : x.terms()) out = out + (path_matrix(m.mu) * transpose(path_matrix(m.nu))).scaled(c);
  return out;
}

// On R_1: e^i (e^j)^* |-> t^{i-j}.
LaurentElement to_laurent(const Element& x) {
  LaurentElement out(x.algebra()->field(), 1);
  for (const auto& [m, c] : x.terms()) out.add_term(m.degree(), c);
  return out;
}

template <class Rng>
std::vector<Element> samples(const AlgebraPtr& a, std::size_t count, std::size_t len, Rng& rng) {
  const auto pool = all_monomials_up_to(a->graph(), len);
  std::vector<Element> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_element(a, pool, 3, rng));
  return out;
}

std::vector<AlgebraPtr> suite_algebras() {
  std::vector<AlgebraPtr> out;
  for (const auto& [name, g] : relation_suite())
    for (const auto& k : {Field::rationals(), Field::prime(2), Field::prime(3)}) out.push_back(LeavittPathAlgebra::make(g, k));
  return out;
}

}  // namespace

// ---- products of monomials ----

TEST(MonoMul, Examples) {
  const auto g = a2();
  const auto f = FinitePath::edge(*g, g->edge("f"));
  const auto v = FinitePath::vertex(g->vertex("v"));
  auto r = mono_mul(Monomial(f, v), Monomial(v, f));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Monomial(f, f));
  r = mono_mul(Monomial(v, f), Monomial(f, v));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, Monomial::vertex(g->vertex("v")));

  const auto h = r1();
  const auto e = FinitePath::edge(*h, h->edge("e"));
  const auto w = FinitePath::vertex(h->vertex("v"));
  EXPECT_EQ(*mono_mul(Monomial(w, e), Monomial(e, w)), Monomial::vertex(h->vertex("v")));

  const auto c = chain();
  const auto cf = FinitePath::edge(*c, c->edge("f"));
  const auto cg = FinitePath::edge(*c, c->edge("g"));
  EXPECT_FALSE(mono_mul(Monomial(cg, cg), Monomial(cf, cf)).has_value());
}

// ---- normalization ----

TEST(Normalize, Examples) {
  const auto q = Field::rationals();
  const auto r = LeavittPathAlgebra::make(r1(), q);
  EXPECT_EQ(elt(r, "e e^"), elt(r, "v"));
  const auto rose = LeavittPathAlgebra::make(rose2(), q);
  EXPECT_EQ(elt(rose, "e e^"), elt(rose, "v - g g^"));
  const auto a = LeavittPathAlgebra::make(a2(), q);
  EXPECT_EQ(elt(a, "f f^"), elt(a, "u"));
  const auto normal = elt(rose, "e.g g^");
  EXPECT_EQ(normal.terms().size(), 1u);
}

TEST(Normalize, SpecialEdgeChoiceChangesBasisNotElement) {
  const auto g = rose2();
  const auto q = Field::rationals();
  const auto a = LeavittPathAlgebra::make(g, q);
  const auto b = std::make_shared<const LeavittPathAlgebra>(g, q, SpecialEdgeChoice(*g, {{g->vertex("v"), g->edge("g")}}));
  // e e^* is normal under the second choice.
  EXPECT_EQ(elt(b, "e e^").terms().size(), 1u);
  EXPECT_EQ(elt(a, "e e^").terms().size(), 2u);
  EXPECT_EQ(elt(b, "g g^"), elt(b, "v - e e^"));
}

TEST(Normalize, OutputIsNormalIdempotentAndLinear) {
  std::mt19937_64 rng(11);
  for (const auto& a : suite_algebras()) {
    const auto pool = all_monomials_up_to(a->graph(), 3);
    for (int i = 0; i < 40; ++i) {
      std::vector<std::pair<Monomial, Scalar>> raw, raw2;
      for (int t = 0; t < 4; ++t) {
        raw.emplace_back(pool[rng() % pool.size()], random_scalar(a->field(), rng));
        raw2.emplace_back(pool[rng() % pool.size()], random_scalar(a->field(), rng));
      }
      const Element x = Element::from_terms(a, raw), y = Element::from_terms(a, raw2);
      for (const auto& [m, c] : x.terms()) {
        EXPECT_TRUE(a->is_normal(m));
        EXPECT_FALSE(c.is_zero());
      }
      std::vector<std::pair<Monomial, Scalar>> again(x.terms().begin(), x.terms().end());
      EXPECT_EQ(Element::from_terms(a, again), x);
      auto both = raw;
      both.insert(both.end(), raw2.begin(), raw2.end());
      EXPECT_EQ(Element::from_terms(a, both), x + y);
      Element shuffled(a);
      for (const auto& [m, c] : both) shuffled.add_normalized_shuffled(m, c, rng);
      EXPECT_EQ(shuffled, x + y);
    }
  }
}

TEST(Normalize, PreservesDegree) {
  std::mt19937_64 rng(5);
  for (const auto& a : suite_algebras()) {
    const auto pool = all_monomials_up_to(a->graph(), 3);
    for (int i = 0; i < 30; ++i) {
      std::vector<std::pair<Monomial, Scalar>> raw;
      for (int t = 0; t < 5; ++t) raw.emplace_back(pool[rng() % pool.size()], random_nonzero_scalar(a->field(), rng));
      const Element x = Element::from_terms(a, raw);
      for (std::int64_t k = -3; k <= 3; ++k) {
        std::vector<std::pair<Monomial, Scalar>> part;
        for (const auto& [m, c] : raw)
          if (m.degree() == k) part.emplace_back(m, c);
        EXPECT_EQ(x.homogeneous_component(k), Element::from_terms(a, part));
      }
    }
  }
}

// ---- algebra operations ----

TEST(AlgebraOps, Examples) {
  const auto q = Field::rationals();
  const auto r = LeavittPathAlgebra::make(r1(), q);
  const auto x = elt(r, "e + e^");
  EXPECT_EQ(x * x, elt(r, "e.e + 2 v + e.e^"));
  EXPECT_TRUE((x * Element::zero(r)).is_zero());
  EXPECT_EQ(elt(r, "e + e^").homogeneous_component(1), elt(r, "e"));
  EXPECT_EQ(elt(r, "v").homogeneous_component(0), elt(r, "v"));
  EXPECT_EQ(Element::unit(r) * x, x);
}

TEST(AlgebraOps, DefiningRelations) {
  for (const auto& a : suite_algebras()) {
    const Graph& g = a->graph();
    Element sum(a);
    for (auto v : g.vertices()) {
      const auto pv = Element::vertex(a, v);
      EXPECT_EQ(pv * pv, pv);
      for (auto w : g.vertices())
        if (w != v) EXPECT_TRUE((pv * Element::vertex(a, w)).is_zero());
      sum += pv;
    }
    EXPECT_EQ(sum, Element::unit(a));
    for (auto e : g.edges()) {
      const auto x = Element::edge(a, e), xs = Element::ghost(a, e);
      EXPECT_EQ(Element::vertex(a, g.src(e)) * x, x);
      EXPECT_EQ(x * Element::vertex(a, g.rng(e)), x);
      EXPECT_EQ(xs * Element::vertex(a, g.src(e)), xs);
      for (auto f : g.edges())
        EXPECT_EQ(xs * Element::edge(a, f), e == f ? Element::vertex(a, g.rng(e)) : Element::zero(a));
    }
    for (auto v : g.vertices()) {
      if (g.is_sink(v)) continue;
      Element s(a);
      for (auto e : g.out_edges(v)) s += Element::edge(a, e) * Element::ghost(a, e);
      EXPECT_EQ(s, Element::vertex(a, v));
    }
  }
}

TEST(AlgebraOps, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(17);
  for (const auto& a : suite_algebras()) {
    const auto xs = samples(a, 30, 2, rng);
    for (std::size_t i = 0; i + 2 < xs.size(); i += 3) {
      const auto &x = xs[i], &y = xs[i + 1], &z = xs[i + 2];
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ((x + y) * z, x * z + y * z);
      EXPECT_EQ((x * y).ghost_transpose(), y.ghost_transpose() * x.ghost_transpose());
    }
  }
}

TEST(AlgebraOps, MatrixModelOfAcyclicGraphs) {
  std::mt19937_64 rng(23);
  for (const auto& g : {a2(), chain()})
    for (const auto& k : {Field::rationals(), Field::prime(2)}) {
      const auto a = LeavittPathAlgebra::make(g, k);
      std::size_t normal = 0;
      for (const auto& m : all_monomials_up_to(*g, 3))
        if (a->is_normal(m)) ++normal;
      // The normal monomials form a basis of a full matrix algebra over the paths into the sink.
      const auto n = count_paths_ending_at(*g, g->sinks().front());
      EXPECT_EQ(normal, n * n);
      const auto xs = samples(a, 40, 2, rng);
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        EXPECT_EQ(to_matrix(xs[i] * xs[i + 1]), to_matrix(xs[i]) * to_matrix(xs[i + 1]));
        EXPECT_EQ(to_matrix(xs[i] + xs[i + 1]), to_matrix(xs[i]) + to_matrix(xs[i + 1]));
      }
    }
}

TEST(AlgebraOps, LaurentModelOfR1) {
  std::mt19937_64 rng(29);
  const auto a = LeavittPathAlgebra::make(r1(), Field::rationals());
  const auto xs = samples(a, 60, 3, rng);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    EXPECT_EQ(to_laurent(xs[i] * xs[i + 1]), to_laurent(xs[i]) * to_laurent(xs[i + 1]));
    // Normal monomials on R_1 are e^i or (e^j)^*, so the model is injective.
    EXPECT_EQ(to_laurent(xs[i]).terms().size(), xs[i].terms().size());
  }
}

// ---- twists ----

TEST(Twist, Examples) {
  const auto q = Field::rationals();
  const auto g = chain();
  const auto a = LeavittPathAlgebra::make(g, q);
  TwistVector t(*g, q);
  t.set(g->edge("f"), Scalar(q, 2L));
  t.set(g->edge("g"), Scalar(q, Rational(1, 5)));
  EXPECT_EQ(sigma_twist(t, elt(a, "w")), elt(a, "w"));
  EXPECT_EQ(sigma_twist(t, elt(a, "f.g")), elt(a, "2/5 f.g"));
  EXPECT_TRUE(t.a_mu(FinitePath::vertex(g->vertex("u"))).is_one());

  const auto r = r1();
  TwistVector s(*r, q);
  s.set(r->edge("e"), Scalar(q, 2L));
  EXPECT_EQ(s.a_mu(parse_path(*r, "e.e.e")), Scalar(q, 8L));

  const auto c3 = cycle3();
  TwistVector c(*c3, q);
  c.set(c3->edge("e1"), Scalar(q, 2L));
  c.set(c3->edge("e2"), Scalar(q, 3L));
  c.set(c3->edge("e3"), Scalar(q, Rational(1, 7)));
  const auto cyc = parse_path(*c3, "e1.e2.e3");
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(c.a_mu(rotation(*c3, cyc, i)), c.a_mu(cyc));
}

TEST(Twist, IsAnAutomorphism) {
  std::mt19937_64 rng(31);
  for (const auto& a : suite_algebras()) {
    const Graph& g = a->graph();
    TwistVector t(g, a->field());
    for (auto e : g.edges()) t.set(e, random_nonzero_scalar(a->field(), rng));
    const auto xs = samples(a, 20, 2, rng);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      EXPECT_EQ(sigma_twist(t, xs[i] * xs[i + 1]), sigma_twist(t, xs[i]) * sigma_twist(t, xs[i + 1]));
      EXPECT_EQ(sigma_twist(t, sigma_twist(t.inverse(), xs[i])), xs[i]);
    }
  }
}

// ---- groupoid ----

TEST(Groupoid, ComposeAndInverse) {
  const auto g = r1();
  const auto x = cycle_point(*g, parse_path(*g, "e"));
  const GroupoidElement a(x, 1, x), b(x, 2, x);
  EXPECT_EQ(compose(a, b), GroupoidElement(x, 3, x));
  EXPECT_EQ(compose(a, a.inverse()), GroupoidElement::unit(x));
  const auto h = a2();
  const auto v = BoundaryPath::finite(*h, FinitePath::vertex(h->vertex("v")));
  const auto f = BoundaryPath::finite(*h, parse_path(*h, "f"));
  const GroupoidElement fv(f, 1, v);
  EXPECT_EQ(compose(fv, fv.inverse()), GroupoidElement::unit(f));
  EXPECT_THROW(compose(fv, fv), PreconditionError);
  EXPECT_THROW(GroupoidElement(f, 0, v), PreconditionError);
}

TEST(Groupoid, Membership) {
  const auto h = a2();
  const auto v = FinitePath::vertex(h->vertex("v"));
  const auto f = parse_path(*h, "f");
  EXPECT_TRUE(membership(*h, GroupoidElement(BoundaryPath::finite(*h, f), 1, BoundaryPath::finite(*h, v)), Bisection(f, v)));
  const auto g = r1();
  const auto x = cycle_point(*g, parse_path(*g, "e"));
  const auto e = parse_path(*g, "e");
  const auto w = FinitePath::vertex(g->vertex("v"));
  EXPECT_TRUE(membership(*g, GroupoidElement::unit(x), Bisection(e, e)));
  EXPECT_FALSE(membership(*g, GroupoidElement::unit(x), Bisection(w, w, {g->edge("e")})));
}

TEST(Groupoid, BisectionProductExamples) {
  const auto g = r1();
  const auto e = parse_path(*g, "e");
  const auto v = FinitePath::vertex(g->vertex("v"));
  auto p = bisection_product(*g, Bisection(e, v), Bisection(v, e));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], Bisection(e, e));
  p = bisection_product(*g, Bisection(v, e), Bisection(e, v));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], Bisection(v, v));
  const auto h = a2();
  const auto f = parse_path(*h, "f");
  EXPECT_TRUE(bisection_product(*h, Bisection(f, FinitePath::vertex(h->vertex("v"))), Bisection(f, FinitePath::vertex(h->vertex("v")))).empty());
}

TEST(Groupoid, PiConsistencyAndNegativeControl) {
  EXPECT_TRUE(verify_pi(*a2(), 3).pass());
  EXPECT_TRUE(verify_pi(*r1(), 3).pass());
  // Forgetting the second case of the prefix rule must be caught.
  const BisectionProductRule broken = [](const Graph& g, const Bisection& b1, const Bisection& b2) {
    auto out = bisection_product(g, b1, b2);
    if (!b2.mu.strip_prefix(b1.nu)) out.clear();
    return out;
  };
  EXPECT_FALSE(verify_pi(*r1(), 2, broken).pass());
  EXPECT_FALSE(verify_pi(*a2(), 2, broken).pass());
}

TEST(Groupoid, IsotropyAndOrbit) {
  const auto h = a2();
  const auto v = BoundaryPath::finite(*h, FinitePath::vertex(h->vertex("v")));
  EXPECT_TRUE(isotropy(v).trivial);
  auto o = orbit(*h, v, 4);
  EXPECT_TRUE(o.exact);
  EXPECT_EQ(o.points.size(), 2u);
  for (const auto& g : {r1(), toeplitz()}) {
    const auto x = cycle_point(*g, parse_path(*g, "e"));
    const auto iso = isotropy(x);
    EXPECT_FALSE(iso.trivial);
    EXPECT_EQ(iso.generator_lag, 1);
    o = orbit(*g, x, 4);
    EXPECT_TRUE(o.exact);
    ASSERT_EQ(o.points.size(), 1u);
    EXPECT_EQ(o.points[0], x);
  }
  const auto c = cycle3_exit();
  o = orbit(*c, cycle_point(*c, parse_path(*c, "e1.e2.e3")), 4);
  EXPECT_TRUE(o.exact);
  EXPECT_EQ(o.points.size(), 3u);
}

TEST(Groupoid, OrbitMatchesLagsInWindow) {
  // Every window point tail-equivalent to x lies in the orbit, and conversely.
  for (const auto& [name, g] : relation_suite()) {
    const auto pts = boundary_window(*g, 3);
    for (const auto& x : pts) {
      const auto o = orbit(*g, x, 3);
      if (!o.exact) continue;
      for (const auto& y : pts) {
        const bool in = std::find(o.points.begin(), o.points.end(), y) != o.points.end();
        EXPECT_EQ(in, !tail_lags(x, y).is_empty()) << name << " " << to_string(*g, x) << " " << to_string(*g, y);
      }
    }
  }
}

// ---- text ----

TEST(Text, ParseExamples) {
  const auto q = Field::rationals();
  const auto r = LeavittPathAlgebra::make(r1(), q);
  EXPECT_EQ(elt(r, "v"), Element::vertex(r, r->graph().vertex("v")));
  EXPECT_EQ(elt(r, "2 e.e"), (Element::edge(r, r->graph().edge("e")) * Element::edge(r, r->graph().edge("e"))).scaled(Scalar(q, 2L)));
  const auto a = LeavittPathAlgebra::make(a2(), q);
  const auto f = parse_path(a->graph(), "f");
  EXPECT_EQ(elt(a, "1/3 f v^"), Element::monomial(a, Monomial(f, FinitePath::vertex(a->graph().vertex("v"))), Scalar(q, Rational(1, 3))));
  EXPECT_EQ(elt(a, "f^*"), Element::ghost(a, a->graph().edge("f")));
  EXPECT_TRUE(elt(a, "0").is_zero());
}

TEST(Text, ParseErrors) {
  const auto a = LeavittPathAlgebra::make(a2(), Field::rationals());
  EXPECT_THROW(elt(a, "x"), InputError);
  EXPECT_THROW(elt(a, "1/0 f"), InputError);
  EXPECT_THROW(elt(a, "2 f.f"), InputError);
  EXPECT_THROW(elt(a, "f +"), InputError);
}

TEST(Text, ElementRoundTrip) {
  std::mt19937_64 rng(37);
  auto algebras = suite_algebras();
  const auto ext = parse_field("F2[t]/(t^2+t+1)");
  algebras.push_back(LeavittPathAlgebra::make(toeplitz(), ext));
  algebras.push_back(LeavittPathAlgebra::make(rose2(), parse_field("Q[t]/(t^2-2)")));
  for (const auto& a : algebras) {
    for (const auto& x : samples(a, 25, 3, rng)) {
      const std::string s = to_string(x);
      EXPECT_EQ(elt(a, s), x) << s;
      EXPECT_EQ(to_string(elt(a, s)), s);
    }
  }
}

TEST(Text, BoundaryPathRoundTrip) {
  for (const auto& [name, g] : relation_suite())
    for (const auto& x : boundary_window(*g, 3)) EXPECT_EQ(parse_boundary_path(*g, to_string(*g, x)), x) << name;
}
