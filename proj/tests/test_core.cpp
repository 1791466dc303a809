#include <gtest/gtest.h>

#include <random>
#include <set>

#include "graphs.hpp"
#include "lpa/lpa.hpp"
#include "oracles.hpp"

using namespace lpa;
using namespace testgraphs;

namespace {

Poly parse_poly(const FieldPtr& k, std::string_view s) { return Poly::parse(k, s); }

std::vector<std::string> names(const Graph& g, const std::vector<FinitePath>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_string(g, p));
  return out;
}

// All paths of length <= bound by extending edge by edge (no pruning).
std::vector<FinitePath> brute_paths(const Graph& g, std::size_t bound) {
  std::vector<FinitePath> out, layer;
  for (auto v : g.vertices()) layer.push_back(FinitePath::vertex(v));
  for (std::size_t len = 0; len <= bound; ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<FinitePath> next;
    for (const auto& p : layer)
      for (auto e : g.edges())
        if (g.src(e) == p.range()) next.push_back(p.append(g, e));
    layer = std::move(next);
  }
  return out;
}

}  // namespace

// ---- fields ----

TEST(Field, RationalSum) {
  const auto q = Field::rationals();
  EXPECT_EQ(Scalar(q, Rational(1, 2)) + Scalar(q, Rational(1, 3)), Scalar(q, Rational(5, 6)));
}

TEST(Field, ExtensionSquareOfGenerator) {
  const auto f2 = Field::prime(2);
  const auto k = Field::extension(f2, parse_poly(f2, "t^2+t+1").raw());
  const Scalar t = Scalar::generator(k);
  EXPECT_EQ(t * t, t + Scalar::one(k));
}

TEST(Field, InverseOfGeneratorInExtension) {
  const auto q = Field::rationals();
  const auto k = Field::extension(q, parse_poly(q, "t^2-2*t+3").raw());
  const Scalar t = Scalar::generator(k);
  EXPECT_TRUE((t * t.inverse()).is_one());
  // t (t - 2) = -3, so t^-1 = -(t - 2)/3.
  EXPECT_EQ(t.inverse(), Scalar::from_coefficients(k, {Rational(2, 3), Rational(-1, 3)}));
}

TEST(Field, PrimeFieldReducesAndInverts) {
  const auto f7 = Field::prime(7);
  EXPECT_EQ(Scalar(f7, 10L), Scalar(f7, 3L));
  EXPECT_EQ(Scalar(f7, -1L), Scalar(f7, 6L));
  EXPECT_EQ(Scalar(f7, 3L).inverse(), Scalar(f7, 5L));
  EXPECT_EQ(Scalar(f7, Rational(1, 2)), Scalar(f7, 4L));
}

TEST(Field, ErrorsAreTyped) {
  EXPECT_THROW(Field::prime(4), InputError);
  EXPECT_THROW(Scalar::zero(Field::rationals()).inverse(), ArithmeticError);
  EXPECT_THROW(Scalar::one(Field::rationals()) + Scalar::one(Field::prime(2)), ArithmeticError);
  EXPECT_THROW(parse_field("F6"), InputError);
  EXPECT_THROW(parse_field("Z"), InputError);
}

TEST(Field, ParseFieldSpecs) {
  EXPECT_EQ(parse_field("Q")->kind(), Field::Kind::Rationals);
  EXPECT_EQ(parse_field("F5")->characteristic(), 5u);
  const auto k = parse_field("F2[t]/(t^3+t+1)");
  EXPECT_TRUE(k->is_extension());
  EXPECT_EQ(k->degree(), 3u);
  EXPECT_EQ(*k->order(), 8);
}

// Axioms checked exhaustively on small finite fields, by sampling over Q.
class FieldAxioms : public ::testing::TestWithParam<std::string> {};

TEST_P(FieldAxioms, Hold) {
  const auto k = parse_field(GetParam());
  std::vector<Scalar> xs;
  if (k->is_finite()) {
    xs = field_elements(k);
  } else {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 12; ++i) xs.push_back(random_scalar(k, rng));
  }
  const Scalar zero = Scalar::zero(k), one = Scalar::one(k);
  for (const auto& a : xs) {
    EXPECT_EQ(a + zero, a);
    EXPECT_EQ(a * one, a);
    EXPECT_TRUE((a + (-a)).is_zero());
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    for (const auto& b : xs) {
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      for (const auto& c : xs) {
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values("Q", "F2", "F3", "F5", "F2[t]/(t^2+t+1)", "F3[t]/(t^2+1)", "Q[t]/(t^2-2)"));

TEST(Field, FiniteFieldOrder) {
  for (const char* s : {"F2", "F7", "F2[t]/(t^3+t+1)", "F3[t]/(t^2+1)"}) {
    const auto k = parse_field(s);
    EXPECT_EQ(Integer(static_cast<unsigned long>(field_elements(k).size())), *k->order()) << s;
  }
}

TEST(Field, ReducibleModulusRejected) {
  const auto f2 = Field::prime(2);
  EXPECT_THROW(Field::extension(f2, parse_poly(f2, "t^2+1").raw()), InputError);
  const auto q = Field::rationals();
  EXPECT_THROW(Field::extension(q, parse_poly(q, "t^2-1").raw()), InputError);
  EXPECT_THROW(Field::extension(q, parse_poly(q, "t^4+1").raw()), InputError);
  EXPECT_TRUE(Field::extension(q, parse_poly(q, "t^4+1").raw(), true)->irreducibility_assumed());
}

// ---- polynomials ----

TEST(Poly, IrreducibleOverPrimeField) {
  const auto f2 = Field::prime(2);
  EXPECT_TRUE(irreducible_over_prime_field(parse_poly(f2, "t^2+t+1"), 2).irreducible);
  EXPECT_FALSE(irreducible_over_prime_field(parse_poly(f2, "t^2+1"), 2).irreducible);
  const auto t = irreducible_over_prime_field(parse_poly(f2, "t"), 2);
  EXPECT_TRUE(t.irreducible);
  EXPECT_TRUE(t.excluded);
}

TEST(Poly, EnumerateIrreduciblesF2) {
  auto strs = [](int d) {
    std::vector<std::string> out;
    for (const auto& f : enumerate_monic_irreducibles(2, d)) out.push_back(f.to_string());
    return out;
  };
  EXPECT_EQ(strs(1), (std::vector<std::string>{"t+1"}));
  EXPECT_EQ(strs(2), (std::vector<std::string>{"t+1", "t^2+t+1"}));
  EXPECT_EQ(strs(3), (std::vector<std::string>{"t+1", "t^2+t+1", "t^3+t+1", "t^3+t^2+1"}));
}

TEST(Poly, IrreducibleCountsMatchBruteForce) {
  for (unsigned long p : {2ul, 3ul, 5ul})
    for (int d = 1; d <= (p == 2 ? 5 : 3); ++d) {
      std::size_t listed = 0;
      for (const auto& f : enumerate_monic_irreducibles(p, d))
        if (f.degree() == d) ++listed;
      EXPECT_EQ(listed, oracle::count_admissible_irreducibles(p, d)) << "p=" << p << " d=" << d;
    }
}

TEST(Poly, RationalIrreducibilityUpToCubic) {
  const auto q = Field::rationals();
  EXPECT_TRUE(is_irreducible(parse_poly(q, "t^2-2")));
  EXPECT_FALSE(is_irreducible(parse_poly(q, "t^2-4")));
  EXPECT_FALSE(is_irreducible(parse_poly(q, "t^3-1/8")));
  EXPECT_TRUE(is_irreducible(parse_poly(q, "t^3-2")));
  EXPECT_THROW(is_irreducible(parse_poly(q, "t^4+1")), PreconditionError);
}

TEST(Poly, DivisionIdentity) {
  const auto f3 = Field::prime(3);
  for (const auto& a : monic_polynomials(f3, 3))
    for (const auto& b : monic_polynomials(f3, 2)) {
      const auto [qq, r] = a.divmod(b);
      EXPECT_EQ(qq * b + r, a);
      EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(Poly, ParsePrintRoundTrip) {
  const auto q = Field::rationals();
  for (const char* s : {"t^2+t+1", "t-1/2", "3*t^3-t", "t"}) {
    const Poly p = parse_poly(q, s);
    EXPECT_EQ(parse_poly(q, p.to_string()), p) << s;
  }
  EXPECT_THROW(parse_poly(q, "t^^2"), ParseError);
}

// ---- matrices ----

TEST(Matrix, RankKernelSolve) {
  const auto q = Field::rationals();
  Matrix m(q, 2, 3);
  m(0, 0) = Scalar(q, 1L), m(0, 1) = Scalar(q, 2L), m(0, 2) = Scalar(q, 3L);
  m(1, 0) = Scalar(q, 2L), m(1, 1) = Scalar(q, 4L), m(1, 2) = Scalar(q, 6L);
  EXPECT_EQ(m.rank(), 1u);
  const auto ker = m.nullspace();
  EXPECT_EQ(ker.size(), 2u);
  for (const auto& v : ker) EXPECT_TRUE(is_zero_vector(m.apply(v)));
  const Vector b{Scalar(q, 2L), Scalar(q, 4L)};
  const auto x = m.solve(b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.apply(*x), b);
  EXPECT_FALSE(m.solve(Vector{Scalar(q, 1L), Scalar(q, 1L)}).has_value());
}

TEST(Matrix, MinimalPolynomialOfCompanion) {
  const auto f2 = Field::prime(2);
  for (const auto& f : enumerate_monic_irreducibles(2, 4)) {
    const Poly pf = Poly::from_raw(f2, f.raw());
    EXPECT_EQ(minimal_polynomial(Matrix::companion(pf)), pf);
  }
  const auto q = Field::rationals();
  EXPECT_EQ(minimal_polynomial(Matrix::identity(q, 3)), parse_poly(q, "t-1"));
}

TEST(Matrix, SubspaceIntersection) {
  const auto q = Field::rationals();
  auto e = [&](int i) {
    Vector v = zero_vector(q, 3);
    v[i] = Scalar::one(q);
    return v;
  };
  const auto meet = intersect_subspaces(q, 3, {e(0), e(1)}, {e(1), e(2)});
  ASSERT_EQ(meet.size(), 1u);
  EXPECT_EQ(span_dimension(q, 3, {meet[0], e(1)}), 1u);
}

// ---- Laurent polynomials ----

TEST(Laurent, ProductOfInversePowers) {
  const auto q = Field::rationals();
  const auto a = LaurentElement::monomial(q, 2, 2, Scalar::one(q));
  const auto b = LaurentElement::monomial(q, 2, -2, Scalar::one(q));
  EXPECT_EQ(a * b, LaurentElement::monomial(q, 2, 0, Scalar::one(q)));
}

TEST(Laurent, HomogeneousComponent) {
  const auto q = Field::rationals();
  auto x = LaurentElement::monomial(q, 2, 2, Scalar::one(q)) + LaurentElement::monomial(q, 2, 4, Scalar(q, 3L));
  EXPECT_EQ(x.homogeneous_component(4), LaurentElement::monomial(q, 2, 4, Scalar(q, 3L)));
  EXPECT_TRUE(x.homogeneous_component(3).is_zero());
}

TEST(Laurent, ShiftReadsComponentAtDegreePlusShift) {
  const auto q = Field::rationals();
  auto x = LaurentElement::monomial(q, 2, 2, Scalar::one(q)) + LaurentElement::monomial(q, 2, 4, Scalar(q, 3L));
  for (std::int64_t m = -3; m <= 3; ++m)
    for (std::int64_t d = -6; d <= 6; ++d) EXPECT_EQ(x.shifted_component(d, m), x.homogeneous_component(d + m));
  EXPECT_THROW(x.add_term(3, Scalar::one(q)), PreconditionError);
}

// ---- graphs ----

TEST(Graph, ValidateExamples) {
  const auto w = single_vertex();
  EXPECT_TRUE(w->is_sink(w->vertex("w")));
  const auto g = a2();
  const auto rep = validate(*g);
  ASSERT_EQ(rep.sinks.size(), 1u);
  EXPECT_EQ(g->name(rep.sinks[0]), "v");
}

TEST(Graph, DanglingEndpoint) {
  try {
    Graph::make({"u"}, {{"f", "x", "u"}});
    FAIL() << "expected GraphError";
  } catch (const GraphError& e) {
    EXPECT_NE(std::string(e.what()).find("dangling endpoint"), std::string::npos);
  }
}

TEST(Graph, RejectsBadInput) {
  EXPECT_THROW(Graph::make({}, {}), GraphError);
  EXPECT_THROW(Graph::make({"u", "u"}, {}), GraphError);
  EXPECT_THROW(Graph::make({"u"}, {{"u", "u", "u"}}), GraphError);
  EXPECT_THROW(Graph::make({"1u"}, {}), GraphError);
  EXPECT_THROW(Graph::from_json_text("{\"vertices\": [\"u\"], \"edges\": [}"), ParseError);
  EXPECT_THROW(Graph::from_json_text("{\"edges\": []}"), GraphError);
  EXPECT_THROW(Graph::from_json_text("{\"vertices\": [\"u\"], \"edges\": [{\"name\": \"e\"}]}"), GraphError);
  // A graph without edges may omit the key.
  EXPECT_EQ(Graph::from_json_text("{\"vertices\": [\"u\"]}")->num_edges(), 0u);
}

TEST(Graph, JsonRoundTrip) {
  for (const auto& [name, g] : relation_suite()) {
    const auto h = Graph::from_json_text(g->to_json().dump());
    EXPECT_EQ(h->to_json(), g->to_json()) << name;
  }
}

// ---- paths ----

TEST(Path, InitialSubpathOfBoundaryPaths) {
  const auto g = r1();
  const auto einf = cycle_point(*g, FinitePath::edge(*g, g->edge("e")));
  const auto v = FinitePath::vertex(g->vertex("v"));
  ASSERT_TRUE(einf.has_initial_subpath(v));
  EXPECT_EQ(*einf.strip_prefix(*g, v), einf);
  const auto eee = FinitePath::from_edges(*g, {g->edge("e"), g->edge("e"), g->edge("e")});
  ASSERT_TRUE(einf.has_initial_subpath(eee));
  EXPECT_EQ(*einf.strip_prefix(*g, eee), einf);

  const auto h = a2();
  const auto xv = BoundaryPath::finite(*h, FinitePath::vertex(h->vertex("v")));
  EXPECT_FALSE(xv.has_initial_subpath(FinitePath::edge(*h, h->edge("f"))));
}

TEST(Path, ConcatAndStrip) {
  const auto g = chain();
  const auto f = FinitePath::edge(*g, g->edge("f"));
  const auto gg = FinitePath::edge(*g, g->edge("g"));
  const auto fg = concat(f, gg);
  EXPECT_EQ(to_string(*g, fg), "f.g");
  EXPECT_EQ(*fg.strip_prefix(f), gg);
  EXPECT_FALSE(fg.strip_prefix(gg).has_value());
  EXPECT_THROW(concat(gg, f), PreconditionError);
}

TEST(Path, LassoCanonicalForm) {
  const auto g = cycle3();
  const auto c = parse_path(*g, "e1.e2.e3");
  const auto c2 = parse_path(*g, "e2.e3.e1");
  // e1.(e2.e3.e1) and (e1.e2.e3) are the same infinite path.
  EXPECT_EQ(BoundaryPath::lasso(*g, FinitePath::edge(*g, g->edge("e1")), c2), BoundaryPath::lasso(*g, FinitePath::vertex(g->vertex("a")), c));
  // Non-primitive cycles reduce to their root.
  EXPECT_EQ(BoundaryPath::lasso(*g, FinitePath::vertex(g->vertex("a")), concat(c, c)), cycle_point(*g, c));
  const auto t = toeplitz();
  const auto e = FinitePath::edge(*t, t->edge("e"));
  EXPECT_EQ(BoundaryPath::lasso(*t, e, e).prefix().length(), 0u);
}

TEST(Path, BoundaryPathPrependStripInverse) {
  const auto g = cycle3_exit();
  for (const auto& x : boundary_window(*g, 3))
    for (const auto& mu : all_paths_up_to(*g, 3)) {
      if (mu.range() != x.source()) continue;
      const auto y = x.prepend(*g, mu);
      ASSERT_TRUE(y.has_initial_subpath(mu));
      EXPECT_EQ(*y.strip_prefix(*g, mu), x);
    }
}

// ---- lags ----

TEST(Lags, SpecExamples) {
  for (const auto& g : {r1(), cycle2(), cycle3()}) {
    const auto c = elementary_cycles(*g).at(0);
    const auto x = cycle_point(*g, c);
    EXPECT_EQ(tail_lags(x, x), LagSet::coset(0, static_cast<std::int64_t>(c.length())));
  }
  const auto g = a2();
  const auto f = BoundaryPath::finite(*g, FinitePath::edge(*g, g->edge("f")));
  const auto v = BoundaryPath::finite(*g, FinitePath::vertex(g->vertex("v")));
  EXPECT_EQ(tail_lags(f, v), LagSet::single(1));
  EXPECT_EQ(tail_lags(v, f), LagSet::single(-1));
  const auto t = toeplitz();
  EXPECT_TRUE(tail_lags(cycle_point(*t, FinitePath::edge(*t, t->edge("e"))),
                        BoundaryPath::finite(*t, FinitePath::edge(*t, t->edge("f"))))
                  .is_empty());
}

TEST(Lags, MatchShiftOracleOnAllGraphs) {
  auto graphs = relation_suite();
  graphs.emplace_back("2-cycle", cycle2());
  graphs.emplace_back("3-cycle", cycle3());
  graphs.emplace_back("two loops", Graph::make({"u", "v"}, {{"e", "u", "u"}, {"g", "v", "v"}}));
  for (const auto& [name, g] : graphs) {
    const auto pts = boundary_window(*g, 3);
    for (const auto& x : pts)
      for (const auto& y : pts) {
        const auto l = tail_lags(x, y);
        const auto seen = oracle::lags_in_range(x, y, 7);
        for (std::int64_t k = -7; k <= 7; ++k)
          ASSERT_EQ(l.contains(k), seen.contains(k)) << name << ": " << to_string(*g, x) << " vs " << to_string(*g, y) << " k=" << k;
        EXPECT_EQ(tail_lags(y, x), l.negated());
      }
  }
}

// ---- enumeration ----

TEST(Enumerate, PathsEndingAt) {
  const auto g = a2();
  auto r = enumerate_paths_ending_at(*g, g->vertex("v"), 5);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(names(*g, r.paths), (std::vector<std::string>{"v", "f"}));
  const auto t = toeplitz();
  r = enumerate_paths_ending_at(*t, t->vertex("v"), 3);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(names(*t, r.paths), (std::vector<std::string>{"v", "f", "e.f", "e.e.f"}));
  const auto w = single_vertex();
  r = enumerate_paths_ending_at(*w, w->vertex("w"), 3);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.paths.size(), 1u);
}

TEST(Enumerate, PathsMatchBruteForce) {
  for (const auto& [name, g] : relation_suite()) {
    const auto brute = brute_paths(*g, 4);
    for (auto v : g->vertices()) {
      const auto r = enumerate_paths_ending_at(*g, v, 4);
      std::set<FinitePath> want;
      for (const auto& p : brute)
        if (p.range() == v) want.insert(p);
      if (r.exact) {
        EXPECT_EQ(std::set<FinitePath>(r.paths.begin(), r.paths.end()), want) << name;
        EXPECT_EQ(count_paths_ending_at(*g, v), want.size()) << name;
      } else {
        EXPECT_EQ(std::set<FinitePath>(r.paths.begin(), r.paths.end()), want) << name;
      }
    }
    EXPECT_EQ(all_paths_up_to(*g, 4).size(), brute.size()) << name;
  }
}

TEST(Cycles, ElementaryCycles) {
  EXPECT_TRUE(elementary_cycles(*a2()).empty());
  const auto rose = rose2();
  EXPECT_EQ(names(*rose, elementary_cycles(*rose)), (std::vector<std::string>{"e", "g"}));
  const auto c3 = cycle3();
  EXPECT_EQ(names(*c3, elementary_cycles(*c3)), (std::vector<std::string>{"e1.e2.e3"}));
}

TEST(Cycles, SimpleClosedPaths) {
  const auto g = r1();
  auto r = simple_closed_paths(*g, 5);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(names(*g, r.paths), (std::vector<std::string>{"e"}));
  const auto rose = rose2();
  r = simple_closed_paths(*rose, 2);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(names(*rose, r.paths), (std::vector<std::string>{"e", "g", "e.g"}));
  r = simple_closed_paths(*a2(), 5);
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.paths.empty());
}

TEST(Cycles, SimpleClosedPathsMatchBruteForce) {
  // Primitive closed paths up to rotation, from all closed paths.
  const auto rose = rose2();
  for (std::size_t bound = 1; bound <= 5; ++bound) {
    std::set<FinitePath> want;
    for (const auto& p : brute_paths(*rose, bound))
      if (is_simple_closed(p)) want.insert(canonical_rotation(*rose, p).first);
    const auto got = simple_closed_paths(*rose, bound).paths;
    EXPECT_EQ(std::set<FinitePath>(got.begin(), got.end()), want) << bound;
  }
}

TEST(Cycles, MaximalSinksAndCycles) {
  const auto g = a2();
  const auto s = maximal_sinks(*g);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].path_count, 2u);
  EXPECT_TRUE(maximal_sinks(*toeplitz()).empty());
  EXPECT_EQ(maximal_sinks(*single_vertex()).at(0).path_count, 1u);
  const auto t = toeplitz();
  EXPECT_EQ(names(*t, maximal_cycles(*t)), (std::vector<std::string>{"e"}));
  EXPECT_TRUE(maximal_cycles(*rose2()).empty());
  const auto two = Graph::make({"u", "v"}, {{"e", "u", "u"}, {"g", "v", "v"}});
  EXPECT_EQ(maximal_cycles(*two).size(), 2u);
  const auto fed = Graph::make({"u", "v"}, {{"e", "u", "u"}, {"f", "u", "v"}, {"g", "v", "v"}});
  EXPECT_EQ(names(*fed, maximal_cycles(*fed)), (std::vector<std::string>{"e"}));
}

TEST(Cycles, DimensionCountOnChain) {
  const auto g = chain();
  EXPECT_EQ(count_paths_ending_at(*g, g->vertex("v")), 3u);
}
