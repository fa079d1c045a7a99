#include <gtest/gtest.h>

#include "helpers.hpp"
#include "statman/dsl.hpp"
#include "statman/submanifold.hpp"

using namespace statman;
using namespace statman::testing;

namespace {

AdaptedSubmanifold sub_of(const std::string& block) {
  const ManifoldDoc doc = load_fixture("kenmotsu5d");
  const FramePresentation m = doc.presentation();
  return induce(m, "nabla", doc.submanifold(block)->tangent, block);
}

ContactTriple contact() { return *load_fixture("kenmotsu5d").contact_triple(); }

}  // namespace

TEST(Induce, InvariantSliceMatchesStandaloneFixture) {
  const AdaptedSubmanifold s = sub_of("invariant");
  const FramePresentation slice = fixture("kenmotsu5d-sub-invariant");
  EXPECT_EQ(s.induced.frame, slice.frame);
  EXPECT_EQ(s.induced.metric, slice.metric);
  EXPECT_EQ(s.induced.brackets, slice.brackets);
  EXPECT_EQ(s.induced.connection("nabla"), slice.connection("nabla"));
  EXPECT_TRUE(s.closure_ok);
  EXPECT_TRUE(s.duality_ok);
}

TEST(Induce, IndexSplit) {
  const AdaptedSubmanifold s = sub_of("generic");
  EXPECT_EQ(s.tangent, (std::vector<std::size_t>{0, 1, 2, 4}));
  EXPECT_EQ(s.normal, (std::vector<std::size_t>{3}));
  EXPECT_EQ(s.dim(), 4u);
  EXPECT_EQ(s.codim(), 1u);
}

TEST(Induce, RejectsBadTangentSets) {
  const FramePresentation m = fixture("kenmotsu5d");
  EXPECT_THROW(induce(m, "nabla", {"e1", "e9"}), StructuralError);
  EXPECT_THROW(induce(m, "nabla", {"e1", "e1"}), StructuralError);
  EXPECT_THROW(induce(m, "nabla", std::vector<std::string>{}), StructuralError);
  FramePresentation skew = flat(2);
  skew.metric(0, 0) = 2;
  skew.metric(1, 1) = 2;
  skew.metric(0, 1) = skew.metric(1, 0) = 1;
  skew.connections["nabla"] = levi_civita(skew);
  EXPECT_THROW(induce(skew, "nabla", {"e1"}), StructuralError);
}

TEST(Umbilicity, HypersurfaceOrthogonalToXi) {
  // nabla_{e_i} e_i = -xi is normal and the mixed terms vanish: h = -g xi
  const AdaptedSubmanifold s = sub_of("umbilical");
  const Umbilicity u = umbilicity(s);
  const VectorField xi = unit(s.ambient, "xi");
  EXPECT_TRUE(u.umbilical);
  EXPECT_TRUE(u.umbilical_star);
  EXPECT_EQ(u.mean, -xi);
  EXPECT_EQ(u.mean_star, -xi);
  EXPECT_FALSE(u.minimal);
  EXPECT_FALSE(u.totally_geodesic);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(s.h[p][q], p == q ? -xi : zero(s.ambient));
}

TEST(Umbilicity, XiTangentSlicesTotallyGeodesic) {
  for (const char* b : {"invariant", "anti_invariant", "generic"}) {
    const Umbilicity u = umbilicity(sub_of(b));
    EXPECT_TRUE(u.totally_geodesic) << b;
    EXPECT_TRUE(u.minimal) << b;
  }
}

TEST(ShapeOperator, DualityWithSecondFundamentalForm) {
  // g(h(E,F), U) = g(A*_U E, F)
  const AdaptedSubmanifold s = sub_of("umbilical");
  const VectorField xi = unit(s.ambient, "xi");
  const Endomorphism a_star = shape_operator(s, xi, true);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(inner(s.ambient, s.h[p][q], xi), a_star(p, q));
  EXPECT_EQ(a_star(0, 0), Poly(-1));
}

TEST(Gauss, HoldsOnEveryBlock) {
  for (const char* b : {"invariant", "umbilical", "anti_invariant", "generic"}) {
    const Section g = gauss_check(sub_of(b));
    EXPECT_EQ(g.at("gauss.nabla").verdict, Verdict::pass) << b;
    EXPECT_EQ(g.at("gauss.nabla-star").verdict, Verdict::pass) << b;
  }
}

TEST(PhiSplit, Kinds) {
  const ContactTriple ct = contact();
  EXPECT_EQ(phi_decompose(sub_of("invariant"), ct).kind, PhiKind::invariant);
  EXPECT_EQ(phi_decompose(sub_of("umbilical"), ct).kind, PhiKind::invariant);
  EXPECT_EQ(phi_decompose(sub_of("anti_invariant"), ct).kind, PhiKind::anti_invariant);
  EXPECT_EQ(phi_decompose(sub_of("generic"), ct).kind, PhiKind::generic);
  const AdaptedSubmanifold xi_only = induce(fixture("kenmotsu5d"), "nabla", {"xi"});
  EXPECT_EQ(phi_decompose(xi_only, ct).kind, PhiKind::degenerate);
}

TEST(PhiSplit, RecombinesProperty) {
  // phi E = P E + C E for every tangent frame vector
  const ContactTriple ct = contact();
  for (const char* b : {"invariant", "umbilical", "anti_invariant", "generic"}) {
    const AdaptedSubmanifold s = sub_of(b);
    const PhiSplit sp = phi_decompose(s, ct);
    for (std::size_t a = 0; a < s.dim(); ++a)
      EXPECT_EQ(s.lift(sp.tangential[a]) + sp.normal[a], ct.apply_phi(s.ambient_basis(s.tangent[a]))) << b;
  }
}

TEST(XiPlacement, Blocks) {
  const VectorField xi = unit(fixture("kenmotsu5d"), "xi");
  EXPECT_EQ(xi_placement(sub_of("invariant"), xi), XiPlacement::tangent);
  EXPECT_EQ(xi_placement(sub_of("umbilical"), xi), XiPlacement::normal);
  EXPECT_EQ(xi_placement(sub_of("umbilical"), xi + unit(fixture("kenmotsu5d"), "e1")), XiPlacement::mixed);
}

TEST(Concircular, XiOnlyAtAEqualsOne) {
  const FramePresentation m = fixture("kenmotsu5d");
  const VectorField xi = unit(m, "xi");
  EXPECT_FALSE(concircular_check(m, m.connection("nabla"), xi).holds);
  const FramePresentation one = specialize(m, {{"a", 1}});
  const Concircular c = concircular_check(one, one.connection("nabla"), xi);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.concurrent());
  const FramePresentation two = specialize(m, {{"a", 2}});
  EXPECT_FALSE(concircular_check(two, two.connection("nabla"), xi).holds);
}

TEST(Concircular, FlatParallelField) {
  const FramePresentation m = flat(3);
  const Concircular c = concircular_check(m, levi_civita(m), unit(m, "e2"));
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.mu.is_zero());
  EXPECT_FALSE(c.concurrent());
}

TEST(SolitonTheorems, UmbilicalSectionRuns) {
  const AdaptedSubmanifold s = sub_of("umbilical");
  const Section sec = audit_submanifold_soliton_theorems(s, contact(), unit(s.ambient, "xi"), RicciSource::statistical);
  EXPECT_FALSE(sec.checks.empty());
  EXPECT_NE(sec.find("sub.shape"), nullptr);
}
