#include <gtest/gtest.h>

#include "helpers.hpp"
#include "statman/dsl.hpp"
#include "statman/soliton.hpp"

using namespace statman;
using namespace statman::testing;

namespace {

SolitonProblem xi_problem(const FramePresentation& m, SolitonKind kind) {
  SolitonProblem p;
  p.kind = kind;
  p.potential = unit(m, "xi");
  p.xi = unit(m, "xi");
  return p;
}

}  // namespace

TEST(Parse, KindsAndSources) {
  EXPECT_EQ(parse_soliton_kind("eta-ricci"), SolitonKind::eta_ricci);
  EXPECT_EQ(parse_soliton_kind("quasi-yamabe"), SolitonKind::quasi_yamabe);
  EXPECT_EQ(parse_ricci_source("nabla-star"), RicciSource::nabla_star);
  EXPECT_THROW(parse_soliton_kind("gradient"), StructuralError);
  EXPECT_THROW(parse_ricci_source("levi"), StructuralError);
}

TEST(Solve, EtaRicciKenmotsu) {
  // 2(-4g) + 2(g - eta eta) + 2 lambda g + 2 omega eta eta = 0 -> lambda = 3, omega = 1
  const FramePresentation m = fixture("kenmotsu5d");
  const SolitonSolution s = solve_soliton(m, m.connection("nabla"), xi_problem(m, SolitonKind::eta_ricci));
  EXPECT_TRUE(s.consistent);
  EXPECT_EQ(s.lambda, RingQuotient(3));
  EXPECT_EQ(*s.omega, RingQuotient(1));
}

TEST(Solve, QuasiYamabeKenmotsu) {
  // (g - eta eta) + (lambda + 20) g + omega eta eta = 0 -> lambda = -21, omega = 1
  const FramePresentation m = fixture("kenmotsu5d");
  const SolitonSolution s = solve_soliton(m, m.connection("nabla"), xi_problem(m, SolitonKind::quasi_yamabe));
  EXPECT_TRUE(s.consistent);
  EXPECT_EQ(s.lambda, RingQuotient(-21));
  EXPECT_EQ(*s.omega, RingQuotient(1));
}

TEST(Solve, PlainKindsInconsistentWithXiPotential) {
  const FramePresentation m = fixture("kenmotsu5d");
  for (SolitonKind k : {SolitonKind::ricci, SolitonKind::yamabe}) {
    const SolitonSolution s = solve_soliton(m, m.connection("nabla"), xi_problem(m, k));
    EXPECT_FALSE(s.consistent) << to_string(k);
    EXPECT_FALSE(s.omega);
  }
}

TEST(Solve, ResidualVanishesAtSolutionProperty) {
  const FramePresentation m = fixture("kenmotsu5d");
  for (RicciSource src : {RicciSource::nabla, RicciSource::nabla_star, RicciSource::statistical})
    for (SolitonKind k : {SolitonKind::eta_ricci, SolitonKind::quasi_yamabe}) {
      SolitonProblem p = xi_problem(m, k);
      p.source = src;
      const SolitonSolution s = solve_soliton(m, m.connection("nabla"), p);
      if (!s.consistent) continue;
      ASSERT_TRUE(s.lambda.is_polynomial());
      ASSERT_TRUE(s.omega->is_polynomial());
      EXPECT_TRUE(is_zero(soliton_residual(m, m.connection("nabla"), p, s.lambda.as_poly(), s.omega->as_poly())));
      // a perturbed lambda leaves a residual
      EXPECT_FALSE(is_zero(soliton_residual(m, m.connection("nabla"), p, s.lambda.as_poly() + Poly(1), s.omega->as_poly())));
    }
}

TEST(Solve, OmegaKindNeedsXi) {
  const FramePresentation m = fixture("hyperbolic2");
  SolitonProblem p;
  p.kind = SolitonKind::eta_ricci;
  p.potential = zero(m);
  EXPECT_THROW(solve_soliton(m, m.connection("nabla"), p), StructuralError);
}

TEST(Solve, HyperbolicSteady) {
  const FramePresentation m = fixture("hyperbolic2");
  SolitonProblem p;
  p.potential = zero(m);
  const SolitonSolution s = solve_soliton(m, m.connection("nabla"), p);
  EXPECT_TRUE(s.consistent);
  EXPECT_TRUE(s.lambda.is_zero());
  EXPECT_EQ(classify(s.lambda, {}), SolitonLabel::steady);
}

TEST(Solve, Flat3EinsteinLambda) {
  const FramePresentation m = fixture("flat3-einstein");
  SolitonProblem p;
  p.potential = zero(m);
  p.source = RicciSource::nabla;
  const SolitonSolution s = solve_soliton(m, m.connection("nabla"), p);
  const Poly b = param(m, "b");
  EXPECT_TRUE(s.consistent);
  EXPECT_EQ(s.lambda, RingQuotient((b * b).scaled(Rational(-1, 2))));
  EXPECT_EQ(classify(s.lambda, {{"b", 2}}), SolitonLabel::shrinking);
}

TEST(Einstein, Detection) {
  const FramePresentation k = fixture("kenmotsu5d");
  const Connection& nabla = k.connection("nabla");
  const EinsteinResult st = einstein_check(k, source_ricci(k, nabla, RicciSource::statistical));
  EXPECT_EQ(st.kind, EinsteinKind::einstein);
  EXPECT_EQ(st.str(), "einstein(-4)");
  // Ric of nabla: -(a+4) on the base, 4a - 4 on xi
  const EinsteinResult en = einstein_check(k, source_ricci(k, nabla, RicciSource::nabla), unit(k, "xi"));
  EXPECT_EQ(en.kind, EinsteinKind::eta_einstein);
  const Poly a = param(k, "a");
  EXPECT_EQ(en.c1, RingQuotient(-a - Poly(4)));
  EXPECT_EQ(en.c1 + en.c2, RingQuotient(Poly(4) * a - Poly(4)));
  EXPECT_EQ(einstein_check(k, source_ricci(k, nabla, RicciSource::nabla)).kind, EinsteinKind::neither);

  const FramePresentation f2 = fixture("flat2-einstein");
  EXPECT_EQ(einstein_check(f2, source_ricci(f2, f2.connection("printed_star"), RicciSource::nabla)).str(), "einstein(-1)");
}

TEST(Einstein, SourcesAgreeForLeviCivitaProperty) {
  const FramePresentation m = fixture("kenmotsu5d");
  const Connection lc = levi_civita(m);
  const BilinearForm r = source_ricci(m, lc, RicciSource::nabla);
  EXPECT_EQ(source_ricci(m, lc, RicciSource::nabla_star), r);
  EXPECT_EQ(source_ricci(m, lc, RicciSource::statistical), r);
}

TEST(Classify, Conventions) {
  EXPECT_EQ(classify(RingQuotient(-1), {}), SolitonLabel::shrinking);
  EXPECT_EQ(classify(RingQuotient(0), {}), SolitonLabel::steady);
  EXPECT_EQ(classify(RingQuotient(2), {}), SolitonLabel::expanding);
  EXPECT_EQ(classify(RingQuotient(-1), {}, LabelConvention::yamabe), SolitonLabel::expanding);
  EXPECT_EQ(classify(RingQuotient(2), {}, LabelConvention::yamabe), SolitonLabel::shrinking);
}

TEST(Classify, FlipProperty) {
  const ParamsPtr ps = make_params({"t"});
  const Poly t = Poly::variable(ps, "t");
  const RingQuotient lambda(t * t - Poly(4), t + Poly(3));
  for (int v = -10; v <= 10; ++v) {
    if (v == -3) continue;
    const Assignment at{{"t", v}};
    const SolitonLabel r = classify(lambda, at), y = classify(lambda, at, LabelConvention::yamabe);
    if (r == SolitonLabel::steady) EXPECT_EQ(y, SolitonLabel::steady);
    else EXPECT_NE(r, y);
    // the sign of a quotient is the sign of its value
    const Rational val = lambda.eval(at);
    EXPECT_EQ(r, val < 0 ? SolitonLabel::shrinking : val == 0 ? SolitonLabel::steady : SolitonLabel::expanding);
  }
}

TEST(Classify, UnassignedParameterThrows) {
  const FramePresentation m = fixture("kenmotsu5d");
  EXPECT_THROW(classify(RingQuotient(param(m, "a")), {}), std::exception);
}

TEST(Ambient, Kenmotsu5dFrozenVerdicts) {
  const FramePresentation m = fixture("kenmotsu5d");
  const ContactTriple ct = *load_fixture("kenmotsu5d").contact_triple();
  const Section s = audit_ambient_theorems(m, m.connection("nabla"), ct, RicciSource::statistical);
  EXPECT_EQ(s.at("ambient.kenmotsu-precondition").verdict, Verdict::pass);
  EXPECT_EQ(s.at("ambient.solve").verdict, Verdict::pass);
  EXPECT_EQ(s.at("ambient.solve").value, "lambda = 3, omega = 1");
  EXPECT_EQ(s.at("ambient.eta-einstein-form").verdict, Verdict::mismatch);
  EXPECT_EQ(s.at("ambient.xi-eigenvalue").verdict, Verdict::mismatch);
  EXPECT_EQ(s.at("ambient.scalar").verdict, Verdict::mismatch);
  EXPECT_EQ(s.at("ambient.scalar").value, "-20");
}

TEST(Ambient, AtZeroBetaFormAndScalarMatch) {
  // beta = 0: -(3+1) g - (1+0-1) eta eta = -4g, and r = -5*4 - 0 = -20; Q xi = -4 xi vs -(3+1+0-1) = -3
  const FramePresentation m = specialize(fixture("kenmotsu5d"), {{"a", 0}});
  const ContactTriple ct = *load_fixture("kenmotsu5d").contact_triple();
  const Section s = audit_ambient_theorems(m, m.connection("nabla"), ct, RicciSource::statistical);
  EXPECT_EQ(s.at("ambient.eta-einstein-form").verdict, Verdict::match);
  EXPECT_EQ(s.at("ambient.scalar").verdict, Verdict::match);
  EXPECT_EQ(s.at("ambient.xi-eigenvalue").verdict, Verdict::mismatch);
  const Section shifted = audit_ambient_theorems(m, m.connection("nabla"), ct, RicciSource::statistical, 1);
  EXPECT_EQ(shifted.at("ambient.scalar").verdict, Verdict::mismatch);
}
