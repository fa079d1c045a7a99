#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "statman/frame_algebra.hpp"

using namespace statman;
using namespace statman::testing;

namespace {

/// Koszul formula for an orthonormal-constant metric, evaluated independently:
/// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
Rational koszul(const FramePresentation& m, std::size_t x, std::size_t y, std::size_t z) {
  auto c = [&](std::size_t i, std::size_t j, std::size_t k) { return m.brackets(i, j, k).constant_term(); };
  auto g = [&](std::size_t i, std::size_t j) { return m.metric(i, j); };
  Rational s = 0;
  for (std::size_t k = 0; k < m.dim(); ++k) s += c(x, y, k) * g(k, z) - c(y, z, k) * g(k, x) + c(z, x, k) * g(k, y);
  return s / 2;
}

/// Ric(Y,Z) = sum_i g(R(e_i,Y)Z, e_i) on an orthonormal frame.
Poly ricci_oracle(const FramePresentation& m, const CurvatureTensor& r, std::size_t y, std::size_t z) {
  Poly s = m.zero();
  for (std::size_t i = 0; i < m.dim(); ++i) s += inner(m, r.apply(i, y, z), VectorField::basis(m.dim(), i));
  return s;
}

}  // namespace

TEST(LeviCivita, HyperbolicMatchesKoszulOracle) {
  const FramePresentation m = fixture("hyperbolic2");
  const Connection lc = levi_civita(m);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(lc.gamma(i, j, k), Poly(koszul(m, i, j, k)));
  // frozen: nabla_e1 e1 = e2, nabla_e1 e2 = -e1, nabla_e2 = 0
  EXPECT_EQ(lc.apply(0, 0), unit(m, "e2"));
  EXPECT_EQ(lc.apply(0, 1), -unit(m, "e1"));
  EXPECT_TRUE(lc.apply(1, 0).is_zero());
  EXPECT_TRUE(lc.apply(1, 1).is_zero());
}

TEST(LeviCivita, AbelianIsZero) {
  const Connection lc = levi_civita(flat(4));
  for (const auto& p : lc.gamma.data()) EXPECT_TRUE(p.is_zero());
}

TEST(LeviCivita, Kenmotsu5d) {
  const FramePresentation m = fixture("kenmotsu5d");
  const Connection lc = levi_civita(m);
  const VectorField xi = unit(m, "xi");
  for (const char* e : {"e1", "e2", "e3", "e4"}) {
    const VectorField ei = unit(m, e);
    EXPECT_EQ(lc.apply(ei, ei), -xi);
    EXPECT_EQ(lc.apply(ei, xi), ei);
    EXPECT_TRUE(lc.apply(xi, ei).is_zero());
  }
  EXPECT_TRUE(lc.apply(xi, xi).is_zero());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(lc.gamma(i, j, k), Poly(koszul(m, i, j, k)));
}

TEST(LeviCivita, TorsionFreeAndMetric) {
  for (const char* name : {"kenmotsu5d", "hyperbolic2", "flat3-einstein"}) {
    const FramePresentation m = fixture(name);
    const Connection lc = levi_civita(m);
    EXPECT_TRUE(is_zero(torsion(m, lc))) << name;
    EXPECT_TRUE(check_statistical(m, lc).passed()) << name;
  }
}

TEST(Dual, KenmotsuXiXi) {
  const FramePresentation m = fixture("kenmotsu5d");
  const Connection& nabla = m.connection("nabla");
  const Connection star = dual_connection(m, nabla);
  const VectorField xi = unit(m, "xi");
  EXPECT_EQ(star.apply(xi, xi), Poly(-1) * param(m, "a") * xi);
  // 2 nabla^g = nabla + nabla*
  const Connection lc = levi_civita(m);
  for (std::size_t e = 0; e < lc.gamma.data().size(); ++e)
    EXPECT_EQ(Poly(2) * lc.gamma.data()[e], nabla.gamma.data()[e] + star.gamma.data()[e]);
}

TEST(Dual, Flat2AgainstPrintedTable) {
  const FramePresentation m = fixture("flat2-einstein");
  const Connection star = dual_connection(m, m.connection("nabla"));
  const Connection& printed = m.connection("printed_star");
  EXPECT_EQ(star.apply(0, 0), printed.apply(0, 0));
  EXPECT_EQ(star.apply(1, 0), printed.apply(1, 0));
  EXPECT_EQ(star.apply(1, 1), printed.apply(1, 1));
  // computed nabla*_e1 e2 = e1, printed -e1
  EXPECT_EQ(star.apply(0, 1), unit(m, "e1"));
  EXPECT_NE(star.apply(0, 1), printed.apply(0, 1));
}

TEST(Dual, InvolutionProperty) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    FramePresentation m = trial % 2 ? flat(3) : fixture("hyperbolic2");
    const Connection c = random_connection(m.dim(), rng);
    EXPECT_EQ(dual_connection(m, dual_connection(m, c)), c);
  }
}

TEST(DifferenceTensor, Kenmotsu5dOnlyXiXi) {
  const FramePresentation m = fixture("kenmotsu5d");
  const TensorField12 k = difference_tensor(m.connection("nabla"), levi_civita(m));
  const std::size_t x = 4;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t l = 0; l < 5; ++l) {
        if (i == x && j == x && l == x) EXPECT_EQ(k(i, j, l), param(m, "a"));
        else EXPECT_TRUE(k(i, j, l).is_zero());
      }
}

TEST(DifferenceTensor, Hyperbolic) {
  const FramePresentation m = fixture("hyperbolic2");
  Connection k(2);
  k.gamma = difference_tensor(m.connection("nabla"), levi_civita(m));
  EXPECT_EQ(k.apply(0, 0), unit(m, "e2"));
  EXPECT_EQ(k.apply(0, 1), unit(m, "e1"));
  EXPECT_EQ(k.apply(1, 0), unit(m, "e1"));
  EXPECT_EQ(k.apply(1, 1), Poly(2) * unit(m, "e2"));
}

TEST(Statistical, Fixtures) {
  EXPECT_TRUE(check_statistical(fixture("kenmotsu5d"), fixture("kenmotsu5d").connection("nabla")).passed());
  EXPECT_TRUE(check_statistical(fixture("hyperbolic2"), fixture("hyperbolic2").connection("nabla")).passed());
  EXPECT_TRUE(check_statistical(fixture("flat3-einstein"), fixture("flat3-einstein").connection("nabla")).passed());
  const FramePresentation f2 = fixture("flat2-einstein");
  const StatisticalCheck st = check_statistical(f2, f2.connection("nabla"));
  EXPECT_TRUE(st.torsion_free());
  EXPECT_FALSE(st.codazzi_symmetric());
  EXPECT_FALSE(st.totally_symmetric());
  EXPECT_TRUE(check_statistical(f2, f2.connection("printed_star")).passed());
}

TEST(Curvature, Hyperbolic2IsFlat) {
  const FramePresentation m = fixture("hyperbolic2");
  EXPECT_TRUE(curvature(m, m.connection("nabla")).is_zero());
}

TEST(Curvature, Flat3) {
  const FramePresentation m = fixture("flat3-einstein");
  const Poly b = param(m, "b");
  const CurvatureTensor r = curvature(m, m.connection("nabla"));
  EXPECT_EQ(r.apply(0, 1, 1), (b * b).scaled(Rational(1, 4)) * unit(m, "e1"));
}

TEST(Curvature, Kenmotsu5dE1XiXi) {
  // hand expansion: a nabla_e1 xi - nabla_xi nabla_e1 xi - nabla_e1 xi = (a - 1) e1
  const FramePresentation m = fixture("kenmotsu5d");
  const CurvatureTensor r = curvature(m, m.connection("nabla"));
  EXPECT_EQ(r.apply(0, 4, 4), (param(m, "a") - Poly(1)) * unit(m, "e1"));
  const CurvatureTensor rr = curvature(m, m.connection("nabla"), CurvatureSign::reversed);
  EXPECT_EQ(rr.apply(0, 4, 4), (Poly(1) - param(m, "a")) * unit(m, "e1"));
}

TEST(Curvature, StatisticalKenmotsuCancelsA) {
  const FramePresentation m = fixture("kenmotsu5d");
  const Connection& nabla = m.connection("nabla");
  const CurvatureTensor s = statistical_curvature(curvature(m, nabla), curvature(m, dual_connection(m, nabla)));
  EXPECT_EQ(s.apply(0, 4, 4), -unit(m, "e1"));
}

TEST(Curvature, TwiceStatisticalIsSumProperty) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const FramePresentation m = trial % 2 ? flat(3) : fixture("hyperbolic2");
    const Connection c = random_connection(m.dim(), rng);
    const CurvatureTensor r = curvature(m, c), rs = curvature(m, dual_connection(m, c));
    const CurvatureTensor s = statistical_curvature(r, rs);
    EXPECT_EQ(s + s, r + rs);
  }
}

TEST(Curvature, ReversedIsNegatedProperty) {
  std::mt19937 rng(3);
  const FramePresentation m = fixture("hyperbolic2");
  for (int trial = 0; trial < 10; ++trial) {
    const Connection c = random_connection(2, rng);
    const CurvatureTensor r = curvature(m, c), rr = curvature(m, c, CurvatureSign::reversed);
    EXPECT_TRUE((r + rr).is_zero());
    for (std::size_t e = 0; e < r.entries.data().size(); ++e) EXPECT_EQ(r.entries.data()[e], -rr.entries.data()[e]);
  }
}

TEST(Ricci, FlatIsZero) {
  const FramePresentation m = flat(3);
  EXPECT_TRUE(is_zero(ricci(curvature(m, levi_civita(m)))));
}

TEST(Ricci, Flat3Einstein) {
  const FramePresentation m = fixture("flat3-einstein");
  const Poly b = param(m, "b");
  const BilinearForm ric = ricci(curvature(m, m.connection("nabla")));
  EXPECT_EQ(ric, (b * b).scaled(Rational(1, 2)) * metric_form(m));
  EXPECT_EQ(scalar(ric, m), (b * b).scaled(Rational(3, 2)));
}

TEST(Ricci, StatisticalKenmotsuAgainstOracle) {
  const FramePresentation m = fixture("kenmotsu5d");
  const Connection& nabla = m.connection("nabla");
  const CurvatureTensor s = statistical_curvature(curvature(m, nabla), curvature(m, dual_connection(m, nabla)));
  const BilinearForm ric = ricci(s);
  for (std::size_t y = 0; y < 5; ++y)
    for (std::size_t z = 0; z < 5; ++z) {
      EXPECT_EQ(ric(y, z), ricci_oracle(m, s, y, z));
      EXPECT_EQ(ric(y, z), y == z ? Poly(-4) : Poly(0));
    }
  EXPECT_EQ(scalar(ric, m), Poly(-20));
}

TEST(Ricci, NablaKenmotsu) {
  const FramePresentation m = fixture("kenmotsu5d");
  const Poly a = param(m, "a");
  const BilinearForm ric = ricci(curvature(m, m.connection("nabla")));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(ric(i, i), -a - Poly(4));
  EXPECT_EQ(ric(4, 4), Poly(4) * a - Poly(4));
  EXPECT_EQ(scalar(ric, m), Poly(-20));
}

TEST(Ricci, TracesAgreeForLeviCivita) {
  for (const char* name : {"kenmotsu5d", "hyperbolic2"}) {
    const FramePresentation m = fixture(name);
    const CurvatureTensor r = curvature(m, levi_civita(m));
    EXPECT_EQ(ricci(m, r, RicciTrace::first_slot), ricci(m, r, RicciTrace::last_pairing)) << name;
  }
}

TEST(Scalar, Hyperbolic) {
  const FramePresentation m = fixture("hyperbolic2");
  EXPECT_TRUE(scalar(ricci(curvature(m, m.connection("nabla"))), m).is_zero());
}

TEST(Sectional, Flat3AndKenmotsu) {
  const FramePresentation f3 = fixture("flat3-einstein");
  const Poly b = param(f3, "b");
  EXPECT_EQ(sectional(f3, curvature(f3, f3.connection("nabla")), unit(f3, "e1"), unit(f3, "e2")), RingQuotient((b * b).scaled(Rational(1, 4))));
  const FramePresentation k = fixture("kenmotsu5d");
  const Connection& nabla = k.connection("nabla");
  const CurvatureTensor s = statistical_curvature(curvature(k, nabla), curvature(k, dual_connection(k, nabla)));
  EXPECT_EQ(sectional(k, s, unit(k, "e1"), unit(k, "xi")), RingQuotient(-1));
  // scale invariance of the quotient
  EXPECT_EQ(sectional(k, s, Poly(3) * unit(k, "e1"), unit(k, "xi")), RingQuotient(-1));
}

TEST(Sectional, DegeneratePlaneThrows) {
  const FramePresentation m = fixture("hyperbolic2");
  const CurvatureTensor r = curvature(m, m.connection("nabla"));
  EXPECT_THROW(sectional(m, r, unit(m, "e1"), Poly(2) * unit(m, "e1")), DomainError);
}

TEST(LieDerivative, KenmotsuXi) {
  const FramePresentation m = fixture("kenmotsu5d");
  const LieDerivative l = lie_derivative_metric(m, unit(m, "xi"), &m.connection("nabla"));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(l.bracket_form(i, j), Poly(i == j && i < 4 ? 2 : 0));
  EXPECT_TRUE(l.forms_agree());
}

TEST(LieDerivative, FlatKilling) {
  const FramePresentation m = flat(3);
  EXPECT_TRUE(is_zero(lie_derivative_metric(m, unit(m, "e1")).bracket_form));
}

TEST(ConstantCurvature, Fixtures) {
  const FramePresentation f3 = fixture("flat3-einstein");
  const Poly b = param(f3, "b");
  const auto c3 = constant_curvature_check(f3, curvature(f3, f3.connection("nabla")));
  ASSERT_TRUE(c3);
  EXPECT_EQ(*c3, RingQuotient((b * b).scaled(Rational(1, 4))));
  const FramePresentation h = fixture("hyperbolic2");
  const auto ch = constant_curvature_check(h, curvature(h, h.connection("nabla")));
  ASSERT_TRUE(ch);
  EXPECT_TRUE(ch->is_zero());
  const FramePresentation k = fixture("kenmotsu5d");
  EXPECT_FALSE(constant_curvature_check(k, curvature(k, k.connection("nabla"))));
}

TEST(Validate, RejectsBrokenTables) {
  FramePresentation m = flat(3);
  m.brackets(0, 1, 2) = Poly(1);  // not antisymmetric
  EXPECT_THROW(validate(m), StructuralError);
  m.brackets(1, 0, 2) = Poly(-1);
  EXPECT_NO_THROW(validate(m));
  FramePresentation j = flat(3);
  // [e1,e2] = e1, [e2,e3] = e2, [e1,e3] = e3 breaks Jacobi
  auto set = [&](std::size_t a, std::size_t b, std::size_t c) {
    j.brackets(a, b, c) = Poly(1);
    j.brackets(b, a, c) = Poly(-1);
  };
  set(0, 1, 0);
  set(1, 2, 1);
  set(0, 2, 2);
  EXPECT_THROW(validate(j), StructuralError);
  FramePresentation s = flat(2);
  s.metric(0, 1) = 1;
  EXPECT_THROW(validate(s), StructuralError);
}

TEST(FitSpan, ExactAndDependent) {
  const FramePresentation m = fixture("kenmotsu5d");
  const BilinearForm g = metric_form(m);
  const auto eta = dual_covector(m, unit(m, "xi"));
  const BilinearForm ee = outer(eta, eta);
  const Poly a = param(m, "a");
  const SpanFit f = fit_span(Poly(3) * g + a * ee, {g, ee});
  EXPECT_TRUE(f.exact());
  EXPECT_EQ(f.coeffs[0], RingQuotient(3));
  EXPECT_EQ(f.coeffs[1], RingQuotient(a));
  EXPECT_THROW(fit_span(g, {g, Poly(2) * g}), StructuralError);
}
