#pragma once

/**
 * @file soliton.hpp
 * @brief Soliton residuals, exact (lambda, omega) solves, Einstein detection,
 * classification and the ambient eta-Ricci audit.
 */

#include <optional>
#include <string>
#include <vector>

#include "statman/frame_algebra.hpp"
#include "statman/report.hpp"
#include "statman/structures.hpp"

namespace statman {

enum class SolitonKind { ricci, eta_ricci, yamabe, quasi_yamabe };
enum class RicciSource { nabla, nabla_star, statistical };

inline const char* to_string(SolitonKind k) {
  switch (k) {
    case SolitonKind::ricci: return "ricci";
    case SolitonKind::eta_ricci: return "eta-ricci";
    case SolitonKind::yamabe: return "yamabe";
    case SolitonKind::quasi_yamabe: return "quasi-yamabe";
  }
  return "?";
}

inline const char* to_string(RicciSource s) {
  switch (s) {
    case RicciSource::nabla: return "nabla";
    case RicciSource::nabla_star: return "nabla-star";
    case RicciSource::statistical: return "statistical";
  }
  return "?";
}

inline SolitonKind parse_soliton_kind(const std::string& s) {
  if (s == "ricci") return SolitonKind::ricci;
  if (s == "eta-ricci" || s == "eta_ricci") return SolitonKind::eta_ricci;
  if (s == "yamabe") return SolitonKind::yamabe;
  if (s == "quasi-yamabe" || s == "quasi_yamabe") return SolitonKind::quasi_yamabe;
  throw StructuralError("unknown soliton kind '" + s + "'");
}

inline RicciSource parse_ricci_source(const std::string& s) {
  if (s == "nabla") return RicciSource::nabla;
  if (s == "nabla-star" || s == "nabla_star") return RicciSource::nabla_star;
  if (s == "statistical") return RicciSource::statistical;
  throw StructuralError("unknown Ricci source '" + s + "'");
}

inline bool has_omega(SolitonKind k) { return k == SolitonKind::eta_ricci || k == SolitonKind::quasi_yamabe; }

/// Curvature tensor of the selected source.
inline CurvatureTensor source_curvature(const FramePresentation& m, const Connection& nabla, RicciSource src,
                                        CurvatureSign sign = CurvatureSign::standard) {
  switch (src) {
    case RicciSource::nabla: return curvature(m, nabla, sign);
    case RicciSource::nabla_star: return curvature(m, dual_connection(m, nabla), sign);
    case RicciSource::statistical:
      return statistical_curvature(curvature(m, nabla, sign), curvature(m, dual_connection(m, nabla), sign));
  }
  throw std::logic_error("unreachable");
}

inline BilinearForm source_ricci(const FramePresentation& m, const Connection& nabla, RicciSource src,
                                 CurvatureSign sign = CurvatureSign::standard, RicciTrace trace = RicciTrace::first_slot) {
  return ricci(m, source_curvature(m, nabla, src, sign), trace);
}

struct SolitonProblem {
  SolitonKind kind = SolitonKind::ricci;
  VectorField potential;
  RicciSource source = RicciSource::statistical;
  /// Characteristic field whose metric dual is eta; required for omega kinds.
  std::optional<VectorField> xi;
  CurvatureSign sign = CurvatureSign::standard;
  RicciTrace trace = RicciTrace::first_slot;
  /// When eta vanishes identically (xi normal to a submanifold) drop the
  /// omega column instead of failing; omega is then left unset.
  bool drop_vanishing_eta = false;
};

/// Residual = base + lambda * lambda_form + omega * omega_form.
struct SolitonPencil {
  BilinearForm base;
  BilinearForm lambda_form;
  std::optional<BilinearForm> omega_form;
};

inline SolitonPencil soliton_pencil(const FramePresentation& m, const Connection& nabla, const SolitonProblem& prob) {
  const std::size_t n = m.dim();
  if (prob.potential.size() != n) throw StructuralError("potential field length does not match the frame size");
  if (has_omega(prob.kind) && !prob.xi) throw StructuralError(std::string(to_string(prob.kind)) + " needs a contact vector field xi");
  const BilinearForm g = metric_form(m);
  const BilinearForm lie = lie_derivative_metric(m, prob.potential).bracket_form;
  const BilinearForm ric = source_ricci(m, nabla, prob.source, prob.sign, prob.trace);
  std::optional<BilinearForm> ee;
  if (prob.xi) {
    if (prob.xi->size() != n) throw StructuralError("xi length does not match the frame size");
    const auto eta = dual_covector(m, *prob.xi);
    ee = outer(eta, eta);
  }
  const Poly half(Rational(1, 2));
  SolitonPencil p;
  switch (prob.kind) {
    case SolitonKind::ricci:  // Ric + 1/2 L + lambda g
      p.base = ric + half * lie;
      p.lambda_form = g;
      break;
    case SolitonKind::eta_ricci:  // 2Ric + L + 2 lambda g + 2 omega eta(x)eta
      p.base = Poly(2) * ric + lie;
      p.lambda_form = Poly(2) * g;
      p.omega_form = Poly(2) * *ee;
      break;
    case SolitonKind::yamabe: {  // L - 2(R - lambda) g
      const Poly r = scalar(ric, m);
      p.base = lie - Poly(2) * r * g;
      p.lambda_form = Poly(2) * g;
      break;
    }
    case SolitonKind::quasi_yamabe: {  // 1/2 L + (lambda - R) g + omega eta(x)eta
      const Poly r = scalar(ric, m);
      p.base = half * lie - r * g;
      p.lambda_form = g;
      p.omega_form = *ee;
      break;
    }
  }
  return p;
}

/// Left-hand side of the defining equation at the given (lambda, omega).
inline BilinearForm soliton_residual(const FramePresentation& m, const Connection& nabla, const SolitonProblem& prob,
                                     const Poly& lambda, const Poly& omega = Poly(0)) {
  const SolitonPencil p = soliton_pencil(m, nabla, prob);
  BilinearForm r = p.base + lambda * p.lambda_form;
  if (p.omega_form) r = r + omega * *p.omega_form;
  return r;
}

struct SolitonSolution {
  RingQuotient lambda;
  std::optional<RingQuotient> omega;
  QuotientForm residual;
  bool consistent = false;
};

/// Projects the residual pencil onto span{lambda form, omega form} and solves
/// exactly. Inconsistent systems return the best projection and the nonzero
/// residual as certificate.
inline SolitonSolution solve_soliton(const FramePresentation& m, const Connection& nabla, const SolitonProblem& prob) {
  const SolitonPencil p = soliton_pencil(m, nabla, prob);
  std::vector<BilinearForm> basis{p.lambda_form};
  bool use_omega = p.omega_form.has_value();
  if (use_omega && is_zero(*p.omega_form)) {
    if (!prob.drop_vanishing_eta) throw StructuralError("eta vanishes identically; omega is undetermined");
    use_omega = false;
  }
  if (use_omega) basis.push_back(*p.omega_form);
  BilinearForm target = Poly(-1) * p.base;
  SpanFit fit;
  try {
    fit = fit_span(target, basis);
  } catch (const StructuralError&) {
    throw StructuralError("degenerate soliton system: g and eta(x)eta are linearly dependent");
  }
  SolitonSolution s;
  s.lambda = fit.coeffs[0];
  if (use_omega) s.omega = fit.coeffs[1];
  // residual = base + sum coeffs * basis = -(target - sum coeffs * basis)
  s.residual = QuotientForm(m.dim());
  for (std::size_t e = 0; e < fit.residual.data().size(); ++e) s.residual.data()[e] = -fit.residual.data()[e];
  s.consistent = is_zero(s.residual);
  return s;
}

enum class EinsteinKind { einstein, eta_einstein, neither };

struct EinsteinResult {
  EinsteinKind kind = EinsteinKind::neither;
  RingQuotient c1;
  RingQuotient c2;

  std::string str() const {
    switch (kind) {
      case EinsteinKind::einstein: return "einstein(" + c1.str() + ")";
      case EinsteinKind::eta_einstein: return "eta_einstein(" + c1.str() + ", " + c2.str() + ")";
      case EinsteinKind::neither: return "neither";
    }
    return "?";
  }
};

/// Ric = c1 g (+ c2 eta(x)eta). c2 = 0 reports plain Einstein.
inline EinsteinResult einstein_check(const FramePresentation& m, const BilinearForm& ric, const std::optional<VectorField>& xi = std::nullopt) {
  const BilinearForm g = metric_form(m);
  EinsteinResult out;
  const SpanFit f1 = fit_span(ric, {g});
  if (f1.exact()) {
    out.kind = EinsteinKind::einstein;
    out.c1 = f1.coeffs[0];
    return out;
  }
  if (xi) {
    const auto eta = dual_covector(m, *xi);
    const BilinearForm ee = outer(eta, eta);
    if (is_zero(ee)) return out;
    try {
      const SpanFit f2 = fit_span(ric, {g, ee});
      if (f2.exact()) {
        out.kind = f2.coeffs[1].is_zero() ? EinsteinKind::einstein : EinsteinKind::eta_einstein;
        out.c1 = f2.coeffs[0];
        out.c2 = f2.coeffs[1];
      }
    } catch (const StructuralError&) {
      // g and eta(x)eta dependent (dimension 1); the plain fit already decided
    }
  }
  return out;
}

enum class SolitonLabel { shrinking, steady, expanding };
/// Ricci family: lambda < 0 shrinking. Yamabe family: lambda > 0 shrinking.
enum class LabelConvention { ricci, yamabe };

inline const char* to_string(SolitonLabel l) {
  switch (l) {
    case SolitonLabel::shrinking: return "shrinking";
    case SolitonLabel::steady: return "steady";
    case SolitonLabel::expanding: return "expanding";
  }
  return "?";
}

inline SolitonLabel classify(const RingQuotient& lambda, const Assignment& assignment, LabelConvention conv = LabelConvention::ricci) {
  const Sign s = quotient_sign(lambda, assignment);
  if (s == Sign::zero) return SolitonLabel::steady;
  const bool negative = s == Sign::negative;
  if (conv == LabelConvention::ricci) return negative ? SolitonLabel::shrinking : SolitonLabel::expanding;
  return negative ? SolitonLabel::expanding : SolitonLabel::shrinking;
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::string quotient_form_summary(const FramePresentation& m, const QuotientForm& f) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (!f(i, j).is_zero()) lines.push_back("(" + m.frame[i] + "," + m.frame[j] + ") " + f(i, j).str());
  if (lines.empty()) return "0";
  return lines.front() + (lines.size() > 1 ? " (+" + std::to_string(lines.size() - 1) + " more)" : "");
}

inline QuotientForm to_quotient(const BilinearForm& b) {
  QuotientForm q(b.dim());
  for (std::size_t e = 0; e < b.data().size(); ++e) q.data()[e] = RingQuotient(b.data()[e]);
  return q;
}

}  // namespace detail

/// For the eta-Ricci problem with potential xi: the eta-Einstein form of Ric,
/// the xi eigenvalue of the Ricci operator, and the scalar identity, each
/// evaluated with the engine's solved (lambda, omega) and beta = eta(K(xi,xi)).
/// `omega_shift` perturbs the solved omega (negative control).
inline Section audit_ambient_theorems(const FramePresentation& m, const Connection& nabla, const ContactTriple& ct,
                                      RicciSource src, const Rational& omega_shift = 0) {
  const std::size_t n = m.dim();
  if (n % 2 == 0) throw StructuralError("ambient audit needs odd dimension 2s+1");
  const std::vector<std::string> tags{std::string("ricci-source=") + to_string(src)};
  Section sec{"eta-Ricci soliton on the ambient manifold", {}};

  const Section ks = check_kenmotsu_statistical(m, nabla, ct);
  sec.add({"ambient.kenmotsu-precondition", "Kenmotsu statistical structure", pass_if(ks.all_ok()),
           ks.all_ok() ? "holds" : "fails", "holds", {}, ""});

  SolitonProblem prob;
  prob.kind = SolitonKind::eta_ricci;
  prob.potential = ct.xi;
  prob.source = src;
  prob.xi = ct.xi;
  const SolitonSolution sol = solve_soliton(m, nabla, prob);
  const RingQuotient lambda = sol.lambda;
  const RingQuotient omega = *sol.omega + RingQuotient(omega_shift);
  sec.add({"ambient.solve", "2Ric + L_xi g + 2 lambda g + 2 omega eta(x)eta = 0", pass_if(sol.consistent),
           "lambda = " + sol.lambda.str() + ", omega = " + sol.omega->str(), "", tags,
           sol.consistent ? "" : "residual " + detail::quotient_form_summary(m, sol.residual)});

  Connection k(n);
  k.gamma = difference_tensor(nabla, levi_civita(m));
  const RingQuotient beta(ct.eta(m, k.apply(ct.xi, ct.xi)));
  const RingQuotient s(Rational(static_cast<long>(n - 1), 2));
  const BilinearForm ric = source_ricci(m, nabla, src);
  const auto eta = ct.eta(m);
  const QuotientForm g = detail::to_quotient(metric_form(m));
  const QuotientForm ee = detail::to_quotient(outer(eta, eta));
  const QuotientForm rq = detail::to_quotient(ric);

  QuotientForm diff(n);
  for (std::size_t e = 0; e < diff.data().size(); ++e)
    diff.data()[e] = rq.data()[e] + (lambda + RingQuotient(1)) * g.data()[e] + (omega + beta - RingQuotient(1)) * ee.data()[e];
  sec.add({"ambient.eta-einstein-form", "Ric = -(lambda+1) g - (omega+beta-1) eta(x)eta", match_if(is_zero(diff)),
           detail::quotient_form_summary(m, diff), "0", tags, "beta = " + beta.str()});

  // Q xi with g(Q E, F) = Ric(E, F)
  const Metric inv = inverse_metric(m);
  VectorField qxi(n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (inv(b, l) != 0) qxi[l] += (ct.xi[a] * ric(a, b)).scaled(inv(b, l));
  const RingQuotient claimed = -(lambda + omega + beta - RingQuotient(1));
  bool eigen = true;
  for (std::size_t l = 0; l < n; ++l)
    if (RingQuotient(qxi[l]) != claimed * RingQuotient(ct.xi[l])) eigen = false;
  sec.add({"ambient.xi-eigenvalue", "Q xi = -(lambda + omega + beta - 1) xi", match_if(eigen),
           "Q xi = " + detail::vector_str(m, qxi), "(" + claimed.str() + ")*xi", tags, ""});

  const RingQuotient r = RingQuotient(scalar(ric, m));
  const RingQuotient rhs = -(RingQuotient(2) * s + RingQuotient(1)) * (lambda + RingQuotient(1)) - (omega + beta - RingQuotient(1));
  sec.add({"ambient.scalar", "r = -(2s+1)(lambda+1) - (omega+beta-1)", match_if(r == rhs), r.str(), rhs.str(), tags,
           "residual " + (r - rhs).str()});
  return sec;
}

}  // namespace statman
