#pragma once

/**
 * @file submanifold.hpp
 * @brief Adapted-frame submanifolds: induced dual connections, second
 * fundamental forms, shape operators, normal connections, Gauss equations,
 * phi-decomposition, concircular fields and the soliton theorem audits.
 *
 * A submanifold is a subset T of the ambient frame that is closed under
 * brackets and metric-orthogonal to the remaining frame vectors N. For
 * tangent E, F and normal U:
 *   nabla_E F = nabla'_E F + h(E,F),    nabla_E U = -A_U E + D_E U
 * and the same with every symbol starred for the conjugate connection.
 */

#include <optional>
#include <string>
#include <vector>

#include "statman/frame_algebra.hpp"
#include "statman/report.hpp"
#include "statman/soliton.hpp"
#include "statman/structures.hpp"

namespace statman {

struct AdaptedSubmanifold {
  std::string name;
  FramePresentation ambient;
  Connection nabla;       ///< ambient
  Connection nabla_star;  ///< ambient conjugate
  std::vector<std::size_t> tangent;
  std::vector<std::size_t> normal;
  /// Frame T with restricted metric and brackets; connections "nabla" and "nabla_star" are the induced pair.
  FramePresentation induced;
  /// h[a][b] = normal part of nabla_{T_a} T_b, in ambient components.
  std::vector<std::vector<VectorField>> h, h_star;
  /// shape[u](a,b) = T_b-component of A_{N_u} T_a.
  std::vector<Endomorphism> shape, shape_star;
  /// normal_conn[a][u] = D_{T_a} N_u, in ambient components.
  std::vector<std::vector<VectorField>> normal_conn, normal_conn_star;
  bool closure_ok = false;
  /// g(h(E,F),U) = g(A*_U E,F), g(h*(E,F),U) = g(A_U E,F), and the induced pair is conjugate.
  bool duality_ok = false;

  std::size_t dim() const { return tangent.size(); }
  std::size_t codim() const { return normal.size(); }

  /// Components along T, as an induced-frame vector.
  VectorField tangent_part(const VectorField& v) const {
    VectorField out(tangent.size());
    for (std::size_t a = 0; a < tangent.size(); ++a) out[a] = v[tangent[a]];
    return out;
  }
  /// Components along N, kept in ambient coordinates.
  VectorField normal_part(const VectorField& v) const {
    VectorField out(v.size());
    for (std::size_t u : normal) out[u] = v[u];
    return out;
  }
  VectorField lift(const VectorField& t) const {
    VectorField out(ambient.dim());
    for (std::size_t a = 0; a < tangent.size(); ++a) out[tangent[a]] = t[a];
    return out;
  }
  VectorField ambient_basis(std::size_t i) const { return VectorField::basis(ambient.dim(), i); }
};

/// A_U as an endomorphism of the induced frame for any frame-constant normal U.
inline Endomorphism shape_operator(const AdaptedSubmanifold& sub, const VectorField& u, bool starred = false) {
  const std::size_t t = sub.dim();
  const Connection& c = starred ? sub.nabla_star : sub.nabla;
  Endomorphism a(t, sub.ambient.zero());
  for (std::size_t p = 0; p < t; ++p) {
    const VectorField v = -sub.tangent_part(c.apply(sub.ambient_basis(sub.tangent[p]), u));
    for (std::size_t q = 0; q < t; ++q) a(p, q) = v[q];
  }
  return a;
}

inline AdaptedSubmanifold induce(const FramePresentation& m, const Connection& nabla, const std::vector<std::string>& tangent_names,
                                 const std::string& name = "") {
  const std::size_t n = m.dim();
  AdaptedSubmanifold s;
  s.name = name.empty() ? m.name + "-sub" : name;
  s.ambient = m;
  s.nabla = nabla;
  s.nabla_star = dual_connection(m, nabla);
  std::vector<bool> in_t(n, false);
  for (const auto& tn : tangent_names) {
    const auto idx = m.index_of(tn);
    if (!idx) throw StructuralError("unknown frame vector '" + tn + "' in tangent set");
    if (in_t[*idx]) throw StructuralError("frame vector '" + tn + "' repeated in tangent set");
    in_t[*idx] = true;
  }
  for (std::size_t i = 0; i < n; ++i) (in_t[i] ? s.tangent : s.normal).push_back(i);
  if (s.tangent.empty()) throw StructuralError("tangent set is empty");
  for (std::size_t a : s.tangent)
    for (std::size_t u : s.normal)
      if (m.metric(a, u) != 0)
        throw StructuralError("tangent vector " + m.frame[a] + " is not orthogonal to normal vector " + m.frame[u]);

  for (std::size_t a : s.tangent)
    for (std::size_t b : s.tangent)
      for (std::size_t u : s.normal)
        if (!m.brackets(a, b, u).is_zero())
          throw ClosureError("tangent set is not closed: [" + m.frame[a] + ", " + m.frame[b] + "] has " + m.frame[u] +
                             "-component " + m.brackets(a, b, u).str());
  s.closure_ok = true;

  const std::size_t t = s.tangent.size();
  FramePresentation& ind = s.induced;
  ind.name = s.name;
  ind.params = m.params;
  for (std::size_t a : s.tangent) ind.frame.push_back(m.frame[a]);
  ind.metric = Metric(t);
  ind.brackets = Brackets(t, m.zero());
  for (std::size_t p = 0; p < t; ++p)
    for (std::size_t q = 0; q < t; ++q) {
      ind.metric(p, q) = m.metric(s.tangent[p], s.tangent[q]);
      for (std::size_t r = 0; r < t; ++r) ind.brackets(p, q, r) = m.brackets(s.tangent[p], s.tangent[q], s.tangent[r]);
    }

  Connection in(t, ConnectionRole::induced), in_star(t, ConnectionRole::induced);
  s.h.assign(t, std::vector<VectorField>(t));
  s.h_star.assign(t, std::vector<VectorField>(t));
  for (std::size_t p = 0; p < t; ++p)
    for (std::size_t q = 0; q < t; ++q) {
      const VectorField d = nabla.apply(s.tangent[p], s.tangent[q]);
      const VectorField ds = s.nabla_star.apply(s.tangent[p], s.tangent[q]);
      const VectorField dt = s.tangent_part(d), dst = s.tangent_part(ds);
      for (std::size_t r = 0; r < t; ++r) {
        in.gamma(p, q, r) = dt[r];
        in_star.gamma(p, q, r) = dst[r];
      }
      s.h[p][q] = s.normal_part(d);
      s.h_star[p][q] = s.normal_part(ds);
    }
  ind.connections["nabla"] = in;
  ind.connections["nabla_star"] = in_star;

  for (std::size_t u : s.normal) {
    s.shape.push_back(shape_operator(s, s.ambient_basis(u), false));
    s.shape_star.push_back(shape_operator(s, s.ambient_basis(u), true));
  }
  s.normal_conn.assign(t, {});
  s.normal_conn_star.assign(t, {});
  for (std::size_t p = 0; p < t; ++p)
    for (std::size_t u : s.normal) {
      s.normal_conn[p].push_back(s.normal_part(nabla.apply(s.tangent[p], u)));
      s.normal_conn_star[p].push_back(s.normal_part(s.nabla_star.apply(s.tangent[p], u)));
    }

  bool ok = dual_connection(ind, in) == in_star;
  for (std::size_t k = 0; k < s.normal.size() && ok; ++k) {
    const VectorField uvec = s.ambient_basis(s.normal[k]);
    for (std::size_t p = 0; p < t && ok; ++p)
      for (std::size_t q = 0; q < t && ok; ++q) {
        Poly as_pq, a_pq;
        for (std::size_t r = 0; r < t; ++r) {
          as_pq += s.shape_star[k](p, r) * Poly(ind.metric(r, q));
          a_pq += s.shape[k](p, r) * Poly(ind.metric(r, q));
        }
        if (inner(m, s.h[p][q], uvec) != as_pq || inner(m, s.h_star[p][q], uvec) != a_pq) ok = false;
      }
  }
  s.duality_ok = ok;
  return s;
}

inline AdaptedSubmanifold induce(const FramePresentation& m, const std::string& connection_key,
                                 const std::vector<std::string>& tangent_names, const std::string& name = "") {
  return induce(m, m.connection(connection_key), tangent_names, name);
}

// ---------------------------------------------------------------------------

struct Umbilicity {
  VectorField mean, mean_star;  ///< ambient components
  bool umbilical = false, umbilical_star = false;
  bool totally_geodesic = false;
  bool minimal = false;
};

inline Umbilicity umbilicity(const AdaptedSubmanifold& sub) {
  const std::size_t t = sub.dim();
  const Metric inv = inverse_metric(sub.induced);
  Umbilicity u;
  u.mean = VectorField(sub.ambient.dim());
  u.mean_star = VectorField(sub.ambient.dim());
  const Rational scale = Rational(1, static_cast<long>(t));
  for (std::size_t p = 0; p < t; ++p)
    for (std::size_t q = 0; q < t; ++q)
      if (inv(p, q) != 0) {
        u.mean = u.mean + Poly(inv(p, q) * scale) * sub.h[p][q];
        u.mean_star = u.mean_star + Poly(inv(p, q) * scale) * sub.h_star[p][q];
      }
  u.umbilical = u.umbilical_star = true;
  bool zero = true;
  for (std::size_t p = 0; p < t; ++p)
    for (std::size_t q = 0; q < t; ++q) {
      const Poly gpq(sub.induced.metric(p, q));
      if (sub.h[p][q] != gpq * u.mean) u.umbilical = false;
      if (sub.h_star[p][q] != gpq * u.mean_star) u.umbilical_star = false;
      if (!sub.h[p][q].is_zero() || !sub.h_star[p][q].is_zero()) zero = false;
    }
  u.totally_geodesic = zero;
  u.minimal = u.mean.is_zero() && u.mean_star.is_zero();
  return u;
}

/// Gauss equations for the pair (standard curvature sign):
///   g(R(E,F)G,H) = g(R'(E,F)G,H) + g(h(E,G), h*(F,H)) - g(h*(E,H), h(F,G))
/// and the same with stars exchanged.
inline Section gauss_check(const AdaptedSubmanifold& sub) {
  const std::size_t t = sub.dim();
  const FramePresentation& m = sub.ambient;
  const CurvatureTensor rb = curvature(m, sub.nabla), rbs = curvature(m, sub.nabla_star);
  const CurvatureTensor ri = curvature(sub.induced, sub.induced.connection("nabla"));
  const CurvatureTensor ris = curvature(sub.induced, sub.induced.connection("nabla_star"));
  Section sec{"Gauss equations", {}};
  for (int starred = 0; starred < 2; ++starred) {
    const CurvatureTensor& ramb = starred ? rbs : rb;
    const CurvatureTensor& rin = starred ? ris : ri;
    const auto& h1 = starred ? sub.h_star : sub.h;
    const auto& h2 = starred ? sub.h : sub.h_star;
    detail::PairResiduals res;
    bool correction = false;
    for (std::size_t a = 0; a < t; ++a)
      for (std::size_t b = 0; b < t; ++b)
        for (std::size_t c = 0; c < t; ++c)
          for (std::size_t d = 0; d < t; ++d) {
            const Poly lhs = inner(m, ramb.apply(sub.tangent[a], sub.tangent[b], sub.tangent[c]), sub.ambient_basis(sub.tangent[d]));
            const Poly intr = inner(sub.induced, rin.apply(a, b, c), VectorField::basis(t, d));
            const Poly corr = inner(m, h1[a][c], h2[b][d]) - inner(m, h2[a][d], h1[b][c]);
            if (!corr.is_zero()) correction = true;
            const Poly r = lhs - intr - corr;
            if (!r.is_zero())
              res.lines.push_back("(" + sub.induced.frame[a] + "," + sub.induced.frame[b] + "," + sub.induced.frame[c] + "," +
                                  sub.induced.frame[d] + ") " + r.str());
          }
    sec.add({starred ? "gauss.nabla-star" : "gauss.nabla",
             starred ? "g(R*(E,F)G,H) = g(R*'(E,F)G,H) + g(h*(E,G),h(F,H)) - g(h(E,H),h*(F,G))"
                     : "g(R(E,F)G,H) = g(R'(E,F)G,H) + g(h(E,G),h*(F,H)) - g(h*(E,H),h(F,G))",
             pass_if(res.empty()), res.summary(), "0", {"standard"},
             correction ? "second fundamental form terms are nonzero" : "second fundamental form terms vanish"});
  }
  return sec;
}

// ---------------------------------------------------------------------------

enum class PhiKind { invariant, anti_invariant, generic, degenerate };

inline const char* to_string(PhiKind k) {
  switch (k) {
    case PhiKind::invariant: return "invariant";
    case PhiKind::anti_invariant: return "anti-invariant";
    case PhiKind::generic: return "generic";
    case PhiKind::degenerate: return "phi vanishes on T";
  }
  return "?";
}

struct PhiSplit {
  std::vector<VectorField> tangential;  ///< P E, induced components
  std::vector<VectorField> normal;      ///< C E, ambient components
  PhiKind kind = PhiKind::generic;
};

/// phi E = P E + C E for each tangent frame vector.
inline PhiSplit phi_decompose(const AdaptedSubmanifold& sub, const ContactTriple& ct) {
  PhiSplit out;
  bool p_zero = true, c_zero = true;
  for (std::size_t a : sub.tangent) {
    const VectorField pe = ct.apply_phi(sub.ambient_basis(a));
    out.tangential.push_back(sub.tangent_part(pe));
    out.normal.push_back(sub.normal_part(pe));
    if (!out.tangential.back().is_zero()) p_zero = false;
    if (!out.normal.back().is_zero()) c_zero = false;
  }
  if (p_zero && c_zero) out.kind = PhiKind::degenerate;
  else if (c_zero) out.kind = PhiKind::invariant;
  else if (p_zero) out.kind = PhiKind::anti_invariant;
  else out.kind = PhiKind::generic;
  return out;
}

struct Concircular {
  bool holds = false;
  RingQuotient mu;
  bool concurrent() const { return holds && mu == RingQuotient(1); }
};

/// nabla_E v = mu E for every frame vector E with a single mu.
inline Concircular concircular_check(const FramePresentation& m, const Connection& nabla, const VectorField& v) {
  const std::size_t n = m.dim();
  Concircular out;
  std::optional<Poly> mu;
  for (std::size_t i = 0; i < n; ++i) {
    const VectorField d = nabla.apply(VectorField::basis(n, i), v);
    for (std::size_t k = 0; k < n; ++k)
      if (k != i && !d[k].is_zero()) return out;
    if (!mu) mu = d[i];
    else if (*mu != d[i]) return out;
  }
  out.holds = true;
  out.mu = mu ? RingQuotient(*mu) : RingQuotient(0);
  return out;
}

enum class XiPlacement { tangent, normal, mixed };

inline XiPlacement xi_placement(const AdaptedSubmanifold& sub, const VectorField& xi) {
  const bool t = !sub.tangent_part(xi).is_zero();
  const bool nrm = !sub.normal_part(xi).is_zero();
  if (t && nrm) return XiPlacement::mixed;
  return t ? XiPlacement::tangent : XiPlacement::normal;
}

inline const char* to_string(XiPlacement p) {
  switch (p) {
    case XiPlacement::tangent: return "tangent";
    case XiPlacement::normal: return "normal";
    case XiPlacement::mixed: return "mixed";
  }
  return "?";
}

namespace detail {

inline std::string sub_vector_str(const AdaptedSubmanifold& sub, const VectorField& induced_v) {
  return vector_str(sub.induced, induced_v);
}

}  // namespace detail

/// Tangential and normal parts of the structure equations along the submanifold.
/// `v` (optional) is an ambient concircular field for the v^T / v^N identities.
inline Section tangential_split_audit(const AdaptedSubmanifold& sub, const ContactTriple& ct,
                                      const std::optional<VectorField>& v = std::nullopt) {
  using namespace detail;
  const FramePresentation& m = sub.ambient;
  const std::size_t t = sub.dim();
  Section sec{"tangential split", {}};
  const XiPlacement place = xi_placement(sub, ct.xi);
  sec.add({"split.xi-placement", "xi tangent or normal to the submanifold", Verdict::info, to_string(place), "", {}, ""});
  if (place == XiPlacement::mixed) throw StructuralError("xi has both tangent and normal components; split identities undefined");

  const auto mu = kenmotsu_mu(m, sub.nabla, ct);
  const Connection& in = sub.induced.connection("nabla");
  if (place == XiPlacement::tangent) {
    const VectorField xt = sub.tangent_part(ct.xi);
    PairResiduals r1, r2;
    for (std::size_t p = 0; p < t; ++p) {
      const VectorField ep = VectorField::basis(t, p);
      const std::size_t ai = sub.tangent[p];
      const VectorField lhs = in.apply(ep, xt);
      const VectorField rhs = ep - (ct.eta(m, sub.ambient_basis(ai)) - mu[ai]) * xt;
      if (lhs != rhs) r1.lines.push_back("(" + sub.induced.frame[p] + ") " + sub_vector_str(sub, lhs - rhs));
      VectorField hx(m.dim()), hsx(m.dim());
      for (std::size_t q = 0; q < t; ++q)
        if (!xt[q].is_zero()) {
          hx = hx + xt[q] * sub.h[p][q];
          hsx = hsx + xt[q] * sub.h_star[p][q];
        }
      if (!hx.is_zero()) r2.lines.push_back("h(" + sub.induced.frame[p] + ",xi) = " + vector_str(m, hx));
      if (!hsx.is_zero()) r2.lines.push_back("h*(" + sub.induced.frame[p] + ",xi) = " + vector_str(m, hsx));
    }
    sec.add({"split.xi-tangent-derivative", "nabla'_E xi = E - (eta(E) - mu(E)) xi on the submanifold", match_if(r1.empty()),
             r1.summary(), "0", {}, ""});
    sec.add({"split.h-xi", "h(E, xi) = h*(E, xi) = 0", match_if(r2.empty()), r2.summary(), "0", {}, ""});
  } else {
    PairResiduals r1, r2;
    for (std::size_t p = 0; p < t; ++p) {
      const VectorField e_amb = sub.ambient_basis(sub.tangent[p]);
      const VectorField d = sub.nabla.apply(e_amb, ct.xi) - e_amb;
      if (!d.is_zero()) r1.lines.push_back("(" + sub.induced.frame[p] + ") " + vector_str(m, d));
    }
    const Endomorphism a = shape_operator(sub, ct.xi, false);
    for (std::size_t p = 0; p < t; ++p)
      for (std::size_t q = 0; q < t; ++q)
        if (a(p, q) != Poly(p == q ? -1 : 0)) r2.lines.push_back("A_xi(" + sub.induced.frame[p] + ")_" + sub.induced.frame[q] + " = " + a(p, q).str());
    for (std::size_t p = 0; p < t; ++p) {
      const VectorField dn = sub.normal_part(sub.nabla.apply(sub.ambient_basis(sub.tangent[p]), ct.xi));
      if (!dn.is_zero()) r2.lines.push_back("D_" + sub.induced.frame[p] + " xi = " + vector_str(m, dn));
    }
    sec.add({"split.xi-normal-derivative", "nabla_E xi = E for tangent E", match_if(r1.empty()), r1.summary(), "0", {}, ""});
    sec.add({"split.shape-xi", "A_xi = -I and D_E xi = 0", match_if(r2.empty()), r2.summary(), "0", {}, ""});
    sec.add({"split.h-xi-normal", "h(E, xi) = (beta - 1) eta(E) xi", Verdict::not_applicable, "xi is normal", "", {},
             "h takes tangent arguments only; the right side vanishes since eta(E) = 0 on T"});
  }

  if (v) {
    const Concircular cc = concircular_check(m, sub.nabla, *v);
    if (!cc.holds) {
      sec.add({"split.concircular", "nabla_E v = mu E", Verdict::not_applicable, "v is not concircular", "", {}, ""});
      return sec;
    }
    const VectorField vt = sub.tangent_part(*v);
    const VectorField vn = sub.normal_part(*v);
    const Endomorphism a = shape_operator(sub, vn, false);
    PairResiduals r1, r2;
    for (std::size_t p = 0; p < t; ++p) {
      const VectorField ep = VectorField::basis(t, p);
      VectorField rhs(t);
      for (std::size_t q = 0; q < t; ++q) rhs[q] = a(p, q);
      // mu is a constant or parameter polynomial here
      const Poly mu_p = cc.mu.as_poly();
      rhs = rhs + mu_p * ep;
      const VectorField lhs = in.apply(ep, vt);
      if (lhs != rhs) r1.lines.push_back("(" + sub.induced.frame[p] + ") " + sub_vector_str(sub, lhs - rhs));
      VectorField hvt(m.dim());
      for (std::size_t q = 0; q < t; ++q)
        if (!vt[q].is_zero()) hvt = hvt + vt[q] * sub.h[p][q];
      const VectorField dn = sub.normal_part(sub.nabla.apply(sub.ambient_basis(sub.tangent[p]), vn));
      if (dn != -hvt) r2.lines.push_back("(" + sub.induced.frame[p] + ") " + vector_str(m, dn + hvt));
    }
    sec.add({"split.concircular-tangent", "nabla'_E v^T = A_{v^N} E + mu E", match_if(r1.empty()), r1.summary(), "0", {},
             "mu = " + cc.mu.str()});
    sec.add({"split.concircular-normal", "D_E v^N = -h(E, v^T)", match_if(r2.empty()), r2.summary(), "0", {}, ""});
    const Concircular ct_on_n = concircular_check(sub.induced, in, vt);
    if (ct_on_n.holds) {
      PairResiduals r3;
      const RingQuotient factor = ct_on_n.mu - cc.mu;
      for (std::size_t p = 0; p < t; ++p)
        for (std::size_t q = 0; q < t; ++q)
          if (RingQuotient(a(p, q)) != (p == q ? factor : RingQuotient(0)))
            r3.lines.push_back("A_{v^N}(" + sub.induced.frame[p] + ")_" + sub.induced.frame[q] + " = " + a(p, q).str());
      sec.add({"split.shape-normal-part", "A_{v^N} E = (nu - mu) E when v^T is concircular on N with factor nu",
               match_if(r3.empty()), r3.summary(), "0", {},
               "nu = " + ct_on_n.mu.str() + (vt.is_zero() ? "; v^T = 0, the identity degenerates to A_{v^N} = -mu I" : "")});
    } else {
      sec.add({"split.shape-normal-part", "A_{v^N} E = (nu - mu) E when v^T is concircular on N with factor nu",
               Verdict::not_applicable, "v^T is not concircular on N", "", {}, ""});
    }
  }
  return sec;
}

// ---------------------------------------------------------------------------
// Soliton theorems on submanifolds

namespace detail {

inline SolitonSolution solve_on_sub(const AdaptedSubmanifold& sub, SolitonKind kind, const VectorField& potential_induced,
                                    const VectorField& xi_induced, RicciSource src) {
  SolitonProblem p;
  p.kind = kind;
  p.potential = potential_induced;
  p.source = src;
  p.xi = xi_induced;
  p.drop_vanishing_eta = true;
  return solve_soliton(sub.induced, sub.induced.connection("nabla"), p);
}

inline std::string solution_str(const SolitonSolution& s) {
  return "lambda = " + s.lambda.str() + ", omega = " + (s.omega ? s.omega->str() : "free (eta = 0 on N)");
}

inline QuotientForm quotient(const BilinearForm& b) {
  QuotientForm q(b.dim());
  for (std::size_t e = 0; e < b.data().size(); ++e) q.data()[e] = RingQuotient(b.data()[e]);
  return q;
}

}  // namespace detail

/// Evaluates the printed soliton relations on the submanifold with the
/// engine's own (lambda, omega) solves. `v` is the ambient soliton field.
inline Section audit_submanifold_soliton_theorems(const AdaptedSubmanifold& sub, const ContactTriple& ct, const VectorField& v,
                                                  RicciSource src) {
  using namespace detail;
  const FramePresentation& m = sub.ambient;
  const FramePresentation& ind = sub.induced;
  const std::size_t t = sub.dim();
  const std::vector<std::string> tags{std::string("ricci-source=") + to_string(src)};
  Section sec{"soliton theorems on " + sub.name, {}};

  const XiPlacement place = xi_placement(sub, ct.xi);
  if (place == XiPlacement::mixed) throw StructuralError("xi has both tangent and normal components");
  const VectorField xi_t = sub.tangent_part(ct.xi);
  const BilinearForm ric = source_ricci(ind, ind.connection("nabla"), src);
  const QuotientForm ricq = quotient(ric);
  const QuotientForm g = quotient(metric_form(ind));
  const auto eta_n = dual_covector(ind, xi_t);
  const QuotientForm ee = quotient(outer(eta_n, eta_n));
  Connection kamb(m.dim());
  kamb.gamma = difference_tensor(sub.nabla, levi_civita(m));
  const RingQuotient beta(ct.eta(m, kamb.apply(ct.xi, ct.xi)));
  const Rational s_sub = Rational(static_cast<long>(t) - 1, 2);
  const Rational s_amb = Rational(static_cast<long>(m.dim()) - 1, 2);
  const Umbilicity um = umbilicity(sub);
  sec.add({"sub.shape", "placement of xi, umbilicity", Verdict::info,
           std::string("xi ") + to_string(place) + (um.totally_geodesic ? ", totally geodesic" : um.umbilical && um.umbilical_star ? ", totally umbilical" : "") +
               (um.minimal ? ", minimal" : ""),
           "", {}, "beta = " + beta.str()});

  if (place == XiPlacement::tangent) {
    const SolitonSolution sol = solve_on_sub(sub, SolitonKind::eta_ricci, xi_t, xi_t, src);
    sec.add({"sub.eta-ricci-solve", "eta-Ricci soliton (g, xi, lambda, omega) on N", pass_if(sol.consistent), solution_str(sol), "",
             tags, sol.consistent ? "" : "residual " + quotient_form_summary(ind, sol.residual)});
    const RingQuotient omega = sol.omega.value_or(RingQuotient(0));
    for (const auto& [label, s] : {std::pair<std::string, Rational>{"sub", s_sub}, {"ambient", s_amb}}) {
      const RingQuotient claimed = RingQuotient(s) * (RingQuotient(1) - beta) - omega;
      sec.add({"sub.lambda-xi-tangent." + label, "lambda = s(1 - beta) - omega", match_if(claimed == sol.lambda), sol.lambda.str(),
               claimed.str(), tags, "s = " + rational_str(s) + " from the " + label + " dimension"});
    }
    // lambda re-derived from Ric(xi, xi) = -(lambda+1) - (omega+beta-1)
    RingQuotient ric_xx;
    for (std::size_t p = 0; p < t; ++p)
      for (std::size_t q = 0; q < t; ++q) ric_xx = ric_xx + RingQuotient(xi_t[p] * xi_t[q] * ric(p, q));
    const RingQuotient lam_from = -ric_xx - omega - beta;
    sec.add({"sub.lambda-from-ricci-xi", "Ric(xi,xi) = -(lambda+1) - (omega+beta-1)", match_if(lam_from == sol.lambda),
             sol.lambda.str(), lam_from.str(), tags, "Ric(xi,xi) = " + ric_xx.str()});
    for (const auto& [label, s] : {std::pair<std::string, Rational>{"sub", s_sub}, {"ambient", s_amb}}) {
      const RingQuotient claimed = RingQuotient(s - 1) * (beta - RingQuotient(1));
      sec.add({"sub.ricci-xi-column." + label, "Ric(E, xi) = (s - 1)(beta - 1) eta(E) at E = xi", match_if(claimed == ric_xx),
               ric_xx.str(), claimed.str(), tags, "s = " + rational_str(s)});
    }
  } else {
    const SolitonSolution sol = solve_on_sub(sub, SolitonKind::ricci, VectorField(t), xi_t, src);
    sec.add({"sub.ricci-solve-xi-normal", "Ricci soliton on N with L_xi g = 0", pass_if(sol.consistent), "lambda = " + sol.lambda.str(),
             "", tags, sol.consistent ? "" : "residual " + quotient_form_summary(ind, sol.residual)});
    const RingQuotient claimed = -beta;
    sec.add({"sub.lambda-xi-normal", "lambda = -beta", match_if(claimed == sol.lambda), sol.lambda.str(), claimed.str(), tags, ""});
  }

  // concircular soliton field
  const Concircular cc = concircular_check(m, sub.nabla, v);
  if (!cc.holds) {
    sec.add({"sub.concircular", "nabla_E v = mu E on the ambient manifold", Verdict::not_applicable, "v is not concircular", "", {},
             "theorems for concircular fields skipped"});
    return sec;
  }
  sec.add({"sub.concircular", "nabla_E v = mu E on the ambient manifold", Verdict::info, "mu = " + cc.mu.str(), "", {}, ""});
  const RingQuotient mu = cc.mu;
  const VectorField vt = sub.tangent_part(v);
  const VectorField vn = sub.normal_part(v);
  const Endomorphism a_vn = shape_operator(sub, vn, false);

  // Lemma: flat or totally umbilical iff v^T concircular on N
  {
    const bool flat = curvature(ind, ind.connection("nabla")).is_zero();
    const bool umb = um.umbilical && um.umbilical_star;
    const Concircular on_n = concircular_check(ind, ind.connection("nabla"), vt);
    const bool consistent = (flat || umb) == on_n.holds;
    sec.add({"sub.flat-or-umbilical", "N flat or totally umbilical iff v^T is concircular on N", match_if(consistent),
             std::string(flat ? "flat" : "not flat") + ", " + (umb ? "umbilical" : "not umbilical") + ", v^T " +
                 (on_n.holds ? "concircular" : "not concircular"),
             "", {}, vt.is_zero() ? "v^T = 0: the concircular side holds trivially" : ""});
  }

  // eta-Ricci with potential v^T: Ric = (lambda - mu) g - g(h, v^T) - omega eta(x)eta
  {
    const SolitonSolution sol = solve_on_sub(sub, SolitonKind::eta_ricci, vt, xi_t, src);
    const RingQuotient omega = sol.omega.value_or(RingQuotient(0));
    QuotientForm diff(t);
    for (std::size_t p = 0; p < t; ++p)
      for (std::size_t q = 0; q < t; ++q) {
        const RingQuotient hv(inner(m, sub.h[p][q], sub.lift(vt)));
        diff(p, q) = ricq(p, q) - ((sol.lambda - mu) * g(p, q) - hv - omega * ee(p, q));
      }
    sec.add({"sub.concircular-eta-ricci", "Ric = (lambda - mu) g - g(h, v^T) - omega eta(x)eta", match_if(is_zero(diff)),
             quotient_form_summary(ind, diff), "0", tags,
             solution_str(sol) + (sol.consistent ? "" : " (soliton system inconsistent; projected values)")});
  }

  // quasi-Yamabe with potential v^T
  const SolitonSolution qy = solve_on_sub(sub, SolitonKind::quasi_yamabe, vt, xi_t, src);
  const RingQuotient qomega = qy.omega.value_or(RingQuotient(0));
  const RingQuotient r_sc(scalar(ric, ind));
  {
    QuotientForm diff(t);
    for (std::size_t p = 0; p < t; ++p)
      for (std::size_t q = 0; q < t; ++q) {
        RingQuotient ga;
        for (std::size_t k = 0; k < t; ++k) ga = ga + RingQuotient(a_vn(p, k)) * RingQuotient(ind.metric(k, q));
        diff(p, q) = (r_sc - qy.lambda - mu) * g(p, q) - (ga - qomega * ee(p, q));
      }
    sec.add({"sub.quasi-yamabe-shape", "(R - lambda - mu) g = g(A_{v^N} E, F) - omega eta(x)eta", match_if(is_zero(diff)),
             quotient_form_summary(ind, diff), "0", tags,
             solution_str(qy) + ", R = " + r_sc.str() + (qy.consistent ? "" : " (soliton system inconsistent; projected values)")});
  }
  if (um.minimal) {
    const RingQuotient d = r_sc - qy.lambda + qomega - mu;
    sec.add({"sub.minimal-scalar", "minimal: R = lambda - omega + mu", match_if(d.is_zero()), r_sc.str(),
             (qy.lambda - qomega + mu).str(), tags, ""});
  } else {
    sec.add({"sub.minimal-scalar", "minimal: R = lambda - omega + mu", Verdict::not_applicable, "not minimal", "", tags, ""});
  }
  if (um.minimal && cc.concurrent()) {
    const RingQuotient d = r_sc - (qy.lambda - qomega + RingQuotient(1));
    sec.add({"sub.minimal-concurrent", "minimal, mu = 1: R = lambda - omega + 1", match_if(d.is_zero()), r_sc.str(),
             (qy.lambda - qomega + RingQuotient(1)).str(), tags, ""});
  } else {
    sec.add({"sub.minimal-concurrent", "minimal, mu = 1: R = lambda - omega + 1", Verdict::not_applicable,
             um.minimal ? "mu != 1" : "not minimal", "", tags, ""});
  }
  return sec;
}

}  // namespace statman
