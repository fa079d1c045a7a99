#pragma once

/**
 * @file commands.hpp
 * @brief Command dispatch over a parsed document and claim evaluation.
 *
 * Every command returns a Report. Claim mismatches are ordinary report
 * lines; only malformed input or structurally impossible requests throw.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "statman/dsl.hpp"
#include "statman/fixtures.hpp"
#include "statman/frame_algebra.hpp"
#include "statman/numoracle.hpp"
#include "statman/report.hpp"
#include "statman/soliton.hpp"
#include "statman/structures.hpp"
#include "statman/submanifold.hpp"

namespace statman {

struct CommandFlags {
  std::string connection;  ///< empty: "nabla" if declared, else the first block
  RicciSource ricci_source = RicciSource::statistical;
  CurvatureSign sign = CurvatureSign::standard;
  RicciTrace trace = RicciTrace::first_slot;
  Assignment assign;
  std::vector<std::string> tangent;
  std::string submanifold;
  std::string structure = "kenmotsu";  ///< check: statistical | almost-contact | kenmotsu | all
  /// unset: eta-ricci with a contact block, else ricci
  std::optional<SolitonKind> kind;
  std::string potential;  ///< empty: xi when a contact block exists, else 0
  std::string lambda;     ///< classify: explicit lambda expression
  std::vector<int> sections;
  std::vector<std::string> pair;  ///< sectional: two frame names
  Rational c_bar = -1;            ///< constant of the Ricci-form audit
  /// Values used by the concircular audits when --assign is not given.
  Assignment concircular_assign = {{"a", 1}};
  OracleOptions oracle;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check", "curvature", "ricci", "scalar", "sectional", "soliton",
                                              "classify", "sub", "audit", "oracle", "fixtures", "claims"};
  return names;
}

namespace cmd_detail {

inline std::string conn_key(const ManifoldDoc& doc, const CommandFlags& f) {
  if (!f.connection.empty()) {
    for (const auto& c : doc.connections)
      if (c.name == f.connection) return f.connection;
    throw StructuralError("document has no connection named '" + f.connection + "'");
  }
  for (const auto& c : doc.connections)
    if (c.name == "nabla") return "nabla";
  if (doc.connections.empty()) throw StructuralError("document declares no connection");
  return doc.connections.front().name;
}

/// Keeps only parameters the document declares.
inline Assignment restrict(const ManifoldDoc& doc, const Assignment& a) {
  Assignment r;
  for (const auto& [k, v] : a)
    if (std::find(doc.params.begin(), doc.params.end(), k) != doc.params.end()) r[k] = v;
  return r;
}

inline std::string assign_str(const Assignment& a) {
  std::string s;
  for (const auto& [k, v] : a) s += (s.empty() ? "" : ",") + k + "=" + rational_str(v);
  return s;
}

inline ContactTriple specialize(const ContactTriple& ct, const Assignment& a) {
  ContactTriple r = ct;
  for (auto& p : r.phi.data()) p = p.substitute(a);
  for (auto& p : r.xi.coeffs) p = p.substitute(a);
  return r;
}

inline std::vector<std::string> tags(const CommandFlags& f) {
  std::vector<std::string> t{to_string(f.sign), to_string(f.trace), std::string("ricci-source=") + to_string(f.ricci_source)};
  if (!f.assign.empty()) t.push_back("assign " + assign_str(f.assign));
  return t;
}

inline VectorField unit(const FramePresentation& m, std::size_t i) {
  VectorField v(m.dim());
  for (auto& p : v.coeffs) p = m.zero();
  v[i] = Poly::constant(m.params, 1);
  return v;
}

inline std::size_t index(const FramePresentation& m, const std::string& name) {
  const auto i = m.index_of(name);
  if (!i) throw StructuralError("unknown frame vector '" + name + "'");
  return *i;
}

inline const ContactTriple& need_contact(const std::optional<ContactTriple>& ct) {
  if (!ct) throw StructuralError("document has no contact block");
  return *ct;
}

}  // namespace cmd_detail

// ---------------------------------------------------------------------------
// Claims

/// Connection named by a claim source; statistical sources have none.
inline Connection claim_connection(const FramePresentation& m, const SourceRef& s) {
  switch (s.kind) {
    case SourceRef::Kind::plain: return m.connection(s.connection);
    case SourceRef::Kind::dual: return dual_connection(m, m.connection(s.connection));
    case SourceRef::Kind::levi_civita: return levi_civita(m);
    case SourceRef::Kind::statistical: break;
  }
  throw StructuralError("stat(" + s.connection + ") is a curvature source, not a connection");
}

inline CurvatureTensor claim_curvature(const FramePresentation& m, const SourceRef& s, CurvatureSign sign) {
  if (s.kind == SourceRef::Kind::statistical) return source_curvature(m, m.connection(s.connection), RicciSource::statistical, sign);
  return curvature(m, claim_connection(m, s), sign);
}

/// Evaluates one claim against the engine. The presentation is expected to
/// be specialized already when an assignment applies.
inline Check evaluate_claim(const ManifoldDoc& doc, const FramePresentation& m, const std::optional<ContactTriple>& ct, const Claim& c,
                            const CommandFlags& f) {
  using cmd_detail::index;
  Check out;
  out.id = "claim." + c.id;
  out.conventions = {to_string(f.sign), to_string(f.trace)};
  const std::string src = c.source.str();
  auto vec = [&](const VectorField& v) { return detail::vector_str(m, v); };
  switch (c.kind) {
    case ClaimKind::scalar: {
      const Poly s = scalar(ricci(m, claim_curvature(m, c.source, f.sign), f.trace), m);
      out.anchor = "scalar curvature of " + src;
      out.value = s.str();
      out.expected = c.scalar_value.str();
      out.verdict = match_if(s == c.scalar_value.substitute(f.assign));
      break;
    }
    case ClaimKind::ricci: {
      const BilinearForm ric = ricci(m, claim_curvature(m, c.source, f.sign), f.trace);
      const Poly v = ric(index(m, c.args[0]), index(m, c.args[1]));
      out.anchor = "Ric(" + c.args[0] + "," + c.args[1] + ") of " + src;
      out.value = v.str();
      out.expected = c.scalar_value.str();
      out.verdict = match_if(v == c.scalar_value.substitute(f.assign));
      break;
    }
    case ClaimKind::curvature: {
      const CurvatureTensor r = claim_curvature(m, c.source, f.sign);
      const VectorField v = r.apply(index(m, c.args[0]), index(m, c.args[1]), index(m, c.args[2]));
      VectorField want = c.vector_value;
      for (auto& p : want.coeffs) p = p.substitute(f.assign);
      out.anchor = "R(" + c.args[0] + "," + c.args[1] + ")" + c.args[2] + " of " + src;
      out.value = vec(v);
      out.expected = vec(c.vector_value);
      out.verdict = match_if(v == want);
      out.conventions = {to_string(f.sign)};
      break;
    }
    case ClaimKind::connection: {
      const Connection conn = claim_connection(m, c.source);
      const VectorField v = conn.apply(index(m, c.args[0]), index(m, c.args[1]));
      VectorField want = c.vector_value;
      for (auto& p : want.coeffs) p = p.substitute(f.assign);
      out.anchor = src + "_{" + c.args[0] + "} " + c.args[1];
      out.value = vec(v);
      out.expected = vec(c.vector_value);
      out.verdict = match_if(v == want);
      out.conventions = {};
      break;
    }
    case ClaimKind::einstein: {
      const BilinearForm ric = ricci(m, claim_curvature(m, c.source, f.sign), f.trace);
      const EinsteinResult e = einstein_check(m, ric);
      out.anchor = "Ric = lambda g for " + src;
      out.value = e.str();
      out.expected = "einstein(" + c.scalar_value.str() + ")";
      out.verdict = match_if(e.kind == EinsteinKind::einstein && e.c1 == RingQuotient(c.scalar_value.substitute(f.assign)));
      break;
    }
    case ClaimKind::sectional: {
      const CurvatureTensor r = claim_curvature(m, c.source, f.sign);
      const RingQuotient k = sectional(m, r, cmd_detail::unit(m, index(m, c.args[0])), cmd_detail::unit(m, index(m, c.args[1])));
      out.anchor = "K(" + c.args[0] + "," + c.args[1] + ") of " + src;
      out.value = k.str();
      out.expected = c.scalar_value.str();
      out.verdict = match_if(k == RingQuotient(c.scalar_value.substitute(f.assign)));
      out.conventions = {to_string(f.sign)};
      break;
    }
    case ClaimKind::soliton: {
      SolitonProblem p;
      p.kind = c.soliton_kind;
      p.potential = c.potential;
      for (auto& q : p.potential.coeffs) q = q.substitute(f.assign);
      p.source = c.source.kind == SourceRef::Kind::dual ? RicciSource::nabla_star
                 : c.source.kind == SourceRef::Kind::statistical ? RicciSource::statistical
                                                                 : RicciSource::nabla;
      p.sign = f.sign;
      p.trace = f.trace;
      if (ct) p.xi = ct->xi;
      const SolitonSolution s = solve_soliton(m, m.connection(c.source.connection), p);
      out.anchor = std::string(to_string(c.soliton_kind)) + " soliton for " + src + " with potential " + vec(c.potential);
      out.value = "lambda = " + s.lambda.str() + (s.omega ? ", omega = " + s.omega->str() : "");
      if (!s.consistent) out.value += " (no exact solution)";
      out.expected = "lambda = " + c.scalar_value.str() + (c.omega ? ", omega = " + c.omega->str() : "");
      bool ok = s.consistent && s.lambda == RingQuotient(c.scalar_value.substitute(f.assign));
      if (c.omega) ok = ok && s.omega && *s.omega == RingQuotient(c.omega->substitute(f.assign));
      out.verdict = match_if(ok);
      break;
    }
  }
  (void)doc;
  return out;
}

inline Section evaluate_claims(const ManifoldDoc& doc, const CommandFlags& f, std::optional<ClaimKind> only = std::nullopt) {
  const FramePresentation m = specialize(doc.presentation(), cmd_detail::restrict(doc, f.assign));
  std::optional<ContactTriple> ct = doc.contact_triple();
  CommandFlags g = f;
  g.assign = cmd_detail::restrict(doc, f.assign);
  Section s{"claims", {}};
  for (const auto& c : doc.claims) {
    if (only && c.kind != *only) continue;
    Check k = evaluate_claim(doc, m, ct, c, g);
    k.note = "declared at line " + std::to_string(c.span.line);
    s.add(std::move(k));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Structure sections

/// Duality identities for one connection.
inline Section duality_section(const FramePresentation& m, const std::string& key) {
  const Connection& nabla = m.connection(key);
  Section s{"duality of " + key, {}};
  const Connection star = dual_connection(m, nabla);
  s.add({"duality.involution", "dual(dual(nabla)) = nabla", pass_if(dual_connection(m, star) == nabla), "", "", {}, ""});
  const StatisticalCheck st = check_statistical(m, nabla);
  const bool statistical = st.passed();
  if (statistical) {
    Connection mean(m.dim());
    for (std::size_t e = 0; e < mean.gamma.data().size(); ++e)
      mean.gamma.data()[e] = (nabla.gamma.data()[e] + star.gamma.data()[e]).scaled(Rational(1, 2));
    s.add({"duality.mean", "nabla^g = (nabla + nabla*)/2", pass_if(mean == levi_civita(m)), "", "", {}, ""});
  } else {
    s.add({"duality.mean", "nabla^g = (nabla + nabla*)/2", Verdict::not_applicable, "", "", {}, "connection is not statistical"});
  }
  const CurvatureTensor r = curvature(m, nabla), rs = curvature(m, star);
  const CurvatureTensor stat = statistical_curvature(r, rs);
  CurvatureTensor twice = stat + stat;
  s.add({"duality.statistical-curvature", "2S = R + R*", pass_if(twice == r + rs), "", "", {"standard"}, ""});
  bool lie_ok = true;
  for (std::size_t i = 0; i < m.dim() && statistical; ++i) lie_ok = lie_ok && lie_derivative_metric(m, cmd_detail::unit(m, i), &nabla).forms_agree();
  s.add({"duality.lie-derivative", "(L_V g)(X,Y) = g(nabla_X V, Y) + g(X, nabla*_Y V) for V = e_i",
         statistical ? pass_if(lie_ok) : Verdict::not_applicable, "", "", {}, statistical ? "" : "connection is not statistical"});
  return s;
}

inline Section statistical_section(const FramePresentation& m, const std::string& key) {
  const StatisticalCheck st = check_statistical(m, m.connection(key));
  Section s{"statistical structure of " + key, {}};
  auto first = [&](const std::vector<Residual>& rs) -> std::string {
    if (rs.empty()) return "0";
    std::string at;
    for (std::size_t i : rs.front().index) at += (at.empty() ? "" : ",") + m.frame[i];
    return "(" + at + ") " + rs.front().value.str() + (rs.size() > 1 ? " (+" + std::to_string(rs.size() - 1) + " more)" : "");
  };
  s.add({"statistical.torsion", "nabla_X Y - nabla_Y X - [X,Y] = 0", pass_if(st.torsion_free()), first(st.torsion), "0", {}, ""});
  s.add({"statistical.codazzi", "(nabla_X g)(Y,Z) = (nabla_Y g)(X,Z)", pass_if(st.codazzi_symmetric()), first(st.codazzi), "0", {}, ""});
  s.add({"statistical.symmetry", "g(K_X Y, Z) totally symmetric", pass_if(st.totally_symmetric()), first(st.symmetry), "0", {}, ""});
  return s;
}

// ---------------------------------------------------------------------------
// Commands

namespace cmd_detail {

struct Ctx {
  const ManifoldDoc& doc;
  const CommandFlags& flags;
  FramePresentation m;
  std::string key;
  std::optional<ContactTriple> ct;

  Ctx(const ManifoldDoc& d, const CommandFlags& f) : doc(d), flags(f) {
    m = statman::specialize(d.presentation(), restrict(d, f.assign));
    key = conn_key(d, f);
    ct = d.contact_triple();
    if (ct) ct = cmd_detail::specialize(*ct, restrict(d, f.assign));
  }
  const Connection& nabla() const { return m.connection(key); }
  CurvatureTensor curv() const { return source_curvature(m, nabla(), flags.ricci_source, flags.sign); }
  BilinearForm ric() const { return ricci(m, curv(), flags.trace); }
  std::string source() const {
    switch (flags.ricci_source) {
      case RicciSource::nabla: return key;
      case RicciSource::nabla_star: return "dual(" + key + ")";
      case RicciSource::statistical: return "stat(" + key + ")";
    }
    return key;
  }
};

inline Report new_report(const ManifoldDoc& doc, const std::string& command) { return Report{command + " " + doc.name, {}}; }

inline VectorField potential(const Ctx& c) {
  if (!c.flags.potential.empty()) {
    VectorField v = parse_vector(c.doc, c.flags.potential);
    for (auto& p : v.coeffs) p = p.substitute(restrict(c.doc, c.flags.assign));
    return v;
  }
  if (c.ct) return c.ct->xi;
  VectorField z(c.m.dim());
  for (auto& p : z.coeffs) p = c.m.zero();
  return z;
}

inline bool fully_assigned(const RingQuotient& q, const Assignment& a) {
  try {
    (void)quotient_sign(q, a);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

inline void append_claims(Report& r, const ManifoldDoc& doc, const CommandFlags& f, std::optional<ClaimKind> only) {
  Section s = evaluate_claims(doc, f, only);
  if (!s.checks.empty()) r.append(std::move(s));
}

inline Report cmd_check(const Ctx& c) {
  Report r = new_report(c.doc, "check");
  const std::string& st = c.flags.structure;
  if (st == "statistical" || st == "all" || st == "kenmotsu") {
    r.append(statistical_section(c.m, c.key));
    r.append(duality_section(c.m, c.key));
  }
  if (st == "almost-contact" || st == "kenmotsu" || st == "all") r.append(check_almost_contact(c.m, need_contact(c.ct)));
  if (st == "kenmotsu" || st == "all") r.append(check_kenmotsu_statistical(c.m, c.nabla(), need_contact(c.ct)));
  if (r.sections.empty()) throw StructuralError("unknown structure '" + st + "' (statistical, almost-contact, kenmotsu, all)");
  return r;
}

inline Report cmd_curvature(const Ctx& c) {
  Report r = new_report(c.doc, "curvature");
  Section s{"curvature of " + c.source(), {}};
  const CurvatureTensor t = c.curv();
  const std::size_t n = c.m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const VectorField v = t.apply(i, j, k);
        if (v.is_zero()) continue;
        s.add({"R(" + c.m.frame[i] + "," + c.m.frame[j] + ")" + c.m.frame[k], "", Verdict::info, detail::vector_str(c.m, v), "",
               {to_string(c.flags.sign)}, ""});
      }
  if (s.checks.empty()) s.add({"curvature.flat", "R = 0", Verdict::info, "0", "", {to_string(c.flags.sign)}, ""});
  if (n >= 2) {
    const auto cc = constant_curvature_check(c.m, t);
    s.add({"curvature.constant", "R(X,Y)Z = c(g(Y,Z)X - g(X,Z)Y)", Verdict::info, cc ? "c = " + cc->str() : "absent", "",
           {to_string(c.flags.sign)}, ""});
  }
  r.append(std::move(s));
  append_claims(r, c.doc, c.flags, ClaimKind::curvature);
  append_claims(r, c.doc, c.flags, ClaimKind::connection);
  return r;
}

inline Report cmd_ricci(const Ctx& c) {
  Report r = new_report(c.doc, "ricci");
  Section s{"Ricci of " + c.source(), {}};
  const BilinearForm ric = c.ric();
  for (std::size_t i = 0; i < c.m.dim(); ++i)
    for (std::size_t j = i; j < c.m.dim(); ++j)
      if (!ric(i, j).is_zero() || i == j)
        s.add({"Ric(" + c.m.frame[i] + "," + c.m.frame[j] + ")", "", Verdict::info, ric(i, j).str(), "", tags(c.flags), ""});
  std::optional<VectorField> xi;
  if (c.ct) xi = c.ct->xi;
  s.add({"ricci.einstein", "Ric = c1 g + c2 eta(x)eta", Verdict::info, einstein_check(c.m, ric, xi).str(), "", tags(c.flags), ""});
  r.append(std::move(s));
  append_claims(r, c.doc, c.flags, ClaimKind::ricci);
  append_claims(r, c.doc, c.flags, ClaimKind::einstein);
  return r;
}

inline Report cmd_scalar(const Ctx& c) {
  Report r = new_report(c.doc, "scalar");
  Section s{"scalar of " + c.source(), {}};
  s.add({"scalar", "trace_g Ric", Verdict::info, scalar(c.ric(), c.m).str(), "", tags(c.flags), ""});
  r.append(std::move(s));
  append_claims(r, c.doc, c.flags, ClaimKind::scalar);
  return r;
}

inline Report cmd_sectional(const Ctx& c) {
  Report r = new_report(c.doc, "sectional");
  Section s{"sectional curvature of " + c.source(), {}};
  const CurvatureTensor t = c.curv();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (c.flags.pair.size() == 2) pairs.push_back({index(c.m, c.flags.pair[0]), index(c.m, c.flags.pair[1])});
  else if (!c.flags.pair.empty()) throw StructuralError("--pair takes exactly two frame names");
  else
    for (std::size_t i = 0; i < c.m.dim(); ++i)
      for (std::size_t j = i + 1; j < c.m.dim(); ++j) pairs.push_back({i, j});
  for (auto [i, j] : pairs)
    s.add({"K(" + c.m.frame[i] + "," + c.m.frame[j] + ")", "g(S(X,Y)Y,X) / (g(X,X)g(Y,Y) - g(X,Y)^2)", Verdict::info,
           sectional(c.m, t, unit(c.m, i), unit(c.m, j)).str(), "", {to_string(c.flags.sign)}, ""});
  r.append(std::move(s));
  append_claims(r, c.doc, c.flags, ClaimKind::sectional);
  return r;
}

inline LabelConvention convention_of(SolitonKind k) {
  return k == SolitonKind::yamabe || k == SolitonKind::quasi_yamabe ? LabelConvention::yamabe : LabelConvention::ricci;
}

inline SolitonKind kind_of(const Ctx& c) {
  return c.flags.kind ? *c.flags.kind : c.ct ? SolitonKind::eta_ricci : SolitonKind::ricci;
}

inline Report cmd_soliton(const Ctx& c) {
  Report r = new_report(c.doc, "soliton");
  SolitonProblem p;
  p.kind = kind_of(c);
  p.potential = potential(c);
  p.source = c.flags.ricci_source;
  p.sign = c.flags.sign;
  p.trace = c.flags.trace;
  if (c.ct) p.xi = c.ct->xi;
  const SolitonSolution sol = solve_soliton(c.m, c.nabla(), p);
  Section s{std::string(to_string(p.kind)) + " soliton, " + c.source() + ", V = " + detail::vector_str(c.m, p.potential), {}};
  s.add({"soliton.solve", "residual = 0", pass_if(sol.consistent),
         "lambda = " + sol.lambda.str() + (sol.omega ? ", omega = " + sol.omega->str() : ""), "", tags(c.flags),
         sol.consistent ? "" : "residual " + detail::quotient_form_summary(c.m, sol.residual)});
  if (sol.consistent && fully_assigned(sol.lambda, c.flags.assign))
    s.add({"soliton.label", "sign of lambda", Verdict::info, to_string(classify(sol.lambda, c.flags.assign, convention_of(p.kind))), "",
           {convention_of(p.kind) == LabelConvention::ricci ? "ricci-labels" : "yamabe-labels"}, ""});
  r.append(std::move(s));
  append_claims(r, c.doc, c.flags, ClaimKind::soliton);
  return r;
}

inline Report cmd_classify(const Ctx& c) {
  Report r = new_report(c.doc, "classify");
  Section s{"classification", {}};
  RingQuotient lambda;
  std::string origin;
  if (!c.flags.lambda.empty()) {
    lambda = RingQuotient(parse_scalar(c.doc, c.flags.lambda));
    origin = "given";
  } else {
    SolitonProblem p;
    p.kind = kind_of(c);
    p.potential = potential(c);
    p.source = c.flags.ricci_source;
    p.sign = c.flags.sign;
    p.trace = c.flags.trace;
    if (c.ct) p.xi = c.ct->xi;
    const SolitonSolution sol = solve_soliton(c.m, c.nabla(), p);
    if (!sol.consistent) throw StructuralError("no exact soliton solution to classify");
    lambda = sol.lambda;
    origin = std::string("solved ") + to_string(p.kind);
  }
  if (!fully_assigned(lambda, c.flags.assign)) throw StructuralError("lambda = " + lambda.str() + " needs --assign for every parameter");
  s.add({"classify.ricci", "lambda < 0 shrinking, 0 steady, > 0 expanding", Verdict::info,
         to_string(classify(lambda, c.flags.assign, LabelConvention::ricci)), "", {"ricci-labels"}, origin + " lambda = " + lambda.str()});
  s.add({"classify.yamabe", "lambda > 0 shrinking, 0 steady, < 0 expanding", Verdict::info,
         to_string(classify(lambda, c.flags.assign, LabelConvention::yamabe)), "", {"yamabe-labels"}, origin + " lambda = " + lambda.str()});
  r.append(std::move(s));
  return r;
}

inline std::vector<std::pair<std::string, std::vector<std::string>>> tangent_sets(const Ctx& c) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  if (!c.flags.tangent.empty()) {
    std::string name;
    for (const auto& t : c.flags.tangent) name += (name.empty() ? "" : ",") + t;
    out.push_back({"{" + name + "}", c.flags.tangent});
    return out;
  }
  for (const auto& s : c.doc.submanifolds)
    if (c.flags.submanifold.empty() || s.name == c.flags.submanifold) out.push_back({s.name, s.tangent});
  if (out.empty()) throw StructuralError(c.flags.submanifold.empty() ? "no submanifold: pass --tangent or declare a submanifold block"
                                                                     : "no submanifold named '" + c.flags.submanifold + "'");
  return out;
}

inline Section sub_summary(const AdaptedSubmanifold& sub, const std::optional<ContactTriple>& ct) {
  Section s{"submanifold " + sub.name, {}};
  const Umbilicity u = umbilicity(sub);
  s.add({"sub.closure", "[T,T] in T", pass_if(sub.closure_ok), "", "", {}, ""});
  s.add({"sub.shape-duality", "g(h(E,F),U) = g(A*_U E, F) and g(h*(E,F),U) = g(A_U E, F)", pass_if(sub.duality_ok), "", "", {}, ""});
  s.add({"sub.totally-geodesic", "h = h* = 0", Verdict::info, u.totally_geodesic ? "yes" : "no", "", {}, ""});
  s.add({"sub.umbilical", "h(E,F) = g(E,F) H", Verdict::info, u.umbilical ? "yes" : "no", "", {},
         "H = " + detail::vector_str(sub.ambient, u.mean) + ", H* = " + detail::vector_str(sub.ambient, u.mean_star)});
  s.add({"sub.minimal", "H = 0", Verdict::info, u.minimal ? "yes" : "no", "", {}, ""});
  if (ct) {
    s.add({"sub.phi", "phi E = P E + C E", Verdict::info, to_string(phi_decompose(sub, *ct).kind), "", {}, ""});
    s.add({"sub.xi", "placement of xi", Verdict::info, to_string(xi_placement(sub, ct->xi)), "", {}, ""});
  }
  return s;
}

inline Report cmd_sub(const Ctx& c) {
  Report r = new_report(c.doc, "sub");
  for (const auto& [name, tangent] : tangent_sets(c)) {
    const AdaptedSubmanifold sub = induce(c.m, c.nabla(), tangent, name);
    r.append(sub_summary(sub, c.ct));
    Section g = gauss_check(sub);
    g.name = "Gauss equations on " + name;
    r.append(std::move(g));
  }
  return r;
}

/// Specialization used by the concircular audits.
inline Assignment concircular_assignment(const Ctx& c) {
  if (!c.flags.assign.empty()) return restrict(c.doc, c.flags.assign);
  return restrict(c.doc, c.flags.concircular_assign);
}

inline void audit_section(Report& r, const Ctx& c, int section) {
  const FramePresentation& m = c.m;
  const std::string tag = "section " + std::to_string(section);
  auto add = [&](Section s) {
    s.name = tag + ": " + s.name;
    r.append(std::move(s));
  };
  switch (section) {
    case 2: {
      add(statistical_section(m, c.key));
      add(duality_section(m, c.key));
      if (c.ct) {
        add(check_almost_contact(m, *c.ct));
        add(check_kenmotsu_statistical(m, c.nabla(), *c.ct));
        Connection k(m.dim());
        k.gamma = difference_tensor(c.nabla(), levi_civita(m));
        add(decompose_K(m, k.gamma, *c.ct).second);
      }
      for (const auto& s : c.doc.submanifolds) {
        const AdaptedSubmanifold sub = induce(m, c.nabla(), s.tangent, s.name);
        add(sub_summary(sub, c.ct));
        add(gauss_check(sub));
      }
      return;
    }
    case 3: {
      if (!c.ct) return add(Section{"curvature identities", {{"audit.n/a", "", Verdict::not_applicable, "", "", {}, "no contact block"}}});
      add(audit_curvature_identities(m, c.nabla(), *c.ct));
      if (m.dim() % 2 == 1)
        add(audit_ricci_forms(m, source_ricci(m, c.nabla(), c.flags.ricci_source, c.flags.sign, c.flags.trace), *c.ct, c.flags.c_bar,
                              std::string("ricci-source=") + to_string(c.flags.ricci_source)));
      return;
    }
    case 4: {
      if (c.ct) {
        for (const auto& s : c.doc.submanifolds) {
          const AdaptedSubmanifold sub = induce(m, c.nabla(), s.tangent, s.name);
          add(audit_submanifold_soliton_theorems(sub, *c.ct, c.ct->xi, c.flags.ricci_source));
        }
        return;
      }
      // Einstein examples: structure, curvature constant, Einstein constant, Ricci soliton with V = 0.
      Section s{"Einstein examples", {}};
      for (const auto& block : c.doc.connections) {
        const Connection& nab = m.connection(block.name);
        const std::string nm = block.name;
        const CurvatureTensor rr = curvature(m, nab, c.flags.sign);
        const BilinearForm ric = ricci(m, rr, c.flags.trace);
        const auto cc = constant_curvature_check(m, rr);
        const EinsteinResult e = einstein_check(m, ric);
        s.add({"example." + nm + ".statistical", "statistical structure", pass_if(check_statistical(m, nab).passed()), "", "", {}, ""});
        s.add({"example." + nm + ".constant-curvature", "R(X,Y)Z = c(g(Y,Z)X - g(X,Z)Y)", Verdict::info, cc ? "c = " + cc->str() : "absent",
               "", {to_string(c.flags.sign)}, ""});
        s.add({"example." + nm + ".scalar", "trace_g Ric", Verdict::info, scalar(ric, m).str(), "", {to_string(c.flags.sign)}, ""});
        s.add({"example." + nm + ".einstein", "Ric = lambda g", Verdict::info, e.str(), "", {to_string(c.flags.sign)}, ""});
        SolitonProblem p;
        p.kind = SolitonKind::ricci;
        p.potential = VectorField(m.dim());
        for (auto& q : p.potential.coeffs) q = m.zero();
        p.source = RicciSource::nabla;
        p.sign = c.flags.sign;
        p.trace = c.flags.trace;
        const SolitonSolution sol = solve_soliton(m, nab, p);
        std::string label = "needs --assign";
        if (e.kind == EinsteinKind::einstein && fully_assigned(e.c1, c.flags.assign))
          label = to_string(classify(e.c1, c.flags.assign, LabelConvention::ricci));
        s.add({"example." + nm + ".ricci-soliton", "Ric + 1/2 L_V g + lambda g = 0, V = 0", pass_if(sol.consistent),
               "lambda = " + sol.lambda.str(), "", {"ricci-labels"}, "label of the Einstein constant: " + label});
      }
      add(std::move(s));
      return;
    }
    case 5: {
      if (!c.ct || m.dim() % 2 == 0) return add(Section{"ambient eta-Ricci", {{"audit.n/a", "", Verdict::not_applicable, "", "", {}, "needs an odd-dimensional contact structure"}}});
      add(audit_ambient_theorems(m, c.nabla(), *c.ct, c.flags.ricci_source));
      return;
    }
    case 6:
    case 7: {
      if (!c.ct || c.doc.submanifolds.empty())
        return add(Section{section == 6 ? "concircular fields" : "quasi-Yamabe on submanifolds",
                           {{"audit.n/a", "", Verdict::not_applicable, "", "", {}, "needs a contact block and submanifolds"}}});
      const Assignment a = concircular_assignment(c);
      const FramePresentation ms = statman::specialize(m, a);
      const ContactTriple cts = cmd_detail::specialize(*c.ct, a);
      for (const auto& s : c.doc.submanifolds) {
        const AdaptedSubmanifold sub = induce(ms, ms.connection(c.key), s.tangent, s.name);
        Section sec = section == 6 ? tangential_split_audit(sub, cts, cts.xi) : audit_submanifold_soliton_theorems(sub, cts, cts.xi, c.flags.ricci_source);
        if (!a.empty())
          for (auto& k : sec.checks) k.conventions.push_back("assign " + assign_str(a));
        add(std::move(sec));
      }
      return;
    }
    case 8: {
      Section s{"explicit computation", {}};
      const BilinearForm ric = source_ricci(m, c.nabla(), c.flags.ricci_source, c.flags.sign, c.flags.trace);
      std::optional<VectorField> xi;
      if (c.ct) xi = c.ct->xi;
      s.add({"explicit.ricci", "Ric of " + c.source(), Verdict::info, einstein_check(m, ric, xi).str(), "", tags(c.flags), ""});
      s.add({"explicit.scalar", "scalar of " + c.source(), Verdict::info, scalar(ric, m).str(), "", tags(c.flags), ""});
      if (c.ct) {
        for (SolitonKind kind : {SolitonKind::eta_ricci, SolitonKind::quasi_yamabe}) {
          SolitonProblem p;
          p.kind = kind;
          p.potential = c.ct->xi;
          p.source = c.flags.ricci_source;
          p.sign = c.flags.sign;
          p.trace = c.flags.trace;
          p.xi = c.ct->xi;
          const SolitonSolution sol = solve_soliton(m, c.nabla(), p);
          std::string label;
          if (sol.consistent && fully_assigned(sol.lambda, c.flags.assign))
            label = to_string(classify(sol.lambda, c.flags.assign, convention_of(kind)));
          s.add({std::string("explicit.") + to_string(kind), std::string(to_string(kind)) + " soliton with V = xi", pass_if(sol.consistent),
                 "lambda = " + sol.lambda.str() + (sol.omega ? ", omega = " + sol.omega->str() : ""), "", tags(c.flags),
                 label.empty() ? "" : "label " + label});
        }
      }
      add(std::move(s));
      Section cl = evaluate_claims(c.doc, c.flags);
      if (!cl.checks.empty()) add(std::move(cl));
      return;
    }
    default: throw StructuralError("audit sections are 2 to 8");
  }
}

inline Report cmd_audit(const Ctx& c) {
  Report r = new_report(c.doc, "audit");
  std::vector<int> secs = c.flags.sections;
  if (secs.empty()) secs = {2, 3, 4, 5, 6, 7, 8};
  std::sort(secs.begin(), secs.end());
  secs.erase(std::unique(secs.begin(), secs.end()), secs.end());
  for (int s : secs) audit_section(r, c, s);
  return r;
}

inline Report cmd_oracle(const ManifoldDoc& doc, const CommandFlags& f) {
  Report r{"oracle " + doc.name, {}};
  ChartFixture chart = chart_fixture(doc.name);
  r.append(cross_validate(chart, doc.presentation(), f.oracle));
  if (chart.connections.count("nabla")) {
    Section s{"convergence", {}};
    const double ratio = convergence_ratio(chart, doc.presentation(), "nabla");
    s.add({"oracle.convergence", "deviation(h) / deviation(h/2), h = 1e-3, coordinate fields", pass_if(ratio >= 3.5 && ratio <= 4.5),
           oracle_detail::fmt(ratio), "in [3.5, 4.5]", {}, "roundoff-limited when the chart data is exact under central differences"});
    r.append(std::move(s));
  }
  return r;
}

}  // namespace cmd_detail

inline Report list_fixtures() {
  Report r{"fixtures", {}};
  Section s{"built-in presentations", {}};
  for (const auto& f : builtin_fixtures) {
    const ManifoldDoc d = parse(std::string(f.text));
    std::string params;
    for (const auto& p : d.params) params += (params.empty() ? "" : ",") + p;
    s.add({std::string(f.name), "", Verdict::info, "dim " + std::to_string(d.frame.size()), "", {},
           (params.empty() ? std::string("no parameters") : "params " + params) + ", " + std::to_string(d.claims.size()) + " claims"});
  }
  r.append(std::move(s));
  return r;
}

/// Dispatches a command. Throws StructuralError (or a subclass) for
/// malformed requests; claim mismatches are report lines.
inline Report run_command(const ManifoldDoc& doc, const std::string& command, const CommandFlags& flags = {}) {
  using namespace cmd_detail;
  if (command == "fixtures") return list_fixtures();
  if (command == "oracle") return cmd_oracle(doc, flags);
  if (command == "claims") {
    Report r = new_report(doc, "claims");
    r.append(evaluate_claims(doc, flags));
    return r;
  }
  const Ctx c(doc, flags);
  if (command == "check") return cmd_check(c);
  if (command == "curvature") return cmd_curvature(c);
  if (command == "ricci") return cmd_ricci(c);
  if (command == "scalar") return cmd_scalar(c);
  if (command == "sectional") return cmd_sectional(c);
  if (command == "soliton") return cmd_soliton(c);
  if (command == "classify") return cmd_classify(c);
  if (command == "sub") return cmd_sub(c);
  if (command == "audit") return cmd_audit(c);
  throw StructuralError("unknown command '" + command + "'");
}

}  // namespace statman
