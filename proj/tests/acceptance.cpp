// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "statman/statman.hpp"

using namespace statman;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.ok) ++failures;
  std::cout << "criterion " << n << " " << (o.ok ? "PASS" : "FAIL") << ": " << o.detail << std::endl;
}

FramePresentation fixture(const std::string& name) { return load_fixture(name).presentation(); }

VectorField zero_field(const FramePresentation& m) {
  VectorField v(m.dim());
  for (auto& p : v.coeffs) p = m.zero();
  return v;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Residual of the soliton equation at quotient-valued lambda, omega, cleared of denominators.
bool residual_vanishes(const FramePresentation& m, const Connection& nabla, const SolitonProblem& p, const SolitonSolution& s) {
  const SolitonPencil pen = soliton_pencil(m, nabla, p);
  const Poly ln = s.lambda.numerator(), ld = s.lambda.denominator();
  Poly on = m.zero(), od = Poly::constant(m.params, 1);
  if (s.omega) {
    on = s.omega->numerator();
    od = s.omega->denominator();
  }
  BilinearForm r = (ld * od) * pen.base + (ln * od) * pen.lambda_form;
  if (pen.omega_form) r = r + (on * ld) * *pen.omega_form;
  return is_zero(r);
}

}  // namespace

int main() {
  // 1. hyperbolic plane
  report(1, [] {
    const FramePresentation m = fixture("hyperbolic2");
    const Connection& nabla = m.connection("nabla");
    const bool stat = check_statistical(m, nabla).passed();
    const CurvatureTensor r = curvature(m, nabla);
    const bool flat = r.is_zero();
    const bool ricci_flat = is_zero(ricci(r));
    SolitonProblem p;
    p.kind = SolitonKind::ricci;
    p.potential = zero_field(m);
    p.source = RicciSource::nabla;
    const SolitonSolution s = solve_soliton(m, nabla, p);
    const bool steady = s.consistent && s.lambda.is_zero() && classify(s.lambda, {}) == SolitonLabel::steady;
    return Outcome{stat && flat && ricci_flat && steady, std::string("statistical=") + (stat ? "yes" : "no") + ", R=0 " +
                                                             (flat ? "yes" : "no") + ", Ric=0 " + (ricci_flat ? "yes" : "no") +
                                                             ", lambda=" + s.lambda.str() + " " + to_string(classify(s.lambda, {}))};
  });

  // 2. flat R^3
  report(2, [] {
    const FramePresentation m = fixture("flat3-einstein");
    const Connection& nabla = m.connection("nabla");
    const Poly b = Poly::variable(m.params, "b");
    const CurvatureTensor r = curvature(m, nabla);
    const auto c = constant_curvature_check(m, r);
    const Poly sc = scalar(ricci(r), m);
    const EinsteinResult e = einstein_check(m, ricci(r));
    const bool c_ok = c && *c == RingQuotient((b * b).scaled(Rational(1, 4)));
    const bool s_ok = sc == (b * b).scaled(Rational(3, 2));
    const bool e_ok = e.kind == EinsteinKind::einstein && e.c1 == RingQuotient((b * b).scaled(Rational(1, 2)));
    const SolitonLabel label = classify(e.c1, {{"b", 2}});
    return Outcome{c_ok && s_ok && e_ok && label == SolitonLabel::expanding,
                   "c=" + (c ? c->str() : std::string("absent")) + ", scalar=" + sc.str() + ", " + e.str() + ", b=2 " + to_string(label)};
  });

  // 3. flat R^2
  report(3, [] {
    const ManifoldDoc doc = load_fixture("flat2-einstein");
    const FramePresentation m = doc.presentation();
    const Poly s_printed = scalar(ricci(curvature(m, m.connection("printed_star"))), m);
    const Poly s_nabla = scalar(ricci(curvature(m, m.connection("nabla"))), m);
    const bool stat = check_statistical(m, m.connection("nabla")).passed();
    const Report rep = run_command(doc, "claims");
    const Check* einstein = rep.find("claim.einstein");
    const Check* einstein_star = rep.find("claim.einstein-printed-star");
    const bool recorded = einstein && einstein_star && !einstein->expected.empty();
    return Outcome{s_printed == Poly(-2) && recorded,
                   "scalar(printed conjugate)=" + s_printed.str() + ", scalar(nabla)=" + s_nabla.str() + ", nabla statistical=" +
                       (stat ? "yes" : "no") + ", einstein claim " + (einstein ? std::string(to_string(einstein->verdict)) + " (" + einstein->value + " vs " + einstein->expected + ")" : "missing") +
                       ", printed conjugate " + (einstein_star ? std::string(to_string(einstein_star->verdict)) + " (" + einstein_star->value + ")" : "missing")};
  });

  // 4. Kenmotsu structure, symbolic a
  report(4, [] {
    const ManifoldDoc doc = load_fixture("kenmotsu5d");
    const FramePresentation m = doc.presentation();
    const ContactTriple ct = *doc.contact_triple();
    const Section ac = check_almost_contact(m, ct);
    const Section ks = check_kenmotsu_statistical(m, m.connection("nabla"), ct);
    return Outcome{ac.all_ok() && ks.all_ok(), "almost contact " + std::string(ac.all_ok() ? "pass" : "fail") + " (" +
                                                   std::to_string(ac.checks.size()) + " checks), Kenmotsu statistical " +
                                                   (ks.all_ok() ? "pass" : "fail") + " (" + std::to_string(ks.checks.size()) + " checks)"};
  });

  // 5. statistical Ricci of the 5D fixture
  report(5, [] {
    const ManifoldDoc doc = load_fixture("kenmotsu5d");
    const FramePresentation m = doc.presentation();
    const BilinearForm ric = source_ricci(m, m.connection("nabla"), RicciSource::statistical);
    const bool ric_ok = ric == Poly(-4) * metric_form(m);
    const Poly sc = scalar(ric, m);
    CommandFlags f;
    f.sections = {8};
    const Report rep = run_command(doc, "audit", f);
    const Check* cr = rep.find("claim.ricci-xi-xi");
    const Check* cs = rep.find("claim.scalar");
    const bool flagged = cr && cs && cr->verdict == Verdict::mismatch && cs->verdict == Verdict::mismatch && cr->expected == "3*a + 1" &&
                         cs->expected == "3*a - 15";
    const Section os = cross_validate(kenmotsu5d_chart(0), m);
    const Check* oc = os.find("oracle.statistical-ricci.nabla");
    const bool oracle_ok = oc && oc->verdict == Verdict::pass;
    return Outcome{ric_ok && sc == Poly(-20) && flagged && oracle_ok,
                   std::string("Ric_S=-4g ") + (ric_ok ? "yes" : "no") + ", scalar=" + sc.str() + ", printed " +
                       (cr ? cr->expected : "?") + " / " + (cs ? cs->expected : "?") + " flagged " + (flagged ? "mismatch" : "no") +
                       ", oracle at a=0 dev " + (oc ? oc->value : "?")};
  });

  // 6. curvature identities at a = 0 and symbolic a
  report(6, [] {
    const ManifoldDoc doc = load_fixture("kenmotsu5d");
    const FramePresentation m = doc.presentation();
    const ContactTriple ct = *doc.contact_triple();
    const FramePresentation m0 = specialize(m, {{"a", 0}});
    const Section at0 = audit_curvature_identities(m0, m0.connection("nabla"), ct);
    const Section sym = audit_curvature_identities(m, m.connection("nabla"), ct);
    bool ok = true;
    std::string conv;
    for (const char* id : {"curvature-identity.xi-kernel", "curvature-identity.xi-first", "curvature-identity.xi-sectional"}) {
      const Check& c = at0.at(id);
      const bool one = c.verdict == Verdict::match && c.conventions.size() == 1;
      ok = ok && one;
      if (one) {
        if (conv.empty()) conv = c.conventions[0];
        ok = ok && conv == c.conventions[0];
      }
      ok = ok && sym.at(id).note.find('a') != std::string::npos;
    }
    return Outcome{ok, "items (i),(ii),(v) at a=0 hold under " + (conv.empty() ? std::string("none") : conv) + " only; symbolic residual " +
                           sym.at("curvature-identity.xi-kernel").note};
  });

  // 7. submanifolds of the 5D fixture
  report(7, [] {
    const ManifoldDoc doc = load_fixture("kenmotsu5d");
    const FramePresentation m = doc.presentation();
    const ContactTriple ct = *doc.contact_triple();
    const Connection& nabla = m.connection("nabla");
    const AdaptedSubmanifold inv = induce(m, nabla, {"e1", "e3", "xi"});
    const AdaptedSubmanifold umb = induce(m, nabla, {"e1", "e2", "e3", "e4"});
    const AdaptedSubmanifold anti = induce(m, nabla, {"e1", "e2", "xi"});
    const Umbilicity ui = umbilicity(inv), uu = umbilicity(umb);
    const Section gi = gauss_check(inv), gu = gauss_check(umb);
    const bool inv_ok = ui.totally_geodesic && phi_decompose(inv, ct).kind == PhiKind::invariant && gi.all_ok();
    const bool umb_ok = uu.umbilical && uu.mean == -ct.xi && gu.all_ok() && gu.at("gauss.nabla").note == "second fundamental form terms are nonzero";
    const bool anti_ok = phi_decompose(anti, ct).kind == PhiKind::anti_invariant;
    return Outcome{inv_ok && umb_ok && anti_ok, std::string("{e1,e3,xi} ") + (inv_ok ? "geodesic+invariant+Gauss" : "FAILED") +
                                                    "; {e1..e4} H=" + detail::vector_str(m, uu.mean) + (umb_ok ? " Gauss with correction" : " FAILED") +
                                                    "; {e1,e2,xi} " + to_string(phi_decompose(anti, ct).kind)};
  });

  // 8. soliton round trip over fixtures x kinds x sources x potentials
  report(8, [] {
    int solved = 0, bad = 0, skipped = 0;
    for (const auto& bf : builtin_fixtures) {
      const ManifoldDoc doc = parse(std::string(bf.text));
      const FramePresentation m = doc.presentation();
      const auto ct = doc.contact_triple();
      std::vector<VectorField> potentials{zero_field(m)};
      for (std::size_t i = 0; i < m.dim(); ++i) {
        VectorField v = zero_field(m);
        v[i] = Poly::constant(m.params, 1);
        potentials.push_back(v);
      }
      for (const auto& [key, conn] : m.connections)
        for (SolitonKind kind : {SolitonKind::ricci, SolitonKind::eta_ricci, SolitonKind::yamabe, SolitonKind::quasi_yamabe})
          for (RicciSource src : {RicciSource::nabla, RicciSource::nabla_star, RicciSource::statistical})
            for (const auto& v : potentials) {
              SolitonProblem p;
              p.kind = kind;
              p.potential = v;
              p.source = src;
              if (ct) p.xi = ct->xi;
              if (has_omega(kind) && !ct) {
                ++skipped;
                continue;
              }
              SolitonSolution s;
              try {
                s = solve_soliton(m, conn, p);
              } catch (const StructuralError&) {
                ++skipped;
                continue;
              }
              if (!s.consistent) continue;
              ++solved;
              if (!residual_vanishes(m, conn, p, s)) ++bad;
            }
    }
    return Outcome{bad == 0 && solved > 0, std::to_string(solved) + " consistent solves re-substituted, " + std::to_string(bad) +
                                               " nonzero residuals, " + std::to_string(skipped) + " combinations without an omega field"};
  });

  // 9. duality identities
  report(9, [] {
    int checks = 0, failed = 0;
    std::string where;
    for (const auto& bf : builtin_fixtures) {
      const FramePresentation m = parse(std::string(bf.text)).presentation();
      for (const auto& [key, conn] : m.connections) {
        const Section s = duality_section(m, key);
        for (const auto& c : s.checks) {
          if (c.verdict == Verdict::not_applicable) continue;
          ++checks;
          if (!c.ok()) {
            ++failed;
            where += " " + std::string(bf.name) + "/" + key + "/" + c.id;
          }
        }
      }
    }
    return Outcome{failed == 0, std::to_string(checks) + " identity checks, " + std::to_string(failed) + " failed" + where};
  });

  // 10. numerical oracle
  report(10, [] {
    const auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    std::string worst;
    for (const auto& chart : chart_fixtures()) {
      const Section s = cross_validate(chart);
      if (!s.all_ok()) {
        all = false;
        worst += " " + chart.name;
      }
    }
    const ChartFixture h = hyperbolic2_chart();
    const double ratio = convergence_ratio(h, fixture("hyperbolic2"), "nabla");
    FramePresentation bad = fixture("kenmotsu5d");
    bad.connections["nabla"].gamma(0, 4, 0) = Poly(2);
    const Section neg = cross_validate(kenmotsu5d_chart(0), bad);
    const Check& nc = neg.at("oracle.connection.nabla");
    const bool neg_ok = nc.verdict == Verdict::fail && nc.note.find("(e1,xi,e1)") != std::string::npos;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream d;
    d << "five charts " << (all ? "pass" : "fail:" + worst) << ", convergence ratio " << ratio << ", corrupted Gamma "
      << (neg_ok ? "detected " + nc.note : "NOT detected") << ", " << secs << " s";
    return Outcome{all && ratio >= 3.5 && ratio <= 4.5 && neg_ok && secs < 5, d.str()};
  });

  // 11. DSL round trip and deterministic reports
  report(11, [] {
    int files = 0;
    bool ok = true;
    std::string why;
    for (const auto& bf : builtin_fixtures) {
      const std::filesystem::path p = std::filesystem::path(STATMAN_FIXTURE_DIR) / (std::string(bf.name) + ".sm");
      const std::string text = read_file(p);
      ++files;
      if (text != bf.text) {
        ok = false;
        why += " " + p.filename().string() + " differs from built-in";
      }
      const ManifoldDoc d1 = parse(text);
      const std::string printed = print(d1);
      const ManifoldDoc d2 = parse(printed);
      if (!(d1 == d2) || print(d2) != printed) {
        ok = false;
        why += " " + std::string(bf.name) + " not a fixpoint";
      }
      const std::string r1 = emit(run_command(d1, "audit"), Format::machine);
      const std::string r2 = emit(run_command(parse(text), "audit"), Format::machine);
      if (r1 != r2) {
        ok = false;
        why += " " + std::string(bf.name) + " report not deterministic";
      }
    }
    return Outcome{ok && files == 5, std::to_string(files) + " fixture files parsed, fixpoint and byte-identical machine reports" + why};
  });

  return failures == 0 ? 0 : 1;
}
