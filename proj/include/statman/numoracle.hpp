#pragma once

/**
 * @file numoracle.hpp
 * @brief Finite-difference cross-check of the exact engine on coordinate charts.
 *
 * Each chart carries closed-form coordinate data (frame fields, metric,
 * Christoffel symbols) and is compared against the frame presentation it
 * models. Nothing here calls the symbolic tensor code except to obtain the
 * exact values being checked.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "statman/errors.hpp"
#include "statman/fixtures.hpp"
#include "statman/frame_algebra.hpp"
#include "statman/report.hpp"

namespace statman {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Coordinate Christoffel symbols: gamma[k](i, j) = Gamma^k_ij.
using Christoffel = std::vector<Mat>;

struct ChartFixture {
  std::string name;
  std::size_t dim = 0;
  Vec lo, hi;  ///< sampling box
  /// Columns are the frame fields in coordinate components.
  std::function<Mat(const Vec&)> frame;
  std::function<Mat(const Vec&)> metric;
  std::map<std::string, std::function<Christoffel(const Vec&)>> connections;
  /// Linked presentation and the parameter values the chart realizes.
  std::string fixture;
  Assignment assignment;
};

namespace oracle_detail {

using Field = std::function<Vec(const Vec&)>;

inline Christoffel zero_christoffel(std::size_t n) { return Christoffel(n, Mat::Zero(n, n)); }

inline void require_interior(const ChartFixture& c, const Vec& x, double step) {
  for (std::size_t i = 0; i < c.dim; ++i)
    if (x[i] - 2 * step < c.lo[i] || x[i] + 2 * step > c.hi[i])
      throw DomainError("point too close to the boundary of chart '" + c.name + "'");
}

/// Directional derivative of a vector field along X at x: (DY) X.
inline Vec derivative(const Field& y, const Vec& x, const Vec& dir, double h) {
  Vec out = Vec::Zero(x.size());
  for (Eigen::Index m = 0; m < x.size(); ++m) {
    if (dir[m] == 0) continue;
    Vec xp = x, xm = x;
    xp[m] += h;
    xm[m] -= h;
    out += dir[m] * (y(xp) - y(xm)) / (2 * h);
  }
  return out;
}

inline Vec contract(const Christoffel& g, const Vec& x, const Vec& y) {
  Vec out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) out[static_cast<Eigen::Index>(k)] = x.dot(g[k] * y);
  return out;
}

inline Field frame_field(const ChartFixture& c, std::size_t i) {
  return [&c, i](const Vec& x) -> Vec { return c.frame(x).col(static_cast<Eigen::Index>(i)); };
}

inline Field lie_bracket(const Field& x, const Field& y, double h) {
  return [x, y, h](const Vec& p) -> Vec { return derivative(y, p, x(p), h) - derivative(x, p, y(p), h); };
}

inline Field covariant(const std::function<Christoffel(const Vec&)>& gamma, const Field& x, const Field& y, double h) {
  return [gamma, x, y, h](const Vec& p) -> Vec {
    const Vec xp = x(p);
    return derivative(y, p, xp, h) + contract(gamma(p), xp, y(p));
  };
}

/// Levi-Civita symbols from finite differences of the metric.
inline std::function<Christoffel(const Vec&)> metric_christoffel(const ChartFixture& c, double h) {
  return [&c, h](const Vec& p) -> Christoffel {
    const std::size_t n = c.dim;
    std::vector<Mat> dg(n);
    for (std::size_t m = 0; m < n; ++m) {
      Vec xp = p, xm = p;
      xp[static_cast<Eigen::Index>(m)] += h;
      xm[static_cast<Eigen::Index>(m)] -= h;
      dg[m] = (c.metric(xp) - c.metric(xm)) / (2 * h);
    }
    const Mat inv = c.metric(p).inverse();
    Christoffel g = zero_christoffel(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double s = 0;
          for (std::size_t l = 0; l < n; ++l) s += inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
          g[k](i, j) = s / 2;
        }
    return g;
  };
}

/// Conjugate symbols 2 Gamma^g - Gamma.
inline std::function<Christoffel(const Vec&)> conjugate_christoffel(const ChartFixture& c, const std::string& conn, double h) {
  auto lc = metric_christoffel(c, h);
  auto gamma = c.connections.at(conn);
  return [lc, gamma](const Vec& p) -> Christoffel {
    Christoffel a = lc(p), b = gamma(p);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = 2 * a[k] - b[k];
    return a;
  };
}

inline Vec curvature_at(const ChartFixture& c, const std::function<Christoffel(const Vec&)>& gamma, std::size_t i, std::size_t j,
                        std::size_t k, const Vec& p, double h) {
  const Field x = frame_field(c, i), y = frame_field(c, j), z = frame_field(c, k);
  const Field yz = covariant(gamma, y, z, h), xz = covariant(gamma, x, z, h);
  const Field xy = lie_bracket(x, y, h);
  return covariant(gamma, x, yz, h)(p) - covariant(gamma, y, xz, h)(p) - covariant(gamma, xy, z, h)(p);
}

inline double to_double(const Poly& p, const Assignment& a) { return static_cast<double>(p.eval(a)); }

/// Coordinate components of sum_k v_k e_k.
inline Vec frame_combination(const Mat& frame, const VectorField& v, const Assignment& a) {
  Vec out = Vec::Zero(frame.rows());
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out += to_double(v[k], a) * frame.col(static_cast<Eigen::Index>(k));
  return out;
}

/// Van der Corput radical inverse in the given base.
inline double radical_inverse(unsigned long index, unsigned base) {
  double r = 0, f = 1.0 / base;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return r;
}

}  // namespace oracle_detail

/// Halton points in the chart box; the seed offsets the sequence index.
inline std::vector<Vec> halton_points(const ChartFixture& c, std::size_t count, unsigned long seed = 0) {
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (c.dim > std::size(primes)) throw StructuralError("chart dimension too large for the point sampler");
  std::vector<Vec> pts;
  for (std::size_t s = 0; s < count; ++s) {
    Vec p(c.dim);
    for (std::size_t i = 0; i < c.dim; ++i) {
      const double u = oracle_detail::radical_inverse(seed + s + 1, primes[i]);
      // shrink by a margin so every point is comfortably interior
      const double lo = c.lo[i], hi = c.hi[i], pad = 0.05 * (hi - lo);
      p[static_cast<Eigen::Index>(i)] = lo + pad + u * (hi - lo - 2 * pad);
    }
    pts.push_back(p);
  }
  return pts;
}

/// [e_i, e_j] at a point in coordinate components.
inline Vec fd_bracket(const ChartFixture& c, std::size_t i, std::size_t j, const Vec& point, double step) {
  oracle_detail::require_interior(c, point, step);
  return oracle_detail::lie_bracket(oracle_detail::frame_field(c, i), oracle_detail::frame_field(c, j), step)(point);
}

/// R(e_i,e_j)e_k of a chart connection in coordinate components, standard sign.
inline Vec fd_curvature(const ChartFixture& c, const std::string& connection, std::size_t i, std::size_t j, std::size_t k, const Vec& point,
                        double step) {
  oracle_detail::require_interior(c, point, 3 * step);
  auto it = c.connections.find(connection);
  if (it == c.connections.end()) throw StructuralError("chart '" + c.name + "' has no connection '" + connection + "'");
  return oracle_detail::curvature_at(c, it->second, i, j, k, point, step);
}

// ---------------------------------------------------------------------------
// Charts

inline ChartFixture hyperbolic2_chart() {
  ChartFixture c;
  c.name = c.fixture = "hyperbolic2";
  c.dim = 2;
  c.lo = Vec::Constant(2, 0);
  c.hi = Vec::Constant(2, 0);
  c.lo << -1, 0.5;
  c.hi << 1, 2;
  c.frame = [](const Vec& p) -> Mat { return p[1] * Mat::Identity(2, 2); };
  c.metric = [](const Vec& p) -> Mat { return Mat::Identity(2, 2) / (p[1] * p[1]); };
  c.connections["nabla"] = [](const Vec& p) {
    Christoffel g = oracle_detail::zero_christoffel(2);
    g[1](0, 0) = 2 / p[1];
    g[1](1, 1) = 1 / p[1];
    return g;
  };
  return c;
}

inline ChartFixture flat2_chart() {
  ChartFixture c;
  c.name = c.fixture = "flat2-einstein";
  c.dim = 2;
  c.lo = Vec::Constant(2, -1);
  c.hi = Vec::Constant(2, 1);
  c.frame = [](const Vec&) -> Mat { return Mat::Identity(2, 2); };
  c.metric = [](const Vec&) -> Mat { return Mat::Identity(2, 2); };
  c.connections["nabla"] = [](const Vec&) {
    Christoffel g = oracle_detail::zero_christoffel(2);
    g[1](0, 0) = -1;
    g[0](0, 1) = g[0](1, 0) = 1;
    return g;
  };
  c.connections["printed_star"] = [](const Vec&) {
    Christoffel g = oracle_detail::zero_christoffel(2);
    g[1](0, 0) = -1;
    g[0](0, 1) = g[0](1, 0) = -1;
    return g;
  };
  return c;
}

inline ChartFixture flat3_chart(double b = 2) {
  ChartFixture c;
  c.name = c.fixture = "flat3-einstein";
  c.dim = 3;
  c.lo = Vec::Constant(3, -1);
  c.hi = Vec::Constant(3, 1);
  c.frame = [](const Vec&) -> Mat { return Mat::Identity(3, 3); };
  c.metric = [](const Vec&) -> Mat { return Mat::Identity(3, 3); };
  c.connections["nabla"] = [b](const Vec&) {
    Christoffel g = oracle_detail::zero_christoffel(3);
    g[0](0, 0) = b;
    g[1](0, 1) = g[1](1, 0) = b / 2;
    g[2](0, 2) = g[2](2, 0) = b / 2;
    g[0](1, 1) = g[0](2, 2) = b / 2;
    return g;
  };
  c.assignment = {{"b", Rational(static_cast<long long>(std::llround(b * 1024)), 1024)}};
  return c;
}

/// Warped chart (x_1..x_m, v) with e_i = exp(-v) d/dx_i and xi = d/dv.
inline ChartFixture kenmotsu_chart(std::size_t m, const std::string& fixture, double a) {
  ChartFixture c;
  c.name = c.fixture = fixture;
  const std::size_t n = m + 1;
  c.dim = n;
  c.lo = Vec::Constant(static_cast<Eigen::Index>(n), -1);
  c.hi = Vec::Constant(static_cast<Eigen::Index>(n), 1);
  c.lo[static_cast<Eigen::Index>(m)] = 0.5;
  c.hi[static_cast<Eigen::Index>(m)] = 1.5;
  c.frame = [n, m](const Vec& p) -> Mat {
    Mat f = Mat::Zero(n, n);
    for (std::size_t i = 0; i < m; ++i) f(i, i) = std::exp(-p[m]);
    f(m, m) = 1;
    return f;
  };
  c.metric = [n, m](const Vec& p) -> Mat {
    Mat g = Mat::Zero(n, n);
    for (std::size_t i = 0; i < m; ++i) g(i, i) = std::exp(2 * p[m]);
    g(m, m) = 1;
    return g;
  };
  c.connections["nabla"] = [n, m, a](const Vec& p) {
    Christoffel g = oracle_detail::zero_christoffel(n);
    for (std::size_t i = 0; i < m; ++i) {
      g[m](i, i) = -std::exp(2 * p[m]);
      g[i](i, m) = 1;
      g[i](m, i) = 1;
    }
    g[m](m, m) = a;
    return g;
  };
  c.assignment = {{"a", Rational(static_cast<long long>(std::llround(a * 1024)), 1024)}};
  return c;
}

inline ChartFixture kenmotsu5d_chart(double a = 0) { return kenmotsu_chart(4, "kenmotsu5d", a); }
inline ChartFixture kenmotsu3d_chart(double a = 0) { return kenmotsu_chart(2, "kenmotsu5d-sub-invariant", a); }

inline std::vector<ChartFixture> chart_fixtures() {
  return {kenmotsu5d_chart(), hyperbolic2_chart(), flat2_chart(), flat3_chart(), kenmotsu3d_chart()};
}

inline ChartFixture chart_fixture(const std::string& name) {
  for (auto& c : chart_fixtures())
    if (c.name == name) return c;
  throw StructuralError("no chart for fixture '" + name + "'");
}

// ---------------------------------------------------------------------------
// Cross-validation

struct OracleOptions {
  std::size_t points = 10;
  double step = 1e-4;
  double tol = 1e-5;
  unsigned long seed = 0;
};

namespace oracle_detail {

struct Worst {
  double deviation = 0;
  std::string where;
  void see(double exact, double approx, const std::string& at) {
    const double d = std::abs(approx - exact) / std::max(std::abs(exact), 1.0);
    if (where.empty() || d > deviation) {
      deviation = d;
      where = at;
    }
  }
  void see(const Vec& exact, const Vec& approx, const std::string& at) {
    for (Eigen::Index k = 0; k < exact.size(); ++k) see(exact[k], approx[k], at);
  }
};

inline std::string fmt(double d) {
  std::ostringstream o;
  o.precision(3);
  o << std::scientific << d;
  return o.str();
}

inline std::string triple(const FramePresentation& m, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + m.frame[i] + "," + m.frame[j] + "," + m.frame[k] + ")";
}

}  // namespace oracle_detail

/// Compares chart finite differences against `exact` at quasi-random points.
/// The exact presentation is specialized at the chart's parameter values.
inline Section cross_validate(const ChartFixture& c, const FramePresentation& exact_in, const OracleOptions& opt = {}) {
  using namespace oracle_detail;
  if (exact_in.dim() != c.dim) throw StructuralError("chart '" + c.name + "' does not match the presentation dimension");
  const FramePresentation m = specialize(exact_in, c.assignment);
  const Assignment& asg = c.assignment;
  const std::size_t n = c.dim;
  const auto pts = halton_points(c, opt.points, opt.seed);
  Section s{"oracle " + c.name, {}};

  Worst wb;
  for (const auto& p : pts) {
    const Mat f = c.frame(p);
    const Mat g = c.metric(p);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        VectorField exact(n);
        for (std::size_t k = 0; k < n; ++k) exact[k] = m.brackets(i, j, k);
        wb.see(frame_combination(f, exact, asg), fd_bracket(c, i, j, p, opt.step), "[" + m.frame[i] + "," + m.frame[j] + "]");
        wb.see(m.metric(i, j).convert_to<double>(), f.col(i).dot(g * f.col(j)), "g(" + m.frame[i] + "," + m.frame[j] + ")");
      }
  }
  s.add({"oracle.brackets", "[e_i,e_j] and g(e_i,e_j) against the chart", pass_if(wb.deviation <= opt.tol), fmt(wb.deviation), "<= " + fmt(opt.tol),
         {}, "worst at " + wb.where});

  for (const auto& [name, gamma] : c.connections) {
    const auto it = m.connections.find(name);
    if (it == m.connections.end()) continue;
    const Connection& conn = it->second;
    const CurvatureTensor r = curvature(m, conn);
    Worst wc, wr;
    for (const auto& p : pts) {
      const Mat f = c.frame(p);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Vec approx = covariant(gamma, frame_field(c, i), frame_field(c, j), opt.step)(p);
          const Vec exact = frame_combination(f, conn.apply(i, j), asg);
          for (std::size_t k = 0; k < n; ++k) {
            // project on the frame so the offending Gamma entry is named
            const Vec ca = f.colPivHouseholderQr().solve(approx), ce = f.colPivHouseholderQr().solve(exact);
            wc.see(ce[static_cast<Eigen::Index>(k)], ca[static_cast<Eigen::Index>(k)], triple(m, i, j, k));
          }
        }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            wr.see(frame_combination(f, r.apply(i, j, k), asg), curvature_at(c, gamma, i, j, k, p, opt.step), "R" + triple(m, i, j, k));
    }
    s.add({"oracle.connection." + name, "nabla_{e_i} e_j against the chart symbols", pass_if(wc.deviation <= opt.tol), fmt(wc.deviation),
           "<= " + fmt(opt.tol), {}, "worst at " + wc.where});
    s.add({"oracle.curvature." + name, "R(e_i,e_j)e_k by nested central differences", pass_if(wr.deviation <= opt.tol), fmt(wr.deviation),
           "<= " + fmt(opt.tol), {"standard"}, "worst at " + wr.where});

    // Statistical Ricci through the metric-derived conjugate; only meaningful
    // when the connection is statistical.
    if (!check_statistical(m, conn).passed()) continue;
    const Connection star = dual_connection(m, conn);
    const BilinearForm ric = ricci(statistical_curvature(r, curvature(m, star)));
    const auto gstar = conjugate_christoffel(c, name, opt.step);
    Worst ws;
    for (const auto& p : pts) {
      const Mat f = c.frame(p);
      const Mat coframe = f.inverse();
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          double tr = 0;
          for (std::size_t i = 0; i < n; ++i) {
            const Vec sv = (curvature_at(c, gamma, i, j, k, p, opt.step) + curvature_at(c, gstar, i, j, k, p, opt.step)) / 2;
            tr += coframe.row(static_cast<Eigen::Index>(i)).dot(sv);
          }
          ws.see(to_double(ric(j, k), asg), tr, "Ric_S(" + m.frame[j] + "," + m.frame[k] + ")");
        }
    }
    s.add({"oracle.statistical-ricci." + name, "trace of (R + R*)/2 with R* from the metric", pass_if(ws.deviation <= opt.tol), fmt(ws.deviation),
           "<= " + fmt(opt.tol), {"standard", "first-slot"}, "worst at " + ws.where});
  }
  return s;
}

/// Cross-validates against the linked built-in presentation.
inline Section cross_validate(const ChartFixture& c, const OracleOptions& opt = {}) {
  return cross_validate(c, load_fixture(c.fixture).presentation(), opt);
}

/// R(d_i,d_j)d_k on coordinate basis fields, coordinate components.
inline Vec fd_curvature_coordinate(const ChartFixture& c, const std::string& connection, std::size_t i, std::size_t j, std::size_t k,
                                   const Vec& point, double step) {
  using namespace oracle_detail;
  require_interior(c, point, 3 * step);
  auto it = c.connections.find(connection);
  if (it == c.connections.end()) throw StructuralError("chart '" + c.name + "' has no connection '" + connection + "'");
  const std::size_t n = c.dim;
  auto coord = [n](std::size_t a) -> Field {
    return [n, a](const Vec&) -> Vec { return Vec::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(a)); };
  };
  const auto& gamma = it->second;
  const Field x = coord(i), y = coord(j), z = coord(k);
  return covariant(gamma, x, covariant(gamma, y, z, step), step)(point) - covariant(gamma, y, covariant(gamma, x, z, step), step)(point);
}

/// Max deviation of the coordinate-field fd curvature from the exact
/// curvature (transported to coordinates) over the sample points.
inline double curvature_deviation(const ChartFixture& c, const FramePresentation& exact_in, const std::string& connection, double step,
                                  std::size_t points = 10) {
  using namespace oracle_detail;
  const FramePresentation m = specialize(exact_in, c.assignment);
  const CurvatureTensor r = curvature(m, m.connection(connection));
  const std::size_t n = c.dim;
  double worst = 0;
  for (const auto& p : halton_points(c, points)) {
    const Mat f = c.frame(p);
    const Mat finv = f.inverse();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          Vec exact = Vec::Zero(static_cast<Eigen::Index>(n));
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
              for (std::size_t d = 0; d < n; ++d) {
                const double w = finv(a, i) * finv(b, j) * finv(d, k);
                if (w != 0) exact += w * frame_combination(f, r.apply(a, b, d), c.assignment);
              }
          worst = std::max(worst, (fd_curvature_coordinate(c, connection, i, j, k, p, step) - exact).cwiseAbs().maxCoeff());
        }
  }
  return worst;
}

/// Ratio of curvature deviations at step h and h/2; about 4 for a second-order scheme.
inline double convergence_ratio(const ChartFixture& c, const FramePresentation& exact, const std::string& connection, double h = 1e-3) {
  return curvature_deviation(c, exact, connection, h) / curvature_deviation(c, exact, connection, h / 2);
}

}  // namespace statman
