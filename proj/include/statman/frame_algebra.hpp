#pragma once

/**
 * @file frame_algebra.hpp
 * @brief Exact tensor calculus on frame presentations.
 *
 * A manifold is described by a global frame e_1..e_n with constant metric
 * g_ij, constant structure constants [e_i,e_j] = c^k_ij e_k and constant
 * connection coefficients nabla_{e_i} e_j = Gamma^k_ij e_k, all living in the
 * polynomial ring over the presentation's parameters. Directional
 * derivatives of such coefficients vanish, so every curvature quantity is a
 * finite polynomial expression in these tables.
 *
 * Index layouts:
 *   Brackets        (i,j,k)   = c^k_ij
 *   Connection      (i,j,k)   = Gamma^k_ij
 *   CurvatureTensor (i,j,k,l) = R^l_ijk, with R(e_i,e_j)e_k = R^l_ijk e_l
 *   BilinearForm    (i,j)     = B(e_i,e_j)
 *   Endomorphism    (j,k)     = component of e_k in phi(e_j)
 */

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "statman/errors.hpp"
#include "statman/ring.hpp"

namespace statman {

template <typename T, std::size_t Rank>
class FrameTensor {
 public:
  FrameTensor() = default;
  explicit FrameTensor(std::size_t n, const T& fill = T{}) : n_(n), data_(size_for(n), fill) {}

  std::size_t dim() const { return n_; }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  template <typename... I>
  T& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank, "wrong number of indices");
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }
  template <typename... I>
  const T& operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank, "wrong number of indices");
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  friend bool operator==(const FrameTensor& a, const FrameTensor& b) { return a.n_ == b.n_ && a.data_ == b.data_; }
  friend bool operator!=(const FrameTensor& a, const FrameTensor& b) { return !(a == b); }

 private:
  static std::size_t size_for(std::size_t n) {
    std::size_t s = 1;
    for (std::size_t r = 0; r < Rank; ++r) s *= n;
    return s;
  }
  std::size_t offset(const std::array<std::size_t, Rank>& idx) const {
    std::size_t o = 0;
    for (std::size_t r = 0; r < Rank; ++r) o = o * n_ + idx[r];
    return o;
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

template <std::size_t Rank>
bool is_zero(const FrameTensor<Poly, Rank>& t) {
  for (const auto& p : t.data())
    if (!p.is_zero()) return false;
  return true;
}

using Metric = FrameTensor<Rational, 2>;
using Brackets = FrameTensor<Poly, 3>;
using BilinearForm = FrameTensor<Poly, 2>;
using Endomorphism = FrameTensor<Poly, 2>;
/// (1,2)-tensor with the connection layout: (i,j,k) = e_k-component of T(e_i,e_j).
using TensorField12 = FrameTensor<Poly, 3>;

/// Frame-constant vector field.
struct VectorField {
  std::vector<Poly> coeffs;

  VectorField() = default;
  explicit VectorField(std::size_t n) : coeffs(n) {}
  explicit VectorField(std::vector<Poly> c) : coeffs(std::move(c)) {}

  static VectorField basis(std::size_t n, std::size_t i) {
    VectorField v(n);
    v.coeffs[i] = Poly(1);
    return v;
  }

  std::size_t size() const { return coeffs.size(); }
  const Poly& operator[](std::size_t i) const { return coeffs[i]; }
  Poly& operator[](std::size_t i) { return coeffs[i]; }

  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!c.is_zero()) return false;
    return true;
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend VectorField operator*(const Poly& s, const VectorField& a) {
    VectorField r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
  }
  VectorField operator-() const {
    VectorField r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = -coeffs[i];
    return r;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.coeffs == b.coeffs; }
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }
};

enum class ConnectionRole { given, dual, levi_civita, induced };

inline const char* to_string(ConnectionRole r) {
  switch (r) {
    case ConnectionRole::given: return "given";
    case ConnectionRole::dual: return "dual";
    case ConnectionRole::levi_civita: return "levi_civita";
    case ConnectionRole::induced: return "induced";
  }
  return "?";
}

struct Connection {
  ConnectionRole role = ConnectionRole::given;
  FrameTensor<Poly, 3> gamma;

  Connection() = default;
  explicit Connection(std::size_t n, ConnectionRole r = ConnectionRole::given) : role(r), gamma(n) {}

  std::size_t dim() const { return gamma.dim(); }

  /// nabla_{e_i} e_j
  VectorField apply(std::size_t i, std::size_t j) const {
    VectorField v(dim());
    for (std::size_t k = 0; k < dim(); ++k) v[k] = gamma(i, j, k);
    return v;
  }

  /// nabla_X Y for frame-constant X, Y.
  VectorField apply(const VectorField& x, const VectorField& y) const {
    VectorField v(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        const Poly w = x[i] * y[j];
        for (std::size_t k = 0; k < dim(); ++k)
          if (!gamma(i, j, k).is_zero()) v[k] += w * gamma(i, j, k);
      }
    }
    return v;
  }

  /// Coefficient tables compared entrywise; the role tag is bookkeeping.
  friend bool operator==(const Connection& a, const Connection& b) { return a.gamma == b.gamma; }
  friend bool operator!=(const Connection& a, const Connection& b) { return !(a == b); }
};

struct CurvatureTensor {
  FrameTensor<Poly, 4> entries;

  CurvatureTensor() = default;
  explicit CurvatureTensor(std::size_t n) : entries(n) {}

  std::size_t dim() const { return entries.dim(); }
  const Poly& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const { return entries(i, j, k, l); }
  Poly& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return entries(i, j, k, l); }

  /// R(e_i,e_j)e_k
  VectorField apply(std::size_t i, std::size_t j, std::size_t k) const {
    VectorField v(dim());
    for (std::size_t l = 0; l < dim(); ++l) v[l] = entries(i, j, k, l);
    return v;
  }

  /// R(X,Y)Z, trilinear over frame-constant fields.
  VectorField apply(const VectorField& x, const VectorField& y, const VectorField& z) const {
    const std::size_t n = dim();
    VectorField v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j].is_zero()) continue;
        const Poly xy = x[i] * y[j];
        for (std::size_t k = 0; k < n; ++k) {
          if (z[k].is_zero()) continue;
          const Poly w = xy * z[k];
          for (std::size_t l = 0; l < n; ++l)
            if (!entries(i, j, k, l).is_zero()) v[l] += w * entries(i, j, k, l);
        }
      }
    }
    return v;
  }

  bool is_zero() const { return statman::is_zero(entries); }

  friend bool operator==(const CurvatureTensor& a, const CurvatureTensor& b) { return a.entries == b.entries; }
  friend bool operator!=(const CurvatureTensor& a, const CurvatureTensor& b) { return !(a == b); }
};

struct FramePresentation {
  std::string name;
  ParamsPtr params = make_params({});
  std::vector<std::string> frame;
  Metric metric;
  Brackets brackets;
  std::map<std::string, Connection> connections;

  std::size_t dim() const { return frame.size(); }

  std::optional<std::size_t> index_of(const std::string& frame_name) const {
    for (std::size_t i = 0; i < frame.size(); ++i)
      if (frame[i] == frame_name) return i;
    return std::nullopt;
  }

  const Connection& connection(const std::string& key) const {
    auto it = connections.find(key);
    if (it == connections.end()) throw StructuralError("presentation '" + name + "' has no connection named '" + key + "'");
    return it->second;
  }

  Poly zero() const { return Poly::constant(params, 0); }
};

enum class CurvatureSign { standard, reversed };

inline const char* to_string(CurvatureSign s) { return s == CurvatureSign::standard ? "standard" : "reversed"; }

enum class RicciTrace { first_slot, last_pairing };

inline const char* to_string(RicciTrace t) { return t == RicciTrace::first_slot ? "first-slot" : "last-pairing"; }

// ---------------------------------------------------------------------------
// Metric helpers

/// Exact inverse of the constant metric (Gauss-Jordan over the rationals).
inline Metric inverse_metric(const FramePresentation& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m.metric(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw StructuralError("metric of '" + m.name + "' is singular");
    std::swap(a[pivot], a[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  Metric inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a[i][n + j];
  return inv;
}

inline Poly inner(const FramePresentation& m, const VectorField& u, const VectorField& v) {
  Poly total = m.zero();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (v[j].is_zero() || m.metric(i, j) == 0) continue;
      total += (u[i] * v[j]).scaled(m.metric(i, j));
    }
  }
  return total;
}

inline BilinearForm metric_form(const FramePresentation& m) {
  BilinearForm g(m.dim(), m.zero());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) g(i, j) = Poly::constant(m.params, m.metric(i, j));
  return g;
}

/// eta = g(., xi) as a covector.
inline std::vector<Poly> dual_covector(const FramePresentation& m, const VectorField& xi) {
  std::vector<Poly> eta(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) eta[i] = inner(m, VectorField::basis(m.dim(), i), xi);
  return eta;
}

inline BilinearForm outer(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  BilinearForm f(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) f(i, j) = a[i] * b[j];
  return f;
}

inline BilinearForm operator+(const BilinearForm& a, const BilinearForm& b) {
  BilinearForm r(a.dim());
  for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = a.data()[i] + b.data()[i];
  return r;
}
inline BilinearForm operator-(const BilinearForm& a, const BilinearForm& b) {
  BilinearForm r(a.dim());
  for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = a.data()[i] - b.data()[i];
  return r;
}
inline BilinearForm operator*(const Poly& s, const BilinearForm& a) {
  BilinearForm r(a.dim());
  for (std::size_t i = 0; i < a.data().size(); ++i) r.data()[i] = s * a.data()[i];
  return r;
}

inline VectorField bracket(const FramePresentation& m, const VectorField& x, const VectorField& y) {
  const std::size_t n = m.dim();
  VectorField v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const Poly w = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!m.brackets(i, j, k).is_zero()) v[k] += w * m.brackets(i, j, k);
    }
  }
  return v;
}

/// Lowered coefficients g(nabla_{e_i} e_j, e_k).
inline FrameTensor<Poly, 3> lowered(const FramePresentation& m, const Connection& c) {
  const std::size_t n = m.dim();
  FrameTensor<Poly, 3> out(n, m.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Poly s = m.zero();
        for (std::size_t l = 0; l < n; ++l)
          if (m.metric(l, k) != 0) s += c.gamma(i, j, l).scaled(m.metric(l, k));
        out(i, j, k) = s;
      }
  return out;
}

/// Raises the last slot of a lowered table with the inverse metric.
inline Connection raised(const FramePresentation& m, const FrameTensor<Poly, 3>& low, ConnectionRole role) {
  const std::size_t n = m.dim();
  const Metric inv = inverse_metric(m);
  Connection c(n, role);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        Poly s = m.zero();
        for (std::size_t k = 0; k < n; ++k)
          if (inv(l, k) != 0) s += low(i, j, k).scaled(inv(l, k));
        c.gamma(i, j, l) = s;
      }
  return c;
}

// ---------------------------------------------------------------------------
// Presentation validation

/// Cyclic Jacobi sum: (i,j,l,k) = e_k-component of
/// [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j].
inline FrameTensor<Poly, 4> jacobi_residual(const FramePresentation& m) {
  const std::size_t n = m.dim();
  const auto& c = m.brackets;
  FrameTensor<Poly, 4> out(n, m.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
          Poly s = m.zero();
          for (std::size_t p = 0; p < n; ++p) {
            s += c(i, j, p) * c(p, l, k);
            s += c(j, l, p) * c(p, i, k);
            s += c(l, i, p) * c(p, j, k);
          }
          out(i, j, l, k) = s;
        }
  return out;
}

/// Throws StructuralError unless the metric is symmetric and invertible, the
/// brackets are antisymmetric, satisfy Jacobi, and every table is n-dimensional.
inline void validate(const FramePresentation& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw StructuralError("presentation '" + m.name + "' has an empty frame");
  if (m.metric.dim() != n || m.brackets.dim() != n) throw StructuralError("table dimensions do not match the frame size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m.metric(i, j) != m.metric(j, i)) throw StructuralError("metric is not symmetric at (" + m.frame[i] + ", " + m.frame[j] + ")");
  (void)inverse_metric(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (m.brackets(i, j, k) != -m.brackets(j, i, k))
          throw StructuralError("bracket [" + m.frame[i] + ", " + m.frame[j] + "] is not antisymmetric");
  const auto jac = jacobi_residual(m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k)
          if (!jac(i, j, l, k).is_zero())
            throw StructuralError("Jacobi identity fails on (" + m.frame[i] + ", " + m.frame[j] + ", " + m.frame[l] + ")");
  for (const auto& [key, c] : m.connections)
    if (c.dim() != n) throw StructuralError("connection '" + key + "' has the wrong dimension");
}

/// Substitutes parameter values throughout; the parameter list is kept.
inline FramePresentation specialize(const FramePresentation& m, const Assignment& assignment) {
  FramePresentation r = m;
  for (auto& p : r.brackets.data()) p = p.substitute(assignment);
  for (auto& [key, c] : r.connections)
    for (auto& p : c.gamma.data()) p = p.substitute(assignment);
  return r;
}

// ---------------------------------------------------------------------------
// Connections

/// Torsion table: (i,j,k) = e_k-component of nabla_i e_j - nabla_j e_i - [e_i,e_j].
inline TensorField12 torsion(const FramePresentation& m, const Connection& c) {
  const std::size_t n = m.dim();
  TensorField12 t(n, m.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t(i, j, k) = c.gamma(i, j, k) - c.gamma(j, i, k) - m.brackets(i, j, k);
  return t;
}

/// Levi-Civita connection from the constant-metric Koszul identity
///   2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
inline Connection levi_civita(const FramePresentation& m) {
  const std::size_t n = m.dim();
  FrameTensor<Poly, 3> cl(n, m.zero());  // g([e_i,e_j], e_k)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Poly s = m.zero();
        for (std::size_t p = 0; p < n; ++p)
          if (m.metric(p, k) != 0) s += m.brackets(i, j, p).scaled(m.metric(p, k));
        cl(i, j, k) = s;
      }
  FrameTensor<Poly, 3> low(n, m.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) low(i, j, k) = (cl(i, j, k) - cl(j, k, i) + cl(k, i, j)).scaled(Rational(1, 2));
  Connection lc = raised(m, low, ConnectionRole::levi_civita);

  if (!is_zero(torsion(m, lc))) throw std::logic_error("Koszul connection is not torsion-free");
  const auto lo = lowered(m, lc);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(lo(i, j, k) + lo(i, k, j)).is_zero()) throw std::logic_error("Koszul connection is not metric");
  return lc;
}

/// Conjugate connection defined by g(nabla_i e_j, e_k) + g(e_j, nabla*_i e_k) = 0
/// (the metric is constant on the frame).
inline Connection dual_connection(const FramePresentation& m, const Connection& nabla) {
  const std::size_t n = m.dim();
  if (nabla.dim() != n) throw StructuralError("connection dimension does not match the presentation");
  const auto lo = lowered(m, nabla);
  FrameTensor<Poly, 3> star(n, m.zero());  // g(nabla*_i e_k, e_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) star(i, k, j) = -lo(i, j, k);
  return raised(m, star, ConnectionRole::dual);
}

inline TensorField12 difference_tensor(const Connection& nabla, const Connection& nabla_g) {
  if (nabla.dim() != nabla_g.dim()) throw StructuralError("connections have different dimensions");
  TensorField12 k(nabla.dim());
  for (std::size_t i = 0; i < k.data().size(); ++i) k.data()[i] = nabla.gamma.data()[i] - nabla_g.gamma.data()[i];
  return k;
}

inline Connection add(const Connection& base, const TensorField12& k, ConnectionRole role) {
  Connection c(base.dim(), role);
  for (std::size_t i = 0; i < k.data().size(); ++i) c.gamma.data()[i] = base.gamma.data()[i] + k.data()[i];
  return c;
}

/// One nonzero residual of an identity evaluated over frame indices.
struct Residual {
  std::vector<std::size_t> index;
  Poly value;
};

struct StatisticalCheck {
  std::vector<Residual> torsion;
  std::vector<Residual> codazzi;
  std::vector<Residual> symmetry;

  bool torsion_free() const { return torsion.empty(); }
  bool codazzi_symmetric() const { return codazzi.empty(); }
  bool totally_symmetric() const { return symmetry.empty(); }
  bool passed() const { return torsion_free() && codazzi_symmetric() && totally_symmetric(); }
};

/// Torsion-freeness, Codazzi symmetry of nabla g and total symmetry of
/// g(K_X Y, Z) with K = nabla - nabla^g. Failures are findings.
inline StatisticalCheck check_statistical(const FramePresentation& m, const Connection& nabla) {
  const std::size_t n = m.dim();
  StatisticalCheck out;
  const auto t = torsion(m, nabla);
  const auto lo = lowered(m, nabla);
  const auto k_low = lowered(m, Connection{[&] {
                                 Connection d(n);
                                 d.gamma = difference_tensor(nabla, levi_civita(m));
                                 return d;
                               }()});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i < j && !t(i, j, k).is_zero()) out.torsion.push_back({{i, j, k}, t(i, j, k)});
        // (nabla_i g)(j,k) = -g(nabla_i e_j, e_k) - g(e_j, nabla_i e_k)
        const Poly di = -lo(i, j, k) - lo(i, k, j);
        const Poly dj = -lo(j, i, k) - lo(j, k, i);
        if (i < j && !(di - dj).is_zero()) out.codazzi.push_back({{i, j, k}, di - dj});
        const Poly swap_ij = k_low(i, j, k) - k_low(j, i, k);
        const Poly swap_jk = k_low(i, j, k) - k_low(i, k, j);
        if (!swap_ij.is_zero()) out.symmetry.push_back({{i, j, k}, swap_ij});
        else if (!swap_jk.is_zero()) out.symmetry.push_back({{i, j, k}, swap_jk});
      }
  return out;
}

// ---------------------------------------------------------------------------
// Curvature

/// R(e_i,e_j)e_k = nabla_i nabla_j e_k - nabla_j nabla_i e_k - c^m_ij nabla_m e_k.
inline CurvatureTensor curvature(const FramePresentation& m, const Connection& c, CurvatureSign sign = CurvatureSign::standard) {
  const std::size_t n = m.dim();
  if (c.dim() != n) throw StructuralError("connection dimension does not match the presentation");
  CurvatureTensor r(n);
  const auto& g = c.gamma;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Poly s = m.zero();
          for (std::size_t p = 0; p < n; ++p) {
            if (!g(j, k, p).is_zero() && !g(i, p, l).is_zero()) s += g(j, k, p) * g(i, p, l);
            if (!g(i, k, p).is_zero() && !g(j, p, l).is_zero()) s -= g(i, k, p) * g(j, p, l);
            if (!m.brackets(i, j, p).is_zero() && !g(p, k, l).is_zero()) s -= m.brackets(i, j, p) * g(p, k, l);
          }
          r(i, j, k, l) = sign == CurvatureSign::standard ? s : -s;
        }
  return r;
}

inline CurvatureTensor operator+(const CurvatureTensor& a, const CurvatureTensor& b) {
  if (a.dim() != b.dim()) throw StructuralError("curvature tensors have different dimensions");
  CurvatureTensor r(a.dim());
  for (std::size_t i = 0; i < a.entries.data().size(); ++i) r.entries.data()[i] = a.entries.data()[i] + b.entries.data()[i];
  return r;
}

/// S = (R + R*) / 2 entrywise.
inline CurvatureTensor statistical_curvature(const CurvatureTensor& r, const CurvatureTensor& r_star) {
  CurvatureTensor s = r + r_star;
  for (auto& p : s.entries.data()) p = p.scaled(Rational(1, 2));
  return s;
}

/// Ric(e_j,e_k) = sum_i R^i_ijk, the trace of X -> R(X,Y)Z.
inline BilinearForm ricci(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  BilinearForm ric(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      Poly s;
      for (std::size_t i = 0; i < n; ++i) s += r(i, j, k, i);
      ric(j, k) = s;
    }
  return ric;
}

/// Ricci under either trace convention. The last-pairing trace is
/// Ric(Y,Z) = sum_ab g^ab g(R(Y,e_a)e_b, Z); it agrees with the first-slot
/// trace for metric connections.
inline BilinearForm ricci(const FramePresentation& m, const CurvatureTensor& r, RicciTrace trace) {
  if (trace == RicciTrace::first_slot) return ricci(r);
  const std::size_t n = m.dim();
  const Metric inv = inverse_metric(m);
  BilinearForm ric(n, m.zero());
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      Poly s = m.zero();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (inv(a, b) == 0) continue;
          for (std::size_t l = 0; l < n; ++l)
            if (m.metric(l, k) != 0) s += r(j, a, b, l).scaled(inv(a, b) * m.metric(l, k));
        }
      ric(j, k) = s;
    }
  return ric;
}

/// Trace with respect to the metric: sum_ij g^ij B(e_i,e_j).
inline Poly scalar(const BilinearForm& ric, const FramePresentation& m) {
  const Metric inv = inverse_metric(m);
  Poly s = m.zero();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (inv(i, j) != 0) s += ric(i, j).scaled(inv(i, j));
  return s;
}

/// K(X^Y) = g(S(X,Y)Y, X) / (g(X,X)g(Y,Y) - g(X,Y)^2).
inline RingQuotient sectional(const FramePresentation& m, const CurvatureTensor& s, const VectorField& x, const VectorField& y) {
  const Poly gram = inner(m, x, x) * inner(m, y, y) - inner(m, x, y) * inner(m, x, y);
  if (gram.is_zero()) throw DomainError("vectors do not span a 2-plane");
  return RingQuotient(inner(m, s.apply(x, y, y), x), gram);
}

struct LieDerivative {
  /// -g([V,X],Y) - g(X,[V,Y])
  BilinearForm bracket_form;
  /// g(nabla_X V, Y) + g(X, nabla*_Y V), present when a connection was supplied.
  std::optional<BilinearForm> dual_form;

  bool forms_agree() const { return !dual_form || *dual_form == bracket_form; }
};

inline LieDerivative lie_derivative_metric(const FramePresentation& m, const VectorField& v, const Connection* nabla = nullptr) {
  const std::size_t n = m.dim();
  if (v.size() != n) throw StructuralError("vector field length does not match the frame size");
  LieDerivative out{BilinearForm(n, m.zero()), std::nullopt};
  std::vector<VectorField> vb(n);
  for (std::size_t i = 0; i < n; ++i) vb[i] = bracket(m, v, VectorField::basis(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.bracket_form(i, j) = -inner(m, vb[i], VectorField::basis(n, j)) - inner(m, VectorField::basis(n, i), vb[j]);
  if (nabla != nullptr) {
    const Connection star = dual_connection(m, *nabla);
    BilinearForm d(n, m.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const VectorField ei = VectorField::basis(n, i);
        const VectorField ej = VectorField::basis(n, j);
        d(i, j) = inner(m, nabla->apply(ei, v), ej) + inner(m, ei, star.apply(ej, v));
      }
    out.dual_form = std::move(d);
  }
  return out;
}

/// Returns c with R(X,Y)Z = c(g(Y,Z)X - g(X,Z)Y) on every frame triple, if any.
inline std::optional<RingQuotient> constant_curvature_check(const FramePresentation& m, const CurvatureTensor& r) {
  const std::size_t n = m.dim();
  if (n < 2) throw StructuralError("constant curvature needs dimension at least 2");
  auto model = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Rational v = 0;
    if (l == i) v += m.metric(j, k);
    if (l == j) v -= m.metric(i, k);
    return v;
  };
  std::optional<Poly> c;
  for (std::size_t i = 0; i < n && !c; ++i)
    for (std::size_t j = 0; j < n && !c; ++j)
      for (std::size_t k = 0; k < n && !c; ++k)
        for (std::size_t l = 0; l < n && !c; ++l) {
          const Rational w = model(i, j, k, l);
          if (w != 0) c = r(i, j, k, l).scaled(Rational(1) / w);
        }
  if (!c) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (r(i, j, k, l) != c->scaled(model(i, j, k, l))) return std::nullopt;
  return RingQuotient(*c);
}

// ---------------------------------------------------------------------------
// Exact fitting of a bilinear form to a span of others

using QuotientForm = FrameTensor<RingQuotient, 2>;

inline bool is_zero(const QuotientForm& f) {
  for (const auto& q : f.data())
    if (!q.is_zero()) return false;
  return true;
}

struct SpanFit {
  std::vector<RingQuotient> coeffs;
  /// target - sum coeffs[k] * basis[k]
  QuotientForm residual;
  bool exact() const { return is_zero(residual); }
};

/// Frobenius projection of `target` onto span(basis) solved exactly by Cramer's
/// rule over the quotient ring. Throws StructuralError when the basis forms are
/// linearly dependent (singular Gram matrix).
inline SpanFit fit_span(const BilinearForm& target, const std::vector<BilinearForm>& basis) {
  const std::size_t k = basis.size();
  auto frob = [](const BilinearForm& a, const BilinearForm& b) {
    Poly s;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += a.data()[i] * b.data()[i];
    return s;
  };
  std::vector<std::vector<RingQuotient>> gram(k, std::vector<RingQuotient>(k));
  std::vector<RingQuotient> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    rhs[i] = RingQuotient(frob(basis[i], target));
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = RingQuotient(frob(basis[i], basis[j]));
  }
  // Gaussian elimination over the quotient ring (k is 1 or 2 in practice).
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && gram[pivot][col].is_zero()) ++pivot;
    if (pivot == k) throw StructuralError("fitting forms are linearly dependent");
    std::swap(gram[pivot], gram[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || gram[r][col].is_zero()) continue;
      const RingQuotient f = gram[r][col] / gram[col][col];
      for (std::size_t c = col; c < k; ++c) gram[r][c] = gram[r][c] - f * gram[col][c];
      rhs[r] = rhs[r] - f * rhs[col];
    }
  }
  SpanFit fit;
  for (std::size_t i = 0; i < k; ++i) fit.coeffs.push_back(rhs[i] / gram[i][i]);
  fit.residual = QuotientForm(target.dim());
  for (std::size_t e = 0; e < target.data().size(); ++e) {
    RingQuotient r(target.data()[e]);
    for (std::size_t i = 0; i < k; ++i)
      if (!basis[i].data()[e].is_zero()) r = r - fit.coeffs[i] * RingQuotient(basis[i].data()[e]);
    fit.residual.data()[e] = r;
  }
  return fit;
}

}  // namespace statman
