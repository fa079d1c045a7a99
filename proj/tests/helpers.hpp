#pragma once

#include <random>
#include <string>

#include "statman/fixtures.hpp"
#include "statman/frame_algebra.hpp"

namespace statman::testing {

inline FramePresentation fixture(const std::string& name) { return load_fixture(name).presentation(); }

inline VectorField unit(const FramePresentation& m, const std::string& name) {
  VectorField v(m.dim());
  for (auto& p : v.coeffs) p = m.zero();
  v[*m.index_of(name)] = Poly::constant(m.params, 1);
  return v;
}

inline VectorField zero(const FramePresentation& m) {
  VectorField v(m.dim());
  for (auto& p : v.coeffs) p = m.zero();
  return v;
}

/// Builds a vector from (coefficient, frame name) pairs.
inline VectorField combo(const FramePresentation& m, std::initializer_list<std::pair<Poly, std::string>> terms) {
  VectorField v = zero(m);
  for (const auto& [c, n] : terms) v[*m.index_of(n)] += c;
  return v;
}

inline Poly param(const FramePresentation& m, const std::string& n) { return Poly::variable(m.params, n); }

/// Orthonormal abelian presentation of dimension n.
inline FramePresentation flat(std::size_t n) {
  FramePresentation m;
  m.name = "flat" + std::to_string(n);
  for (std::size_t i = 0; i < n; ++i) m.frame.push_back("e" + std::to_string(i + 1));
  m.metric = Metric(n);
  for (std::size_t i = 0; i < n; ++i) m.metric(i, i) = 1;
  m.brackets = Brackets(n, m.zero());
  return m;
}

inline Connection random_connection(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> v(-3, 3);
  Connection c(n);
  for (auto& p : c.gamma.data()) p = Poly(v(rng));
  return c;
}

}  // namespace statman::testing
