#pragma once

/// Built-in presentations; byte-identical copies of fixtures/*.sm.

#include <array>
#include <string>
#include <string_view>

#include "statman/dsl.hpp"

namespace statman {

struct BuiltinFixture {
  std::string_view name;
  std::string_view text;
};

inline constexpr std::array<BuiltinFixture, 5> builtin_fixtures{{
    {"kenmotsu5d", R"sm(# Upper half-space v > 0 in R^5 with e_i = exp(-v) d/dx_i (i <= 4), xi = d/dv.
manifold "kenmotsu5d"
params a
frame e1 e2 e3 e4 xi
metric diag(1, 1, 1, 1, 1)
bracket [e1, xi] = e1
bracket [e2, xi] = e2
bracket [e3, xi] = e3
bracket [e4, xi] = e4
connection nabla {
  e1 e1 = -xi;
  e1 xi = e1;
  e2 e2 = -xi;
  e2 xi = e2;
  e3 e3 = -xi;
  e3 xi = e3;
  e4 e4 = -xi;
  e4 xi = e4;
  xi xi = a*xi;
}
contact {
  phi e1 = e3;
  phi e2 = e4;
  phi e3 = -e1;
  phi e4 = -e2;
  xi = xi;
}
submanifold invariant {
  tangent e1, e3, xi;
}
submanifold umbilical {
  tangent e1, e2, e3, e4;
}
submanifold anti_invariant {
  tangent e1, e2, xi;
}
submanifold generic {
  tangent e1, e2, e3, xi;
}
# Printed values under audit.
claim "dual-xi-xi" connection dual(nabla) xi xi = -2*a*xi
claim "stat-e1-e2-e1" curvature stat(nabla) (e1, e2) e1 = e2
claim "stat-e1-e2-e2" curvature stat(nabla) (e1, e2) e2 = -e1
claim "stat-e2-xi-xi" curvature stat(nabla) (e2, xi) xi = a*e2
claim "stat-e3-xi-e3" curvature stat(nabla) (e3, xi) e3 = a*xi
claim "ricci-e1-e1" ricci stat(nabla) (e1, e1) = -4
claim "ricci-xi-xi" ricci stat(nabla) (xi, xi) = 3*a + 1
claim "scalar" scalar stat(nabla) = 3*a - 15
claim "eta-ricci" soliton eta_ricci stat(nabla) xi lambda = 3 omega = -4*a - 4
claim "quasi-yamabe" soliton quasi_yamabe stat(nabla) xi lambda = 3*a - 16 omega = 1 - a
)sm"},
    {"hyperbolic2", R"sm(# Upper half-plane, g = y^-2 (dx^2 + dy^2), frame e1 = y d/dx, e2 = y d/dy.
manifold "hyperbolic2"
frame e1 e2
metric diag(1, 1)
bracket [e1, e2] = -e1
connection nabla {
  e1 e1 = 2*e2;
  e2 e1 = e1;
  e2 e2 = 2*e2;
}
claim "ricci-flat" ricci nabla (e1, e1) = 0
claim "scalar" scalar nabla = 0
claim "steady" soliton ricci nabla 0 lambda = 0
)sm"},
    {"flat2-einstein", R"sm(# R^2 with the coordinate frame e1 = d/dx, e2 = d/dy.
manifold "flat2-einstein"
frame e1 e2
metric diag(1, 1)
connection nabla {
  e1 e1 = -e2;
  e1 e2 = e1;
  e2 e1 = e1;
}
# The conjugate table as printed, kept as its own connection.
connection printed_star {
  e1 e1 = -e2;
  e1 e2 = -e1;
  e2 e1 = -e1;
}
claim "conjugate-e1-e1" connection dual(nabla) e1 e1 = -e2
claim "conjugate-e1-e2" connection dual(nabla) e1 e2 = -e1
claim "conjugate-e2-e1" connection dual(nabla) e2 e1 = -e1
claim "conjugate-e2-e2" connection dual(nabla) e2 e2 = 0
claim "scalar" scalar nabla = -2
claim "scalar-printed-star" scalar printed_star = -2
claim "einstein" einstein nabla = -1
claim "einstein-printed-star" einstein printed_star = -1
)sm"},
    {"flat3-einstein", R"sm(# R^3 with the coordinate frame.
manifold "flat3-einstein"
params b
frame e1 e2 e3
metric diag(1, 1, 1)
connection nabla {
  e1 e1 = b*e1;
  e1 e2 = 1/2*b*e2;
  e1 e3 = 1/2*b*e3;
  e2 e1 = 1/2*b*e2;
  e2 e2 = 1/2*b*e1;
  e3 e1 = 1/2*b*e3;
  e3 e3 = 1/2*b*e1;
}
claim "sectional" sectional nabla (e1, e2) = 1/4*b^2
claim "scalar" scalar nabla = 3/2*b^2
claim "einstein" einstein nabla = 1/2*b^2
)sm"},
    {"kenmotsu5d-sub-invariant", R"sm(# The invariant slice {e1, e3, xi} of kenmotsu5d as a standalone 3-dimensional manifold.
manifold "kenmotsu5d-sub-invariant"
params a
frame e1 e3 xi
metric diag(1, 1, 1)
bracket [e1, xi] = e1
bracket [e3, xi] = e3
connection nabla {
  e1 e1 = -xi;
  e1 xi = e1;
  e3 e3 = -xi;
  e3 xi = e3;
  xi xi = a*xi;
}
contact {
  phi e1 = e3;
  phi e3 = -e1;
  xi = xi;
}
)sm"},
}};

inline const BuiltinFixture* find_fixture(std::string_view name) {
  for (const auto& f : builtin_fixtures)
    if (f.name == name) return &f;
  return nullptr;
}

/// Parses a built-in by name; throws StructuralError for an unknown name.
inline ManifoldDoc load_fixture(std::string_view name) {
  const BuiltinFixture* f = find_fixture(name);
  if (!f) throw StructuralError("unknown fixture '" + std::string(name) + "'");
  return parse(std::string(f->text));
}

}  // namespace statman
