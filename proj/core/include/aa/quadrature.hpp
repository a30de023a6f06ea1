#pragma once

#include <array>
#include <cstddef>

#include "aa/linalg.hpp"

namespace aa {

/// Nodes strictly inside (0, 1), stored in strictly decreasing order, with
/// positive weights summing to one.
struct QuadratureRule {
  Vector nodes;
  Vector weights;
};

/// Four-point Gauss-Legendre rule on [-1, 1]: roots of P_4 found by bisection,
/// weights 2 / ((1 - x^2) P_4'(x)^2). Ascending node order.
struct GaussLegendre4 {
  std::array<double, 4> nodes;
  std::array<double, 4> weights;
};

const GaussLegendre4& gauss_legendre4();

/// Composite rule on [0, 1]: the four-point rule mapped onto each of n/4
/// equal subintervals. Throws InvalidSize unless n is a positive multiple of 4.
QuadratureRule gauss_legendre_composite(std::size_t n);

}  // namespace aa
