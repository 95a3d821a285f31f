#pragma once

#include <span>

#include "gmfp/space.hpp"

namespace gmfp {

// Diameter of a point subset: the largest table value over all ordered pairs
// drawn from it. A singleton has diameter 0. Empty subsets are an error.
double diam(const BinaryTable& table, std::span<const int> subset);

// Axiom sweep for ordinary metrics: triangular, reflexive-sufficient and
// symmetric within tol. Violations are collected exhaustively; an empty list
// means the table is a metric.
ViolationList check_metric(const BinaryTable& table, double tol);

// Same sweep without the symmetry requirement (triangular and
// reflexive-sufficient only).
ViolationList check_almost_metric(const BinaryTable& table, double tol);

}  // namespace gmfp
