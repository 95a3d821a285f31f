#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "gmfp/metric.hpp"
#include "gmfp/space.hpp"

namespace gmfp {

// The four binary tables read off a ternary table G:
//   b(x,y) = G(x,y,y)         c(x,y) = G(x,x,y) = b(y,x)
//   d(x,y) = max{b(x,y), c(x,y)}   e(x,y) = b(x,y) + c(x,y)
// b and c are almost metrics, d and e genuine metrics whenever G is a
// Mustafa-Sims metric.
struct DerivedMetrics {
  BinaryTable b;
  BinaryTable c;
  BinaryTable d;
  BinaryTable e;
};

struct SymmetryResult {
  bool symmetric = true;
  // Witness pair with b(x,y) != c(x,y) when not symmetric.
  int x = -1;
  int y = -1;
  double b_value = 0.0;
  double c_value = 0.0;
};

inline constexpr int kDefaultLipschitzCap = 12;

// Dhage axioms: reflexive-sufficient and tetrahedral
//   D(x,y,z) <= D(x,y,u) + D(x,u,z) + D(u,y,z).
// Symmetry holds structurally for TernaryTable.
ViolationList check_dmetric(const TernaryTable& t, double tol);

// Mustafa-Sims axioms: plane-sufficient (G(x,x,y)=0 only if x=y), the MS
// property G(x,x,y) <= G(x,y,z) checked only where y != z, and MS-triangular
// G(x,y,z) <= G(x,u,u) + G(u,y,z).
ViolationList check_gmetric(const TernaryTable& t, double tol);

// Throws "not-a-gmetric" unless check_gmetric(t, tol) is empty.
void require_gmetric(const TernaryTable& t, double tol);

// Every Mustafa-Sims metric is a Dhage metric; this runs the Dhage sweep on a
// verified G-table and reports whether it came back clean.
bool gmetric_is_dmetric(const TernaryTable& t, double tol);

DerivedMetrics derive_metrics(const TernaryTable& t, double tol);

// Consequence sweep for a verified G-table. All of these are theorems, so a
// witness flags a checker or generator bug; they are reported, not thrown.
//   c-sum-bound             G(x,y,z) <= G(x,x,y) + G(x,x,z)
//   bc-doubling             G(x,y,y) <= 2 G(x,x,y) and G(x,x,y) <= 2 G(x,y,y)
//   vertex-split            G(x,y,z) <= G(x,u,z) + G(u,y,z)
//   tetrahedral-two-thirds  G(x,y,z) <= (2/3)[G(x,u,y)+G(y,u,z)+G(z,u,x)]
//   b-star-bound            G(x,y,z) <= G(x,u,u)+G(y,u,u)+G(z,u,u)
ViolationList check_consequences(const TernaryTable& t, double tol);

// The pointwise chain between the derived tables:
//   b <= 2c, c <= d, d <= 2b, c <= 2b, b <= d, d <= 2c, d <= e, e <= 2d.
ViolationList check_chain(const TernaryTable& t, double tol);

// |G(x,y,z) - G(u,v,w)| <= d(x,u) + d(y,v) + d(z,w) over all sextuples, with
// d the derived metric. O(n^6); refuses carriers above the cap.
ViolationList check_lipschitz(const TernaryTable& t, double tol, int carrier_cap = kDefaultLipschitzCap);

// G(x,y,z) <= d(x,y) + d(y,z) over all triples, with d the derived metric.
ViolationList check_strong_triangle(const TernaryTable& t, double tol);

// b == c pointwise within tol; carries a witness pair otherwise.
SymmetryResult is_symmetric(const TernaryTable& t, double tol);

// G(x,y,z) = max{g(x,y), g(y,z), g(z,x)} for a metric g. The result is a
// symmetric Mustafa-Sims metric whose derived d equals g pointwise.
TernaryTable max_gmetric(const BinaryTable& g, double tol);

// Rejection-free generator: all-equal triples 0, doubled triples uniform in
// [1, 1.5], distinct triples uniform in [1.5, 2]. The bands force the MS
// property and MS-triangular outright, so every draw is a valid G-metric.
// Identical seeds give identical tables.
TernaryTable random_gmetric(int n, std::uint64_t seed);

// Uniform random selfmap of an n-point carrier; deterministic per seed.
FiniteMap random_selfmap(int n, std::uint64_t seed);

// Finite-prefix surrogate of the G-Cauchy condition: every triple drawn from
// the last `window` entries of seq has G <= eps.
bool g_cauchy_prefix(const TernaryTable& t, std::span<const int> seq, double eps, std::size_t window);

// Finite-prefix surrogate of G-convergence to x: every pair drawn from the
// last `window` entries of seq has G(.,.,x) <= eps.
bool g_converges_prefix(const TernaryTable& t, std::span<const int> seq, int x, double eps,
                        std::size_t window);

}  // namespace gmfp
