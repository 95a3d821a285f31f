#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmfp/comparison.hpp"
#include "gmfp/gmetric.hpp"
#include "gmfp/space.hpp"

namespace gmfp {

// Orbital n-segment [x, Tx, ..., T^n x], repetitions preserved.
template <class Point, class Map>
std::vector<Point> orbital_segment(Map&& T, Point x, int n) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(x);
  Point cur = x;
  for (int i = 0; i < n; ++i) {
    cur = T(cur);
    out.push_back(cur);
  }
  return out;
}

// Diameter of a point list under a distance callable: max over ordered pairs.
template <class Point, class Dist>
double diam_points(Dist&& d, std::span<const Point> pts) {
  if (pts.empty()) throw Error(errid::empty_set_diameter, "diameter of the empty set");
  double best = 0.0;
  for (const Point& x : pts)
    for (const Point& y : pts) best = std::max(best, static_cast<double>(d(x, y)));
  return best;
}

// A(x,y) = diam{x, Tx, y, Ty}.
template <class Point, class Dist, class Map>
double big_A(Dist&& d, Map&& T, Point x, Point y) {
  const std::array<Point, 4> pts{x, T(x), y, T(y)};
  return diam_points<Point>(d, std::span<const Point>(pts));
}

// B(x,y) = diam{x, Tx, T^2 x, y, Ty}. The T^2 x term is what makes the
// contraction classes built on it anticipative.
template <class Point, class Dist, class Map>
double big_B(Dist&& d, Map&& T, Point x, Point y) {
  const Point tx = T(x);
  const std::array<Point, 5> pts{x, tx, T(tx), y, T(y)};
  return diam_points<Point>(d, std::span<const Point>(pts));
}

// The P and Q functionals are maxima over fixed lists of one- and two-leg
// distance sums on the tuple (x, Tx, T^2 x, y, Ty). The lists are kept as
// data so they can be audited entry by entry.
namespace terms {

enum PointSlot : int { X = 0, TX = 1, T2X = 2, Y = 3, TY = 4 };

struct PairSum {
  int a0, a1;        // first leg d(p[a0], p[a1])
  int b0 = 0, b1 = 0;  // optional second leg
  bool two = false;
};

inline constexpr std::array<PairSum, 7> kP = {{
    {X, TX, TX, Y, true},      // d(x,Tx)   + d(Tx,y)
    {T2X, Y, T2X, TY, true},   // d(T2x,y)  + d(T2x,Ty)
    {TX, T2X, TX, Y, true},    // d(Tx,T2x) + d(Tx,y)
    {TX, Y, TX, TY, true},     // d(Tx,y)   + d(Tx,Ty)
    {X, Y},                    // d(x,y)
    {X, TY},                   // d(x,Ty)
    {Y, TY},                   // d(y,Ty)
}};

inline constexpr std::array<PairSum, 6> kQ = {{
    {X, TX, TX, T2X, true},    // d(x,Tx)   + d(Tx,T2x)
    {X, TX, TX, Y, true},      // d(x,Tx)   + d(Tx,y)
    {T2X, TY, Y, TY, true},    // d(T2x,Ty) + d(y,Ty)
    {TX, T2X, T2X, TY, true},  // d(Tx,T2x) + d(T2x,Ty)
    {X, Y},                    // d(x,y)
    {X, TY},                   // d(x,Ty)
}};

// The M functional's fifteen G-terms on the tuple (x, y, z, Tx, T2x, Ty, Tz).
enum GSlot : int { GX = 0, GY = 1, GZ = 2, GTX = 3, GT2X = 4, GTY = 5, GTZ = 6 };

struct Triple {
  int a, b, c;
};

inline constexpr std::array<Triple, 15> kM = {{
    {GX, GTX, GY},    // G(x,Tx,y)
    {GY, GT2X, GTY},  // G(y,T2x,Ty)
    {GTX, GT2X, GTY}, // G(Tx,T2x,Ty)
    {GY, GTX, GTY},   // G(y,Tx,Ty)
    {GX, GTX, GZ},    // G(x,Tx,z)
    {GZ, GT2X, GTZ},  // G(z,T2x,Tz)
    {GTX, GT2X, GTZ}, // G(Tx,T2x,Tz)
    {GZ, GTX, GTY},   // G(z,Tx,Ty)
    {GX, GY, GZ},     // G(x,y,z)
    {GX, GTX, GTX},   // G(x,Tx,Tx)
    {GY, GTY, GTY},   // G(y,Ty,Ty)
    {GZ, GTZ, GTZ},   // G(z,Tz,Tz)
    {GZ, GTX, GTX},   // G(z,Tx,Tx)
    {GX, GTY, GTY},   // G(x,Ty,Ty)
    {GY, GTZ, GTZ},   // G(y,Tz,Tz)
}};

}  // namespace terms

template <class Point, class Dist, class Map>
double big_P(Dist&& d, Map&& T, Point x, Point y) {
  const Point tx = T(x);
  const std::array<Point, 5> p{x, tx, T(tx), y, T(y)};
  double best = 0.0;
  for (const auto& t : terms::kP) {
    double v = d(p[t.a0], p[t.a1]);
    if (t.two) v += d(p[t.b0], p[t.b1]);
    best = std::max(best, v);
  }
  return best;
}

template <class Point, class Dist, class Map>
double big_Q(Dist&& d, Map&& T, Point x, Point y) {
  const Point tx = T(x);
  const std::array<Point, 5> p{x, tx, T(tx), y, T(y)};
  double best = 0.0;
  for (const auto& t : terms::kQ) {
    double v = d(p[t.a0], p[t.a1]);
    if (t.two) v += d(p[t.b0], p[t.b1]);
    best = std::max(best, v);
  }
  return best;
}

// M(x,y,z): max of the fifteen G-terms. Requires a verified G-table.
double big_M(const TernaryTable& G, const FiniteMap& T, int x, int y, int z, double tol);

enum class ContractionClass {
  ciric_alpha,         // d(Tx,Ty) <= alpha * A(x,y),        alpha in [0,1)
  anticipative_phi,    // d(Tx,Ty) <= phi(B(x,y))
  anticipative_alpha,  // d(Tx,Ty) <= alpha * B(x,y),        alpha in [0,1)
  pq_gamma,            // d(Tx,Ty) <= gamma * max{P,Q}(x,y), gamma in [0,1/2)
  gm_gamma,            // G(Tx,Ty,Tz) <= gamma * M(x,y,z),   gamma in [0,1/2)
};

const char* to_string(ContractionClass cls);
std::optional<ContractionClass> contraction_class_from(std::string_view name);

// Outcome of a certification sweep. Certified means lhs <= bound + tol on
// every quantified tuple; a refutation carries the tuple with the largest
// violation margin (ties broken by enumeration order, which is
// lexicographic for the built-in tuple sources). max_ratio is the largest
// lhs / functional value seen over tuples with a positive functional, and is
// reported for certified sweeps too.
template <class Point>
struct Certificate {
  ContractionClass cls{};
  double parameter = 0.0;  // alpha or gamma; unused for the phi class
  bool certified = false;
  std::vector<Point> witness;
  double witness_lhs = 0.0;
  double witness_rhs = 0.0;  // the violated bound value
  double max_ratio = 0.0;
  std::size_t tuples_checked = 0;
  std::string sample_note;  // what was quantified over ("certified" is relative to it)
};

namespace detail {

template <class Point>
struct CertAccumulator {
  Certificate<Point> cert;
  double worst_margin = 0.0;

  explicit CertAccumulator(ContractionClass cls, double param, std::string note) {
    cert.cls = cls;
    cert.parameter = param;
    cert.certified = true;
    cert.sample_note = std::move(note);
  }

  void observe(std::span<const Point> tuple, double lhs, double functional, double bound,
               double tol) {
    ++cert.tuples_checked;
    if (functional > 0.0) cert.max_ratio = std::max(cert.max_ratio, lhs / functional);
    const double margin = lhs - bound;
    if (margin > tol && (cert.certified || margin > worst_margin)) {
      cert.certified = false;
      worst_margin = margin;
      cert.witness.assign(tuple.begin(), tuple.end());
      cert.witness_lhs = lhs;
      cert.witness_rhs = bound;
    }
  }
};

void require_class_parameter(ContractionClass cls, double param);

}  // namespace detail

// Certification over an explicit pair source. The pair order is the
// tie-break order for refutation witnesses.
template <class Point, class Dist, class Map>
Certificate<Point> certify_pairs(ContractionClass cls, double param, const ComparisonFunction* phi,
                                 Dist&& d, Map&& T, std::span<const std::pair<Point, Point>> pairs,
                                 double tol, std::string sample_note) {
  if (cls == ContractionClass::gm_gamma)
    throw Error(errid::invalid_argument, "the G-side class quantifies over triples, not pairs");
  if (cls == ContractionClass::anticipative_phi) {
    if (phi == nullptr) throw Error(errid::invalid_argument, "phi class needs a gauge");
    const auto grid = default_grid();
    if (!check_increasing(*phi, grid).verified() || !check_regressive(*phi, grid).verified())
      throw Error(errid::parameter_out_of_range, "gauge must be increasing and regressive");
  } else {
    detail::require_class_parameter(cls, param);
  }
  detail::CertAccumulator<Point> acc(cls, param, std::move(sample_note));
  for (const auto& [x, y] : pairs) {
    const double lhs = d(T(x), T(y));
    double functional = 0.0;
    switch (cls) {
      case ContractionClass::ciric_alpha:
        functional = big_A<Point>(d, T, x, y);
        break;
      case ContractionClass::anticipative_phi:
      case ContractionClass::anticipative_alpha:
        functional = big_B<Point>(d, T, x, y);
        break;
      case ContractionClass::pq_gamma:
        functional = std::max(big_P<Point>(d, T, x, y), big_Q<Point>(d, T, x, y));
        break;
      case ContractionClass::gm_gamma:
        break;
    }
    const double bound =
        cls == ContractionClass::anticipative_phi ? (*phi)(functional) : param * functional;
    const std::array<Point, 2> tuple{x, y};
    acc.observe(std::span<const Point>(tuple), lhs, functional, bound, tol);
  }
  return acc.cert;
}

// Exhaustive certification on a finite carrier (all ordered pairs).
Certificate<int> certify(const BinaryTable& d, const FiniteMap& T, ContractionClass cls,
                         double param, double tol);
Certificate<int> certify(const BinaryTable& d, const FiniteMap& T, const ComparisonFunction& phi,
                         double tol);

// G-side certification: all ordered triples of the carrier.
Certificate<int> certify_gm(const TernaryTable& G, const FiniteMap& T, double gamma, double tol);

// The reduction inequalities tying the G-side functional M to the metric-side
// P, Q and B on the derived d: for every pair (x,y)
//   m-le-p   M(x,y,y) <= P(x,y)
//   m-le-q   M(x,x,y) <= Q(x,y)
//   p-le-2b  P(x,y) <= 2 B(x,y)
//   q-le-2b  Q(x,y) <= 2 B(x,y)
// All four hold for every valid G and every selfmap T; witnesses indicate a
// transcription or checker bug. Empty `pairs` means all ordered pairs.
ViolationList check_reduction(const TernaryTable& G, const FiniteMap& T, double tol,
                              std::span<const std::pair<int, int>> pairs = {});

}  // namespace gmfp
