#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "gmfp/comparison.hpp"
#include "gmfp/space.hpp"

namespace gmfp {

enum class StopReason { fixed_point_hit, tolerance_met, max_iter };

const char* to_string(StopReason r);

// One Picard run: the iterates x0..xN, the step distances rho_n =
// d(x_n, x_{n+1}), why it stopped, and the candidate fixed point if any.
// A start that is already fixed yields a single-entry trace; otherwise the
// trace ends with the first repeated (or tolerance-close) iterate. On finite
// carriers a revisited non-fixed point stops the run with the max_iter reason
// and a cycle annotation instead of a spurious candidate.
template <class Point>
struct PicardTrace {
  Point x0{};
  std::vector<Point> iterates;
  std::vector<double> rho;
  StopReason stop_reason = StopReason::max_iter;
  std::optional<Point> candidate;
  bool cycle_detected = false;
  long cycle_start = -1;
  long cycle_length = 0;
};

// Finite carrier: fixed-point detection is exact label equality; fp_tol > 0
// additionally stops once a step distance falls to it or below.
PicardTrace<int> iterate(const BinaryTable& d, const FiniteMap& T, int x0, double fp_tol,
                         long max_iter);

// Oracle carrier: stops when a step distance reaches fp_tol (exact zero steps
// count as a fixed-point hit).
template <class Dist, class Map>
PicardTrace<double> iterate_oracle(Dist&& d, Map&& T, double x0, double fp_tol, long max_iter) {
  if (max_iter < 1) throw Error(errid::invalid_argument, "max_iter must be at least 1");
  if (fp_tol < 0.0) throw Error(errid::invalid_argument, "fp_tol must be nonnegative");
  PicardTrace<double> tr;
  tr.x0 = x0;
  tr.iterates.push_back(x0);
  {
    const double first = T(x0);
    const double step = d(x0, first);
    if (step <= fp_tol) {
      tr.stop_reason = step == 0.0 ? StopReason::fixed_point_hit : StopReason::tolerance_met;
      tr.candidate = x0;
      return tr;
    }
  }
  double cur = x0;
  for (long k = 0; k < max_iter; ++k) {
    const double nxt = T(cur);
    const double step = d(cur, nxt);
    tr.iterates.push_back(nxt);
    tr.rho.push_back(step);
    if (step == 0.0) {
      tr.stop_reason = StopReason::fixed_point_hit;
      tr.candidate = nxt;
      return tr;
    }
    if (step <= fp_tol) {
      tr.stop_reason = StopReason::tolerance_met;
      tr.candidate = nxt;
      return tr;
    }
    cur = nxt;
  }
  tr.stop_reason = StopReason::max_iter;
  return tr;
}

// Exact enumeration of Fix(T) on a finite carrier; the uniqueness oracle the
// solver is cross-checked against.
std::vector<int> brute_fixpoints(const FiniteMap& T);

// Header of the orbit-envelope diagnostics: alpha = rho_0, beta the bound
// produced by find_beta, and the check that every prefix diameter
// diam{x0..xn} stays at or below beta.
struct EnvelopeHeader {
  double alpha = 0.0;
  double beta = 0.0;
  bool already_fixed = false;  // degenerate alpha = 0: nothing to bound
  bool prefix_ok = true;
  std::vector<double> prefix_diam;
};

// Per-n tail check: the truncated tail diameter diam{xn..xN} against the
// iterated gauge phi^n(beta). The truncated diameter undershoots the true
// orbital tail, so passing is necessary evidence, not proof.
struct EnvelopeReport {
  double beta = 0.0;
  struct Row {
    double tail_diam = 0.0;
    double bound = 0.0;
    bool pass = true;
  };
  std::vector<Row> rows;
  bool all_pass = true;
};

// Step-ratio check rho_{n+1} <= rate * rho_n with rate = gamma / (1 - gamma);
// expected to pass whenever the pq class certified at gamma.
struct RateReport {
  double rate = 0.0;
  std::vector<bool> pass;
  bool all_pass = true;
  long first_fail = -1;
};

namespace detail {

template <class Point, class Dist>
std::vector<double> prefix_diameters(Dist&& d, const std::vector<Point>& pts) {
  std::vector<double> out(pts.size(), 0.0);
  double best = 0.0;
  for (std::size_t n = 1; n < pts.size(); ++n) {
    for (std::size_t i = 0; i < n; ++i)
      best = std::max({best, static_cast<double>(d(pts[i], pts[n])),
                       static_cast<double>(d(pts[n], pts[i]))});
    out[n] = best;
  }
  return out;
}

template <class Point, class Dist>
std::vector<double> suffix_diameters(Dist&& d, const std::vector<Point>& pts) {
  std::vector<double> out(pts.size(), 0.0);
  double best = 0.0;
  for (std::size_t n = pts.size(); n-- > 0;) {
    for (std::size_t j = n + 1; j < pts.size(); ++j)
      best = std::max({best, static_cast<double>(d(pts[n], pts[j])),
                       static_cast<double>(d(pts[j], pts[n]))});
    out[n] = best;
  }
  return out;
}

}  // namespace detail

template <class Point, class Dist>
EnvelopeHeader beta_bound_check(Dist&& d, const PicardTrace<Point>& tr,
                                const ComparisonFunction& phi, double search_cap, double tol) {
  EnvelopeHeader h;
  h.prefix_diam = detail::prefix_diameters(d, tr.iterates);
  h.alpha = tr.rho.empty() ? 0.0 : tr.rho.front();
  if (h.alpha <= 0.0) {
    h.already_fixed = true;
    return h;
  }
  const auto beta = find_beta(phi, h.alpha, search_cap);
  if (!beta)
    throw Error(errid::coercivity_evidence_failed,
                "no beta bounds the orbit: the gauge complement never clears alpha");
  h.beta = *beta;
  for (double dia : h.prefix_diam)
    if (dia > h.beta + tol) h.prefix_ok = false;
  return h;
}

template <class Point, class Dist>
EnvelopeReport envelope_check(Dist&& d, const PicardTrace<Point>& tr,
                              const ComparisonFunction& phi, double beta, double tol) {
  EnvelopeReport rep;
  rep.beta = beta;
  const auto tails = detail::suffix_diameters(d, tr.iterates);
  double bound = beta;
  for (std::size_t n = 0; n < tails.size(); ++n) {
    if (n > 0) bound = phi(bound);
    const bool pass = tails[n] <= bound + tol;
    rep.rows.push_back(EnvelopeReport::Row{tails[n], bound, pass});
    if (!pass) rep.all_pass = false;
  }
  return rep;
}

RateReport rate_check(std::span<const double> rho, double gamma, double tol);

template <class Point>
RateReport rate_check(const PicardTrace<Point>& tr, double gamma, double tol) {
  return rate_check(std::span<const double>(tr.rho), gamma, tol);
}

}  // namespace gmfp
