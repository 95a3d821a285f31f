#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmfp/error.hpp"

namespace gmfp {

// Monotone gauge phi on the nonnegative reals. Three families:
//   linear      phi(t) = slope * t
//   piecewise   breakpoints (t, v) with t nondecreasing; linear interpolation
//               between distinct t, final-slope extrapolation beyond the last,
//               clamping to the first value below the first. Repeated t values
//               encode a jump: evaluation at t uses the first value, the right
//               limit uses the last.
//   callable    opaque evaluator; property checks can only produce grid
//               evidence for these, never closed-form verdicts.
class ComparisonFunction {
 public:
  enum class Family { linear, piecewise_linear, callable };

  static ComparisonFunction linear(double slope);
  static ComparisonFunction piecewise(std::vector<std::pair<double, double>> breakpoints);
  static ComparisonFunction callable(std::function<double(double)> fn);

  Family family() const noexcept { return family_; }
  double operator()(double t) const;

  // Exact right limit phi(s+0); linear and piecewise only.
  double right_limit(double s) const;

  double slope() const;  // linear only
  const std::vector<std::pair<double, double>>& breakpoints() const;  // piecewise only
  double final_slope() const;  // piecewise extrapolation slope

 private:
  ComparisonFunction() = default;

  Family family_ = Family::linear;
  double slope_ = 0.0;
  std::vector<std::pair<double, double>> pts_;
  std::function<double(double)> fn_;
};

// "linear:0.5" or "pwl:t0,v0;t1,v1;...".
ComparisonFunction parse_phi(std::string_view spec);

struct PropertyVerdict {
  enum class Status { verified_closed_form, verified_on_grid, refuted };

  std::string property_id;
  Status status = Status::refuted;
  std::optional<double> witness;  // refuted: a concrete argument t
  std::string evidence;           // grid / delta description when applicable

  bool verified() const noexcept { return status != Status::refuted; }
};

std::vector<double> default_grid();    // 0 .. 10 step 0.25
std::vector<double> default_deltas();  // 1e-1 .. 1e-8 by decades

// t1 <= t2 implies phi(t1) <= phi(t2). Closed form for linear/piecewise,
// grid evidence for callables.
PropertyVerdict check_increasing(const ComparisonFunction& phi, std::span<const double> grid);

// phi(t) < t for all t > 0, hence phi(0) = 0.
PropertyVerdict check_regressive(const ComparisonFunction& phi, std::span<const double> grid);

// phi(s+0) < s for all s > 0. Callables estimate the right limit by
// delta-shrinking with a final-stability requirement.
PropertyVerdict check_super_regressive(const ComparisonFunction& phi, std::span<const double> grid,
                                       std::span<const double> deltas = {}, double tol = 1e-9);

// Least n <= max_iter with phi^n(t) <= tol; nullopt when the orbit does not
// get there (evidence against admissibility at this t, not proof).
std::optional<int> matkowski_iterate(const ComparisonFunction& phi, double t, double tol,
                                     int max_iter);

// A beta > alpha with t <= alpha + phi(t) implying t <= beta: the supremum of
// {t : t - phi(t) <= alpha}. Closed form for linear (alpha / (1 - slope)) and
// piecewise; bracketed scan plus bisection for callables. nullopt when the
// complement t - phi(t) never exceeds alpha (coercivity evidence fails).
std::optional<double> find_beta(const ComparisonFunction& phi, double alpha, double search_cap);

}  // namespace gmfp
