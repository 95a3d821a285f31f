#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmfp/space.hpp"

namespace gmfp {

enum class SpaceKind { finite_metric, finite_gspace, oracle_1d };

const char* to_string(SpaceKind k);

// Closed catalog of one-dimensional oracle carriers: an interval [lo, hi]
// under the Euclidean distance, with a builtin selfmap. Map ids:
//   "identity"        t -> t
//   "scale:<k>"       t -> t / k          (k nonzero)
//   "affine:<a>,<b>"  t -> a * t + b
struct OracleSpec {
  std::string map_id = "identity";
  double lo = 0.0;
  double hi = 1.0;

  double apply(double t) const;
  static double dist(double a, double b);

  // Evenly spaced sample points including both endpoints.
  std::vector<double> sample_grid(int count) const;

  // Validates the id; throws parse-error on an unknown or malformed one.
  static void validate_map_id(std::string_view id);
};

// A parsed space file. Exactly one of metric / gtable / oracle is populated,
// per kind; the selfmap is optional for the finite kinds.
struct SpaceFile {
  SpaceKind kind = SpaceKind::finite_metric;
  int n = 0;  // finite kinds only
  std::optional<BinaryTable> metric;
  std::optional<TernaryTable> gtable;
  std::optional<FiniteMap> selfmap;
  std::optional<OracleSpec> oracle;
  bool asserted_complete = false;

  bool finite() const noexcept { return kind != SpaceKind::oracle_1d; }
  bool has_map() const noexcept { return selfmap.has_value() || oracle.has_value(); }

  // Strict schema walk. Tables must be total: for finite-metric every pair
  // i < j, for finite-gspace every canonical triple i <= j <= k except the
  // all-equal ones (those are implicitly zero). Parse failures carry entry
  // context in the message.
  static SpaceFile parse(const std::string& text);

  static SpaceFile from_metric(BinaryTable table, std::optional<FiniteMap> map);
  static SpaceFile from_gtable(TernaryTable table, std::optional<FiniteMap> map);

  // Canonical serialization: alphabetical keys, entries sorted by index,
  // shortest round-trip number formatting, two-space indent, trailing
  // newline. parse-serialize is byte-idempotent.
  std::string serialize() const;
};

}  // namespace gmfp
