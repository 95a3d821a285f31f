#include "gmfp/metric.hpp"

#include <cmath>

namespace gmfp {

namespace {

void push_violation(ViolationList& out, const char* axiom_id, Witness w) {
  for (auto& report : out) {
    if (report.axiom_id == axiom_id) {
      report.witnesses.push_back(std::move(w));
      return;
    }
  }
  out.push_back(ViolationReport{axiom_id, {std::move(w)}});
}

void check_reflexive_sufficient(const BinaryTable& t, double tol, ViolationList& out) {
  const int n = t.size();
  for (int x = 0; x < n; ++x) {
    if (t(x, x) > tol)
      push_violation(out, "reflexive-sufficient", Witness{{x, x}, t(x, x), 0.0});
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && t(x, y) <= tol)
        push_violation(out, "reflexive-sufficient", Witness{{x, y}, t(x, y), tol});
    }
  }
}

void check_triangular(const BinaryTable& t, double tol, ViolationList& out) {
  const int n = t.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const double lhs = t(x, y);
        const double rhs = t(x, z) + t(z, y);
        if (lhs > rhs + tol) push_violation(out, "triangular", Witness{{x, y, z}, lhs, rhs});
      }
}

void check_symmetry(const BinaryTable& t, double tol, ViolationList& out) {
  const int n = t.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const double a = t(x, y);
      const double b = t(y, x);
      if (std::abs(a - b) > tol)
        push_violation(out, "symmetry", Witness{{x, y}, std::max(a, b), std::min(a, b)});
    }
}

}  // namespace

double diam(const BinaryTable& table, std::span<const int> subset) {
  if (subset.empty()) throw Error(errid::empty_set_diameter, "diameter of the empty set");
  for (int p : subset) table.space().require(p);
  double best = 0.0;
  for (int x : subset)
    for (int y : subset) best = std::max(best, table(x, y));
  return best;
}

ViolationList check_metric(const BinaryTable& table, double tol) {
  ViolationList out;
  check_reflexive_sufficient(table, tol, out);
  check_symmetry(table, tol, out);
  check_triangular(table, tol, out);
  return out;
}

ViolationList check_almost_metric(const BinaryTable& table, double tol) {
  ViolationList out;
  check_reflexive_sufficient(table, tol, out);
  check_triangular(table, tol, out);
  return out;
}

}  // namespace gmfp
