#include "gmfp/picard.hpp"

namespace gmfp {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::fixed_point_hit: return "fixed-point-hit";
    case StopReason::tolerance_met: return "tolerance-met";
    case StopReason::max_iter: return "max-iter";
  }
  return "?";
}

PicardTrace<int> iterate(const BinaryTable& d, const FiniteMap& T, int x0, double fp_tol,
                         long max_iter) {
  if (d.size() != T.size())
    throw Error(errid::invalid_argument, "table and selfmap live on different carriers");
  if (max_iter < 1) throw Error(errid::invalid_argument, "max_iter must be at least 1");
  if (fp_tol < 0.0) throw Error(errid::invalid_argument, "fp_tol must be nonnegative");
  d.space().require(x0);

  PicardTrace<int> tr;
  tr.x0 = x0;
  tr.iterates.push_back(x0);
  if (T(x0) == x0) {
    tr.stop_reason = StopReason::fixed_point_hit;
    tr.candidate = x0;
    return tr;
  }
  std::unordered_map<int, long> first_seen;
  first_seen.emplace(x0, 0);
  int cur = x0;
  for (long k = 0; k < max_iter; ++k) {
    const int nxt = T(cur);
    tr.iterates.push_back(nxt);
    tr.rho.push_back(d(cur, nxt));
    const long pos = static_cast<long>(tr.iterates.size()) - 1;
    if (nxt == cur) {
      tr.stop_reason = StopReason::fixed_point_hit;
      tr.candidate = nxt;
      return tr;
    }
    if (fp_tol > 0.0 && d(cur, nxt) <= fp_tol) {
      tr.stop_reason = StopReason::tolerance_met;
      tr.candidate = nxt;
      return tr;
    }
    if (auto it = first_seen.find(nxt); it != first_seen.end()) {
      // Revisited without being fixed: a cycle. No candidate is reported.
      tr.stop_reason = StopReason::max_iter;
      tr.cycle_detected = true;
      tr.cycle_start = it->second;
      tr.cycle_length = pos - it->second;
      return tr;
    }
    first_seen.emplace(nxt, pos);
    cur = nxt;
  }
  tr.stop_reason = StopReason::max_iter;
  return tr;
}

std::vector<int> brute_fixpoints(const FiniteMap& T) {
  std::vector<int> out;
  for (int x = 0; x < T.size(); ++x)
    if (T(x) == x) out.push_back(x);
  return out;
}

RateReport rate_check(std::span<const double> rho, double gamma, double tol) {
  if (!(gamma >= 0.0 && gamma < 0.5))
    throw Error(errid::parameter_out_of_range, "gamma must lie in [0,1/2)");
  RateReport rep;
  rep.rate = gamma / (1.0 - gamma);
  for (std::size_t n = 0; n + 1 < rho.size(); ++n) {
    const bool pass = rho[n + 1] <= rep.rate * rho[n] + tol;
    rep.pass.push_back(pass);
    if (!pass && rep.all_pass) {
      rep.all_pass = false;
      rep.first_fail = static_cast<long>(n);
    }
  }
  return rep;
}

}  // namespace gmfp
