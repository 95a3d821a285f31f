#include "gmfp/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gmfp {

namespace {

constexpr double kZeroEps = 1e-12;  // |phi(0)| considered zero for callables

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// Piecewise path in distinct-t form. enter is the value attained at t (first
// pair of the group), exit the right limit (last pair of the group).
struct Node {
  double t;
  double enter;
  double exit;
};

std::vector<Node> path_nodes(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Node> nodes;
  for (const auto& [t, v] : pts) {
    if (!nodes.empty() && nodes.back().t == t)
      nodes.back().exit = v;
    else
      nodes.push_back(Node{t, v, v});
  }
  return nodes;
}

std::string grid_note(std::span<const double> grid) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "grid of %zu points in [%g, %g]", grid.size(),
                grid.empty() ? 0.0 : grid.front(), grid.empty() ? 0.0 : grid.back());
  return buf;
}

void validate_grid(std::span<const double> grid, bool required) {
  if (grid.empty()) {
    if (required) throw Error(errid::empty_grid, "callable gauges need a nonempty grid");
    return;
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!finite_nonneg(grid[i]))
      throw Error(errid::invalid_argument, "grid entries must be nonnegative and finite");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw Error(errid::invalid_argument, "grid must be strictly increasing");
  }
}

PropertyVerdict verdict(std::string id, PropertyVerdict::Status st,
                        std::optional<double> witness = std::nullopt, std::string evidence = "") {
  PropertyVerdict v;
  v.property_id = std::move(id);
  v.status = st;
  v.witness = witness;
  v.evidence = std::move(evidence);
  return v;
}

}  // namespace

ComparisonFunction ComparisonFunction::linear(double slope) {
  if (!finite_nonneg(slope))
    throw Error(errid::invalid_argument, "linear gauge needs a nonnegative finite slope");
  ComparisonFunction f;
  f.family_ = Family::linear;
  f.slope_ = slope;
  return f;
}

ComparisonFunction ComparisonFunction::piecewise(std::vector<std::pair<double, double>> pts) {
  if (pts.empty()) throw Error(errid::invalid_argument, "piecewise gauge needs breakpoints");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!finite_nonneg(pts[i].first) || !finite_nonneg(pts[i].second))
      throw Error(errid::invalid_argument, "breakpoints must be nonnegative and finite");
    if (i > 0 && pts[i].first < pts[i - 1].first)
      throw Error(errid::invalid_argument, "breakpoint arguments must be nondecreasing");
  }
  ComparisonFunction f;
  f.family_ = Family::piecewise_linear;
  f.pts_ = std::move(pts);
  return f;
}

ComparisonFunction ComparisonFunction::callable(std::function<double(double)> fn) {
  if (!fn) throw Error(errid::invalid_argument, "callable gauge needs an evaluator");
  ComparisonFunction f;
  f.family_ = Family::callable;
  f.fn_ = std::move(fn);
  return f;
}

double ComparisonFunction::slope() const {
  if (family_ != Family::linear) throw Error(errid::invalid_argument, "not a linear gauge");
  return slope_;
}

const std::vector<std::pair<double, double>>& ComparisonFunction::breakpoints() const {
  if (family_ != Family::piecewise_linear)
    throw Error(errid::invalid_argument, "not a piecewise gauge");
  return pts_;
}

double ComparisonFunction::final_slope() const {
  if (family_ != Family::piecewise_linear)
    throw Error(errid::invalid_argument, "not a piecewise gauge");
  for (std::size_t j = pts_.size(); j-- > 1;) {
    if (pts_[j - 1].first < pts_[j].first)
      return (pts_[j].second - pts_[j - 1].second) / (pts_[j].first - pts_[j - 1].first);
  }
  return 0.0;
}

double ComparisonFunction::operator()(double t) const {
  switch (family_) {
    case Family::linear:
      return slope_ * t;
    case Family::callable:
      return fn_(t);
    case Family::piecewise_linear:
      break;
  }
  if (t <= pts_.front().first) return pts_.front().second;
  if (t > pts_.back().first)
    return pts_.back().second + final_slope() * (t - pts_.back().first);
  // Largest index with pts_[i].t <= t.
  std::size_t i = pts_.size() - 1;
  while (pts_[i].first > t) --i;
  if (pts_[i].first == t) {
    while (i > 0 && pts_[i - 1].first == t) --i;  // first value of the group
    return pts_[i].second;
  }
  const auto& [a, va] = pts_[i];
  const auto& [b, vb] = pts_[i + 1];
  return va + (vb - va) * (t - a) / (b - a);
}

double ComparisonFunction::right_limit(double s) const {
  switch (family_) {
    case Family::linear:
      return slope_ * s;
    case Family::callable:
      throw Error(errid::invalid_argument, "right limits of callables are estimated, not exact");
    case Family::piecewise_linear:
      break;
  }
  if (s < pts_.front().first) return pts_.front().second;
  if (s >= pts_.back().first)
    return pts_.back().second + final_slope() * (s - pts_.back().first);
  std::size_t i = pts_.size() - 1;
  while (pts_[i].first > s) --i;
  if (pts_[i].first == s) {
    while (i + 1 < pts_.size() && pts_[i + 1].first == s) ++i;  // last value of the group
    return pts_[i].second;
  }
  return (*this)(s);
}

ComparisonFunction parse_phi(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  if (head == "linear") {
    if (colon == std::string_view::npos)
      throw Error(errid::parse_error, "expected linear:<slope>");
    try {
      return ComparisonFunction::linear(std::stod(std::string(spec.substr(colon + 1))));
    } catch (const Error&) {
      throw;
    } catch (...) {
      throw Error(errid::parse_error, "bad slope in " + std::string(spec));
    }
  }
  if (head == "pwl") {
    if (colon == std::string_view::npos)
      throw Error(errid::parse_error, "expected pwl:t0,v0;t1,v1;...");
    std::vector<std::pair<double, double>> pts;
    std::string body(spec.substr(colon + 1));
    std::size_t pos = 0;
    while (pos < body.size()) {
      auto end = body.find(';', pos);
      if (end == std::string::npos) end = body.size();
      const std::string pair = body.substr(pos, end - pos);
      const auto comma = pair.find(',');
      if (comma == std::string::npos)
        throw Error(errid::parse_error, "expected t,v pair in " + std::string(spec));
      try {
        pts.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
      } catch (...) {
        throw Error(errid::parse_error, "bad breakpoint in " + std::string(spec));
      }
      pos = end + 1;
    }
    return ComparisonFunction::piecewise(std::move(pts));
  }
  throw Error(errid::parse_error, "unknown gauge family in " + std::string(spec));
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 40; ++i) g.push_back(0.25 * i);
  return g;
}

std::vector<double> default_deltas() {
  std::vector<double> d;
  for (int k = 1; k <= 8; ++k) d.push_back(std::pow(10.0, -k));
  return d;
}

PropertyVerdict check_increasing(const ComparisonFunction& phi, std::span<const double> grid) {
  using Status = PropertyVerdict::Status;
  switch (phi.family()) {
    case ComparisonFunction::Family::linear:
      return phi.slope() >= 0.0 ? verdict("increasing", Status::verified_closed_form)
                                : verdict("increasing", Status::refuted, 1.0);
    case ComparisonFunction::Family::piecewise_linear: {
      const auto& pts = phi.breakpoints();
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (pts[k + 1].second < pts[k].second)
          return verdict("increasing", Status::refuted, pts[k].first,
                         "value decreases after this breakpoint");
      }
      if (phi.final_slope() < 0.0)
        return verdict("increasing", Status::refuted, pts.back().first,
                       "extrapolation slope is negative");
      return verdict("increasing", Status::verified_closed_form);
    }
    case ComparisonFunction::Family::callable:
      break;
  }
  validate_grid(grid, true);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (phi(grid[i]) > phi(grid[i + 1]))
      return verdict("increasing", Status::refuted, grid[i], grid_note(grid));
  }
  return verdict("increasing", Status::verified_on_grid, std::nullopt, grid_note(grid));
}

namespace {

// Shared sweep for the piecewise regressive/super-regressive checks. Walks
// the requirement value(s) < s for s > 0 along the path, where value is the
// attained one (regressive) or the right limit (super regressive), and
// returns a concrete violating s if there is one. Inside open segments and on
// the tail both notions coincide with the interpolated path, so only the
// breakpoints differ between the two checks.
std::optional<double> piecewise_gap_witness(const ComparisonFunction& phi, bool right_limits) {
  const auto nodes = path_nodes(phi.breakpoints());

  // Region below the first breakpoint: constant at the first value.
  {
    const Node& first = nodes.front();
    if (first.t > 0.0 && first.enter > 0.0) return std::min(first.enter, 0.5 * first.t);
  }
  // Breakpoints themselves.
  for (const Node& nd : nodes) {
    const double value = right_limits ? nd.exit : nd.enter;
    if (nd.t > 0.0 && value >= nd.t) return nd.t;
  }
  // Segment interiors. diff(s) = path(s) - s is linear between
  // da = a.exit - a.t and db = b.enter - b.t, neither endpoint attained.
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Node& a = nodes[i];
    const Node& b = nodes[i + 1];
    const double da = a.exit - a.t;
    const double db = b.enter - b.t;
    if (da < 0.0) {
      if (db <= 0.0) continue;  // negative inside, grazing b.t at most
      return a.t + (-da) * (b.t - a.t) / (db - da);  // diff crosses zero here
    }
    if (da == 0.0) {
      if (db < 0.0) continue;  // leaves zero downward
      return 0.5 * (a.t + b.t);
    }
    // da > 0: points just right of a.t violate.
    if (db < 0.0) {
      const double cross = a.t + da * (b.t - a.t) / (da - db);
      return 0.5 * (a.t + cross);
    }
    return 0.5 * (a.t + b.t);
  }
  // Extrapolation tail: diff(s) = dT + (sf - 1)(s - T) for s > T.
  {
    const Node& last = nodes.back();
    const double dT = last.exit - last.t;
    const double sf = phi.final_slope();
    if (sf > 1.0) {
      if (dT >= 0.0) return last.t + 1.0;
      return last.t + (-dT) / (sf - 1.0);  // diff reaches zero here
    }
    if (sf == 1.0) {
      if (dT >= 0.0) return last.t + 1.0;
      return std::nullopt;
    }
    if (dT > 0.0) return last.t + 0.5 * dT / (1.0 - sf);  // inside the positive stretch
  }
  return std::nullopt;
}

}  // namespace

PropertyVerdict check_regressive(const ComparisonFunction& phi, std::span<const double> grid) {
  using Status = PropertyVerdict::Status;
  switch (phi.family()) {
    case ComparisonFunction::Family::linear:
      return phi.slope() < 1.0 ? verdict("regressive", Status::verified_closed_form)
                               : verdict("regressive", Status::refuted, 1.0);
    case ComparisonFunction::Family::piecewise_linear: {
      if (phi(0.0) != 0.0)
        return verdict("regressive", Status::refuted, 0.0, "phi(0) must vanish");
      if (auto w = piecewise_gap_witness(phi, /*right_limits=*/false))
        return verdict("regressive", Status::refuted, *w);
      return verdict("regressive", Status::verified_closed_form);
    }
    case ComparisonFunction::Family::callable:
      break;
  }
  validate_grid(grid, true);
  if (std::abs(phi(0.0)) > kZeroEps)
    return verdict("regressive", Status::refuted, 0.0, "phi(0) must vanish");
  for (double g : grid) {
    if (g > 0.0 && phi(g) >= g) return verdict("regressive", Status::refuted, g, grid_note(grid));
  }
  return verdict("regressive", Status::verified_on_grid, std::nullopt, grid_note(grid));
}

PropertyVerdict check_super_regressive(const ComparisonFunction& phi, std::span<const double> grid,
                                       std::span<const double> deltas, double tol) {
  using Status = PropertyVerdict::Status;
  switch (phi.family()) {
    case ComparisonFunction::Family::linear:
      return phi.slope() < 1.0 ? verdict("super-regressive", Status::verified_closed_form)
                               : verdict("super-regressive", Status::refuted, 1.0);
    case ComparisonFunction::Family::piecewise_linear: {
      if (auto w = piecewise_gap_witness(phi, /*right_limits=*/true))
        return verdict("super-regressive", Status::refuted, *w);
      return verdict("super-regressive", Status::verified_closed_form);
    }
    case ComparisonFunction::Family::callable:
      break;
  }
  validate_grid(grid, true);
  std::vector<double> dd(deltas.begin(), deltas.end());
  if (dd.empty()) dd = default_deltas();
  for (std::size_t i = 0; i + 1 < dd.size(); ++i) {
    if (!(dd[i] > dd[i + 1]) || !(dd[i + 1] > 0.0))
      throw Error(errid::invalid_argument, "deltas must be a decreasing positive sequence");
  }
  // The two finest estimates may legitimately differ by slope * delta-gap;
  // the stability threshold scales with the gap so smooth gauges pass.
  const double delta_gap = dd.size() > 1 ? dd[dd.size() - 2] - dd.back() : dd.back();
  const double stable = std::max(tol, 1e3 * delta_gap);
  char note[160];
  std::snprintf(note, sizeof note,
                "right limits estimated at +%g, stability threshold %g, margin tol %g", dd.back(),
                stable, tol);
  for (double s : grid) {
    if (s <= 0.0) continue;
    const double est = phi(s + dd.back());
    const double prev = dd.size() > 1 ? phi(s + dd[dd.size() - 2]) : est;
    if (std::abs(est - prev) > stable)
      return verdict("super-regressive", Status::refuted, s,
                     std::string(note) + "; estimate did not stabilise");
    if (!(est < s - tol)) return verdict("super-regressive", Status::refuted, s, note);
  }
  return verdict("super-regressive", Status::verified_on_grid, std::nullopt, note);
}

std::optional<int> matkowski_iterate(const ComparisonFunction& phi, double t, double tol,
                                     int max_iter) {
  if (!(t > 0.0)) throw Error(errid::nonpositive_argument, "orbit start must be positive");
  if (!(tol > 0.0)) throw Error(errid::nonpositive_argument, "tolerance must be positive");
  double u = t;
  for (int n = 0; n <= max_iter; ++n) {
    if (u <= tol) return n;
    u = phi(u);
    if (!std::isfinite(u)) return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> find_beta(const ComparisonFunction& phi, double alpha, double search_cap) {
  if (!(alpha > 0.0)) throw Error(errid::nonpositive_alpha, "alpha must be positive");

  switch (phi.family()) {
    case ComparisonFunction::Family::linear: {
      const double k = phi.slope();
      if (k >= 1.0) return std::nullopt;
      return alpha / (1.0 - k);
    }
    case ComparisonFunction::Family::piecewise_linear: {
      // Supremum of {t >= 0 : t - phi(t) <= alpha}, region by region.
      const auto nodes = path_nodes(phi.breakpoints());
      double best = 0.0;
      {
        const Node& first = nodes.front();
        if (first.t > 0.0) best = std::max(best, std::min(first.t, alpha + first.enter));
      }
      for (const Node& nd : nodes)
        if (nd.t - nd.enter <= alpha) best = std::max(best, nd.t);
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Node& a = nodes[i];
        const Node& b = nodes[i + 1];
        const double pa = a.t - a.exit;
        const double pb = b.t - b.enter;
        if (pb <= alpha)
          best = std::max(best, b.t);
        else if (pa <= alpha)
          best = std::max(best, a.t + (alpha - pa) * (b.t - a.t) / (pb - pa));
      }
      {
        const Node& last = nodes.back();
        const double sf = phi.final_slope();
        const double base = last.t - last.exit;  // complement value entering the tail
        if (sf > 1.0) return std::nullopt;
        if (sf == 1.0) {
          if (base <= alpha) return std::nullopt;
        } else {
          const double cross = last.t + (alpha - base) / (1.0 - sf);
          if (cross >= last.t) best = std::max(best, cross);
        }
      }
      return best;
    }
    case ComparisonFunction::Family::callable:
      break;
  }

  if (!(search_cap > alpha))
    throw Error(errid::invalid_argument, "search cap must exceed alpha");
  constexpr int kScan = 4096;
  const auto complement = [&phi](double t) { return t - phi(t); };
  // Largest scanned point still inside the sublevel set. t <= alpha always
  // qualifies because phi >= 0.
  double lo = alpha;
  for (int i = 1; i <= kScan; ++i) {
    const double t = search_cap * static_cast<double>(i) / kScan;
    if (t > alpha && complement(t) <= alpha) lo = t;
  }
  if (lo >= search_cap * (1.0 - 1e-12)) return std::nullopt;  // sublevel set reaches the cap
  // Every scanned point above lo has complement > alpha; the smallest of them
  // brackets the boundary.
  double hi = search_cap;
  for (int i = 1; i <= kScan; ++i) {
    const double t = search_cap * static_cast<double>(i) / kScan;
    if (t > lo) {
      hi = t;
      break;
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (complement(mid) <= alpha)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace gmfp
