#include "gmfp/contraction.hpp"

namespace gmfp {

namespace {

double big_m_unchecked(const TernaryTable& G, const FiniteMap& T, int x, int y, int z) {
  const int tx = T(x);
  const std::array<int, 7> p{x, y, z, tx, T(tx), T(y), T(z)};
  double best = 0.0;
  for (const auto& t : terms::kM) best = std::max(best, G(p[t.a], p[t.b], p[t.c]));
  return best;
}

void push_violation(ViolationList& out, const char* axiom_id, Witness w) {
  for (auto& report : out) {
    if (report.axiom_id == axiom_id) {
      report.witnesses.push_back(std::move(w));
      return;
    }
  }
  out.push_back(ViolationReport{axiom_id, {std::move(w)}});
}

}  // namespace

double big_M(const TernaryTable& G, const FiniteMap& T, int x, int y, int z, double tol) {
  require_gmetric(G, tol);
  return big_m_unchecked(G, T, x, y, z);
}

const char* to_string(ContractionClass cls) {
  switch (cls) {
    case ContractionClass::ciric_alpha: return "ciric-alpha";
    case ContractionClass::anticipative_phi: return "anticipative-phi";
    case ContractionClass::anticipative_alpha: return "anticipative-alpha";
    case ContractionClass::pq_gamma: return "pq-gamma";
    case ContractionClass::gm_gamma: return "gm-gamma";
  }
  return "?";
}

std::optional<ContractionClass> contraction_class_from(std::string_view name) {
  if (name == "ciric-alpha" || name == "ciric") return ContractionClass::ciric_alpha;
  if (name == "anticipative-phi" || name == "phi") return ContractionClass::anticipative_phi;
  if (name == "anticipative-alpha" || name == "anticipative")
    return ContractionClass::anticipative_alpha;
  if (name == "pq-gamma" || name == "pq") return ContractionClass::pq_gamma;
  if (name == "gm-gamma" || name == "gm") return ContractionClass::gm_gamma;
  return std::nullopt;
}

namespace detail {

void require_class_parameter(ContractionClass cls, double param) {
  switch (cls) {
    case ContractionClass::ciric_alpha:
    case ContractionClass::anticipative_alpha:
      if (!(param >= 0.0 && param < 1.0))
        throw Error(errid::parameter_out_of_range, "alpha must lie in [0,1)");
      return;
    case ContractionClass::pq_gamma:
    case ContractionClass::gm_gamma:
      if (!(param >= 0.0 && param < 0.5))
        throw Error(errid::parameter_out_of_range, "gamma must lie in [0,1/2)");
      return;
    case ContractionClass::anticipative_phi:
      return;
  }
}

}  // namespace detail

namespace {

std::vector<std::pair<int, int>> all_ordered_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) pairs.emplace_back(x, y);
  return pairs;
}

}  // namespace

Certificate<int> certify(const BinaryTable& d, const FiniteMap& T, ContractionClass cls,
                         double param, double tol) {
  if (d.size() != T.size())
    throw Error(errid::invalid_argument, "table and selfmap live on different carriers");
  const auto pairs = all_ordered_pairs(d.size());
  return certify_pairs<int>(cls, param, nullptr, d, T,
                            std::span<const std::pair<int, int>>(pairs), tol,
                            "all ordered pairs of a " + std::to_string(d.size()) +
                                "-point carrier");
}

Certificate<int> certify(const BinaryTable& d, const FiniteMap& T, const ComparisonFunction& phi,
                         double tol) {
  if (d.size() != T.size())
    throw Error(errid::invalid_argument, "table and selfmap live on different carriers");
  const auto pairs = all_ordered_pairs(d.size());
  return certify_pairs<int>(ContractionClass::anticipative_phi, 0.0, &phi, d, T,
                            std::span<const std::pair<int, int>>(pairs), tol,
                            "all ordered pairs of a " + std::to_string(d.size()) +
                                "-point carrier");
}

Certificate<int> certify_gm(const TernaryTable& G, const FiniteMap& T, double gamma, double tol) {
  if (G.size() != T.size())
    throw Error(errid::invalid_argument, "table and selfmap live on different carriers");
  detail::require_class_parameter(ContractionClass::gm_gamma, gamma);
  require_gmetric(G, tol);
  const int n = G.size();
  detail::CertAccumulator<int> acc(ContractionClass::gm_gamma, gamma,
                                   "all ordered triples of a " + std::to_string(n) +
                                       "-point carrier");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const double lhs = G(T(x), T(y), T(z));
        const double functional = big_m_unchecked(G, T, x, y, z);
        const std::array<int, 3> tuple{x, y, z};
        acc.observe(std::span<const int>(tuple), lhs, functional, gamma * functional, tol);
      }
  return acc.cert;
}

ViolationList check_reduction(const TernaryTable& G, const FiniteMap& T, double tol,
                              std::span<const std::pair<int, int>> pairs) {
  if (G.size() != T.size())
    throw Error(errid::invalid_argument, "table and selfmap live on different carriers");
  const DerivedMetrics dm = derive_metrics(G, tol);
  std::vector<std::pair<int, int>> storage;
  if (pairs.empty()) {
    storage = all_ordered_pairs(G.size());
    pairs = storage;
  }
  ViolationList out;
  for (const auto& [x, y] : pairs) {
    G.space().require(x);
    G.space().require(y);
    const double p = big_P<int>(dm.d, T, x, y);
    const double q = big_Q<int>(dm.d, T, x, y);
    const double b = big_B<int>(dm.d, T, x, y);
    const double myy = big_m_unchecked(G, T, x, y, y);
    const double mxy = big_m_unchecked(G, T, x, x, y);
    if (myy > p + tol) push_violation(out, "m-le-p", Witness{{x, y}, myy, p});
    if (mxy > q + tol) push_violation(out, "m-le-q", Witness{{x, y}, mxy, q});
    if (p > 2.0 * b + tol) push_violation(out, "p-le-2b", Witness{{x, y}, p, 2.0 * b});
    if (q > 2.0 * b + tol) push_violation(out, "q-le-2b", Witness{{x, y}, q, 2.0 * b});
  }
  return out;
}

}  // namespace gmfp
