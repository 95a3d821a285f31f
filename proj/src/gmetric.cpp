#include "gmfp/gmetric.hpp"

#include <cmath>
#include <random>

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

// 53-bit uniform draw in [0,1); stable across platforms, unlike the
// distribution adapters in <random>.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

DerivedMetrics derive_unchecked(const TernaryTable& t) {
  const FiniteSpace sp = t.space();
  BinaryTable b(sp), c(sp), d(sp), e(sp);
  for (int x = 0; x < sp.size(); ++x)
    for (int y = 0; y < sp.size(); ++y) {
      const double bv = t(x, y, y);
      const double cv = t(x, x, y);
      b.set(x, y, bv);
      c.set(x, y, cv);
      d.set(x, y, std::max(bv, cv));
      e.set(x, y, bv + cv);
    }
  return DerivedMetrics{std::move(b), std::move(c), std::move(d), std::move(e)};
}

}  // namespace

ViolationList check_dmetric(const TernaryTable& t, double tol) {
  ViolationList out;
  const int n = t.size();
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      for (int z = y; z < n; ++z) {
        if (x == y && y == z) continue;
        if (t(x, y, z) <= tol)
          push_violation(out, "reflexive-sufficient", Witness{{x, y, z}, t(x, y, z), tol});
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u) {
          const double lhs = t(x, y, z);
          const double rhs = t(x, y, u) + t(x, u, z) + t(u, y, z);
          if (lhs > rhs + tol) push_violation(out, "tetrahedral", Witness{{x, y, z, u}, lhs, rhs});
        }
  return out;
}

ViolationList check_gmetric(const TernaryTable& t, double tol) {
  ViolationList out;
  const int n = t.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && t(x, x, y) <= tol)
        push_violation(out, "plane-sufficient", Witness{{x, x, y}, t(x, x, y), tol});
    }
  // The axiom carries the side condition y != z; instantiations with y == z
  // are skipped exactly as stated.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (y == z) continue;
        const double lhs = t(x, x, y);
        const double rhs = t(x, y, z);
        if (lhs > rhs + tol) push_violation(out, "ms-property", Witness{{x, y, z}, lhs, rhs});
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u) {
          const double lhs = t(x, y, z);
          const double rhs = t(x, u, u) + t(u, y, z);
          if (lhs > rhs + tol) push_violation(out, "ms-triangular", Witness{{x, y, z, u}, lhs, rhs});
        }
  return out;
}

void require_gmetric(const TernaryTable& t, double tol) {
  if (!check_gmetric(t, tol).empty())
    throw Error(errid::not_a_gmetric, "table fails the Mustafa-Sims axioms");
}

bool gmetric_is_dmetric(const TernaryTable& t, double tol) {
  require_gmetric(t, tol);
  return check_dmetric(t, tol).empty();
}

DerivedMetrics derive_metrics(const TernaryTable& t, double tol) {
  require_gmetric(t, tol);
  return derive_unchecked(t);
}

ViolationList check_consequences(const TernaryTable& t, double tol) {
  require_gmetric(t, tol);
  ViolationList out;
  const int n = t.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const double lhs = t(x, y, z);
        const double rhs = t(x, x, y) + t(x, x, z);
        if (lhs > rhs + tol) push_violation(out, "c-sum-bound", Witness{{x, y, z}, lhs, rhs});
      }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const double b = t(x, y, y);
      const double c = t(x, x, y);
      if (b > 2.0 * c + tol) push_violation(out, "bc-doubling", Witness{{x, y}, b, 2.0 * c});
      if (c > 2.0 * b + tol) push_violation(out, "bc-doubling", Witness{{x, y}, c, 2.0 * b});
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u) {
          const double lhs = t(x, y, z);
          {
            const double rhs = t(x, u, z) + t(u, y, z);
            if (lhs > rhs + tol)
              push_violation(out, "vertex-split", Witness{{x, y, z, u}, lhs, rhs});
          }
          {
            const double rhs = (2.0 / 3.0) * (t(x, u, y) + t(y, u, z) + t(z, u, x));
            if (lhs > rhs + tol)
              push_violation(out, "tetrahedral-two-thirds", Witness{{x, y, z, u}, lhs, rhs});
          }
          {
            const double rhs = t(x, u, u) + t(y, u, u) + t(z, u, u);
            if (lhs > rhs + tol)
              push_violation(out, "b-star-bound", Witness{{x, y, z, u}, lhs, rhs});
          }
        }
  return out;
}

ViolationList check_chain(const TernaryTable& t, double tol) {
  require_gmetric(t, tol);
  const DerivedMetrics dm = derive_unchecked(t);
  ViolationList out;
  const int n = t.size();
  struct Link {
    const char* id;
    const BinaryTable* lhs;
    double scale;  // violation when lhs > scale * rhs + tol
    const BinaryTable* rhs;
  };
  const Link links[] = {
      {"b-le-2c", &dm.b, 2.0, &dm.c}, {"c-le-d", &dm.c, 1.0, &dm.d},
      {"d-le-2b", &dm.d, 2.0, &dm.b}, {"c-le-2b", &dm.c, 2.0, &dm.b},
      {"b-le-d", &dm.b, 1.0, &dm.d},  {"d-le-2c", &dm.d, 2.0, &dm.c},
      {"d-le-e", &dm.d, 1.0, &dm.e},  {"e-le-2d", &dm.e, 2.0, &dm.d},
  };
  for (const Link& link : links)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const double lhs = (*link.lhs)(x, y);
        const double rhs = link.scale * (*link.rhs)(x, y);
        if (lhs > rhs + tol) push_violation(out, link.id, Witness{{x, y}, lhs, rhs});
      }
  return out;
}

ViolationList check_lipschitz(const TernaryTable& t, double tol, int carrier_cap) {
  require_gmetric(t, tol);
  const int n = t.size();
  if (n > carrier_cap)
    throw Error(errid::carrier_too_large, "Lipschitz sweep is O(n^6); carrier exceeds cap " +
                                              std::to_string(carrier_cap));
  const DerivedMetrics dm = derive_unchecked(t);
  ViolationList out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) {
              const double lhs = std::abs(t(x, y, z) - t(u, v, w));
              const double rhs = dm.d(x, u) + dm.d(y, v) + dm.d(z, w);
              if (lhs > rhs + tol)
                push_violation(out, "g-lipschitz", Witness{{x, y, z, u, v, w}, lhs, rhs});
            }
  return out;
}

ViolationList check_strong_triangle(const TernaryTable& t, double tol) {
  require_gmetric(t, tol);
  const DerivedMetrics dm = derive_unchecked(t);
  ViolationList out;
  const int n = t.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const double lhs = t(x, y, z);
        const double rhs = dm.d(x, y) + dm.d(y, z);
        if (lhs > rhs + tol) push_violation(out, "strong-triangle", Witness{{x, y, z}, lhs, rhs});
      }
  return out;
}

SymmetryResult is_symmetric(const TernaryTable& t, double tol) {
  require_gmetric(t, tol);
  const int n = t.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const double b = t(x, y, y);
      const double c = t(x, x, y);
      if (std::abs(b - c) > tol) return SymmetryResult{false, x, y, b, c};
    }
  return SymmetryResult{};
}

TernaryTable max_gmetric(const BinaryTable& g, double tol) {
  if (!check_metric(g, tol).empty())
    throw Error(errid::not_a_metric, "max construction needs a genuine metric");
  const int n = g.size();
  TernaryTable out(g.space());
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      for (int z = y; z < n; ++z) {
        if (x == y && y == z) continue;
        out.set(x, y, z, std::max({g(x, y), g(y, z), g(z, x)}));
      }
  return out;
}

TernaryTable random_gmetric(int n, std::uint64_t seed) {
  TernaryTable out{FiniteSpace(n)};
  std::mt19937_64 rng(seed);
  for (int z = 0; z < n; ++z)
    for (int y = 0; y <= z; ++y)
      for (int x = 0; x <= y; ++x) {
        if (x == y && y == z) continue;
        const bool distinct = (x != y && y != z);
        const double u = unit_uniform(rng);
        out.set(x, y, z, distinct ? 1.5 + 0.5 * u : 1.0 + 0.5 * u);
      }
  return out;
}

FiniteMap random_selfmap(int n, std::uint64_t seed) {
  FiniteSpace sp(n);
  std::mt19937_64 rng(seed);
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    image[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  return FiniteMap(sp, std::move(image));
}

namespace {

std::span<const int> prefix_window(const TernaryTable& t, std::span<const int> seq,
                                   std::size_t window) {
  if (window < 1 || seq.size() < window)
    throw Error(errid::prefix_too_short,
                "need at least `window` entries (window >= 1) in the sequence");
  for (int p : seq) t.space().require(p);
  return seq.subspan(seq.size() - window);
}

}  // namespace

bool g_cauchy_prefix(const TernaryTable& t, std::span<const int> seq, double eps,
                     std::size_t window) {
  const auto tail = prefix_window(t, seq, window);
  for (int a : tail)
    for (int b : tail)
      for (int c : tail)
        if (t(a, b, c) > eps) return false;
  return true;
}

bool g_converges_prefix(const TernaryTable& t, std::span<const int> seq, int x, double eps,
                        std::size_t window) {
  t.space().require(x);
  const auto tail = prefix_window(t, seq, window);
  for (int a : tail)
    for (int b : tail)
      if (t(a, b, x) > eps) return false;
  return true;
}

}  // namespace gmfp
