#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "gmfp/contraction.hpp"

using namespace gmfp;

namespace {

double absdist(double a, double b) { return std::abs(a - b); }
double third(double t) { return t / 3.0; }
double half(double t) { return t / 2.0; }

std::vector<std::pair<double, double>> unit_grid_pairs(int count) {
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) grid.push_back(static_cast<double>(i) / (count - 1));
  std::vector<std::pair<double, double>> pairs;
  for (double a : grid)
    for (double b : grid) pairs.emplace_back(a, b);
  return pairs;
}

}  // namespace

TEST_CASE("orbital segments") {
  const FiniteMap to_zero{FiniteSpace(3), {0, 0, 0}};
  CHECK(orbital_segment<int>(to_zero, 1, 2) == std::vector<int>{1, 0, 0});

  const FiniteMap t{FiniteSpace(3), {0, 0, 1}};
  CHECK(orbital_segment<int>(t, 2, 3) == std::vector<int>{2, 1, 0, 0});
  CHECK(orbital_segment<int>(t, 2, 0) == std::vector<int>{2});
}

TEST_CASE("orbit functionals on the discrete collapse map") {
  const auto d = corpus::discrete_metric(3);
  const FiniteMap to_zero{FiniteSpace(3), {0, 0, 0}};
  CHECK(big_A<int>(d, to_zero, 1, 2) == 1.0);  // diam{1,0,2,0}
  CHECK(big_A<int>(d, to_zero, 0, 0) == 0.0);  // fixed point against itself
  CHECK(big_B<int>(d, to_zero, 0, 0) == 0.0);
  CHECK(big_P<int>(d, to_zero, 0, 0) == 0.0);
  CHECK(big_Q<int>(d, to_zero, 0, 0) == 0.0);
}

TEST_CASE("orbit functionals on the scaled oracle map") {
  // T(t) = t/3 at the pair (1, 0); every term below was evaluated by hand.
  CHECK(big_A<double>(absdist, third, 1.0, 0.0) == 1.0);  // diam{1, 1/3, 0, 0}
  CHECK(big_B<double>(absdist, third, 1.0, 0.0) == 1.0);  // diam{1, 1/3, 1/9, 0, 0}
  CHECK(big_P<double>(absdist, third, 1.0, 0.0) == 1.0);
  CHECK(big_Q<double>(absdist, third, 1.0, 0.0) == 1.0);

  // At (1, 1) the maxima come from two-leg terms instead.
  const double expected = 2.0 * (1.0 - 1.0 / 3.0);
  CHECK(big_P<double>(absdist, third, 1.0, 1.0) == expected);
  CHECK(big_Q<double>(absdist, third, 1.0, 1.0) == expected);
}

TEST_CASE("orbit functionals at fixed points") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const auto d = corpus::random_metric(n, rng());
    // A map fixing 0 and 1, collapsing everything else to 0.
    std::vector<int> image(static_cast<std::size_t>(n), 0);
    image[1] = 1;
    const FiniteMap T{FiniteSpace(n), std::move(image)};

    CHECK(big_A<int>(d, T, 0, 0) == 0.0);
    CHECK(big_B<int>(d, T, 0, 1) == d(0, 1));
    CHECK(big_B<int>(d, T, 1, 0) == d(1, 0));
    CHECK(big_P<int>(d, T, 0, 1) == 2.0 * d(0, 1));
    CHECK(big_Q<int>(d, T, 0, 1) == d(0, 1));
  }
}

TEST_CASE("the fifteen-term G-side functional") {
  const auto disc = corpus::discrete_g(3);
  const FiniteMap to_zero{FiniteSpace(3), {0, 0, 0}};
  CHECK(big_M(disc, to_zero, 1, 2, 0, 1e-9) == 1.0);
  CHECK(big_M(disc, to_zero, 0, 0, 0, 1e-9) == 0.0);

  const auto asym = corpus::asym_two_point_g();
  const FiniteMap z2{FiniteSpace(2), {0, 0}};
  CHECK(big_M(asym, z2, 0, 1, 1, 1e-9) == 2.0);  // the G(x,y,z) term attains it

  TernaryTable bad{FiniteSpace(2)};
  CHECK_THROWS_WITH_AS(big_M(bad, z2, 0, 0, 1, 1e-9), doctest::Contains("not-a-gmetric"), Error);
}

TEST_CASE("certify: trivial and boundary cases") {
  const auto d = corpus::discrete_metric(3);
  const FiniteMap to_zero{FiniteSpace(3), {0, 0, 0}};
  const auto cert = certify(d, to_zero, ContractionClass::ciric_alpha, 0.5, 1e-9);
  CHECK(cert.certified);
  CHECK(cert.max_ratio == 0.0);
  CHECK(cert.tuples_checked == 9);

  CHECK_THROWS_WITH_AS(certify(d, to_zero, ContractionClass::ciric_alpha, 1.0, 1e-9),
                       doctest::Contains("parameter-out-of-range"), Error);
  CHECK_THROWS_AS(certify(d, to_zero, ContractionClass::pq_gamma, 0.5, 1e-9), Error);
}

TEST_CASE("certify the scaled oracle maps over a sampled grid") {
  const auto pairs = unit_grid_pairs(21);

  const auto good = certify_pairs<double>(ContractionClass::pq_gamma, 0.34, nullptr, absdist,
                                          third, pairs, 1e-9, "21-point unit grid");
  CHECK(good.certified);
  CHECK(good.max_ratio <= 1.0 / 3.0 + 1e-12);
  CHECK(good.max_ratio > 0.0);

  const auto bad = certify_pairs<double>(ContractionClass::pq_gamma, 0.49, nullptr, absdist, half,
                                         pairs, 1e-9, "21-point unit grid");
  CHECK(!bad.certified);
  REQUIRE(bad.witness.size() == 2);
  CHECK(bad.witness[0] == 1.0);
  CHECK(bad.witness[1] == 0.0);
  CHECK(bad.witness_lhs == 0.5);
  CHECK(bad.witness_rhs == 0.49);
  CHECK(bad.max_ratio == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("certify flags the step map the rate check will also flag") {
  const auto d = corpus::discrete_metric(3);
  const FiniteMap t{FiniteSpace(3), {0, 0, 1}};
  CHECK(!certify(d, t, ContractionClass::pq_gamma, 0.4, 1e-9).certified);
}

TEST_CASE("certify with a gauge") {
  const auto pairs = unit_grid_pairs(21);
  const auto phi = ComparisonFunction::linear(1.0 / 3.0);
  const auto cert = certify_pairs<double>(ContractionClass::anticipative_phi, 0.0, &phi, absdist,
                                          third, pairs, 1e-9, "21-point unit grid");
  CHECK(cert.certified);

  const auto not_regressive = ComparisonFunction::linear(1.0);
  CHECK_THROWS_WITH_AS(
      certify_pairs<double>(ContractionClass::anticipative_phi, 0.0, &not_regressive, absdist,
                            third, pairs, 1e-9, ""),
      doctest::Contains("parameter-out-of-range"), Error);
}

TEST_CASE("A bounds below B; P and Q bound below 2B") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = corpus::corpus_n(rng());
    const auto G = random_gmetric(n, rng());
    const auto d = derive_metrics(G, 1e-9).d;
    const FiniteMap T = random_selfmap(n, rng());
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const double a = big_A<int>(d, T, x, y);
        const double b = big_B<int>(d, T, x, y);
        const double p = big_P<int>(d, T, x, y);
        const double q = big_Q<int>(d, T, x, y);
        CHECK(a <= b + 1e-12);
        CHECK(p <= 2.0 * b + 1e-12);
        CHECK(q <= 2.0 * b + 1e-12);
      }
  }
}

TEST_CASE("first-step bound: P and Q against consecutive step sums") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = corpus::corpus_n(rng());
    const auto d = corpus::random_metric(n, rng());
    const FiniteMap T = random_selfmap(n, rng());
    for (int x = 0; x < n; ++x) {
      const int tx = T(x);
      const double steps = d(x, tx) + d(tx, T(tx));
      CHECK(big_P<int>(d, T, x, tx) <= steps + 1e-12);
      CHECK(big_Q<int>(d, T, x, tx) <= steps + 1e-12);
    }
  }
}

TEST_CASE("certification chain: pq at gamma lifts to the B class at 2*gamma") {
  std::mt19937_64 rng(23);
  int certified_count = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = corpus::corpus_n(rng());
    const auto d = corpus::random_metric(n, rng());
    const FiniteMap T = trial % 2 == 0 ? FiniteMap{FiniteSpace(n), std::vector<int>(n, 0)}
                                       : random_selfmap(n, rng());
    const auto pq = certify(d, T, ContractionClass::pq_gamma, 0.49, 1e-9);
    if (!pq.certified) continue;
    ++certified_count;
    CHECK(certify(d, T, ContractionClass::anticipative_alpha, 0.98, 1e-9).certified);
  }
  CHECK(certified_count >= 20);  // at least the constant maps
}

TEST_CASE("certification chain: the G-side class descends to pq on the derived metric") {
  std::mt19937_64 rng(29);
  int certified_count = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = corpus::corpus_n(rng());
    const auto G = random_gmetric(n, rng());
    const FiniteMap T = trial % 2 == 0 ? FiniteMap{FiniteSpace(n), std::vector<int>(n, 0)}
                                       : random_selfmap(n, rng());
    const auto gm = certify_gm(G, T, 0.49, 1e-9);
    if (!gm.certified) continue;
    ++certified_count;
    const auto d = derive_metrics(G, 1e-9).d;
    CHECK(certify(d, T, ContractionClass::pq_gamma, 0.49, 1e-9).certified);
  }
  CHECK(certified_count >= 20);
}

TEST_CASE("reduction inequalities hold for arbitrary maps") {
  const auto disc = corpus::discrete_g(3);
  const FiniteMap to_zero{FiniteSpace(3), {0, 0, 0}};
  CHECK(check_reduction(disc, to_zero, 1e-9).empty());

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto G = random_gmetric(5, rng());
    const FiniteMap T = random_selfmap(5, rng());
    CHECK(check_reduction(G, T, 1e-9).empty());
  }

  const std::pair<int, int> just_one[] = {{1, 2}};
  CHECK(check_reduction(disc, to_zero, 1e-9, just_one).empty());
}
