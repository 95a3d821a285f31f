// Exercises the shared-library C surface end to end: every handle type, the
// status-code mapping, and the determinism guarantees the CLI builds on.
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "gmfp.h"

namespace {

const char* kAsymG = R"({
  "kind": "finite-gspace",
  "n": 2,
  "entries": [
    {"i": 0, "j": 0, "k": 1, "v": 1.0},
    {"i": 0, "j": 1, "k": 1, "v": 2.0}
  ],
  "T": [0, 0]
})";

struct SpaceHandle {
  gmfp_space* p = nullptr;
  ~SpaceHandle() { gmfp_space_free(p); }
};

}  // namespace

TEST_CASE("c api: parse, inspect, serialize") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(kAsymG, &sp.p) == GMFP_OK);
  CHECK(gmfp_space_kind(sp.p) == GMFP_KIND_FINITE_GSPACE);
  CHECK(gmfp_space_size(sp.p) == 2);
  CHECK(gmfp_space_has_map(sp.p) == 1);

  char* text = nullptr;
  REQUIRE(gmfp_space_serialize(sp.p, &text) == GMFP_OK);
  SpaceHandle again;
  REQUIRE(gmfp_space_parse(text, &again.p) == GMFP_OK);
  char* text2 = nullptr;
  REQUIRE(gmfp_space_serialize(again.p, &text2) == GMFP_OK);
  CHECK(std::string(text) == text2);
  gmfp_string_free(text);
  gmfp_string_free(text2);

  gmfp_space* bad = nullptr;
  const gmfp_status st = gmfp_space_parse(R"({"kind":"nope"})", &bad);
  CHECK(st == GMFP_ERR_PARSE);
  CHECK(std::string(gmfp_status_name(st)) == "parse-error");
  CHECK(std::string(gmfp_last_error_message()).find("kind") != std::string::npos);
}

TEST_CASE("c api: axiom checks and violation accessors") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(kAsymG, &sp.p) == GMFP_OK);
  gmfp_violations* v = nullptr;
  REQUIRE(gmfp_check(sp.p, "gmetric", 1e-9, 0, &v) == GMFP_OK);
  CHECK(gmfp_violations_axiom_count(v) == 0);
  gmfp_violations_free(v);

  // A broken table: zero off-diagonal plane value.
  SpaceHandle broken;
  REQUIRE(gmfp_space_parse(R"({"kind":"finite-gspace","n":2,"entries":[
      {"i":0,"j":0,"k":1,"v":0.0},{"i":0,"j":1,"k":1,"v":2.0}]})",
                           &broken.p) == GMFP_OK);
  REQUIRE(gmfp_check(broken.p, "gmetric", 1e-9, 0, &v) == GMFP_OK);
  REQUIRE(gmfp_violations_axiom_count(v) >= 1);
  bool plane = false;
  for (size_t a = 0; a < gmfp_violations_axiom_count(v); ++a) {
    if (std::string(gmfp_violations_axiom_id(v, a)) != "plane-sufficient") continue;
    plane = true;
    REQUIRE(gmfp_violations_witness_count(v, a) >= 1);
    int pts[3] = {-1, -1, -1};
    size_t npts = 0;
    double lhs = -1, rhs = -1;
    REQUIRE(gmfp_violations_witness(v, a, 0, pts, 3, &npts, &lhs, &rhs) == GMFP_OK);
    CHECK(npts == 3);
    CHECK(lhs == 0.0);
  }
  CHECK(plane);
  gmfp_violations_free(v);

  CHECK(gmfp_check(sp.p, "metric", 1e-9, 0, &v) == GMFP_ERR_UNSUPPORTED_KIND);
}

TEST_CASE("c api: derived tables and symmetry") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(kAsymG, &sp.p) == GMFP_OK);
  gmfp_derived* dm = nullptr;
  REQUIRE(gmfp_derive(sp.p, 1e-9, &dm) == GMFP_OK);
  double v = 0;
  REQUIRE(gmfp_derived_value(dm, 'b', 0, 1, &v) == GMFP_OK);
  CHECK(v == 2.0);
  REQUIRE(gmfp_derived_value(dm, 'e', 0, 1, &v) == GMFP_OK);
  CHECK(v == 3.0);
  for (char which : {'b', 'c', 'd', 'e'}) {
    gmfp_violations* viol = nullptr;
    REQUIRE(gmfp_derived_check(dm, which, 1e-9, &viol) == GMFP_OK);
    CHECK(gmfp_violations_axiom_count(viol) == 0);
    gmfp_violations_free(viol);
  }
  CHECK(gmfp_derived_value(dm, 'q', 0, 1, &v) == GMFP_ERR_INVALID_ARGUMENT);
  gmfp_derived_free(dm);

  int symmetric = -1, wx = -1, wy = -1;
  double bv = 0, cv = 0;
  REQUIRE(gmfp_is_symmetric(sp.p, 1e-9, &symmetric, &wx, &wy, &bv, &cv) == GMFP_OK);
  CHECK(symmetric == 0);
  CHECK(wx == 0);
  CHECK(wy == 1);
  CHECK(bv == 2.0);
  CHECK(cv == 1.0);
}

TEST_CASE("c api: gauges") {
  gmfp_phi* phi = nullptr;
  REQUIRE(gmfp_phi_parse("linear:0.5", &phi) == GMFP_OK);
  double y = 0;
  REQUIRE(gmfp_phi_eval(phi, 2.0, &y) == GMFP_OK);
  CHECK(y == 1.0);

  int verdict = -1;
  double witness = 0;
  REQUIRE(gmfp_phi_check(phi, "regressive", nullptr, 0, &verdict, &witness) == GMFP_OK);
  CHECK(verdict == GMFP_VERDICT_CLOSED_FORM);

  int n = 0;
  REQUIRE(gmfp_matkowski_iterate(phi, 1.0, 1e-6, 1000, &n) == GMFP_OK);
  CHECK(n == 20);

  double beta = 0;
  REQUIRE(gmfp_find_beta(phi, 1.0, 1e6, &beta) == GMFP_OK);
  CHECK(beta == 2.0);
  gmfp_phi_free(phi);

  gmfp_phi* stall = nullptr;
  REQUIRE(gmfp_phi_parse("pwl:0,0;1,0.5;2,1.5", &stall) == GMFP_OK);
  CHECK(gmfp_find_beta(stall, 1.0, 1e6, &beta) == GMFP_ERR_COERCIVITY_EVIDENCE_FAILED);
  gmfp_phi_free(stall);

  gmfp_phi* junk = nullptr;
  CHECK(gmfp_phi_parse("spline:2", &junk) == GMFP_ERR_PARSE);
}

TEST_CASE("c api: certification on an oracle space") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(R"({"kind":"oracle-1d","interval":[0.0,1.0],"T":"scale:2"})", &sp.p) ==
          GMFP_OK);
  gmfp_cert* cert = nullptr;
  REQUIRE(gmfp_certify(sp.p, "pq-gamma", 0.49, nullptr, 1e-9, 0, &cert) == GMFP_OK);
  CHECK(gmfp_cert_certified(cert) == 0);
  CHECK(gmfp_cert_max_ratio(cert) == doctest::Approx(0.5).epsilon(1e-12));
  double pts[2] = {-1, -1};
  size_t npts = 0;
  double lhs = 0, rhs = 0;
  REQUIRE(gmfp_cert_witness(cert, pts, 2, &npts, &lhs, &rhs) == GMFP_OK);
  CHECK(npts == 2);
  CHECK(pts[0] == 1.0);
  CHECK(pts[1] == 0.0);
  CHECK(lhs == 0.5);
  CHECK(rhs == 0.49);
  CHECK(std::string(gmfp_cert_sample_note(cert)).find("21-point") != std::string::npos);
  gmfp_cert_free(cert);

  CHECK(gmfp_certify(sp.p, "pq-gamma", 0.5, nullptr, 1e-9, 0, &cert) ==
        GMFP_ERR_PARAMETER_OUT_OF_RANGE);
  CHECK(gmfp_certify(sp.p, "gm-gamma", 0.4, nullptr, 1e-9, 0, &cert) == GMFP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: a stray gauge handle does not hijack other classes") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(
              R"({"kind":"finite-metric","n":3,"entries":[
                  {"i":0,"j":1,"v":1.0},{"i":0,"j":2,"v":4.0},{"i":1,"j":2,"v":4.0}],
                  "T":[0,0,1]})",
              &sp.p) == GMFP_OK);
  gmfp_phi* tiny = nullptr;
  REQUIRE(gmfp_phi_parse("linear:0.001", &tiny) == GMFP_OK);
  // As a gauge bound this map would refute; as a pq sweep it certifies.
  gmfp_cert* cert = nullptr;
  REQUIRE(gmfp_certify(sp.p, "anticipative-phi", 0.0, tiny, 1e-9, 0, &cert) == GMFP_OK);
  CHECK(gmfp_cert_certified(cert) == 0);
  gmfp_cert_free(cert);
  REQUIRE(gmfp_certify(sp.p, "pq-gamma", 0.3, tiny, 1e-9, 0, &cert) == GMFP_OK);
  CHECK(gmfp_cert_certified(cert) == 1);
  gmfp_cert_free(cert);
  gmfp_phi_free(tiny);
}

TEST_CASE("c api: solving and diagnostics") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(R"({"kind":"oracle-1d","interval":[0.0,1.0],"T":"scale:3"})", &sp.p) ==
          GMFP_OK);
  gmfp_trace* tr = nullptr;
  REQUIRE(gmfp_solve(sp.p, 1.0, 1e-9, 10000, &tr) == GMFP_OK);
  CHECK(gmfp_trace_stop_reason(tr) == GMFP_STOP_TOLERANCE);
  REQUIRE(gmfp_trace_has_candidate(tr));
  CHECK(std::abs(gmfp_trace_candidate(tr)) <= 1e-9);
  CHECK(gmfp_trace_len(tr) <= 26);
  CHECK(gmfp_trace_rho(tr, 0) == doctest::Approx(2.0 / 3.0));

  gmfp_phi* phi = nullptr;
  REQUIRE(gmfp_phi_parse("linear:0.3333333333333333", &phi) == GMFP_OK);
  double alpha = 0, beta = 0;
  int already_fixed = -1, prefix_ok = -1;
  size_t count = 0;
  REQUIRE(gmfp_beta_bound_check(sp.p, tr, phi, 1e6, 1e-12, &alpha, &beta, &already_fixed,
                                &prefix_ok, nullptr, 0, &count) == GMFP_OK);
  CHECK(already_fixed == 0);
  CHECK(prefix_ok == 1);
  CHECK(alpha == doctest::Approx(2.0 / 3.0));
  CHECK(beta == doctest::Approx(1.0));
  CHECK(count == gmfp_trace_len(tr));

  gmfp_envelope* env = nullptr;
  REQUIRE(gmfp_envelope_check(sp.p, tr, phi, beta, 1e-12, &env) == GMFP_OK);
  CHECK(gmfp_envelope_all_pass(env) == 1);
  CHECK(gmfp_envelope_rows(env) == gmfp_trace_len(tr));
  double tail = -1, bound = -1;
  int pass = -1;
  REQUIRE(gmfp_envelope_row(env, 1, &tail, &bound, &pass) == GMFP_OK);
  CHECK(pass == 1);
  CHECK(tail <= bound + 1e-12);
  gmfp_envelope_free(env);

  double rate = 0;
  int all_pass = -1;
  long first_fail = -2;
  REQUIRE(gmfp_rate_check(tr, 1.0 / 3.0, 1e-12, &rate, &all_pass, &first_fail) == GMFP_OK);
  CHECK(rate == doctest::Approx(0.5));
  CHECK(all_pass == 1);
  CHECK(first_fail == -1);
  gmfp_phi_free(phi);
  gmfp_trace_free(tr);
}

TEST_CASE("c api: finite solves, fixed points, prefix diagnostics") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(kAsymG, &sp.p) == GMFP_OK);

  gmfp_trace* tr = nullptr;
  REQUIRE(gmfp_solve(sp.p, 1.0, 0.0, 100, &tr) == GMFP_OK);
  CHECK(gmfp_trace_stop_reason(tr) == GMFP_STOP_FIXED_POINT);
  CHECK(gmfp_trace_candidate(tr) == 0.0);

  int fix[4];
  size_t nfix = 0;
  REQUIRE(gmfp_brute_fixpoints(sp.p, fix, 4, &nfix) == GMFP_OK);
  REQUIRE(nfix == 1);
  CHECK(fix[0] == 0);

  std::vector<int> seq;
  for (size_t i = 0; i < gmfp_trace_len(tr); ++i)
    seq.push_back(static_cast<int>(gmfp_trace_iterate(tr, i)));
  int holds = -1;
  REQUIRE(gmfp_g_converges_prefix(sp.p, seq.data(), seq.size(), 0, 1e-9, 2, &holds) == GMFP_OK);
  CHECK(holds == 1);
  REQUIRE(gmfp_g_cauchy_prefix(sp.p, seq.data(), seq.size(), 1e-9, 2, &holds) == GMFP_OK);
  CHECK(holds == 1);
  CHECK(gmfp_g_cauchy_prefix(sp.p, seq.data(), seq.size(), 1e-9, 99, &holds) ==
        GMFP_ERR_PREFIX_TOO_SHORT);
  gmfp_trace_free(tr);
}

TEST_CASE("c api: generation is deterministic") {
  gmfp_space *a = nullptr, *b = nullptr;
  REQUIRE(gmfp_space_gen_gspace(5, 42, 1, &a) == GMFP_OK);
  REQUIRE(gmfp_space_gen_gspace(5, 42, 1, &b) == GMFP_OK);
  char *ta = nullptr, *tb = nullptr;
  REQUIRE(gmfp_space_serialize(a, &ta) == GMFP_OK);
  REQUIRE(gmfp_space_serialize(b, &tb) == GMFP_OK);
  CHECK(std::string(ta) == tb);
  CHECK(gmfp_space_has_map(a) == 1);
  gmfp_string_free(ta);
  gmfp_string_free(tb);
  gmfp_space_free(a);
  gmfp_space_free(b);
}

TEST_CASE("c api: diameter queries need a metric table") {
  SpaceHandle sp;
  REQUIRE(gmfp_space_parse(
              R"({"kind":"finite-metric","n":3,"entries":[
                  {"i":0,"j":1,"v":1.0},{"i":0,"j":2,"v":2.0},{"i":1,"j":2,"v":1.0}]})",
              &sp.p) == GMFP_OK);
  const int subset[] = {0, 2};
  double out = 0;
  REQUIRE(gmfp_diam(sp.p, subset, 2, &out) == GMFP_OK);
  CHECK(out == 2.0);
  CHECK(gmfp_diam(sp.p, subset, 0, &out) == GMFP_ERR_EMPTY_SET_DIAMETER);

  SpaceHandle g;
  REQUIRE(gmfp_space_parse(kAsymG, &g.p) == GMFP_OK);
  CHECK(gmfp_diam(g.p, subset, 2, &out) == GMFP_ERR_UNSUPPORTED_KIND);
}
