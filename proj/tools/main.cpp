// gmfp command-line front end. Talks to the library exclusively through the
// C API in gmfp.h; everything here is argument handling, report assembly and
// exit-code policy.
//
// Exit codes: 0 all requested checks pass / certify, 1 refutation or
// violation, 2 input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gmfp.h"

using nlohmann::json;

namespace {

constexpr int kExitRefuted = 1;
constexpr int kExitInputError = 2;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& msg) { throw CliError{code, msg}; }

// A failing library status aborts the command. Data-driven findings
// (refutations, failed evidence) exit 1; malformed input exits 2.
int exit_code_for(gmfp_status st) {
  switch (st) {
    case GMFP_ERR_NOT_A_METRIC:
    case GMFP_ERR_NOT_A_GMETRIC:
    case GMFP_ERR_COERCIVITY_EVIDENCE_FAILED:
      return kExitRefuted;
    default:
      return kExitInputError;
  }
}

void require_ok(gmfp_status st) {
  if (st == GMFP_OK) return;
  // The library detail already leads with the stable identifier.
  std::string msg = gmfp_last_error_message();
  const std::string name = gmfp_status_name(st);
  if (msg.rfind(name, 0) != 0) msg = name + ": " + msg;
  die(exit_code_for(st), msg);
}

std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitInputError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct SpaceHandle {
  gmfp_space* p = nullptr;
  ~SpaceHandle() { gmfp_space_free(p); }
};
struct PhiHandle {
  gmfp_phi* p = nullptr;
  ~PhiHandle() { gmfp_phi_free(p); }
};
struct TraceHandle {
  gmfp_trace* p = nullptr;
  ~TraceHandle() { gmfp_trace_free(p); }
};

struct Session {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  long max_iter = 10000;
  double fp_tol = 1e-12;
  std::string report_path;

  std::string command_echo;
  json input = json::object();
  json results = json::array();
  int exit_code = 0;

  void load(const std::string& path, SpaceHandle& sp) {
    const std::string text = read_file(path);
    input["path"] = path;
    input["digest"] = "fnv1a:" + fnv1a_hex(text);
    require_ok(gmfp_space_parse(text.c_str(), &sp.p));
  }

  void finish() {
    if (report_path.empty()) return;
    json report;
    report["command"] = command_echo;
    report["input"] = input;
    report["options"] = {{"tol", tol}, {"seed", seed}, {"max_iter", max_iter}, {"fp_tol", fp_tol}};
    report["results"] = results;
    report["exit_status"] = exit_code;
    std::ofstream out(report_path, std::ios::binary);
    if (!out) die(kExitInputError, "cannot write report to '" + report_path + "'");
    out << report.dump(2) << "\n";
  }
};

constexpr std::size_t kWitnessReportCap = 100;

json violations_to_json(const gmfp_violations* v) {
  json axioms = json::array();
  for (std::size_t a = 0; a < gmfp_violations_axiom_count(v); ++a) {
    json witnesses = json::array();
    const std::size_t total = gmfp_violations_witness_count(v, a);
    for (std::size_t w = 0; w < std::min(total, kWitnessReportCap); ++w) {
      int pts[8];
      std::size_t npts = 0;
      double lhs = 0, rhs = 0;
      gmfp_violations_witness(v, a, w, pts, 8, &npts, &lhs, &rhs);
      json points = json::array();
      for (std::size_t i = 0; i < std::min<std::size_t>(npts, 8); ++i) points.push_back(pts[i]);
      witnesses.push_back({{"points", points}, {"lhs", lhs}, {"rhs", rhs}});
    }
    axioms.push_back({{"axiom", gmfp_violations_axiom_id(v, a)},
                      {"witness_count", total},
                      {"witnesses", witnesses}});
  }
  return axioms;
}

// Runs one axiom sweep, prints the verdict line and records it. Returns
// whether the table came back clean.
bool run_axiom_check(Session& s, const gmfp_space* sp, const std::string& axiom,
                     int lipschitz_cap) {
  gmfp_violations* v = nullptr;
  require_ok(gmfp_check(sp, axiom.c_str(), s.tol, lipschitz_cap, &v));
  const std::unique_ptr<gmfp_violations, void (*)(gmfp_violations*)> guard(v,
                                                                           gmfp_violations_free);
  const std::size_t axioms = gmfp_violations_axiom_count(v);
  std::size_t total = 0;
  for (std::size_t a = 0; a < axioms; ++a) total += gmfp_violations_witness_count(v, a);
  const bool pass = axioms == 0;
  s.results.push_back(
      {{"check", "axioms:" + axiom}, {"pass", pass}, {"violations", violations_to_json(v)}});
  if (pass) {
    std::cout << "check " << axiom << ": ok\n";
  } else {
    std::cout << "check " << axiom << ": FAIL (" << total << " witnesses across " << axioms
              << " axioms";
    for (std::size_t a = 0; a < axioms; ++a)
      std::cout << (a == 0 ? ": " : ", ") << gmfp_violations_axiom_id(v, a);
    std::cout << ")\n";
  }
  return pass;
}

json cert_to_json(const gmfp_cert* cert, const std::string& cls) {
  json out;
  out["check"] = "certify:" + cls;
  out["pass"] = gmfp_cert_certified(cert) != 0;
  out["max_ratio"] = gmfp_cert_max_ratio(cert);
  out["tuples_checked"] = gmfp_cert_tuples_checked(cert);
  out["sample"] = gmfp_cert_sample_note(cert);
  if (!gmfp_cert_certified(cert)) {
    double pts[3];
    std::size_t npts = 0;
    double lhs = 0, rhs = 0;
    gmfp_cert_witness(cert, pts, 3, &npts, &lhs, &rhs);
    json points = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(npts, 3); ++i) points.push_back(pts[i]);
    out["witness"] = {{"points", points}, {"lhs", lhs}, {"bound", rhs}};
  }
  return out;
}

std::string witness_line(const gmfp_cert* cert) {
  double pts[3];
  std::size_t npts = 0;
  double lhs = 0, rhs = 0;
  gmfp_cert_witness(cert, pts, 3, &npts, &lhs, &rhs);
  std::string out = "witness=(";
  for (std::size_t i = 0; i < std::min<std::size_t>(npts, 3); ++i)
    out += (i ? ", " : "") + fmt(pts[i]);
  out += ") lhs=" + fmt(lhs) + " bound=" + fmt(rhs);
  return out;
}

// Certification helper shared by `certify` and `reduce`.
bool run_certify(Session& s, const gmfp_space* sp, const std::string& cls, double param,
                 const gmfp_phi* phi, int samples) {
  gmfp_cert* cert = nullptr;
  require_ok(gmfp_certify(sp, cls.c_str(), param, phi, s.tol, samples, &cert));
  const std::unique_ptr<gmfp_cert, void (*)(gmfp_cert*)> guard(cert, gmfp_cert_free);
  json entry = cert_to_json(cert, cls);
  if (cls != "anticipative-phi") entry["parameter"] = param;
  s.results.push_back(entry);
  const bool pass = gmfp_cert_certified(cert) != 0;
  std::cout << "certify " << cls;
  if (cls != "anticipative-phi") std::cout << " parameter=" << fmt(param);
  if (pass)
    std::cout << ": certified max_ratio=" << fmt(gmfp_cert_max_ratio(cert)) << " tuples="
              << gmfp_cert_tuples_checked(cert) << "\n";
  else
    std::cout << ": REFUTED " << witness_line(cert)
              << " max_ratio=" << fmt(gmfp_cert_max_ratio(cert)) << "\n";
  return pass;
}

json trace_to_json(const gmfp_trace* tr, bool finite) {
  json iterates = json::array();
  json rho = json::array();
  for (std::size_t i = 0; i < gmfp_trace_len(tr); ++i) {
    const double v = gmfp_trace_iterate(tr, i);
    if (finite)
      iterates.push_back(static_cast<long>(v));
    else
      iterates.push_back(v);
    if (i + 1 < gmfp_trace_len(tr)) rho.push_back(gmfp_trace_rho(tr, i));
  }
  const char* reasons[] = {"fixed-point-hit", "tolerance-met", "max-iter"};
  json out;
  out["iterates"] = iterates;
  out["rho"] = rho;
  out["stop_reason"] = reasons[gmfp_trace_stop_reason(tr)];
  if (gmfp_trace_has_candidate(tr)) {
    const double c = gmfp_trace_candidate(tr);
    if (finite)
      out["candidate"] = static_cast<long>(c);
    else
      out["candidate"] = c;
  }
  long start = 0, length = 0;
  if (gmfp_trace_cycle(tr, &start, &length))
    out["cycle"] = {{"start", start}, {"length", length}};
  return out;
}

bool run_solve(Session& s, const gmfp_space* sp, double x0, TraceHandle& tr) {
  require_ok(gmfp_solve(sp, x0, s.fp_tol, s.max_iter, &tr.p));
  const bool finite = gmfp_space_kind(sp) != GMFP_KIND_ORACLE_1D;
  json entry = trace_to_json(tr.p, finite);
  entry["check"] = "solve";
  const int stop = gmfp_trace_stop_reason(tr.p);
  const bool pass = stop != GMFP_STOP_MAX_ITER;
  entry["pass"] = pass;
  entry["x0"] = finite ? json(static_cast<long>(x0)) : json(x0);
  s.results.push_back(entry);
  std::cout << "solve x0=" << fmt(x0) << ": " << entry["stop_reason"].get<std::string>()
            << " after " << (gmfp_trace_len(tr.p) - 1) << " steps";
  if (gmfp_trace_has_candidate(tr.p))
    std::cout << ", candidate=" << fmt(gmfp_trace_candidate(tr.p));
  long cs = 0, cl = 0;
  if (gmfp_trace_cycle(tr.p, &cs, &cl)) std::cout << ", cycle of length " << cl;
  std::cout << "\n";
  return pass;
}

// ----------------------------------------------------------------- commands

int cmd_check(Session& s, const std::string& file, std::vector<std::string> axioms,
              int lipschitz_cap) {
  SpaceHandle sp;
  s.load(file, sp);
  const int kind = gmfp_space_kind(sp.p);
  if (kind == GMFP_KIND_ORACLE_1D)
    die(kExitInputError, "oracle spaces have no finite tables to check");
  if (axioms.empty()) axioms = {kind == GMFP_KIND_FINITE_METRIC ? "metric" : "gmetric"};
  if (axioms.size() == 1 && axioms[0] == "all") {
    if (kind == GMFP_KIND_FINITE_METRIC) {
      axioms = {"metric", "almost-metric"};
    } else {
      axioms = {"gmetric", "dmetric", "consequences", "chain", "strong-triangle"};
      const int cap = lipschitz_cap > 0 ? lipschitz_cap : 12;
      if (gmfp_space_size(sp.p) <= cap)
        axioms.push_back("lipschitz");
      else
        std::cout << "check lipschitz: skipped (carrier above cap " << cap << ")\n";
    }
  }
  bool all_pass = true;
  for (const auto& ax : axioms) all_pass = run_axiom_check(s, sp.p, ax, lipschitz_cap) && all_pass;
  std::cout << "overall: " << (all_pass ? "ok" : "FAIL") << "\n";
  return all_pass ? 0 : kExitRefuted;
}

int cmd_derive(Session& s, const std::string& file) {
  SpaceHandle sp;
  s.load(file, sp);
  gmfp_derived* dm = nullptr;
  require_ok(gmfp_derive(sp.p, s.tol, &dm));
  const std::unique_ptr<gmfp_derived, void (*)(gmfp_derived*)> guard(dm, gmfp_derived_free);
  const int n = gmfp_space_size(sp.p);

  bool all_pass = true;
  json tables = json::object();
  for (char which : {'b', 'c', 'd', 'e'}) {
    json rows = json::array();
    for (int x = 0; x < n; ++x) {
      json row = json::array();
      for (int y = 0; y < n; ++y) {
        double v = 0;
        require_ok(gmfp_derived_value(dm, which, x, y, &v));
        row.push_back(v);
      }
      rows.push_back(row);
    }
    tables[std::string(1, which)] = rows;

    gmfp_violations* v = nullptr;
    require_ok(gmfp_derived_check(dm, which, s.tol, &v));
    const std::unique_ptr<gmfp_violations, void (*)(gmfp_violations*)> vguard(
        v, gmfp_violations_free);
    const bool pass = gmfp_violations_axiom_count(v) == 0;
    const std::string contract = (which == 'b' || which == 'c') ? "almost-metric" : "metric";
    s.results.push_back({{"check", std::string("derived:") + which + ":" + contract},
                         {"pass", pass},
                         {"violations", violations_to_json(v)}});
    std::cout << "derived " << which << " (" << contract << "): " << (pass ? "ok" : "FAIL")
              << "\n";
    all_pass = all_pass && pass;
  }
  s.results.push_back({{"check", "derived:tables"}, {"pass", true}, {"tables", tables}});

  int symmetric = 0, wx = -1, wy = -1;
  double bv = 0, cv = 0;
  require_ok(gmfp_is_symmetric(sp.p, s.tol, &symmetric, &wx, &wy, &bv, &cv));
  json sym = {{"check", "symmetric"}, {"pass", true}, {"symmetric", symmetric != 0}};
  if (!symmetric) {
    sym["witness"] = {{"points", {wx, wy}}, {"b", bv}, {"c", cv}};
    std::cout << "symmetric: no (b(" << wx << "," << wy << ")=" << fmt(bv) << " vs c=" << fmt(cv)
              << ")\n";
  } else {
    std::cout << "symmetric: yes\n";
  }
  s.results.push_back(sym);
  std::cout << "overall: " << (all_pass ? "ok" : "FAIL") << "\n";
  return all_pass ? 0 : kExitRefuted;
}

std::string normalize_class(const std::string& cls) {
  if (cls == "ciric") return "ciric-alpha";
  if (cls == "anticipative") return "anticipative-alpha";
  if (cls == "phi") return "anticipative-phi";
  if (cls == "pq") return "pq-gamma";
  if (cls == "gm") return "gm-gamma";
  return cls;
}

int cmd_certify(Session& s, const std::string& file, const std::string& raw_cls,
                std::optional<double> alpha, std::optional<double> gamma,
                const std::string& phi_spec, int samples) {
  const std::string cls = normalize_class(raw_cls);
  SpaceHandle sp;
  s.load(file, sp);
  PhiHandle phi;
  double param = 0.0;
  if (cls == "anticipative-phi") {
    if (phi_spec.empty()) die(kExitInputError, "--phi is required for class anticipative-phi");
    require_ok(gmfp_phi_parse(phi_spec.c_str(), &phi.p));
  } else if (cls == "pq-gamma" || cls == "gm-gamma") {
    if (!gamma) die(kExitInputError, "--gamma is required for class " + cls);
    param = *gamma;
  } else {
    if (!alpha) die(kExitInputError, "--alpha is required for class " + cls);
    param = *alpha;
  }
  return run_certify(s, sp.p, cls, param, phi.p, samples) ? 0 : kExitRefuted;
}

int cmd_solve(Session& s, const std::string& file, double x0) {
  SpaceHandle sp;
  s.load(file, sp);
  TraceHandle tr;
  return run_solve(s, sp.p, x0, tr) ? 0 : kExitRefuted;
}

int cmd_oracle(Session& s, const std::string& file) {
  SpaceHandle sp;
  s.load(file, sp);
  std::vector<int> fix(static_cast<std::size_t>(std::max(1, gmfp_space_size(sp.p))));
  std::size_t count = 0;
  require_ok(gmfp_brute_fixpoints(sp.p, fix.data(), fix.size(), &count));
  json points = json::array();
  std::cout << "fixed points:";
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(fix[i]);
    std::cout << " " << fix[i];
  }
  if (count == 0) std::cout << " (none)";
  std::cout << "\n";
  s.results.push_back(
      {{"check", "fixed-points"}, {"pass", true}, {"count", count}, {"points", points}});
  return 0;
}

int cmd_gen(Session& s, int n, bool with_map, const std::string& out_path) {
  SpaceHandle sp;
  require_ok(gmfp_space_gen_gspace(n, s.seed, with_map ? 1 : 0, &sp.p));
  char* text = nullptr;
  require_ok(gmfp_space_serialize(sp.p, &text));
  const std::unique_ptr<char, void (*)(char*)> guard(text, gmfp_string_free);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) die(kExitInputError, "cannot write '" + out_path + "'");
    out << text;
  }
  s.input = {{"generated", true}, {"n", n}, {"seed", s.seed}, {"with_map", with_map}};
  s.results.push_back({{"check", "gen"}, {"pass", true}, {"digest", "fnv1a:" + fnv1a_hex(text)}});
  return 0;
}

int cmd_diagnose(Session& s, const std::string& file, double x0, const std::string& phi_spec,
                 std::optional<double> gamma, double eps, std::size_t window, double search_cap) {
  SpaceHandle sp;
  s.load(file, sp);
  TraceHandle tr;
  bool all_pass = run_solve(s, sp.p, x0, tr);

  PhiHandle phi;
  if (!phi_spec.empty()) {
    require_ok(gmfp_phi_parse(phi_spec.c_str(), &phi.p));
    double alpha = 0, beta = 0;
    int already_fixed = 0, prefix_ok = 0;
    std::size_t count = 0;
    const gmfp_status st = gmfp_beta_bound_check(sp.p, tr.p, phi.p, search_cap, s.tol, &alpha,
                                                 &beta, &already_fixed, &prefix_ok, nullptr, 0,
                                                 &count);
    if (st == GMFP_ERR_COERCIVITY_EVIDENCE_FAILED) {
      s.results.push_back(
          {{"check", "beta-bound"}, {"pass", false}, {"error", gmfp_status_name(st)}});
      std::cout << "beta-bound: FAIL (coercivity-evidence-failed)\n";
      all_pass = false;
    } else {
      require_ok(st);
      const bool pass = prefix_ok != 0;
      s.results.push_back({{"check", "beta-bound"},
                           {"pass", pass},
                           {"alpha", alpha},
                           {"beta", beta},
                           {"already_fixed", already_fixed != 0}});
      std::cout << "beta-bound: " << (pass ? "ok" : "FAIL") << " alpha=" << fmt(alpha)
                << " beta=" << fmt(beta) << (already_fixed ? " (already fixed)" : "") << "\n";
      all_pass = all_pass && pass;

      if (!already_fixed) {
        gmfp_envelope* env = nullptr;
        require_ok(gmfp_envelope_check(sp.p, tr.p, phi.p, beta, s.tol, &env));
        const std::unique_ptr<gmfp_envelope, void (*)(gmfp_envelope*)> eguard(env,
                                                                              gmfp_envelope_free);
        const bool epass = gmfp_envelope_all_pass(env) != 0;
        json rows = json::array();
        for (std::size_t i = 0; i < gmfp_envelope_rows(env); ++i) {
          double tail = 0, bound = 0;
          int pass_row = 0;
          gmfp_envelope_row(env, i, &tail, &bound, &pass_row);
          rows.push_back({{"tail_diam", tail}, {"bound", bound}, {"pass", pass_row != 0}});
        }
        s.results.push_back({{"check", "envelope"}, {"pass", epass}, {"rows", rows}});
        std::cout << "envelope: " << (epass ? "ok" : "FAIL") << " (" << gmfp_envelope_rows(env)
                  << " rows)\n";
        all_pass = all_pass && epass;
      }
    }
  }

  if (gamma) {
    double rate = 0;
    int rate_pass = 0;
    long first_fail = -1;
    require_ok(gmfp_rate_check(tr.p, *gamma, s.tol, &rate, &rate_pass, &first_fail));
    json entry = {{"check", "rate"}, {"pass", rate_pass != 0}, {"gamma", *gamma}, {"rate", rate}};
    if (!rate_pass) entry["first_fail"] = first_fail;
    s.results.push_back(entry);
    std::cout << "rate gamma=" << fmt(*gamma) << ": " << (rate_pass ? "ok" : "FAIL")
              << " rate=" << fmt(rate);
    if (!rate_pass) std::cout << " first_fail=n" << first_fail;
    std::cout << "\n";
    all_pass = all_pass && rate_pass != 0;
  }

  if (gmfp_space_kind(sp.p) == GMFP_KIND_FINITE_GSPACE && gmfp_trace_has_candidate(tr.p)) {
    std::vector<int> seq;
    for (std::size_t i = 0; i < gmfp_trace_len(tr.p); ++i)
      seq.push_back(static_cast<int>(gmfp_trace_iterate(tr.p, i)));
    const std::size_t w = std::min<std::size_t>(window, seq.size());
    const int z = static_cast<int>(gmfp_trace_candidate(tr.p));
    int conv = 0, cauchy = 0;
    require_ok(gmfp_g_converges_prefix(sp.p, seq.data(), seq.size(), z, eps, w, &conv));
    require_ok(gmfp_g_cauchy_prefix(sp.p, seq.data(), seq.size(), eps, w, &cauchy));
    s.results.push_back(
        {{"check", "g-convergence-prefix"}, {"pass", conv != 0}, {"eps", eps}, {"window", w}});
    s.results.push_back(
        {{"check", "g-cauchy-prefix"}, {"pass", cauchy != 0}, {"eps", eps}, {"window", w}});
    std::cout << "g-convergence prefix: " << (conv ? "ok" : "FAIL") << "\n";
    std::cout << "g-cauchy prefix: " << (cauchy ? "ok" : "FAIL") << "\n";
    all_pass = all_pass && conv != 0 && cauchy != 0;
  }

  std::cout << "overall: " << (all_pass ? "ok" : "FAIL") << "\n";
  return all_pass ? 0 : kExitRefuted;
}

// The full reduction pipeline: verify the G-axioms, certify the G-side
// contraction, pass to the derived metric, certify the metric-side class,
// then solve and cross-check against brute force and the G-side convergence
// diagnostic.
int cmd_reduce(Session& s, const std::string& file, double gamma, double eps,
               std::size_t window) {
  SpaceHandle sp;
  s.load(file, sp);
  if (gmfp_space_kind(sp.p) != GMFP_KIND_FINITE_GSPACE)
    die(kExitInputError, "reduce needs a finite-gspace file");
  if (!gmfp_space_has_map(sp.p)) die(kExitInputError, "reduce needs a selfmap T in the file");

  std::cout << "reduce gamma=" << fmt(gamma) << "\n";
  if (!run_axiom_check(s, sp.p, "gmetric", 0)) return kExitRefuted;
  if (!run_certify(s, sp.p, "gm-gamma", gamma, nullptr, 0)) return kExitRefuted;

  {
    gmfp_derived* dm = nullptr;
    require_ok(gmfp_derive(sp.p, s.tol, &dm));
    const std::unique_ptr<gmfp_derived, void (*)(gmfp_derived*)> guard(dm, gmfp_derived_free);
    bool contracts = true;
    for (char which : {'b', 'c', 'd', 'e'}) {
      gmfp_violations* v = nullptr;
      require_ok(gmfp_derived_check(dm, which, s.tol, &v));
      contracts = contracts && gmfp_violations_axiom_count(v) == 0;
      gmfp_violations_free(v);
    }
    s.results.push_back({{"check", "derived-contracts"}, {"pass", contracts}});
    std::cout << "derived metrics b,c,d,e: " << (contracts ? "ok" : "FAIL") << "\n";
    if (!contracts) return kExitRefuted;
  }

  if (!run_axiom_check(s, sp.p, "strong-triangle", 0)) return kExitRefuted;

  {
    gmfp_violations* v = nullptr;
    require_ok(gmfp_check_reduction(sp.p, s.tol, &v));
    const std::unique_ptr<gmfp_violations, void (*)(gmfp_violations*)> guard(
        v, gmfp_violations_free);
    const bool pass = gmfp_violations_axiom_count(v) == 0;
    s.results.push_back({{"check", "reduction-inequalities"},
                         {"pass", pass},
                         {"violations", violations_to_json(v)}});
    std::cout << "reduction inequalities: " << (pass ? "ok" : "FAIL") << "\n";
    if (!pass) return kExitRefuted;
  }

  if (!run_certify(s, sp.p, "pq-gamma", gamma, nullptr, 0)) return kExitRefuted;

  const int n = gmfp_space_size(sp.p);
  std::vector<int> fix(static_cast<std::size_t>(n));
  std::size_t nfix = 0;
  require_ok(gmfp_brute_fixpoints(sp.p, fix.data(), fix.size(), &nfix));
  json solve_entry = {{"check", "solve-all-starts"}, {"fixed_point_count", nfix}};
  if (nfix != 1) {
    solve_entry["pass"] = false;
    s.results.push_back(solve_entry);
    std::cout << "solve: FAIL (expected exactly one fixed point, found " << nfix << ")\n";
    return kExitRefuted;
  }
  const int z = fix[0];
  bool solve_pass = true;
  bool prefix_pass = true;
  for (int x0 = 0; x0 < n; ++x0) {
    TraceHandle tr;
    require_ok(gmfp_solve(sp.p, x0, 0.0, s.max_iter, &tr.p));
    const bool converged = gmfp_trace_stop_reason(tr.p) == GMFP_STOP_FIXED_POINT &&
                           gmfp_trace_has_candidate(tr.p) &&
                           static_cast<int>(gmfp_trace_candidate(tr.p)) == z;
    solve_pass = solve_pass && converged;
    std::vector<int> seq;
    for (std::size_t i = 0; i < gmfp_trace_len(tr.p); ++i)
      seq.push_back(static_cast<int>(gmfp_trace_iterate(tr.p, i)));
    int conv = 0;
    const std::size_t w = std::min<std::size_t>(window, seq.size());
    require_ok(gmfp_g_converges_prefix(sp.p, seq.data(), seq.size(), z, eps, w, &conv));
    prefix_pass = prefix_pass && conv != 0;
  }
  solve_entry["pass"] = solve_pass;
  solve_entry["fixed_point"] = z;
  s.results.push_back(solve_entry);
  std::cout << "solve from all " << n << " starts: " << (solve_pass ? "ok" : "FAIL")
            << " (fixed point " << z << ")\n";
  s.results.push_back({{"check", "g-convergence-prefix"}, {"pass", prefix_pass}, {"eps", eps}});
  std::cout << "g-convergence prefix: " << (prefix_pass ? "ok" : "FAIL") << "\n";

  const bool all = solve_pass && prefix_pass;
  std::cout << "overall: " << (all ? "ok" : "FAIL") << "\n";
  return all ? 0 : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  Session s;
  {
    // The echo skips --report so the report bytes do not depend on their own
    // destination path.
    std::string echo;
    for (int i = 0; i < argc; ++i) {
      const std::string_view arg = argv[i];
      if (arg == "--report") {
        ++i;
        continue;
      }
      if (!echo.empty()) echo += ' ';
      echo += arg;
    }
    s.command_echo = echo;
  }

  CLI::App app{"fixed-point solver and axiom verifier for generalized metric spaces"};
  app.require_subcommand(1);
  app.add_option("--tol", s.tol, "comparison tolerance")->capture_default_str();
  app.add_option("--seed", s.seed, "generator seed")->capture_default_str();
  app.add_option("--max-iter", s.max_iter, "iteration cap")->capture_default_str();
  app.add_option("--fp-tol", s.fp_tol, "fixed-point stopping tolerance")->capture_default_str();
  app.add_option("--report", s.report_path, "write a JSON report to this path");

  std::string file, cls, phi_spec, out_path;
  std::vector<std::string> axioms;
  int lipschitz_cap = 0, samples = 0, gen_n = 5;
  bool with_map = false;
  double x0 = 0;
  std::optional<double> alpha, gamma;
  double eps = 1e-9, search_cap = 1e6;
  std::size_t window = 2;

  auto* check = app.add_subcommand("check", "verify axiom sets on a space file");
  check->add_option("file", file)->required();
  check->add_option("--axioms", axioms,
                    "metric, almost-metric, gmetric, dmetric, consequences, "
                    "chain, lipschitz, strong-triangle, all")
      ->delimiter(',');
  check->add_option("--lipschitz-cap", lipschitz_cap, "carrier cap for the O(n^6) sweep");

  auto* derive = app.add_subcommand("derive", "derive b, c, d, e and verify their contracts");
  derive->add_option("file", file)->required();

  auto* certify = app.add_subcommand("certify", "certify a contraction class");
  certify->add_option("file", file)->required();
  certify
      ->add_option("--class", cls,
                   "ciric-alpha, anticipative-alpha, anticipative-phi, pq-gamma, gm-gamma")
      ->required();
  certify->add_option("--alpha", alpha, "parameter for the alpha classes");
  certify->add_option("--gamma", gamma, "parameter for the gamma classes");
  certify->add_option("--phi", phi_spec, "gauge, e.g. linear:0.5 or pwl:0,0;1,0.9");
  certify->add_option("--samples", samples, "oracle grid size (default 21)");

  auto* reduce = app.add_subcommand("reduce", "run the G-side to metric-side reduction pipeline");
  reduce->add_option("file", file)->required();
  reduce->add_option("--gamma", gamma, "G-side contraction parameter")->required();
  reduce->add_option("--eps", eps, "prefix diagnostic tolerance")->capture_default_str();
  reduce->add_option("--window", window, "prefix diagnostic window")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "run Picard iteration from a start point");
  solve->add_option("file", file)->required();
  solve->add_option("--x0", x0, "start point (label or real)")->required();

  auto* diagnose = app.add_subcommand("diagnose", "solve plus quantitative convergence checks");
  diagnose->add_option("file", file)->required();
  diagnose->add_option("--x0", x0, "start point (label or real)")->required();
  diagnose->add_option("--phi", phi_spec, "gauge for the orbit-bound and envelope checks");
  diagnose->add_option("--gamma", gamma, "parameter for the step-ratio check");
  diagnose->add_option("--eps", eps, "prefix diagnostic tolerance")->capture_default_str();
  diagnose->add_option("--window", window, "prefix diagnostic window")->capture_default_str();
  diagnose->add_option("--search-cap", search_cap, "cap for the coercivity search")
      ->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "enumerate fixed points by brute force");
  oracle->add_option("file", file)->required();

  auto* gen = app.add_subcommand("gen", "generate a random G-metric space file");
  gen->add_option("--n", gen_n, "carrier size")->required();
  gen->add_flag("--with-map", with_map, "include a random selfmap");
  gen->add_option("-o,--output", out_path, "write here instead of stdout");

  // Global flags may follow the subcommand (`gmfp gen --n 5 --seed 42`).
  for (auto* sc : {check, derive, certify, reduce, solve, diagnose, oracle, gen})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }

  try {
    if (check->parsed())
      s.exit_code = cmd_check(s, file, axioms, lipschitz_cap);
    else if (derive->parsed())
      s.exit_code = cmd_derive(s, file);
    else if (certify->parsed())
      s.exit_code = cmd_certify(s, file, cls, alpha, gamma, phi_spec, samples);
    else if (reduce->parsed())
      s.exit_code = cmd_reduce(s, file, *gamma, eps, window);
    else if (solve->parsed())
      s.exit_code = cmd_solve(s, file, x0);
    else if (diagnose->parsed())
      s.exit_code = cmd_diagnose(s, file, x0, phi_spec, gamma, eps, window, search_cap);
    else if (oracle->parsed())
      s.exit_code = cmd_oracle(s, file);
    else if (gen->parsed())
      s.exit_code = cmd_gen(s, gen_n, with_map, out_path);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    s.exit_code = e.code;
    s.results.push_back({{"check", "error"}, {"pass", false}, {"message", e.message}});
  }

  try {
    s.finish();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitInputError;
  }
  return s.exit_code;
}
