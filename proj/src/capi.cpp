#include "gmfp.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <string>

#include "gmfp/comparison.hpp"
#include "gmfp/contraction.hpp"
#include "gmfp/gmetric.hpp"
#include "gmfp/metric.hpp"
#include "gmfp/picard.hpp"
#include "gmfp/spacefile.hpp"

using namespace gmfp;

struct gmfp_space {
  SpaceFile sf;
};
struct gmfp_violations {
  ViolationList list;
};
struct gmfp_derived {
  DerivedMetrics dm;
};
struct gmfp_phi {
  ComparisonFunction fn;
};
struct gmfp_cert {
  Certificate<double> cert;  // points normalised to doubles
  std::string cls_name;
};
struct gmfp_trace {
  std::vector<double> iterates;
  std::vector<double> rho;
  int stop = GMFP_STOP_MAX_ITER;
  bool has_candidate = false;
  double candidate = 0.0;
  bool cycle = false;
  long cycle_start = -1;
  long cycle_length = 0;
  bool finite = false;
};
struct gmfp_envelope {
  EnvelopeReport rep;
};

namespace {

thread_local std::string g_last_error;

gmfp_status status_from_id(const std::string& id) {
  if (id == errid::invalid_argument) return GMFP_ERR_INVALID_ARGUMENT;
  if (id == errid::empty_set_diameter) return GMFP_ERR_EMPTY_SET_DIAMETER;
  if (id == errid::not_a_metric) return GMFP_ERR_NOT_A_METRIC;
  if (id == errid::not_a_gmetric) return GMFP_ERR_NOT_A_GMETRIC;
  if (id == errid::carrier_too_large) return GMFP_ERR_CARRIER_TOO_LARGE;
  if (id == errid::prefix_too_short) return GMFP_ERR_PREFIX_TOO_SHORT;
  if (id == errid::empty_grid) return GMFP_ERR_EMPTY_GRID;
  if (id == errid::nonpositive_argument) return GMFP_ERR_NONPOSITIVE_ARGUMENT;
  if (id == errid::nonpositive_alpha) return GMFP_ERR_NONPOSITIVE_ALPHA;
  if (id == errid::parameter_out_of_range) return GMFP_ERR_PARAMETER_OUT_OF_RANGE;
  if (id == errid::coercivity_evidence_failed) return GMFP_ERR_COERCIVITY_EVIDENCE_FAILED;
  if (id == errid::missing_entry) return GMFP_ERR_MISSING_ENTRY;
  if (id == errid::index_out_of_range) return GMFP_ERR_INDEX_OUT_OF_RANGE;
  if (id == errid::negative_value) return GMFP_ERR_NEGATIVE_VALUE;
  if (id == errid::duplicate_key) return GMFP_ERR_DUPLICATE_KEY;
  if (id == errid::parse_error) return GMFP_ERR_PARSE;
  return GMFP_ERR_INTERNAL;
}

template <class Fn>
gmfp_status wrap(Fn&& fn) {
  try {
    fn();
    return GMFP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from_id(e.id());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GMFP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GMFP_ERR_INTERNAL;
  }
}

gmfp_status fail(gmfp_status st, const char* msg) {
  g_last_error = msg;
  return st;
}

// Distance callable on double-encoded points for any space kind; finite
// G-spaces measure under the derived metric d.
struct SpaceDistance {
  std::optional<BinaryTable> table;
  bool oracle = false;

  double operator()(double a, double b) const {
    if (oracle) return OracleSpec::dist(a, b);
    return (*table)(static_cast<int>(a), static_cast<int>(b));
  }
};

SpaceDistance space_distance(const SpaceFile& sf, double tol) {
  SpaceDistance d;
  switch (sf.kind) {
    case SpaceKind::finite_metric:
      d.table = *sf.metric;
      break;
    case SpaceKind::finite_gspace:
      d.table = derive_metrics(*sf.gtable, tol).d;
      break;
    case SpaceKind::oracle_1d:
      d.oracle = true;
      break;
  }
  return d;
}

const TernaryTable& need_gtable(const SpaceFile& sf) {
  if (sf.kind != SpaceKind::finite_gspace)
    throw Error(errid::invalid_argument, "this operation needs a finite-gspace file");
  return *sf.gtable;
}

const FiniteMap& need_map(const SpaceFile& sf) {
  if (!sf.selfmap) throw Error(errid::invalid_argument, "space file carries no selfmap T");
  return *sf.selfmap;
}

}  // namespace

extern "C" {

const char* gmfp_status_name(gmfp_status st) {
  switch (st) {
    case GMFP_OK: return "ok";
    case GMFP_ERR_INVALID_ARGUMENT: return errid::invalid_argument;
    case GMFP_ERR_EMPTY_SET_DIAMETER: return errid::empty_set_diameter;
    case GMFP_ERR_NOT_A_METRIC: return errid::not_a_metric;
    case GMFP_ERR_NOT_A_GMETRIC: return errid::not_a_gmetric;
    case GMFP_ERR_CARRIER_TOO_LARGE: return errid::carrier_too_large;
    case GMFP_ERR_PREFIX_TOO_SHORT: return errid::prefix_too_short;
    case GMFP_ERR_EMPTY_GRID: return errid::empty_grid;
    case GMFP_ERR_NONPOSITIVE_ARGUMENT: return errid::nonpositive_argument;
    case GMFP_ERR_NONPOSITIVE_ALPHA: return errid::nonpositive_alpha;
    case GMFP_ERR_PARAMETER_OUT_OF_RANGE: return errid::parameter_out_of_range;
    case GMFP_ERR_COERCIVITY_EVIDENCE_FAILED: return errid::coercivity_evidence_failed;
    case GMFP_ERR_MISSING_ENTRY: return errid::missing_entry;
    case GMFP_ERR_INDEX_OUT_OF_RANGE: return errid::index_out_of_range;
    case GMFP_ERR_NEGATIVE_VALUE: return errid::negative_value;
    case GMFP_ERR_DUPLICATE_KEY: return errid::duplicate_key;
    case GMFP_ERR_PARSE: return errid::parse_error;
    case GMFP_ERR_UNSUPPORTED_KIND: return "unsupported-kind";
    case GMFP_ERR_INTERNAL: return "internal";
  }
  return "?";
}

const char* gmfp_last_error_message(void) { return g_last_error.c_str(); }

const char* gmfp_version(void) { return "0.1.0"; }

void gmfp_string_free(char* s) { delete[] s; }

gmfp_status gmfp_space_parse(const char* json_text, gmfp_space** out) {
  if (!json_text || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] { *out = new gmfp_space{SpaceFile::parse(json_text)}; });
}

gmfp_status gmfp_space_serialize(const gmfp_space* sp, char** out_text) {
  if (!sp || !out_text) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const std::string s = sp->sf.serialize();
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out_text = buf;
  });
}

gmfp_status gmfp_space_gen_gspace(int n, uint64_t seed, int with_map, gmfp_space** out) {
  if (!out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    TernaryTable t = random_gmetric(n, seed);
    std::optional<FiniteMap> map;
    if (with_map) map = random_selfmap(n, seed + 0x9e3779b97f4a7c15ull);
    *out = new gmfp_space{SpaceFile::from_gtable(std::move(t), std::move(map))};
  });
}

void gmfp_space_free(gmfp_space* sp) { delete sp; }

int gmfp_space_kind(const gmfp_space* sp) {
  switch (sp->sf.kind) {
    case SpaceKind::finite_metric: return GMFP_KIND_FINITE_METRIC;
    case SpaceKind::finite_gspace: return GMFP_KIND_FINITE_GSPACE;
    case SpaceKind::oracle_1d: return GMFP_KIND_ORACLE_1D;
  }
  return -1;
}

int gmfp_space_size(const gmfp_space* sp) { return sp->sf.finite() ? sp->sf.n : 0; }

int gmfp_space_has_map(const gmfp_space* sp) { return sp->sf.has_map() ? 1 : 0; }

gmfp_status gmfp_check(const gmfp_space* sp, const char* axiom, double tol, int lipschitz_cap,
                       gmfp_violations** out) {
  if (!sp || !axiom || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  const std::string ax = axiom;
  const bool binary = ax == "metric" || ax == "almost-metric";
  if (binary && sp->sf.kind != SpaceKind::finite_metric)
    return fail(GMFP_ERR_UNSUPPORTED_KIND, "binary axioms apply to finite-metric files");
  if (!binary && sp->sf.kind != SpaceKind::finite_gspace)
    return fail(GMFP_ERR_UNSUPPORTED_KIND, "ternary axioms apply to finite-gspace files");
  return wrap([&] {
    ViolationList list;
    if (ax == "metric")
      list = check_metric(*sp->sf.metric, tol);
    else if (ax == "almost-metric")
      list = check_almost_metric(*sp->sf.metric, tol);
    else if (ax == "gmetric")
      list = check_gmetric(*sp->sf.gtable, tol);
    else if (ax == "dmetric")
      list = check_dmetric(*sp->sf.gtable, tol);
    else if (ax == "consequences")
      list = check_consequences(*sp->sf.gtable, tol);
    else if (ax == "chain")
      list = check_chain(*sp->sf.gtable, tol);
    else if (ax == "lipschitz")
      list = check_lipschitz(*sp->sf.gtable, tol,
                             lipschitz_cap > 0 ? lipschitz_cap : kDefaultLipschitzCap);
    else if (ax == "strong-triangle")
      list = check_strong_triangle(*sp->sf.gtable, tol);
    else
      throw Error(errid::invalid_argument, "unknown axiom set '" + ax + "'");
    *out = new gmfp_violations{std::move(list)};
  });
}

size_t gmfp_violations_axiom_count(const gmfp_violations* v) { return v->list.size(); }

const char* gmfp_violations_axiom_id(const gmfp_violations* v, size_t axiom) {
  if (axiom >= v->list.size()) return "";
  return v->list[axiom].axiom_id.c_str();
}

size_t gmfp_violations_witness_count(const gmfp_violations* v, size_t axiom) {
  if (axiom >= v->list.size()) return 0;
  return v->list[axiom].witnesses.size();
}

gmfp_status gmfp_violations_witness(const gmfp_violations* v, size_t axiom, size_t index, int* pts,
                                    size_t cap, size_t* npts, double* lhs, double* rhs) {
  if (!v || axiom >= v->list.size() || index >= v->list[axiom].witnesses.size())
    return fail(GMFP_ERR_INVALID_ARGUMENT, "witness index out of range");
  const Witness& w = v->list[axiom].witnesses[index];
  if (npts) *npts = w.points.size();
  if (pts)
    for (size_t i = 0; i < std::min(cap, w.points.size()); ++i) pts[i] = w.points[i];
  if (lhs) *lhs = w.lhs;
  if (rhs) *rhs = w.rhs;
  return GMFP_OK;
}

void gmfp_violations_free(gmfp_violations* v) { delete v; }

gmfp_status gmfp_derive(const gmfp_space* sp, double tol, gmfp_derived** out) {
  if (!sp || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] { *out = new gmfp_derived{derive_metrics(need_gtable(sp->sf), tol)}; });
}

namespace {
const BinaryTable& pick_derived(const gmfp_derived* dm, char which) {
  switch (which) {
    case 'b': return dm->dm.b;
    case 'c': return dm->dm.c;
    case 'd': return dm->dm.d;
    case 'e': return dm->dm.e;
    default: throw Error(errid::invalid_argument, "derived tables are named b, c, d, e");
  }
}
}  // namespace

gmfp_status gmfp_derived_value(const gmfp_derived* dm, char which, int x, int y, double* out) {
  if (!dm || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] { *out = pick_derived(dm, which)(x, y); });
}

gmfp_status gmfp_derived_check(const gmfp_derived* dm, char which, double tol,
                               gmfp_violations** out) {
  if (!dm || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const BinaryTable& t = pick_derived(dm, which);
    *out = new gmfp_violations{(which == 'b' || which == 'c') ? check_almost_metric(t, tol)
                                                              : check_metric(t, tol)};
  });
}

void gmfp_derived_free(gmfp_derived* dm) { delete dm; }

gmfp_status gmfp_is_symmetric(const gmfp_space* sp, double tol, int* symmetric, int* wx, int* wy,
                              double* b_value, double* c_value) {
  if (!sp || !symmetric) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const SymmetryResult r = is_symmetric(need_gtable(sp->sf), tol);
    *symmetric = r.symmetric ? 1 : 0;
    if (wx) *wx = r.x;
    if (wy) *wy = r.y;
    if (b_value) *b_value = r.b_value;
    if (c_value) *c_value = r.c_value;
  });
}

gmfp_status gmfp_phi_parse(const char* spec, gmfp_phi** out) {
  if (!spec || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] { *out = new gmfp_phi{parse_phi(spec)}; });
}

gmfp_status gmfp_phi_eval(const gmfp_phi* phi, double t, double* out) {
  if (!phi || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] { *out = phi->fn(t); });
}

void gmfp_phi_free(gmfp_phi* phi) { delete phi; }

gmfp_status gmfp_phi_check(const gmfp_phi* phi, const char* property, const double* grid,
                           size_t grid_len, int* verdict, double* witness) {
  if (!phi || !property || !verdict) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    std::vector<double> g;
    if (grid && grid_len > 0)
      g.assign(grid, grid + grid_len);
    else
      g = default_grid();
    const std::string prop = property;
    PropertyVerdict v;
    if (prop == "increasing")
      v = check_increasing(phi->fn, g);
    else if (prop == "regressive")
      v = check_regressive(phi->fn, g);
    else if (prop == "super-regressive")
      v = check_super_regressive(phi->fn, g);
    else
      throw Error(errid::invalid_argument, "unknown gauge property '" + prop + "'");
    switch (v.status) {
      case PropertyVerdict::Status::verified_closed_form: *verdict = GMFP_VERDICT_CLOSED_FORM; break;
      case PropertyVerdict::Status::verified_on_grid: *verdict = GMFP_VERDICT_ON_GRID; break;
      case PropertyVerdict::Status::refuted: *verdict = GMFP_VERDICT_REFUTED; break;
    }
    if (witness) *witness = v.witness.value_or(0.0);
  });
}

gmfp_status gmfp_matkowski_iterate(const gmfp_phi* phi, double t, double tol, int max_iter,
                                   int* n_out) {
  if (!phi || !n_out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const auto n = matkowski_iterate(phi->fn, t, tol, max_iter);
    *n_out = n ? *n : -1;
  });
}

gmfp_status gmfp_find_beta(const gmfp_phi* phi, double alpha, double search_cap, double* beta) {
  if (!phi || !beta) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const auto b = find_beta(phi->fn, alpha, search_cap);
    if (!b)
      throw Error(errid::coercivity_evidence_failed,
                  "the gauge complement never clears alpha below the cap");
    *beta = *b;
  });
}

gmfp_status gmfp_certify(const gmfp_space* sp, const char* cls_name, double param,
                         const gmfp_phi* phi, double tol, int samples, gmfp_cert** out) {
  if (!sp || !cls_name || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  const auto cls = contraction_class_from(cls_name);
  if (!cls) return fail(GMFP_ERR_INVALID_ARGUMENT, "unknown contraction class");
  return wrap([&] {
    const ComparisonFunction* gauge = phi ? &phi->fn : nullptr;
    if (*cls == ContractionClass::anticipative_phi && !gauge)
      throw Error(errid::invalid_argument, "the phi class needs a gauge (--phi)");

    Certificate<double> cert;
    std::string note;
    if (sp->sf.kind == SpaceKind::oracle_1d) {
      if (*cls == ContractionClass::gm_gamma)
        throw Error(errid::invalid_argument, "the G-side class needs a finite-gspace file");
      const OracleSpec& os = *sp->sf.oracle;
      const int count = samples > 0 ? samples : 21;
      const auto grid = os.sample_grid(count);
      std::vector<std::pair<double, double>> pairs;
      pairs.reserve(grid.size() * grid.size());
      for (double a : grid)
        for (double b : grid) pairs.emplace_back(a, b);
      note = "all ordered pairs of an evenly spaced " + std::to_string(count) +
             "-point grid on the interval";
      const auto map = [&os](double t) { return os.apply(t); };
      cert = certify_pairs<double>(*cls, param, gauge, &OracleSpec::dist, map,
                                   std::span<const std::pair<double, double>>(pairs), tol, note);
    } else {
      const FiniteMap& T = need_map(sp->sf);
      Certificate<int> fc;
      if (*cls == ContractionClass::gm_gamma) {
        fc = certify_gm(need_gtable(sp->sf), T, param, tol);
      } else {
        const BinaryTable d = sp->sf.kind == SpaceKind::finite_metric
                                  ? *sp->sf.metric
                                  : derive_metrics(*sp->sf.gtable, tol).d;
        fc = *cls == ContractionClass::anticipative_phi ? certify(d, T, *gauge, tol)
                                                        : certify(d, T, *cls, param, tol);
      }
      cert.cls = fc.cls;
      cert.parameter = fc.parameter;
      cert.certified = fc.certified;
      cert.witness.assign(fc.witness.begin(), fc.witness.end());
      cert.witness_lhs = fc.witness_lhs;
      cert.witness_rhs = fc.witness_rhs;
      cert.max_ratio = fc.max_ratio;
      cert.tuples_checked = fc.tuples_checked;
      cert.sample_note = fc.sample_note;
    }
    *out = new gmfp_cert{std::move(cert), to_string(*cls)};
  });
}

int gmfp_cert_certified(const gmfp_cert* c) { return c->cert.certified ? 1 : 0; }
double gmfp_cert_max_ratio(const gmfp_cert* c) { return c->cert.max_ratio; }
size_t gmfp_cert_tuples_checked(const gmfp_cert* c) { return c->cert.tuples_checked; }
const char* gmfp_cert_sample_note(const gmfp_cert* c) { return c->cert.sample_note.c_str(); }

gmfp_status gmfp_cert_witness(const gmfp_cert* c, double* pts, size_t cap, size_t* npts,
                              double* lhs, double* rhs) {
  if (!c) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  if (npts) *npts = c->cert.witness.size();
  if (pts)
    for (size_t i = 0; i < std::min(cap, c->cert.witness.size()); ++i) pts[i] = c->cert.witness[i];
  if (lhs) *lhs = c->cert.witness_lhs;
  if (rhs) *rhs = c->cert.witness_rhs;
  return GMFP_OK;
}

void gmfp_cert_free(gmfp_cert* c) { delete c; }

gmfp_status gmfp_check_reduction(const gmfp_space* sp, double tol, gmfp_violations** out) {
  if (!sp || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    *out = new gmfp_violations{check_reduction(need_gtable(sp->sf), need_map(sp->sf), tol)};
  });
}

gmfp_status gmfp_solve(const gmfp_space* sp, double x0, double fp_tol, long max_iter,
                       gmfp_trace** out) {
  if (!sp || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    auto tr = std::make_unique<gmfp_trace>();
    if (sp->sf.kind == SpaceKind::oracle_1d) {
      const OracleSpec& os = *sp->sf.oracle;
      const auto map = [&os](double t) { return os.apply(t); };
      const auto pt = iterate_oracle(&OracleSpec::dist, map, x0, fp_tol, max_iter);
      tr->iterates = pt.iterates;
      tr->rho = pt.rho;
      tr->stop = static_cast<int>(pt.stop_reason);
      tr->has_candidate = pt.candidate.has_value();
      tr->candidate = pt.candidate.value_or(0.0);
    } else {
      const FiniteMap& T = need_map(sp->sf);
      const BinaryTable d = sp->sf.kind == SpaceKind::finite_metric
                                ? *sp->sf.metric
                                : derive_metrics(*sp->sf.gtable, 1e-9).d;
      const int label = static_cast<int>(x0);
      if (static_cast<double>(label) != x0)
        throw Error(errid::invalid_argument, "finite carriers take integer start labels");
      const auto pt = iterate(d, T, label, fp_tol, max_iter);
      tr->iterates.assign(pt.iterates.begin(), pt.iterates.end());
      tr->rho = pt.rho;
      tr->stop = static_cast<int>(pt.stop_reason);
      tr->has_candidate = pt.candidate.has_value();
      tr->candidate = pt.candidate ? static_cast<double>(*pt.candidate) : 0.0;
      tr->cycle = pt.cycle_detected;
      tr->cycle_start = pt.cycle_start;
      tr->cycle_length = pt.cycle_length;
      tr->finite = true;
    }
    *out = tr.release();
  });
}

size_t gmfp_trace_len(const gmfp_trace* t) { return t->iterates.size(); }
double gmfp_trace_iterate(const gmfp_trace* t, size_t i) {
  return i < t->iterates.size() ? t->iterates[i] : 0.0;
}
double gmfp_trace_rho(const gmfp_trace* t, size_t i) { return i < t->rho.size() ? t->rho[i] : 0.0; }
int gmfp_trace_stop_reason(const gmfp_trace* t) { return t->stop; }
int gmfp_trace_has_candidate(const gmfp_trace* t) { return t->has_candidate ? 1 : 0; }
double gmfp_trace_candidate(const gmfp_trace* t) { return t->candidate; }

int gmfp_trace_cycle(const gmfp_trace* t, long* start, long* length) {
  if (start) *start = t->cycle_start;
  if (length) *length = t->cycle_length;
  return t->cycle ? 1 : 0;
}

void gmfp_trace_free(gmfp_trace* t) { delete t; }

namespace {

PicardTrace<double> rebuild_trace(const gmfp_trace* t) {
  PicardTrace<double> pt;
  pt.iterates = t->iterates;
  pt.rho = t->rho;
  pt.x0 = t->iterates.empty() ? 0.0 : t->iterates.front();
  return pt;
}

}  // namespace

gmfp_status gmfp_beta_bound_check(const gmfp_space* sp, const gmfp_trace* t, const gmfp_phi* phi,
                                  double search_cap, double tol, double* alpha, double* beta,
                                  int* already_fixed, int* prefix_ok, double* prefix_diam,
                                  size_t cap, size_t* count) {
  if (!sp || !t || !phi) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const SpaceDistance d = space_distance(sp->sf, tol);
    const auto h = beta_bound_check(d, rebuild_trace(t), phi->fn, search_cap, tol);
    if (alpha) *alpha = h.alpha;
    if (beta) *beta = h.beta;
    if (already_fixed) *already_fixed = h.already_fixed ? 1 : 0;
    if (prefix_ok) *prefix_ok = h.prefix_ok ? 1 : 0;
    if (count) *count = h.prefix_diam.size();
    if (prefix_diam)
      for (size_t i = 0; i < std::min(cap, h.prefix_diam.size()); ++i)
        prefix_diam[i] = h.prefix_diam[i];
  });
}

gmfp_status gmfp_envelope_check(const gmfp_space* sp, const gmfp_trace* t, const gmfp_phi* phi,
                                double beta, double tol, gmfp_envelope** out) {
  if (!sp || !t || !phi || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const SpaceDistance d = space_distance(sp->sf, tol);
    *out = new gmfp_envelope{envelope_check(d, rebuild_trace(t), phi->fn, beta, tol)};
  });
}

size_t gmfp_envelope_rows(const gmfp_envelope* e) { return e->rep.rows.size(); }

gmfp_status gmfp_envelope_row(const gmfp_envelope* e, size_t n, double* tail_diam, double* bound,
                              int* pass) {
  if (!e || n >= e->rep.rows.size()) return fail(GMFP_ERR_INVALID_ARGUMENT, "row out of range");
  if (tail_diam) *tail_diam = e->rep.rows[n].tail_diam;
  if (bound) *bound = e->rep.rows[n].bound;
  if (pass) *pass = e->rep.rows[n].pass ? 1 : 0;
  return GMFP_OK;
}

int gmfp_envelope_all_pass(const gmfp_envelope* e) { return e->rep.all_pass ? 1 : 0; }

void gmfp_envelope_free(gmfp_envelope* e) { delete e; }

gmfp_status gmfp_rate_check(const gmfp_trace* t, double gamma, double tol, double* rate,
                            int* all_pass, long* first_fail) {
  if (!t) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const auto rep = rate_check(std::span<const double>(t->rho), gamma, tol);
    if (rate) *rate = rep.rate;
    if (all_pass) *all_pass = rep.all_pass ? 1 : 0;
    if (first_fail) *first_fail = rep.first_fail;
  });
}

gmfp_status gmfp_brute_fixpoints(const gmfp_space* sp, int* out, size_t cap, size_t* count) {
  if (!sp || !count) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    const auto fix = brute_fixpoints(need_map(sp->sf));
    *count = fix.size();
    if (out)
      for (size_t i = 0; i < std::min(cap, fix.size()); ++i) out[i] = fix[i];
  });
}

gmfp_status gmfp_g_converges_prefix(const gmfp_space* sp, const int* seq, size_t len, int x,
                                    double eps, size_t window, int* holds) {
  if (!sp || !seq || !holds) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    *holds = g_converges_prefix(need_gtable(sp->sf), std::span<const int>(seq, len), x, eps,
                                window)
                 ? 1
                 : 0;
  });
}

gmfp_status gmfp_g_cauchy_prefix(const gmfp_space* sp, const int* seq, size_t len, double eps,
                                 size_t window, int* holds) {
  if (!sp || !seq || !holds) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  return wrap([&] {
    *holds = g_cauchy_prefix(need_gtable(sp->sf), std::span<const int>(seq, len), eps, window)
                 ? 1
                 : 0;
  });
}

gmfp_status gmfp_diam(const gmfp_space* sp, const int* subset, size_t len, double* out) {
  if (!sp || !subset || !out) return fail(GMFP_ERR_INVALID_ARGUMENT, "null argument");
  if (sp->sf.kind != SpaceKind::finite_metric)
    return fail(GMFP_ERR_UNSUPPORTED_KIND, "diameter queries need a finite-metric file");
  return wrap([&] { *out = diam(*sp->sf.metric, std::span<const int>(subset, len)); });
}

}  // extern "C"
