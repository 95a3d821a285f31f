#include "gmfp/spacefile.hpp"

#include <cmath>
#include <set>
#include <tuple>

#include <json.hpp>

namespace gmfp {

using nlohmann::json;

const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::finite_metric: return "finite-metric";
    case SpaceKind::finite_gspace: return "finite-gspace";
    case SpaceKind::oracle_1d: return "oracle-1d";
  }
  return "?";
}

namespace {

enum class MapKind { identity, scale, affine };

struct ParsedMap {
  MapKind kind = MapKind::identity;
  double a = 0.0;
  double b = 0.0;
};

ParsedMap parse_map_id(std::string_view id) {
  if (id == "identity") return {MapKind::identity, 0.0, 0.0};
  const auto colon = id.find(':');
  const std::string_view head = id.substr(0, colon);
  const std::string args(colon == std::string_view::npos ? "" : id.substr(colon + 1));
  try {
    if (head == "scale") {
      const double k = std::stod(args);
      if (k == 0.0 || !std::isfinite(k)) throw Error(errid::parse_error, "scale needs k != 0");
      return {MapKind::scale, k, 0.0};
    }
    if (head == "affine") {
      const auto comma = args.find(',');
      if (comma == std::string::npos)
        throw Error(errid::parse_error, "affine needs two coefficients");
      return {MapKind::affine, std::stod(args.substr(0, comma)), std::stod(args.substr(comma + 1))};
    }
  } catch (const Error&) {
    throw;
  } catch (...) {
    // fall through to the generic complaint
  }
  throw Error(errid::parse_error, "unknown oracle map '" + std::string(id) + "'");
}

[[noreturn]] void fail(const char* id, const std::string& detail) { throw Error(id, detail); }

const json& field(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(errid::parse_error, std::string(where) + ": missing field '" + key + "'");
  return *it;
}

int int_field(const json& obj, const char* key, const char* where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer())
    fail(errid::parse_error, std::string(where) + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

double value_field(const json& obj, const char* where) {
  const json& v = field(obj, "v", where);
  if (!v.is_number()) fail(errid::parse_error, std::string(where) + ": field 'v' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(errid::parse_error, std::string(where) + ": field 'v' must be finite");
  if (d < 0.0) fail(errid::negative_value, std::string(where) + ": field 'v' must be nonnegative");
  return d;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) fail(errid::parse_error, std::string(where) + ": unknown field '" + it.key() + "'");
  }
}

std::optional<FiniteMap> parse_finite_map(const json& root, int n) {
  auto it = root.find("T");
  if (it == root.end()) return std::nullopt;
  if (!it->is_array()) fail(errid::parse_error, "T: must be an array of point labels");
  if (static_cast<int>(it->size()) != n)
    fail(errid::parse_error, "T: must list exactly one image per carrier point");
  std::vector<int> image;
  for (const json& e : *it) {
    if (!e.is_number_integer()) fail(errid::parse_error, "T: entries must be integers");
    image.push_back(e.get<int>());
  }
  return FiniteMap(FiniteSpace(n), std::move(image));  // range errors surface from here
}

bool parse_assertions(const json& root) {
  auto it = root.find("assertions");
  if (it == root.end()) return false;
  if (!it->is_object()) fail(errid::parse_error, "assertions: must be an object");
  reject_unknown_keys(*it, {"complete"}, "assertions");
  auto c = it->find("complete");
  if (c == it->end()) return false;
  if (!c->is_boolean()) fail(errid::parse_error, "assertions.complete: must be a boolean");
  return c->get<bool>();
}

std::string entry_where(std::size_t idx) { return "entries[" + std::to_string(idx) + "]"; }

}  // namespace

double OracleSpec::apply(double t) const {
  const ParsedMap m = parse_map_id(map_id);
  switch (m.kind) {
    case MapKind::identity: return t;
    case MapKind::scale: return t / m.a;
    case MapKind::affine: return m.a * t + m.b;
  }
  return t;
}

double OracleSpec::dist(double a, double b) { return std::abs(a - b); }

std::vector<double> OracleSpec::sample_grid(int count) const {
  if (count < 2) throw Error(errid::invalid_argument, "sample grid needs at least two points");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  return out;
}

void OracleSpec::validate_map_id(std::string_view id) { (void)parse_map_id(id); }

SpaceFile SpaceFile::from_metric(BinaryTable table, std::optional<FiniteMap> map) {
  SpaceFile sf;
  sf.kind = SpaceKind::finite_metric;
  sf.n = table.size();
  if (map && map->size() != sf.n)
    throw Error(errid::invalid_argument, "table and selfmap live on different carriers");
  sf.metric = std::move(table);
  sf.selfmap = std::move(map);
  return sf;
}

SpaceFile SpaceFile::from_gtable(TernaryTable table, std::optional<FiniteMap> map) {
  SpaceFile sf;
  sf.kind = SpaceKind::finite_gspace;
  sf.n = table.size();
  if (map && map->size() != sf.n)
    throw Error(errid::invalid_argument, "table and selfmap live on different carriers");
  sf.gtable = std::move(table);
  sf.selfmap = std::move(map);
  return sf;
}

SpaceFile SpaceFile::parse(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(errid::parse_error, e.what());
  }
  if (!root.is_object()) throw Error(errid::parse_error, "space file must be a JSON object");

  const json& kind_v = field(root, "kind", "space file");
  if (!kind_v.is_string()) fail(errid::parse_error, "kind: must be a string");
  const std::string kind_s = kind_v.get<std::string>();

  SpaceFile sf;
  if (kind_s == "oracle-1d") {
    sf.kind = SpaceKind::oracle_1d;
    reject_unknown_keys(root, {"kind", "interval", "T", "assertions"}, "space file");
    const json& iv = field(root, "interval", "space file");
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
      fail(errid::parse_error, "interval: must be [lo, hi]");
    OracleSpec spec;
    spec.lo = iv[0].get<double>();
    spec.hi = iv[1].get<double>();
    if (!(spec.lo < spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi))
      fail(errid::parse_error, "interval: lo must be below hi and both finite");
    if (auto it = root.find("T"); it != root.end()) {
      if (!it->is_string()) fail(errid::parse_error, "T: oracle maps are named by a string id");
      spec.map_id = it->get<std::string>();
      OracleSpec::validate_map_id(spec.map_id);
    }
    sf.oracle = std::move(spec);
    sf.asserted_complete = parse_assertions(root);
    return sf;
  }

  if (kind_s != "finite-metric" && kind_s != "finite-gspace")
    fail(errid::parse_error, "kind: expected finite-metric, finite-gspace or oracle-1d");
  sf.kind = kind_s == "finite-metric" ? SpaceKind::finite_metric : SpaceKind::finite_gspace;
  reject_unknown_keys(root, {"kind", "n", "entries", "T", "assertions"}, "space file");

  sf.n = int_field(root, "n", "space file");
  if (sf.n < 1) fail(errid::parse_error, "n: carrier needs at least one point");
  const FiniteSpace sp(sf.n);

  const json& entries = field(root, "entries", "space file");
  if (!entries.is_array()) fail(errid::parse_error, "entries: must be an array");

  if (sf.kind == SpaceKind::finite_metric) {
    BinaryTable table(sp);
    std::set<std::pair<int, int>> seen;
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
      const json& e = entries[idx];
      const std::string where = entry_where(idx);
      if (!e.is_object()) fail(errid::parse_error, where + ": must be an object");
      reject_unknown_keys(e, {"i", "j", "v"}, where.c_str());
      const int i = int_field(e, "i", where.c_str());
      const int j = int_field(e, "j", where.c_str());
      if (i < 0 || i >= sf.n || j < 0 || j >= sf.n)
        fail(errid::index_out_of_range, where + ": index outside 0.." + std::to_string(sf.n - 1));
      if (!(i < j)) fail(errid::parse_error, where + ": expected i < j");
      if (!seen.emplace(i, j).second)
        fail(errid::duplicate_key, where + ": pair {" + std::to_string(i) + "," +
                                       std::to_string(j) + "} listed twice");
      table.set_sym(i, j, value_field(e, where.c_str()));
    }
    for (int i = 0; i < sf.n; ++i)
      for (int j = i + 1; j < sf.n; ++j)
        if (!seen.count({i, j}))
          fail(errid::missing_entry, "table is not total: pair {" + std::to_string(i) + "," +
                                         std::to_string(j) + "} absent");
    sf.metric = std::move(table);
  } else {
    TernaryTable table(sp);
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
      const json& e = entries[idx];
      const std::string where = entry_where(idx);
      if (!e.is_object()) fail(errid::parse_error, where + ": must be an object");
      reject_unknown_keys(e, {"i", "j", "k", "v"}, where.c_str());
      const int i = int_field(e, "i", where.c_str());
      const int j = int_field(e, "j", where.c_str());
      const int k = int_field(e, "k", where.c_str());
      if (i < 0 || i >= sf.n || j < 0 || j >= sf.n || k < 0 || k >= sf.n)
        fail(errid::index_out_of_range, where + ": index outside 0.." + std::to_string(sf.n - 1));
      if (!(i <= j && j <= k)) fail(errid::parse_error, where + ": expected i <= j <= k");
      if (i == j && j == k)
        fail(errid::parse_error, where + ": all-equal triples are implicitly zero");
      if (!seen.emplace(i, j, k).second)
        fail(errid::duplicate_key, where + ": triple {" + std::to_string(i) + "," +
                                       std::to_string(j) + "," + std::to_string(k) +
                                       "} listed twice");
      table.set(i, j, k, value_field(e, where.c_str()));
    }
    for (int i = 0; i < sf.n; ++i)
      for (int j = i; j < sf.n; ++j)
        for (int k = j; k < sf.n; ++k) {
          if (i == j && j == k) continue;
          if (!seen.count({i, j, k}))
            fail(errid::missing_entry, "table is not total: triple {" + std::to_string(i) + "," +
                                           std::to_string(j) + "," + std::to_string(k) +
                                           "} absent");
        }
    sf.gtable = std::move(table);
  }

  sf.selfmap = parse_finite_map(root, sf.n);
  sf.asserted_complete = parse_assertions(root);
  return sf;
}

std::string SpaceFile::serialize() const {
  json root;
  root["kind"] = to_string(kind);
  if (kind == SpaceKind::oracle_1d) {
    root["interval"] = json::array({oracle->lo, oracle->hi});
    root["T"] = oracle->map_id;
  } else {
    root["n"] = n;
    json entries = json::array();
    if (kind == SpaceKind::finite_metric) {
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          entries.push_back(json{{"i", i}, {"j", j}, {"v", (*metric)(i, j)}});
    } else {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          for (int k = j; k < n; ++k) {
            if (i == j && j == k) continue;
            entries.push_back(json{{"i", i}, {"j", j}, {"k", k}, {"v", (*gtable)(i, j, k)}});
          }
    }
    root["entries"] = std::move(entries);
    if (selfmap) root["T"] = selfmap->image();
  }
  if (asserted_complete) root["assertions"] = json{{"complete", true}};
  return root.dump(2) + "\n";
}

}  // namespace gmfp
