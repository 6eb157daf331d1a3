#include "whittaker/io.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "whittaker/error.hpp"

namespace whittaker::io {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::InvalidConfig, field + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(path.empty() ? key : path + "." + key, "required");
  return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* x) { return k == x; }) == keys.end()) {
      bad(path.empty() ? k : path + "." + k, "unknown field");
    }
  }
}

int int_field(const Json& j, const std::string& field, int min) {
  if (!j.is_number_integer()) bad(field, "expected an integer");
  const auto v = j.get<long long>();
  if (v < min || v > 1000000) bad(field, "out of range");
  return static_cast<int>(v);
}

std::string string_field(const Json& j, const std::string& field) {
  if (!j.is_string()) bad(field, "expected a string");
  return j.get<std::string>();
}

std::vector<Rational> rational_list(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of rationals");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::string format_value(const std::vector<Rational>& v) {
  if (v.size() == 1) return format_rational(v[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
  return s + "]";
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

RootSpec parse_root(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  only_keys(j, {"type", "rank"}, path);
  RootSpec r;
  r.type = string_field(require(j, "type", path), path + ".type");
  r.rank = int_field(require(j, "rank", path), path + ".rank", 1);
  try {
    build_root_system(r.type, r.rank);
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return r;
}

Truncation parse_truncation(const Json& j, const std::string& path, Truncation t) {
  if (!j.is_object()) bad(path, "expected an object");
  only_keys(j, {"depth", "factor_degree", "window"}, path);
  if (j.contains("depth")) t.depth = int_field(j["depth"], path + ".depth", 0);
  if (j.contains("factor_degree")) t.factor_degree = int_field(j["factor_degree"], path + ".factor_degree", 0);
  if (j.contains("window")) t.window = int_field(j["window"], path + ".window", 0);
  return t;
}

ModuleDescriptor parse_module(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  only_keys(j, {"family", "psi", "lambda", "omega", "casimir", "summands"}, path);
  ModuleDescriptor d;
  const std::string fam = string_field(require(j, "family", path), path + ".family");
  try {
    d.family = parse_family(fam);
  } catch (const Error&) {
    bad(path + ".family", "expected verma, mcdowell, universal_sl2 or direct_sum");
  }
  if (j.contains("psi")) d.psi = rational_list(j["psi"], path + ".psi");
  if (j.contains("lambda")) d.lambda = rational_list(j["lambda"], path + ".lambda");
  if (j.contains("omega")) d.omega = rational_list(j["omega"], path + ".omega");
  if (j.contains("casimir")) d.casimir = rational_list(j["casimir"], path + ".casimir");
  if (j.contains("summands")) {
    const auto& s = j["summands"];
    if (!s.is_array()) bad(path + ".summands", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) d.summands.push_back(parse_module(s[i], path + ".summands[" + std::to_string(i) + "]"));
  }
  if (d.family == Family::DirectSum && d.summands.empty()) bad(path + ".summands", "required for direct_sum");
  return d;
}

// Builds the module once so parameter errors surface before any computation.
void check_module(const ModuleDescriptor& d, const RootSpec& r, const std::string& path) {
  try {
    build_module(d, std::make_shared<PbwAlgebra>(build_root_system(r.type, r.rank)));
  } catch (const Error& e) {
    bad(path, e.what());
  }
}

}  // namespace

Json rational_json(const Rational& r) { return format_rational(r); }

Json rationals_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(format_rational(x));
  return a;
}

Rational rational_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) bad(field, "floating-point values are not exact; write \"p/q\"");
  if (!j.is_string()) bad(field, "expected a rational \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error&) {
    bad(field, "malformed rational '" + j.get<std::string>() + "'");
  }
}

Json root_system_json(const RootSystem& rs) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = std::string(1, type_letter(rs.type()));
  j["rank"] = rs.rank();
  j["label"] = rs.label();
  j["fingerprint"] = rs.fingerprint();
  j["dimension"] = rs.dim();
  j["cartan"] = rs.cartan_matrix();
  std::vector<int> lengths;
  for (int i = 0; i < rs.rank(); ++i) lengths.push_back(rs.simple_length(i));
  j["simple_lengths"] = lengths;
  j["num_positive"] = rs.num_positive();
  Json roots = Json::array();
  for (int k = 0; k < rs.num_positive(); ++k) {
    roots.push_back({{"index", k}, {"coords", rs.positive_root(k)}, {"height", rs.height(k)}, {"name", rs.root_name(k)}});
  }
  j["positive_roots"] = roots;
  Json constants = Json::array();
  for (const auto& [ab, n] : rs.structure_constants()) constants.push_back({ab.first, ab.second, n});
  j["structure_constants"] = constants;
  return j;
}

Json descriptor_json(const ModuleDescriptor& d) {
  Json j;
  j["family"] = family_name(d.family);
  if (!d.psi.empty()) j["psi"] = rationals_json(d.psi);
  if (!d.lambda.empty()) j["lambda"] = rationals_json(d.lambda);
  if (!d.omega.empty()) j["omega"] = rationals_json(d.omega);
  if (!d.casimir.empty()) j["casimir"] = rationals_json(d.casimir);
  if (!d.summands.empty()) {
    Json s = Json::array();
    for (const auto& x : d.summands) s.push_back(descriptor_json(x));
    j["summands"] = s;
  }
  return j;
}

Json element_json(const ModulePresentation& p, const ModuleElement& w) {
  Json terms = Json::array();
  for (const auto& [m, c] : w.terms) {
    std::vector<int> eps(m.eps.begin(), m.eps.end());
    terms.push_back({{"summand", m.summand},
                     {"mbar", m.mbar},
                     {"factor_f", m.a},
                     {"factor_h", eps},
                     {"coefficient", format_rational(c)},
                     {"monomial", p.format_monomial(m)}});
  }
  return terms;
}

Json truncation_json(const Truncation& t) {
  return {{"depth", t.depth}, {"factor_degree", t.factor_degree}, {"window", t.window}};
}

Json report_json(const WhittakerReport& r) {
  const ModulePresentation& p = *r.module;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["root_system"] = p.roots().label();
  j["module"] = descriptor_json(p.descriptor());
  j["psi"] = rationals_json(p.character().values);
  Json omega = Json::array();
  Json layout = Json::array();
  for (int s = 0; s < p.num_summands(); ++s) {
    const auto& data = p.summand(s);
    omega.push_back(rationals_json(data.central.centre_weight));
    Json roots = Json::array();
    for (int k : data.parabolic.m_roots) roots.push_back(p.roots().positive_root(k));
    Json centre = Json::array();
    for (const auto& z : data.parabolic.centre_basis) centre.push_back(rationals_json(z));
    layout.push_back({{"mbar_roots", roots}, {"factors", data.factors}, {"centre_basis", centre}});
  }
  j["omega"] = omega;
  j["truncation"] = truncation_json(r.truncation);
  j["basis_size"] = r.basis_size;
  j["dim_lower_bound"] = r.dim_lower_bound;
  j["level_dims"] = r.level_dims;
  j["stabilized"] = r.stabilized;
  j["verdict"] = verdict_name(r.verdict);
  Json witnesses = Json::array();
  if (r.witness) witnesses.push_back(element_json(p, *r.witness));
  j["witnesses"] = witnesses;
  Json vectors = Json::array();
  for (const auto& v : r.exact_vectors) vectors.push_back(element_json(p, v));
  j["vectors"] = vectors;
  Json per = Json::array();
  for (const auto& b : r.per_weight) {
    per.push_back({{"summand", b.summand}, {"weight", rationals_json(b.weight)}, {"depth", b.depth}, {"dim", b.dim}});
  }
  j["per_weight"] = per;
  j["basis_layout"] = layout;
  return j;
}

Json sweep_json(const RootSystem& rs, const Truncation& t, const std::vector<SweepRow>& rows) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["root_system"] = rs.label();
  j["truncation"] = truncation_json(t);
  Json out = Json::array();
  Json locus = Json::array();
  for (const auto& row : rows) {
    Json params = Json::object();
    for (const auto& [k, v] : row.point.params) params[k] = v;
    Json r;
    r["params"] = params;
    if (row.report) {
      r["dim"] = row.report->dim_lower_bound;
      r["verdict"] = verdict_name(row.report->verdict);
      r["stabilized"] = row.report->stabilized;
      r["error"] = "";
      r["report"] = report_json(*row.report);
      if (row.report->dim_lower_bound >= 2) locus.push_back(params);
    } else {
      r["dim"] = nullptr;
      r["verdict"] = "ERROR";
      r["stabilized"] = false;
      r["error"] = row.error;
    }
    out.push_back(r);
  }
  j["rows"] = out;
  j["locus"] = locus;
  return j;
}

Json corollary_json(const std::vector<LengthRow>& rows) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json out = Json::array();
  int equalities = 0;
  bool violated = false;
  for (const auto& r : rows) {
    Json x;
    x["name"] = r.name;
    x["length"] = r.length ? Json(*r.length) : Json(nullptr);
    x["dim"] = r.status == LengthStatus::Skipped ? Json(nullptr) : Json(r.dim);
    x["status"] = length_status_name(r.status);
    x["equality"] = r.equality;
    x["note"] = r.note;
    out.push_back(x);
    equalities += r.equality;
    violated |= r.status == LengthStatus::Fail;
  }
  j["rows"] = out;
  j["equality_rows"] = equalities;
  j["violated"] = violated;
  return j;
}

std::string sweep_csv(const std::vector<std::string>& axes, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  for (const auto& a : axes) os << csv_cell(a) << ',';
  os << "dim,verdict,stabilized,error\n";
  for (const auto& row : rows) {
    for (const auto& a : axes) {
      std::string v;
      for (const auto& [k, x] : row.point.params) {
        if (k == a) v = x;
      }
      os << csv_cell(v) << ',';
    }
    if (row.report) {
      os << row.report->dim_lower_bound << ',' << verdict_name(row.report->verdict) << ','
         << (row.report->stabilized ? "true" : "false") << ",\n";
    } else {
      os << ",ERROR,false," << csv_cell(row.error) << '\n';
    }
  }
  return os.str();
}

std::string report_csv(const WhittakerReport& r) {
  std::ostringstream os;
  os << "family,basis_size,dim,verdict,stabilized\n"
     << family_name(r.module->family()) << ',' << r.basis_size << ',' << r.dim_lower_bound << ','
     << verdict_name(r.verdict) << ',' << (r.stabilized ? "true" : "false") << '\n';
  return os.str();
}

std::string corollary_text(const std::vector<LengthRow>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  std::ostringstream os;
  for (const auto& r : rows) {
    os << r.name << std::string(width - r.name.size() + 2, ' ');
    if (r.status == LengthStatus::Skipped) {
      os << "SKIPPED (" << r.note << ")\n";
    } else {
      os << r.dim << " ≤ " << *r.length << ' ' << length_status_name(r.status) << '\n';
    }
  }
  return os.str();
}

std::string summary_line(const WhittakerReport& r) {
  std::ostringstream os;
  os << verdict_name(r.verdict) << " dim=" << r.dim_lower_bound << " depth=" << r.truncation.depth
     << " factor_degree=" << r.truncation.factor_degree << " stabilized=" << (r.stabilized ? "true" : "false");
  return os.str();
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) bad("(root)", "expected a JSON object");
  only_keys(j, {"schema_version", "root_system", "module", "grid", "instances", "truncation", "seed", "output"}, "");
  if (int_field(require(j, "schema_version", ""), "schema_version", 0) != kSchemaVersion) {
    bad("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  ExperimentConfig c;
  const bool has_root = j.contains("root_system");
  if (has_root) c.root_system = parse_root(j["root_system"], "root_system");
  if (j.contains("truncation")) c.truncation = parse_truncation(j["truncation"], "truncation", c.truncation);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) bad("seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) bad("output", "expected an object");
    only_keys(o, {"format", "path"}, "output");
    if (o.contains("format")) {
      c.format = string_field(o["format"], "output.format");
      if (c.format != "json" && c.format != "csv") bad("output.format", "expected json or csv");
    }
    if (o.contains("path")) c.output_path = string_field(o["path"], "output.path");
  }
  if (j.contains("module")) {
    if (!has_root) bad("root_system", "required when module is given");
    c.module = parse_module(j["module"], "module");
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    if (!g.is_object()) bad("grid", "expected an object");
    only_keys(g, {"lambda", "psi", "omega", "casimir"}, "grid");
    if (!c.module) bad("module", "required when grid is given");
    c.has_grid = true;
    for (const char* axis : {"lambda", "psi", "omega", "casimir"}) {
      if (!g.contains(axis)) continue;
      const auto& vals = g[axis];
      const std::string path = std::string("grid.") + axis;
      if (!vals.is_array()) bad(path, "expected an array");
      std::vector<std::vector<Rational>> values;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        values.push_back(vals[i].is_array() ? rational_list(vals[i], p) : std::vector<Rational>{rational_from_json(vals[i], p)});
      }
      c.grid.emplace_back(axis, std::move(values));
    }
  }
  if (j.contains("instances")) {
    const auto& inst = j["instances"];
    if (!inst.is_array()) bad("instances", "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const std::string path = "instances[" + std::to_string(i) + "]";
      const auto& x = inst[i];
      if (!x.is_object()) bad(path, "expected an object");
      only_keys(x, {"name", "root_system", "module", "truncation"}, path);
      InstanceSpec s;
      s.name = string_field(require(x, "name", path), path + ".name");
      if (!names.insert(s.name).second) bad(path + ".name", "duplicate name '" + s.name + "'");
      if (x.contains("root_system")) {
        s.root_system = parse_root(x["root_system"], path + ".root_system");
      } else if (has_root) {
        s.root_system = c.root_system;
      } else {
        bad(path + ".root_system", "required (no top-level root_system)");
      }
      s.module = parse_module(require(x, "module", path), path + ".module");
      s.truncation = x.contains("truncation") ? parse_truncation(x["truncation"], path + ".truncation", c.truncation)
                                              : c.truncation;
      check_module(s.module, s.root_system, path + ".module");
      c.instances.push_back(std::move(s));
    }
  }
  if (c.module) {
    auto filled = *c.module;
    fill_generic_parameters(filled, *build_root_system(c.root_system.type, c.root_system.rank), c.seed);
    if (!c.has_grid) check_module(filled, c.root_system, "module");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) bad("--config", "cannot read " + file.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad("--config", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

void fill_generic_parameters(ModuleDescriptor& d, const RootSystem& rs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const long num = static_cast<long>(rng() % 61) - 30;
    const long den = 2 + static_cast<long>(rng() % 9);
    return ratio(num, den);
  };
  if (d.family == Family::McDowell && static_cast<int>(d.psi.size()) == rs.rank()) {
    const auto p = parabolic_data(WhittakerCharacter{d.psi}, rs);
    if (d.omega.empty()) {
      for (int k = 0; k < p.centre_dim(); ++k) d.omega.push_back(draw());
    }
    if (d.casimir.empty()) {
      for (std::size_t k = 0; k < p.support.size(); ++k) d.casimir.push_back(draw());
    }
  }
  for (std::size_t i = 0; i < d.summands.size(); ++i) fill_generic_parameters(d.summands[i], rs, seed + i + 1);
}

std::vector<SweepPoint> expand_grid(const ExperimentConfig& c) {
  if (!c.module) bad("module", "required for a sweep");
  std::vector<SweepPoint> points{SweepPoint{{}, *c.module}};
  for (const auto& [axis, values] : c.grid) {
    std::vector<SweepPoint> next;
    for (const auto& p : points) {
      for (const auto& v : values) {
        SweepPoint q = p;
        q.params.emplace_back(axis, format_value(v));
        if (axis == "lambda") q.module.lambda = v;
        if (axis == "psi") q.module.psi = v;
        if (axis == "omega") q.module.omega = v;
        if (axis == "casimir") q.module.casimir = v;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  const auto rs = build_root_system(c.root_system.type, c.root_system.rank);
  for (auto& p : points) fill_generic_parameters(p.module, *rs, c.seed);
  if (c.grid.empty()) points.clear();
  return points;
}

Json default_corollary_suite() {
  auto verma = [](const char* name, const char* lambda) {
    return Json{{"name", name}, {"module", {{"family", "verma"}, {"lambda", {lambda}}}}};
  };
  auto universal = [](const char* name, const char* eta, const char* c) {
    return Json{{"name", name},
                {"module", {{"family", "universal_sl2"}, {"psi", {eta}}, {"casimir", {c}}}},
                {"truncation", {{"depth", 0}, {"factor_degree", 12}}}};
  };
  Json instances = Json::array();
  instances.push_back(verma("verma_0", "0"));
  instances.push_back(verma("verma_1", "1"));
  instances.push_back(verma("verma_3", "3"));
  instances.push_back(verma("verma_-1", "-1"));
  instances.push_back(verma("verma_1/2", "1/2"));
  instances.push_back(universal("universal_eta1_c0", "1", "0"));
  instances.push_back(universal("universal_eta1_c17/3", "1", "17/3"));
  instances.push_back(universal("universal_eta-2_c1/2", "-2", "1/2"));
  instances.push_back({{"name", "sum_three_simple"},
                       {"module",
                        {{"family", "direct_sum"},
                         {"summands",
                          {{{"family", "verma"}, {"lambda", {"-1"}}},
                           {{"family", "verma"}, {"lambda", {"-1/2"}}},
                           {{"family", "verma"}, {"lambda", {"-3"}}}}}}}});
  instances.push_back({{"name", "sum_two_simple"},
                       {"module",
                        {{"family", "direct_sum"},
                         {"summands", {{{"family", "verma"}, {"lambda", {"-2"}}}, {{"family", "verma"}, {"lambda", {"5/3"}}}}}}}});
  instances.push_back({{"name", "sum_universal"},
                       {"module",
                        {{"family", "direct_sum"},
                         {"summands",
                          {{{"family", "universal_sl2"}, {"psi", {"1"}}, {"casimir", {"0"}}},
                           {{"family", "universal_sl2"}, {"psi", {"1"}}, {"casimir", {"2"}}}}}}},
                       {"truncation", {{"depth", 0}, {"factor_degree", 12}}}});
  instances.push_back({{"name", "sl3_singular"},
                       {"root_system", {{"type", "A"}, {"rank", 2}}},
                       {"module", {{"family", "mcdowell"}, {"psi", {"1", "0"}}, {"omega", {"1"}}, {"casimir", {"1"}}}},
                       {"truncation", {{"depth", 4}, {"factor_degree", 4}}}});
  return {{"schema_version", kSchemaVersion},
          {"root_system", {{"type", "A"}, {"rank", 1}}},
          {"truncation", {{"depth", 12}, {"factor_degree", 0}, {"window", 3}}},
          {"instances", instances}};
}

std::vector<std::string> validate(const Json& instance, const Json& schema) {
  std::vector<std::string> errors;
  std::function<void(const Json&, const Json&, const std::string&)> check = [&](const Json& x, const Json& s,
                                                                               const std::string& path) {
    const std::string where = path.empty() ? "(root)" : path;
    if (s.contains("type")) {
      auto matches = [&](const std::string& t) {
        if (t == "object") return x.is_object();
        if (t == "array") return x.is_array();
        if (t == "string") return x.is_string();
        if (t == "integer") return x.is_number_integer();
        if (t == "number") return x.is_number();
        if (t == "boolean") return x.is_boolean();
        if (t == "null") return x.is_null();
        return false;
      };
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok |= matches(t.get<std::string>());
      } else {
        ok = matches(s["type"].get<std::string>());
      }
      if (!ok) {
        errors.push_back(where + ": expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("enum") && std::find(s["enum"].begin(), s["enum"].end(), x) == s["enum"].end()) {
      errors.push_back(where + ": value " + x.dump() + " not in enum");
    }
    if (s.contains("minimum") && x.is_number() && x.get<double>() < s["minimum"].get<double>()) {
      errors.push_back(where + ": below minimum");
    }
    if (s.contains("pattern") && x.is_string() &&
        !std::regex_match(x.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
      errors.push_back(where + ": does not match " + s["pattern"].get<std::string>());
    }
    if (x.is_object()) {
      if (s.contains("required")) {
        for (const auto& k : s["required"]) {
          if (!x.contains(k.get<std::string>())) errors.push_back(where + ": missing " + k.get<std::string>());
        }
      }
      const Json props = s.value("properties", Json::object());
      for (const auto& [k, v] : x.items()) {
        const std::string sub = path.empty() ? k : path + "." + k;
        if (props.contains(k)) {
          check(v, props[k], sub);
        } else if (s.contains("additionalProperties")) {
          const auto& ap = s["additionalProperties"];
          if (ap.is_boolean() && !ap.get<bool>()) errors.push_back(sub + ": unexpected field");
          if (ap.is_object()) check(v, ap, sub);
        }
      }
    }
    if (x.is_array() && s.contains("items")) {
      for (std::size_t i = 0; i < x.size(); ++i) check(x[i], s["items"], path + "[" + std::to_string(i) + "]");
    }
  };
  check(instance, schema, "");
  return errors;
}

void atomic_write(const std::filesystem::path& file, const std::string& content) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidConfig, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

}  // namespace whittaker::io
