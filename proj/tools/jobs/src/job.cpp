#include "finsler/cli/job.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "finsler/error.hpp"
#include "finsler/library.hpp"
#include "finsler/polynomial.hpp"

namespace finsler::cli {

using json = nlohmann::ordered_json;

std::string to_string(Command c) {
  switch (c) {
    case Command::eval: return "eval";
    case Command::verify: return "verify";
    case Command::classify: return "classify";
    case Command::dim_scan: return "dim-scan";
    case Command::report: return "report";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; })) {
      fail(where, "unknown key '" + item.key() + "'");
    }
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::uint64_t seed_of(const json& v, const std::string& where) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(where, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::vector<double> vector_of(const json& v, const std::string& where, std::optional<int> len = {}) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  if (len && static_cast<int>(out.size()) != *len) {
    fail(where, "expected " + std::to_string(*len) + " entries, got " + std::to_string(out.size()));
  }
  return out;
}

int dimension_of(const json& obj, const std::string& where) {
  if (!obj.contains("n")) fail(where, "missing 'n'");
  const int n = integer(obj["n"], where + ".n");
  if (n < 1 || n > 4) fail(where + ".n", "dimension must be between 1 and 4");
  return n;
}

Polynomial polynomial(const json& v, int n, const std::string& where) {
  if (v.is_number()) return Polynomial::constant(n, v.get<double>());
  if (!v.is_array()) fail(where, "expected a number or a list of monomials");
  Polynomial p(n, {});
  for (std::size_t t = 0; t < v.size(); ++t) {
    const std::string w = where + "[" + std::to_string(t) + "]";
    allow_keys(v[t], w, {"coeff", "exponents"});
    if (!v[t].contains("coeff") || !v[t].contains("exponents")) fail(w, "monomial needs 'coeff' and 'exponents'");
    const auto e = vector_of(v[t]["exponents"], w + ".exponents", n);
    std::vector<int> ex;
    int deg = 0;
    for (double d : e) {
      if (d < 0 || d != static_cast<int>(d)) fail(w + ".exponents", "exponents must be non-negative integers");
      ex.push_back(static_cast<int>(d));
      deg += static_cast<int>(d);
    }
    if (deg > 4) fail(w, "monomial degree exceeds 4");
    p.add_term(number(v[t]["coeff"], w + ".coeff"), ex);
  }
  return p;
}

SamplePoint point(const json& v, const std::string& where) {
  allow_keys(v, where, {"x", "y"});
  if (!v.contains("x") || !v.contains("y")) fail(where, "point needs 'x' and 'y'");
  SamplePoint p{vector_of(v["x"], where + ".x"), vector_of(v["y"], where + ".y")};
  if (p.x.size() != p.y.size()) fail(where, "x and y lengths differ");
  return p;
}

int metric_dimension(const json& m) {
  if (m.contains("randers")) return dimension_of(m["randers"], "metric.randers");
  return dimension_of(m, "metric");
}

}  // namespace

const std::vector<std::string>& known_quantities() {
  static const std::vector<std::string> q = {"F",  "g", "G", "S",   "Xi", "E", "H",       "Sigma",
                                             "Ric", "R", "D", "W", "W_tilde", "W_star", "Z", "alpha_s"};
  return q;
}

MetricModel build_metric(const json& m) {
  if (!m.is_object()) fail("metric", "expected an object");
  if (m.contains("randers")) {
    allow_keys(m, "metric", {"randers", "name"});
    const json& r = m["randers"];
    allow_keys(r, "metric.randers", {"n", "a", "b"});
    const int n = dimension_of(r, "metric.randers");
    if (!r.contains("a") || !r.contains("b")) fail("metric.randers", "needs 'a' and 'b'");
    const json& a = r["a"];
    if (!a.is_array() || static_cast<int>(a.size()) != n) fail("metric.randers.a", "expected an n x n table");
    RandersPolySpec spec;
    spec.n = n;
    for (int i = 0; i < n; ++i) {
      const json& row = a[static_cast<std::size_t>(i)];
      const std::string w = "metric.randers.a[" + std::to_string(i) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != n) fail(w, "expected n entries");
      for (int j = 0; j < n; ++j) {
        spec.a.push_back(polynomial(row[static_cast<std::size_t>(j)], n, w + "[" + std::to_string(j) + "]"));
      }
    }
    const json& b = r["b"];
    if (!b.is_array() || static_cast<int>(b.size()) != n) fail("metric.randers.b", "expected n entries");
    for (int i = 0; i < n; ++i) {
      spec.b.push_back(polynomial(b[static_cast<std::size_t>(i)], n, "metric.randers.b[" + std::to_string(i) + "]"));
    }
    std::string name = "randers";
    if (m.contains("name")) {
      if (!m["name"].is_string()) fail("metric.name", "expected a string");
      name = m["name"].get<std::string>();
    }
    return polynomial_randers(name, spec);
  }
  if (!m.contains("builtin") || !m["builtin"].is_string()) fail("metric", "needs 'builtin' or 'randers'");
  const std::string kind = m["builtin"].get<std::string>();
  const int n = dimension_of(m, "metric");
  if (kind == "euclidean") {
    allow_keys(m, "metric", {"builtin", "n"});
    return euclidean(n);
  }
  if (kind == "klein" || kind == "space-form") {
    allow_keys(m, "metric", {"builtin", "n", "k"});
    const double k = m.contains("k") ? number(m["k"], "metric.k") : (kind == "klein" ? -1.0 : 0.0);
    return space_form({n, k});
  }
  if (kind == "funk") {
    allow_keys(m, "metric", {"builtin", "n", "signs", "a"});
    FunkSpec spec;
    spec.n = n;
    if (m.contains("signs")) {
      const auto s = vector_of(m["signs"], "metric.signs", 2);
      for (double v : s) {
        if (v != 1.0 && v != -1.0) fail("metric.signs", "signs must be +1 or -1");
      }
      spec.sign1 = static_cast<int>(s[0]);
      spec.sign2 = static_cast<int>(s[1]);
    }
    if (m.contains("a")) spec.a = vector_of(m["a"], "metric.a", n);
    return funk(spec);
  }
  if (kind == "minkowski-randers") {
    allow_keys(m, "metric", {"builtin", "n", "b"});
    if (!m.contains("b")) fail("metric", "minkowski-randers needs 'b'");
    return minkowski_randers(n, vector_of(m["b"], "metric.b", n));
  }
  if (kind == "random-randers") {
    allow_keys(m, "metric", {"builtin", "n", "seed", "b_amplitude"});
    std::uint64_t seed = 1;
    if (m.contains("seed")) seed = seed_of(m["seed"], "metric.seed");
    const double amp = m.contains("b_amplitude") ? number(m["b_amplitude"], "metric.b_amplitude") : 0.08;
    return polynomial_randers("random-randers", random_randers_spec(n, seed, amp));
  }
  fail("metric.builtin", "unknown metric '" + kind + "'");
}

std::vector<PolyVectorField> build_fields(const std::vector<json>& descriptors, int n) {
  std::vector<PolyVectorField> out;
  for (std::size_t f = 0; f < descriptors.size(); ++f) {
    const json& d = descriptors[f];
    const std::string where = "fields[" + std::to_string(f) + "]";
    if (!d.is_object()) fail(where, "expected an object");
    if (d.contains("family")) {
      allow_keys(d, where, {"family", "k"});
      if (!d["family"].is_string()) fail(where + ".family", "expected a string");
      const std::string fam = d["family"].get<std::string>();
      std::vector<PolyVectorField> add;
      if (fam == "flat_projective_basis") {
        add = flat_projective_basis(n);
      } else if (fam == "killing_basis") {
        const double k = d.contains("k") ? number(d["k"], where + ".k") : 0.0;
        add = killing_basis({n, k});
      } else {
        fail(where + ".family", "unknown family '" + fam + "'");
      }
      out.insert(out.end(), add.begin(), add.end());
      continue;
    }
    allow_keys(d, where, {"name", "b", "A", "C"});
    std::string name = "field" + std::to_string(f);
    if (d.contains("name")) {
      if (!d["name"].is_string()) fail(where + ".name", "expected a string");
      name = d["name"].get<std::string>();
    }
    std::vector<double> b, A, C;
    if (d.contains("b")) b = vector_of(d["b"], where + ".b", n);
    if (d.contains("A")) {
      const json& a = d["A"];
      if (!a.is_array() || static_cast<int>(a.size()) != n) fail(where + ".A", "expected an n x n table");
      for (std::size_t i = 0; i < a.size(); ++i) {
        const auto row = vector_of(a[i], where + ".A[" + std::to_string(i) + "]", n);
        A.insert(A.end(), row.begin(), row.end());
      }
    }
    if (d.contains("C")) {
      const json& c = d["C"];
      if (!c.is_array() || static_cast<int>(c.size()) != n) fail(where + ".C", "expected an n x n x n table");
      for (std::size_t i = 0; i < c.size(); ++i) {
        const std::string wi = where + ".C[" + std::to_string(i) + "]";
        if (!c[i].is_array() || static_cast<int>(c[i].size()) != n) fail(wi, "expected n rows");
        for (std::size_t j = 0; j < c[i].size(); ++j) {
          const auto row = vector_of(c[i][j], wi + "[" + std::to_string(j) + "]", n);
          C.insert(C.end(), row.begin(), row.end());
        }
      }
    }
    out.emplace_back(n, std::move(b), std::move(A), std::move(C), name);
  }
  return out;
}

JobSpec parse_job(const json& doc) {
  allow_keys(doc, "job", {"schema_version", "command", "metric", "fields", "samples", "points", "quantities",
                          "tolerances", "order", "output", "expect_nullity"});
  if (!doc.contains("schema_version")) fail("job", "missing 'schema_version'");
  if (integer(doc["schema_version"], "schema_version") != kSchemaVersion) {
    fail("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  JobSpec job;
  if (!doc.contains("command") || !doc["command"].is_string()) fail("job", "missing 'command'");
  const std::string cmd = doc["command"].get<std::string>();
  if (cmd == "eval") job.command = Command::eval;
  else if (cmd == "verify") job.command = Command::verify;
  else if (cmd == "classify") job.command = Command::classify;
  else if (cmd == "dim-scan") job.command = Command::dim_scan;
  else if (cmd == "report") job.command = Command::report;
  else fail("command", "unknown command '" + cmd + "'");

  if (!doc.contains("metric")) fail("job", "missing 'metric'");
  job.metric = doc["metric"];
  const int n = metric_dimension(job.metric);

  if (doc.contains("fields")) {
    if (!doc["fields"].is_array()) fail("fields", "expected an array");
    for (const auto& f : doc["fields"]) job.fields.push_back(f);
    build_fields(job.fields, n);  // validates shapes
  }
  if (job.command == Command::classify && job.fields.empty()) fail("fields", "classify needs at least one field");

  if (doc.contains("samples")) {
    const json& s = doc["samples"];
    allow_keys(s, "samples", {"count", "seed", "radius"});
    if (s.contains("count")) job.samples.count = integer(s["count"], "samples.count");
    if (s.contains("seed")) job.samples.seed = seed_of(s["seed"], "samples.seed");
    if (s.contains("radius")) job.samples.radius = number(s["radius"], "samples.radius");
    if (job.samples.count < 1) fail("samples.count", "must be positive");
    if (!(job.samples.radius >= 0.0 && job.samples.radius < 1.0)) fail("samples.radius", "must lie in [0, 1)");
  }
  if (doc.contains("points")) {
    if (!doc["points"].is_array()) fail("points", "expected an array");
    for (std::size_t i = 0; i < doc["points"].size(); ++i) {
      SamplePoint p = point(doc["points"][i], "points[" + std::to_string(i) + "]");
      if (static_cast<int>(p.x.size()) != n) fail("points[" + std::to_string(i) + "]", "dimension does not match metric");
      job.points.push_back(std::move(p));
    }
  }
  if (doc.contains("quantities")) {
    if (!doc["quantities"].is_array()) fail("quantities", "expected an array of names");
    const auto& known = known_quantities();
    std::set<std::string> seen;
    for (const auto& q : doc["quantities"]) {
      if (!q.is_string()) fail("quantities", "expected strings");
      const std::string s = q.get<std::string>();
      if (std::find(known.begin(), known.end(), s) == known.end()) fail("quantities", "unknown quantity '" + s + "'");
      if (seen.insert(s).second) job.quantities.push_back(s);
    }
  } else {
    job.quantities = {"F", "G", "S"};
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    allow_keys(t, "tolerances", {"fd", "euler", "ladder", "horizontal", "spray", "s_curvature", "volume",
                                 "relations", "funk_s", "funk_ricci", "classify", "identities", "dim_scan"});
    auto set = [&](const char* key, double& field) {
      if (t.contains(key)) {
        field = number(t[key], std::string("tolerances.") + key);
        if (!(field > 0.0)) fail(std::string("tolerances.") + key, "must be positive");
      }
    };
    set("fd", job.tol.fd);
    set("euler", job.tol.euler);
    set("ladder", job.tol.ladder);
    set("horizontal", job.tol.horizontal);
    set("spray", job.tol.spray);
    set("s_curvature", job.tol.s_curvature);
    set("volume", job.tol.volume);
    set("relations", job.tol.relations);
    set("funk_s", job.tol.funk_s);
    set("funk_ricci", job.tol.funk_ricci);
    set("classify", job.tol.classify);
    set("identities", job.tol.identities);
    set("dim_scan", job.tol.dim_scan);
  }
  if (doc.contains("order")) {
    job.order = integer(doc["order"], "order");
    if (job.order < 2 || job.order > 12) fail("order", "must lie in [2, 12]");
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) fail("output", "expected a path string");
    job.output = doc["output"].get<std::string>();
  }
  if (doc.contains("expect_nullity")) job.expect_nullity = integer(doc["expect_nullity"], "expect_nullity");
  return job;
}

JobSpec load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot open job file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
  }
  return parse_job(doc);
}

}  // namespace finsler::cli
