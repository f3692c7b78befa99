#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "darboux/catalog/catalog.hpp"
#include "darboux/discovery/family.hpp"
#include "darboux/genus/genus.hpp"
#include "darboux/io/expr.hpp"
#include "darboux/real/real_curve.hpp"
#include "json.hpp"

namespace darboux::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Env {
  Env(std::ostream& o, std::ostream& e) : out(o), err(e) {}
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  bool timings = false;
  unsigned threads = 1;
  std::string catalog_file;
  std::vector<io::CatalogEntry> entries;
  Json catalog_info;
};

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* s = std::getenv("DARBOUX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

void load_entries(Env& env) {
  if (env.catalog_file.empty()) {
    env.entries = catalog::builtin();
    env.catalog_info = Json{{"source", "embedded"}, {"sha256", std::string(catalog::embedded_sha256())}};
    return;
  }
  auto parsed = io::load_catalog(env.catalog_file);
  if (!parsed) throw UsageError("catalog " + env.catalog_file + ": " + parsed.error().describe());
  env.entries = std::move(parsed).value();
  const bool same = catalog::matches_embedded(env.catalog_file);
  if (!same) env.err << "warning: " << env.catalog_file << " differs from the embedded catalog\n";
  env.catalog_info = Json{{"source", env.catalog_file}, {"matches_embedded", same}};
}

const io::CatalogEntry& entry_or_throw(const Env& env, const std::string& id) {
  const io::CatalogEntry* e = catalog::find(env.entries, id);
  if (!e) throw UsageError("unknown id '" + id + "'");
  return *e;
}

Rational parse_rational(const std::string& text) {
  auto p = io::parse_polynomial(text, standard_context());
  if (!p || !p.value().is_constant()) throw UsageError("expected a rational number, got '" + text + "'");
  return p.value().is_zero() ? Rational(0) : p.value().terms()[0].coeff;
}

std::string str(const Polynomial& p) { return io::print_polynomial(p); }

Json document(const Env& env, const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["catalog"] = env.catalog_info;
  return j;
}

void emit(const Env& env, const Json& doc, const std::function<void(std::ostream&)>& text) {
  if (env.json) {
    env.out << doc.dump(2) << "\n";
  } else {
    text(env.out);
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs f(i) for i < n on the capped worker count; results are stored by
// index so the order never depends on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) f(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

// Default specialization: entry bindings, then q = 1, p = 1, a = 1/2 for
// anything still free, then explicit overrides.
std::map<std::size_t, Rational> bindings_for(const io::CatalogEntry& e, const std::map<std::string, std::string>& over) {
  const auto& ctx = standard_context();
  std::map<std::size_t, Rational> b{{ctx->require("q"), Rational(1)},
                                    {ctx->require("p"), Rational(1)},
                                    {ctx->require("a"), Rational(1, 2)}};
  for (const auto& [k, v] : e.bindings) b[ctx->require(k)] = parse_rational(v);
  for (const auto& [k, v] : over) {
    if (!v.empty()) b[ctx->require(k)] = parse_rational(v);
  }
  for (const auto& s : e.state) b.erase(ctx->require(s));
  return b;
}

// Only the variables that occur in one of the given polynomials.
Json bindings_json(const std::map<std::size_t, Rational>& b, std::initializer_list<const Polynomial*> used) {
  Json j = Json::object();
  for (const auto& [v, r] : b) {
    bool occurs = false;
    for (const Polynomial* p : used) occurs = occurs || p->involves(v);
    if (occurs) j[standard_context()->name(v)] = to_string(r);
  }
  return j;
}

// ---------------------------------------------------------------- verify

struct VerifyRow {
  Json j;
  bool failed = false;
};

VerifyRow verify_entry(const io::CatalogEntry& e, bool timings) {
  const auto& ctx = standard_context();
  VerifyRow row;
  Json& j = row.j;
  j["id"] = e.id;
  j["trust"] = std::string(io::to_string(e.trust));
  j["degree"] = e.stated_degree;
  const auto t0 = std::chrono::steady_clock::now();
  const field::PolyVectorField X = discovery::system_of(e);
  auto g = io::parse_polynomial(e.curve, ctx);
  Json v;
  if (!g) {
    v = Json{{"parsed", false}, {"error", g.error().describe()}, {"pass", false}};
    j["cofactor"] = nullptr;
    j["cofactor_source"] = nullptr;
  } else {
    Polynomial K(ctx);
    if (!e.stated_cofactor.empty()) {
      K = io::parse_or_throw(e.stated_cofactor, ctx);
      j["cofactor_source"] = "stated";
    } else {
      K = discovery::cofactor_estimate(X, g.value());
      j["cofactor_source"] = "division";
    }
    j["cofactor"] = str(K);
    const field::Verdict verdict = field::verify_certificate(field::make_certificate(X, g.value(), K));
    v = Json{{"parsed", true},
             {"pass", verdict.pass},
             {"residual_terms", verdict.residual_terms},
             {"squarefree_warning", verdict.squarefree_warning}};
  }
  j["verbatim"] = v;
  const bool verbatim_pass = v["pass"].get<bool>();
  std::string status = verbatim_pass ? "pass" : "fail";
  const catalog::Erratum* er = catalog::find_erratum(e.id);
  if (er) {
    const field::Verdict ev = catalog::verify_erratum(e, *er);
    j["erratum"] = Json{{"kind", er->kind}, {"pass", ev.pass}, {"cofactor", er->cofactor}, {"diffs", er->diffs.size()}};
    if (!verbatim_pass && ev.pass) status = er->kind == "certified" ? "pass-with-erratum" : "fail-manual-erratum-verifies";
  } else {
    j["erratum"] = nullptr;
  }
  j["status"] = status;
  if (timings) j["seconds"] = seconds_since(t0);
  row.failed = e.trust == io::Trust::kVerbatimTrusted && status != "pass" && status != "pass-with-erratum";
  return row;
}

int cmd_verify(Env& env, const std::vector<std::string>& ids, bool all) {
  if (all == !ids.empty()) throw UsageError("give entry ids or --all");
  std::vector<const io::CatalogEntry*> todo;
  if (all) {
    for (const auto& e : env.entries) todo.push_back(&e);
  } else {
    for (const auto& id : ids) todo.push_back(&entry_or_throw(env, id));
  }
  std::vector<VerifyRow> rows(todo.size());
  parallel_for(todo.size(), env.threads, [&](std::size_t i) { rows[i] = verify_entry(*todo[i], env.timings); });
  Json doc = document(env, "verify");
  doc["entries"] = Json::array();
  int failed = 0, untrusted = 0, passed = 0;
  for (const auto& r : rows) {
    doc["entries"].push_back(r.j);
    if (r.failed) ++failed;
    if (r.j["trust"] == "verbatim-untrusted") ++untrusted;
    if (r.j["status"] == "pass" || r.j["status"] == "pass-with-erratum") ++passed;
  }
  doc["summary"] = Json{{"entries", rows.size()}, {"passed", passed}, {"failed_trusted", failed}, {"untrusted", untrusted}};
  emit(env, doc, [&](std::ostream& o) {
    for (const auto& j : doc["entries"]) {
      o << std::left << std::setw(12) << j["id"].get<std::string>() << std::setw(30)
        << j["status"].get<std::string>();
      if (!j["cofactor"].is_null()) {
        o << "K = " << j["cofactor"].get<std::string>() << " (" << j["cofactor_source"].get<std::string>() << ")";
      } else {
        o << "curve does not parse: " << j["verbatim"]["error"].get<std::string>();
      }
      if (j["verbatim"].value("squarefree_warning", false)) o << " [repeated factor]";
      if (j["trust"] == "verbatim-untrusted") o << " [untrusted]";
      if (!j["erratum"].is_null()) {
        o << " [" << j["erratum"]["kind"].get<std::string>() << " erratum "
          << (j["erratum"]["pass"].get<bool>() ? "verifies" : "FAILS") << "]";
      }
      if (j.contains("seconds")) o << " " << j["seconds"].get<double>() << "s";
      o << "\n";
    }
    o << passed << "/" << rows.size() << " pass, " << failed << " trusted failures, " << untrusted
      << " untrusted\n";
  });
  return failed > 0 ? 1 : 0;
}

// ---------------------------------------------------------------- discover

field::PolyVectorField read_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read system file " + path);
  const auto& ctx = standard_context();
  std::vector<std::pair<std::size_t, Polynomial>> eqs;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    const auto tick = line.find('\'');
    if (eq == std::string::npos || tick == std::string::npos || tick > eq) {
      throw UsageError(path + ": expected lines of the form  z' = <expr>");
    }
    std::string var = line.substr(0, tick);
    var.erase(std::remove_if(var.begin(), var.end(), ::isspace), var.end());
    auto rhs = io::parse_polynomial(line.substr(eq + 1), ctx);
    if (!rhs) throw UsageError(path + ": " + rhs.error().describe());
    const auto idx = ctx->index_of(var);
    if (!idx) throw UsageError(path + ": unknown variable '" + var + "'");
    eqs.emplace_back(*idx, std::move(rhs).value());
  }
  if (eqs.size() != 2) throw UsageError(path + ": expected exactly two equations");
  return field::PolyVectorField(eqs[0].second, eqs[1].second, eqs[0].first, eqs[1].first);
}

struct DiscoverArgs {
  std::string id, system;
  int degree = 0;
  std::string cofactor;
  bool no_qh = false, all_weights = false, search_cofactor = false;
  std::optional<long> weight;
  std::vector<std::string> caps;
};

int cmd_discover(Env& env, const DiscoverArgs& a) {
  const auto& ctx = standard_context();
  if (!a.id.empty() && !a.system.empty()) throw UsageError("give either an id or --system");
  const std::string src = a.id.empty() ? a.system : a.id;
  if (src.empty()) throw UsageError("give an entry id or --system");
  const io::CatalogEntry* e = catalog::find(env.entries, src);
  if (!e && !a.id.empty()) throw UsageError("unknown id '" + a.id + "'");
  const field::PolyVectorField X = e ? discovery::system_of(*e) : read_system_file(src);
  if (X.degree() != 2) throw UsageError("discovery needs a quadratic field");
  discovery::DiscoveryOptions opt;
  opt.quasi_homogeneous = !a.no_qh;
  opt.all_weights = a.all_weights;
  opt.target_weight = a.weight;
  opt.affine_cofactor_search = a.search_cofactor;
  if (!a.cofactor.empty()) {
    auto K = io::parse_polynomial(a.cofactor, ctx);
    if (!K) throw UsageError("--cofactor: " + K.error().describe());
    opt.cofactor = std::move(K).value();
  }
  for (const auto& c : a.caps) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) throw UsageError("--cap expects name=value");
    opt.parameter_caps[c.substr(0, eq)] = std::stoi(c.substr(eq + 1));
  }
  const auto t0 = std::chrono::steady_clock::now();
  const discovery::DiscoveryResult r = discovery::find_invariant_curves(X, a.degree, opt);
  Json doc = document(env, "discover");
  doc["system"] = Json{{"source", src},
                       {"state", Json::array({ctx->name(X.first()), ctx->name(X.second())})},
                       {"p", str(X.P())},
                       {"q", str(X.Q())}};
  doc["degree"] = a.degree;
  doc["cofactor"] = str(r.cofactor);
  Json caps = Json::object();
  for (const auto& [v, c] : r.spec.parameter_caps) caps[ctx->name(v)] = c;
  doc["ansatz"] = Json{{"rows", r.rows},
                       {"columns", r.cols},
                       {"quasi_homogeneous", r.spec.qh.has_value()},
                       {"target_weight", r.spec.qh && r.spec.qh->target ? Json(*r.spec.qh->target) : Json(nullptr)},
                       {"parameter_caps", caps}};
  doc["kernel_dimension"] = r.kernel.size();
  doc["curves"] = Json::array();
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    doc["curves"].push_back(Json{{"g", str(r.certificates[i].g)},
                                 {"verified", true},
                                 {"squarefree_warning", static_cast<bool>(r.squarefree_warnings[i])}});
  }
  if (env.timings) doc["seconds"] = seconds_since(t0);
  emit(env, doc, [&](std::ostream& o) {
    o << "system  " << ctx->name(X.first()) << "' = " << doc["system"]["p"].get<std::string>() << "\n        "
      << ctx->name(X.second()) << "' = " << doc["system"]["q"].get<std::string>() << "\n";
    o << "degree " << a.degree << ", cofactor " << doc["cofactor"].get<std::string>() << ", ansatz " << r.rows << " x "
      << r.cols;
    if (r.spec.qh && r.spec.qh->target) o << ", weight " << *r.spec.qh->target;
    o << "\n";
    if (r.kernel.empty()) {
      o << "no curves found\n";
    } else {
      o << "kernel dimension " << r.kernel.size() << "\n";
      for (const auto& c : doc["curves"]) {
        o << "  g = " << c["g"].get<std::string>() << (c["squarefree_warning"].get<bool>() ? "  [repeated factor]" : "")
          << "\n";
      }
    }
    if (doc.contains("seconds")) o << doc["seconds"].get<double>() << "s\n";
  });
  return 0;
}

// ---------------------------------------------------------------- eliminate

std::vector<std::pair<Rational, Rational>> parse_grid(const std::string& spec) {
  // "default" or "b0:b1:db,c0:c1:dc".
  std::string s = spec == "default" ? "-2:2:1/4,-6:6:1/4" : spec;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--grid expects b0:b1:db,c0:c1:dc or 'default'");
  const auto range = [](const std::string& r) {
    std::vector<std::string> parts;
    std::stringstream ss(r);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("grid range must be lo:hi:step");
    const Rational lo = parse_rational(parts[0]), hi = parse_rational(parts[1]), step = parse_rational(parts[2]);
    if (step <= 0 || hi < lo) throw UsageError("grid range must have lo <= hi and step > 0");
    std::vector<Rational> out;
    for (Rational x = lo; x <= hi; x += step) {
      out.push_back(x);
      if (out.size() > 100000) throw UsageError("grid range too large");
    }
    return out;
  };
  const auto bs = range(s.substr(0, comma)), cs = range(s.substr(comma + 1));
  std::vector<std::pair<Rational, Rational>> grid;
  for (const auto& b : bs) {
    for (const auto& c : cs) grid.emplace_back(b, c);
  }
  return grid;
}

Json point_json(const discovery::FamilyPoint& p) {
  Json curves = Json::array();
  for (std::size_t i = 0; i < p.certificates.size(); ++i) {
    curves.push_back(Json{{"g", str(p.certificates[i].g)},
                          {"squarefree_warning", i < p.squarefree_warnings.size() && p.squarefree_warnings[i]}});
  }
  return Json{{"b", to_string(p.b)},
              {"c", to_string(p.c)},
              {"kernel_dimension", p.kernel_dimension},
              {"squarefree", p.has_squarefree_curve()},
              {"curves", curves}};
}

void print_point(std::ostream& o, const Json& p) {
  o << "  (b, c) = (" << p["b"].get<std::string>() << ", " << p["c"].get<std::string>() << ")  kernel dimension "
    << p["kernel_dimension"].get<std::size_t>() << (p["squarefree"].get<bool>() ? "" : "  [power of a lower-degree curve]")
    << "\n";
}

int cmd_eliminate(Env& env, int degree, const std::string& parameter, std::optional<long> weight, bool all_weights,
                  bool grid_only, const std::string& grid) {
  if (degree < 1) throw UsageError("--degree must be positive");
  discovery::FamilySpec spec;
  spec.degree = degree;
  spec.parameter = parameter;
  spec.target_weight = weight;
  spec.all_weights = all_weights;
  const auto t0 = std::chrono::steady_clock::now();
  Json doc = document(env, "eliminate");
  doc["degree"] = degree;
  doc["parameter"] = parameter;
  if (grid_only) {
    const auto pts = parse_grid(grid.empty() ? "default" : grid);
    const auto scanned = discovery::scan_family(spec, pts, env.threads);
    doc["mode"] = "grid";
    doc["grid_points"] = pts.size();
    doc["hits"] = Json::array();
    for (const auto& p : scanned) {
      if (p.kernel_dimension > 0) doc["hits"].push_back(point_json(p));
    }
    if (env.timings) doc["seconds"] = seconds_since(t0);
    emit(env, doc, [&](std::ostream& o) {
      o << "grid scan at degree " << degree << ": " << pts.size() << " points, " << doc["hits"].size() << " hits\n";
      for (const auto& p : doc["hits"]) print_point(o, p);
      if (doc.contains("seconds")) o << doc["seconds"].get<double>() << "s\n";
    });
    return 0;
  }
  auto res = discovery::eliminate_family(spec);
  doc["mode"] = "elimination";
  if (!res) {
    const auto& e = res.error();
    doc["error"] = Json{{"kind", "InterpolationGridTooSmall"}, {"b", to_string(e.b)}, {"c", to_string(e.c)}};
    emit(env, doc, [&](std::ostream& o) {
      o << "matrix entries are not of degree <= 2 in (b, c); check failed at (" << to_string(e.b) << ", "
        << to_string(e.c) << ")\n";
    });
    return 1;
  }
  const auto& r = res.value();
  doc["rows"] = r.rows;
  doc["columns"] = r.cols;
  doc["generic_kernel"] = r.generic_kernel;
  doc["components"] = Json::array();
  for (const auto& c : r.components) doc["components"].push_back(Json{{"equation", c.text}, {"confirmed", c.confirmed}});
  doc["eliminant_degree"] = r.eliminant.degree();
  doc["verified"] = Json::array();
  for (const auto& p : r.verified) doc["verified"].push_back(point_json(p));
  doc["rejected"] = Json::array();
  for (const auto& [b, c] : r.rejected) doc["rejected"].push_back(Json{{"b", to_string(b)}, {"c", to_string(c)}});
  if (env.timings) doc["seconds"] = r.elapsed_seconds;
  emit(env, doc, [&](std::ostream& o) {
    o << "degree " << degree << ": " << r.rows << " x " << r.cols << " block";
    if (r.generic_kernel) o << ", nonzero kernel for generic (b, c)";
    o << "\n";
    for (const auto& c : doc["components"]) {
      o << "  component " << c["equation"].get<std::string>() << " = 0"
        << (c["confirmed"].get<bool>() ? " (confirmed)" : " (artifact: empty kernel at samples)") << "\n";
    }
    o << "verified points: " << doc["verified"].size() << "\n";
    for (const auto& p : doc["verified"]) print_point(o, p);
    if (!doc["rejected"].empty()) {
      o << "rejected candidates:";
      for (const auto& p : doc["rejected"]) o << " (" << p["b"].get<std::string>() << ", " << p["c"].get<std::string>() << ")";
      o << "\n";
    }
    if (doc.contains("seconds")) o << doc["seconds"].get<double>() << "s\n";
  });
  return 0;
}

// ---------------------------------------------------------------- genus

// The curve the pipelines should use: the printed one, or a certified
// erratum's when the printed curve fails verification.
struct CurveChoice {
  io::CatalogEntry entry;
  std::string source;  // "printed" or "erratum:<kind>"
};

CurveChoice choose_curve(const io::CatalogEntry& e, bool verbatim_only) {
  if (verbatim_only) return {e, "printed"};
  const catalog::Erratum* er = catalog::find_erratum(e.id);
  if (!er) return {e, "printed"};
  const VerifyRow row = verify_entry(e, false);
  if (row.j["verbatim"]["pass"].get<bool>()) return {e, "printed"};
  if (!catalog::verify_erratum(e, *er).pass) return {e, "printed"};
  return {catalog::apply(e, *er), "erratum:" + er->kind};
}

std::string chart_name(genus::Chart c) {
  switch (c) {
    case genus::Chart::kAffine: return "affine";
    case genus::Chart::kInfinity: return "infinity";
    case genus::Chart::kPole: return "pole";
  }
  return "?";
}

Json genus_json(const genus::GenusReport& r) {
  Json orbits = Json::array();
  for (const auto& o : r.orbits) {
    Json pt = Json::array();
    for (const auto& c : o.point) pt.push_back(c.to_string("t"));
    orbits.push_back(Json{{"chart", chart_name(o.chart)},
                          {"minpoly", o.minpoly().to_string("t")},
                          {"points", o.size()},
                          {"coordinates", pt},
                          {"multiplicity_sequence", o.multiplicity_sequence},
                          {"delta_per_point", o.delta_per_point},
                          {"delta", o.delta()}});
  }
  return Json{{"degree", r.degree},
              {"orbits", orbits},
              {"delta_total", r.delta_total},
              {"genus", r.genus},
              {"oval_bound", r.oval_bound},
              {"irreducibility", r.irreducibility}};
}

int cmd_genus(Env& env, const std::string& id, const std::map<std::string, std::string>& over, bool verbatim,
              const std::string& sweep) {
  const io::CatalogEntry& e0 = entry_or_throw(env, id);
  const CurveChoice choice = choose_curve(e0, verbatim);
  const io::CatalogEntry& e = choice.entry;
  const auto& ctx = standard_context();
  auto g = io::parse_polynomial(e.curve, ctx);
  if (!g) throw UsageError("curve of '" + id + "' does not parse: " + g.error().describe());
  const std::size_t first = ctx->require(e.state[0]), second = ctx->require(e.state[1]);

  std::vector<std::map<std::string, std::string>> runs;
  if (sweep.empty()) {
    runs.push_back(over);
  } else {
    std::stringstream ss(sweep);
    std::string v;
    while (std::getline(ss, v, ',')) {
      auto o = over;
      o["q"] = v;
      runs.push_back(o);
    }
  }
  Json doc = document(env, "genus");
  doc["id"] = id;
  doc["curve_source"] = choice.source;
  doc["stated_genus"] = e.stated_genus >= 0 ? Json(e.stated_genus) : Json(nullptr);
  doc["runs"] = Json::array();
  bool mismatch = false, failure = false;
  std::optional<long> first_genus;
  bool genus_changes = false;
  for (const auto& o : runs) {
    const auto b = bindings_for(e, o);
    Json run;
    run["bindings"] = bindings_json(b, {&g.value()});
    const auto t0 = std::chrono::steady_clock::now();
    auto C = genus::ProjectiveCurve::from_polynomial(g.value(), first, second, b);
    if (!C) {
      run["error"] = genus::describe(C.error());
      failure = true;
    } else {
      auto r = genus::genus(C.value());
      if (!r) {
        run["error"] = genus::describe(r.error());
        failure = true;
      } else {
        run["report"] = genus_json(r.value());
        const long G = r.value().genus;
        if (e.stated_genus >= 0 && G != e.stated_genus) mismatch = true;
        if (first_genus && *first_genus != G) genus_changes = true;
        if (!first_genus) first_genus = G;
      }
    }
    if (env.timings) run["seconds"] = seconds_since(t0);
    doc["runs"].push_back(run);
  }
  doc["matches_stated"] = !failure && !mismatch;
  if (!sweep.empty()) doc["genus_changes_across_sweep"] = genus_changes;
  emit(env, doc, [&](std::ostream& o) {
    o << id << " (" << choice.source << " curve)";
    if (e.stated_genus >= 0) o << ", stated genus " << e.stated_genus;
    o << "\n";
    for (const auto& run : doc["runs"]) {
      o << "  at";
      for (const auto& [k, v] : run["bindings"].items()) o << " " << k << "=" << v.get<std::string>();
      o << ": ";
      if (run.contains("error")) {
        o << run["error"].get<std::string>() << "\n";
        continue;
      }
      const Json& r = run["report"];
      o << "degree " << r["degree"].get<int>() << ", genus " << r["genus"].get<long>() << ", oval bound "
        << r["oval_bound"].get<long>() << ", delta " << r["delta_total"].get<long>() << " (irreducibility "
        << r["irreducibility"].get<std::string>() << ")\n";
      for (const auto& orb : r["orbits"]) {
        o << "    " << std::left << std::setw(9) << orb["chart"].get<std::string>() << orb["points"].get<int>()
          << " point(s), m(t) = " << orb["minpoly"].get<std::string>() << ", sequence (";
        bool firstm = true;
        for (const auto& m : orb["multiplicity_sequence"]) {
          o << (firstm ? "" : ", ") << m.get<int>();
          firstm = false;
        }
        o << "), delta " << orb["delta"].get<long>() << "\n";
      }
      if (run.contains("seconds")) o << "    " << run["seconds"].get<double>() << "s\n";
    }
    if (!sweep.empty()) o << (genus_changes ? "genus changes across the sweep\n" : "genus constant across the sweep\n");
  });
  return failure || mismatch ? 1 : 0;
}

// ---------------------------------------------------------------- plot

real::Window parse_window(const std::string& w, int resolution) {
  real::Window win;
  win.resolution = resolution;
  if (w.empty()) return win;
  std::vector<Rational> v;
  std::stringstream ss(w);
  std::string p;
  while (std::getline(ss, p, ',')) v.push_back(parse_rational(p));
  if (v.size() != 4) throw UsageError("--window expects xmin,xmax,ymin,ymax");
  win.xmin = v[0];
  win.xmax = v[1];
  win.ymin = v[2];
  win.ymax = v[3];
  return win;
}

std::vector<std::array<Rational, 2>> parse_seeds(const std::string& s) {
  std::vector<std::array<Rational, 2>> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string pt;
  while (std::getline(ss, pt, ';')) {
    const auto comma = pt.find(',');
    if (comma == std::string::npos) throw UsageError("--seed-points expects x,y;x,y;...");
    out.push_back({parse_rational(pt.substr(0, comma)), parse_rational(pt.substr(comma + 1))});
  }
  return out;
}

Json box_json(const real::Box& b) { return Json::array({b.xmin, b.xmax, b.ymin, b.ymax}); }

int cmd_plot(Env& env, const std::string& id, const std::map<std::string, std::string>& over, const std::string& window,
             int resolution, const std::string& seeds, double t_end, const std::string& out_path, bool verbatim) {
  const CurveChoice choice = choose_curve(entry_or_throw(env, id), verbatim);
  const io::CatalogEntry& e = choice.entry;
  const auto& ctx = standard_context();
  auto g = io::parse_polynomial(e.curve, ctx);
  if (!g) throw UsageError("curve of '" + id + "' does not parse: " + g.error().describe());
  const std::size_t first = ctx->require(e.state[0]), second = ctx->require(e.state[1]);
  const auto b = bindings_for(e, over);
  const real::Window w = parse_window(window, resolution);
  if (auto bad = real::check_window(w)) throw UsageError("degenerate window: " + bad->detail);

  const real::RealCurve C(g.value(), first, second, b);
  const auto rep = real::count_ovals(C, w, env.threads).value();
  real::PlotRequest req;
  req.window = w;
  req.field = discovery::system_of(e);
  req.seeds = parse_seeds(seeds);
  req.t_end = t_end;
  const std::string svg = real::render_svg(g.value(), first, second, b, req).value();
  const std::string path = out_path.empty() ? id + ".svg" : out_path;
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << svg;
  }
  Json doc = document(env, "plot");
  doc["id"] = id;
  doc["curve_source"] = choice.source;
  doc["bindings"] = bindings_json(b, {&g.value(), &req.field->P(), &req.field->Q()});
  doc["window"] = Json{{"xmin", to_string(w.xmin)},
                       {"xmax", to_string(w.xmax)},
                       {"ymin", to_string(w.ymin)},
                       {"ymax", to_string(w.ymax)},
                       {"resolution", w.resolution}};
  Json bb = Json::array(), ob = Json::array();
  for (const auto& x : rep.bounded_boxes) bb.push_back(box_json(x));
  for (const auto& x : rep.open_boxes) ob.push_back(box_json(x));
  doc["ovals"] = Json{{"bounded", rep.bounded},
                      {"open", rep.open},
                      {"bounded_boxes", bb},
                      {"open_boxes", ob},
                      {"resolution", rep.resolution},
                      {"stable", rep.stable},
                      {"bounded_at_double", rep.bounded_doubled},
                      {"open_at_double", rep.open_doubled}};
  doc["svg"] = Json{{"path", path}, {"sha256", catalog::sha256_hex(svg)}, {"trajectories", req.seeds.size()}};
  emit(env, doc, [&](std::ostream& o) {
    o << id << " (" << choice.source << " curve) at";
    for (const auto& [k, v] : doc["bindings"].items()) o << " " << k << "=" << v.get<std::string>();
    o << "\n  window [" << to_string(w.xmin) << ", " << to_string(w.xmax) << "] x [" << to_string(w.ymin) << ", "
      << to_string(w.ymax) << "], resolution " << w.resolution << "\n";
    o << "  bounded components " << rep.bounded << ", open components " << rep.open << ", "
      << (rep.stable ? "stable" : "unstable") << " at " << 2 * w.resolution << " (" << rep.bounded_doubled << ", "
      << rep.open_doubled << ")\n";
    for (const auto& x : rep.bounded_boxes) {
      o << "    oval in [" << x.xmin << ", " << x.xmax << "] x [" << x.ymin << ", " << x.ymax << "]\n";
    }
    o << "  wrote " << path << " (sha256 " << doc["svg"]["sha256"].get<std::string>() << ")\n";
  });
  return 0;
}

// ---------------------------------------------------------------- repair

int cmd_repair(Env& env, const std::string& id, const std::string& write_dir) {
  const io::CatalogEntry& e = entry_or_throw(env, id);
  const auto t0 = std::chrono::steady_clock::now();
  auto res = discovery::repair(e);
  Json doc = document(env, "repair");
  doc["id"] = id;
  if (!res) {
    doc["result"] = "NoCurveFound";
    doc["reason"] = res.error().reason;
    const catalog::Erratum* er = catalog::find_erratum(id);
    doc["erratum"] = er ? Json::parse(catalog::serialize_erratum(*er)) : Json(nullptr);
    emit(env, doc, [&](std::ostream& o) {
      o << id << ": no curve found: " << res.error().reason << "\n";
      if (er) o << "a " << er->kind << " erratum is on file: " << er->note << "\n";
    });
    return 1;
  }
  const auto& r = res.value();
  doc["result"] = r.clean() ? "clean" : "repaired";
  doc["verbatim_parsed"] = r.verbatim_parsed;
  if (!r.verbatim_parsed) doc["parse_error"] = r.parse_error;
  doc["verbatim_verified"] = r.verbatim_verified;
  doc["cofactor"] = str(r.cofactor);
  doc["cofactor_source"] = r.cofactor_source;
  if (r.recovered_bc) doc["recovered_bc"] = Json{{"b", to_string(r.recovered_bc->first)}, {"c", to_string(r.recovered_bc->second)}};
  doc["system"] = Json{{"p", str(r.system->P())}, {"q", str(r.system->Q())}};
  doc["slices"] = Json::array();
  for (const auto& c : r.comparisons) {
    Json diffs = Json::array();
    for (const auto& d : c.diffs) {
      diffs.push_back(Json{{"monomial", str(Polynomial::monomial(standard_context(), d.monomial))},
                           {"printed", to_string(d.verbatim)},
                           {"certified", to_string(d.certified)}});
    }
    doc["slices"].push_back(Json{{"label", c.label.empty() ? "whole curve" : c.label},
                                 {"kernel_dimension", c.kernel_dimension},
                                 {"in_span", c.in_span},
                                 {"compared", c.compared},
                                 {"replacement", c.replacement ? Json(str(*c.replacement)) : Json(nullptr)},
                                 {"replacement_verified", c.replacement_verified},
                                 {"diffs", diffs}});
  }
  doc["kernel_curves"] = r.certificates.size();
  doc["notes"] = r.notes;
  const auto er = catalog::erratum_from_repair(e, r);
  doc["erratum"] = er ? Json::parse(catalog::serialize_erratum(*er)) : Json(nullptr);
  if (er && !write_dir.empty()) {
    std::filesystem::create_directories(write_dir);
    const auto path = std::filesystem::path(write_dir) / (id + ".json");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path.string());
    f << catalog::serialize_erratum(*er);
    doc["erratum_written"] = path.string();
  }
  if (env.timings) doc["seconds"] = seconds_since(t0);
  emit(env, doc, [&](std::ostream& o) {
    o << id << ": " << doc["result"].get<std::string>() << "; printed curve "
      << (r.verbatim_parsed ? (r.verbatim_verified ? "verifies" : "does not verify") : "does not parse") << " with K = "
      << str(r.cofactor) << " (" << r.cofactor_source << ")\n";
    if (r.recovered_bc) {
      o << "  printed system admits no curve; the curve is invariant for b = " << to_string(r.recovered_bc->first)
        << ", c = " << to_string(r.recovered_bc->second) << "\n";
    }
    for (const auto& s : doc["slices"]) {
      o << "  " << s["label"].get<std::string>() << ": kernel dimension " << s["kernel_dimension"].get<std::size_t>()
        << ", " << (s["in_span"].get<bool>() ? "in the kernel span" : "not in the kernel span");
      if (!s["diffs"].empty()) {
        o << ", " << s["diffs"].size() << " coefficient(s) differ"
          << (s["replacement_verified"].get<bool>() ? " (replacement verified)" : " (replacement NOT verified)") << "\n";
        for (const auto& d : s["diffs"]) {
          o << "    " << d["monomial"].get<std::string>() << ": " << d["printed"].get<std::string>() << " -> "
            << d["certified"].get<std::string>() << "\n";
        }
        o << "    replacement: " << s["replacement"].get<std::string>() << "\n";
      } else {
        o << "\n";
      }
    }
    for (const auto& n : r.notes) o << "  note: " << n << "\n";
    if (doc.contains("erratum_written")) o << "  erratum written to " << doc["erratum_written"].get<std::string>() << "\n";
  });
  return 0;
}

// ---------------------------------------------------------------- catalog

Json entry_json(const io::CatalogEntry& e) {
  const catalog::Erratum* er = catalog::find_erratum(e.id);
  Json b = Json::object();
  for (const auto& [k, v] : e.bindings) b[k] = v;
  return Json{{"id", e.id},
              {"section", e.section},
              {"state", e.state},
              {"system", Json{{"p", e.system_p}, {"q", e.system_q}}},
              {"curve", e.curve},
              {"stated_degree", e.stated_degree},
              {"stated_cofactor", e.stated_cofactor.empty() ? Json(nullptr) : Json(e.stated_cofactor)},
              {"stated_genus", e.stated_genus >= 0 ? Json(e.stated_genus) : Json(nullptr)},
              {"trust", std::string(io::to_string(e.trust))},
              {"notes", e.notes},
              {"bindings", b},
              {"erratum", er ? Json::parse(catalog::serialize_erratum(*er)) : Json(nullptr)}};
}

int cmd_catalog(Env& env, const std::string& action, const std::string& arg) {
  Json doc = document(env, "catalog " + action);
  if (action == "list") {
    doc["entries"] = Json::array();
    for (const auto& e : env.entries) {
      const catalog::Erratum* er = catalog::find_erratum(e.id);
      doc["entries"].push_back(Json{{"id", e.id},
                                    {"section", e.section},
                                    {"stated_degree", e.stated_degree},
                                    {"stated_cofactor", e.stated_cofactor},
                                    {"stated_genus", e.stated_genus},
                                    {"trust", std::string(io::to_string(e.trust))},
                                    {"erratum", er ? Json(er->kind) : Json(nullptr)}});
    }
    emit(env, doc, [&](std::ostream& o) {
      for (const auto& e : doc["entries"]) {
        o << std::left << std::setw(12) << e["id"].get<std::string>() << std::setw(13)
          << "[" + e["section"].get<std::string>() + "]" << "n = " << std::setw(4) << e["stated_degree"].get<int>()
          << "K = " << std::setw(26)
          << (e["stated_cofactor"].get<std::string>().empty() ? "-" : e["stated_cofactor"].get<std::string>())
          << "genus " << std::setw(4) << (e["stated_genus"].get<int>() < 0 ? "-" : std::to_string(e["stated_genus"].get<int>()))
          << e["trust"].get<std::string>();
        if (!e["erratum"].is_null()) o << "  (" << e["erratum"].get<std::string>() << " erratum)";
        o << "\n";
      }
    });
    return 0;
  }
  if (action == "show") {
    if (arg.empty()) throw UsageError("catalog show needs an id");
    doc["entry"] = entry_json(entry_or_throw(env, arg));
    emit(env, doc, [&](std::ostream& o) {
      const Json& e = doc["entry"];
      o << "id          " << e["id"].get<std::string>() << "\nsection     " << e["section"].get<std::string>()
        << "\nstate       " << e["state"][0].get<std::string>() << ", " << e["state"][1].get<std::string>()
        << "\nsystem      " << e["state"][0].get<std::string>() << "' = " << e["system"]["p"].get<std::string>()
        << "\n            " << e["state"][1].get<std::string>() << "' = " << e["system"]["q"].get<std::string>()
        << "\ncurve       " << e["curve"].get<std::string>() << "\ndegree      " << e["stated_degree"].get<int>()
        << "\ncofactor    " << (e["stated_cofactor"].is_null() ? "-" : e["stated_cofactor"].get<std::string>())
        << "\ngenus       " << (e["stated_genus"].is_null() ? "-" : std::to_string(e["stated_genus"].get<int>()))
        << "\ntrust       " << e["trust"].get<std::string>() << "\n";
      if (!e["bindings"].empty()) {
        o << "bindings   ";
        for (const auto& [k, v] : e["bindings"].items()) o << " " << k << "=" << v.get<std::string>();
        o << "\n";
      }
      if (!e["notes"].get<std::string>().empty()) o << "notes       " << e["notes"].get<std::string>() << "\n";
      if (!e["erratum"].is_null()) {
        const Json& er = e["erratum"];
        o << "erratum     " << er["kind"].get<std::string>() << ": " << er["note"].get<std::string>() << "\n";
        for (const auto& d : er["diffs"]) {
          o << "  " << d["part"].get<std::string>() << " " << d["monomial"].get<std::string>() << ": "
            << d["printed"].get<std::string>() << " -> " << d["corrected"].get<std::string>() << "\n";
        }
      }
    });
    return 0;
  }
  if (action == "export") {
    if (arg.empty()) throw UsageError("catalog export needs a directory");
    catalog::export_to(arg);
    doc["directory"] = arg;
    doc["files"] = Json::array();
    for (const auto& f : catalog::embedded_files()) {
      doc["files"].push_back(Json{{"name", f.name}, {"sha256", std::string(f.sha256)}});
    }
    emit(env, doc, [&](std::ostream& o) {
      for (const auto& f : doc["files"]) o << f["sha256"].get<std::string>() << "  " << f["name"].get<std::string>() << "\n";
      o << "exported to " << arg << "\n";
    });
    return 0;
  }
  if (action == "check") {
    if (arg.empty()) throw UsageError("catalog check needs a file");
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw UsageError("cannot read " + arg);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::string digest = catalog::sha256_hex(text);
    const bool same = digest == catalog::embedded_sha256();
    auto parsed = io::load_catalog(arg);
    doc["file"] = arg;
    doc["sha256"] = digest;
    doc["matches_embedded"] = same;
    doc["parses"] = parsed.ok();
    if (!parsed) doc["error"] = parsed.error().describe();
    doc["embedded_intact"] = catalog::embedded_intact();
    emit(env, doc, [&](std::ostream& o) {
      o << arg << " (sha256 " << digest << "): " << (same ? "matches" : "DIFFERS FROM") << " the embedded catalog";
      if (!same) o << " (sha256 " << catalog::embedded_sha256() << ")";
      if (!parsed) o << "; does not parse: " << parsed.error().describe();
      o << "\n";
    });
    return same && parsed.ok() ? 0 : 1;
  }
  throw UsageError("unknown catalog action '" + action + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Env env(out, err);
  env.threads = thread_cap();
  CLI::App app{"Invariant algebraic curves of planar polynomial vector fields"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", env.json, "Structured output");
  app.add_flag("--timings", env.timings, "Include wall-clock times");
  app.add_option("--catalog", env.catalog_file, "Catalog file to use instead of the embedded one");

  std::vector<std::string> verify_ids;
  bool verify_all = false;
  auto* verify = app.add_subcommand("verify", "Exact invariance check of catalog entries");
  verify->add_option("ids", verify_ids, "Entry ids");
  verify->add_flag("--all", verify_all, "Every entry");

  DiscoverArgs da;
  auto* discover = app.add_subcommand("discover", "Invariant curves of a given degree");
  discover->add_option("id", da.id, "Catalog entry");
  discover->add_option("--system", da.system, "Catalog id or a file with lines  z' = ...");
  discover->add_option("--degree", da.degree, "Curve degree")->required()->check(CLI::Range(1, 60));
  discover->add_option("--cofactor", da.cofactor, "Cofactor (default degree*y)");
  discover->add_flag("--no-qh", da.no_qh, "Drop the quasi-homogeneous ansatz");
  discover->add_flag("--all-weights", da.all_weights, "Keep every weight block");
  discover->add_option("--weight", da.weight, "Weight block");
  discover->add_option("--cap", da.caps, "Parameter degree cap, name=value");
  discover->add_flag("--search-cofactor", da.search_cofactor, "Try affine cofactors when the default finds nothing");

  int el_degree = 0;
  std::string el_param = "q", el_grid;
  std::optional<long> el_weight;
  bool el_all = false, el_grid_only = false;
  auto* eliminate = app.add_subcommand("eliminate", "Normal-form parameters admitting a curve");
  eliminate->add_option("--degree", el_degree, "Curve degree")->required()->check(CLI::Range(1, 60));
  eliminate->add_option("--parameter", el_param, "Family parameter");
  eliminate->add_option("--weight", el_weight, "Weight block");
  eliminate->add_flag("--all-weights", el_all, "Every weight block");
  eliminate->add_flag("--grid-only", el_grid_only, "Scan a grid instead of eliminating");
  eliminate->add_option("--grid", el_grid, "'default' or b0:b1:db,c0:c1:dc");

  std::string g_id, g_q, g_p, g_a, g_sweep;
  bool g_verbatim = false;
  auto* gen = app.add_subcommand("genus", "Geometric genus at rational parameter values");
  gen->add_option("id", g_id, "Catalog entry")->required();
  gen->add_option("--q", g_q, "Value of q");
  gen->add_option("--p", g_p, "Value of p");
  gen->add_option("--a", g_a, "Value of a");
  gen->add_option("--sweep-q", g_sweep, "Comma-separated q values");
  gen->add_flag("--verbatim", g_verbatim, "Use the printed curve even when an erratum exists");

  std::string pl_id, pl_q, pl_p, pl_a, pl_window, pl_seeds, pl_out;
  int pl_res = 512;
  double pl_t = 10;
  bool pl_verbatim = false;
  auto* plot = app.add_subcommand("plot", "Real picture and oval count");
  plot->add_option("id", pl_id, "Catalog entry")->required();
  plot->add_option("--q", pl_q, "Value of q");
  plot->add_option("--p", pl_p, "Value of p");
  plot->add_option("--a", pl_a, "Value of a");
  plot->add_option("--window", pl_window, "xmin,xmax,ymin,ymax (default -8,8,-8,8)");
  plot->add_option("--resolution", pl_res, "Grid cells per axis");
  plot->add_option("--seed-points", pl_seeds, "Trajectory seeds x,y;x,y");
  plot->add_option("--t-end", pl_t, "Integration time each way");
  plot->add_option("--out", pl_out, "SVG path (default <id>.svg)");
  plot->add_flag("--verbatim", pl_verbatim, "Use the printed curve even when an erratum exists");

  std::string r_id, r_write;
  auto* rep = app.add_subcommand("repair", "Compare a printed curve with the exact kernel");
  rep->add_option("id", r_id, "Catalog entry")->required();
  rep->add_option("--write-erratum", r_write, "Directory for the erratum fixture");

  std::string c_action, c_arg;
  auto* cat = app.add_subcommand("catalog", "Inspect or export the built-in catalog");
  cat->add_option("action", c_action, "list | show <id> | export <dir> | check <file>")->required();
  cat->add_option("arg", c_arg, "Entry id, directory or file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    load_entries(env);
    if (*verify) return cmd_verify(env, verify_ids, verify_all);
    if (*discover) return cmd_discover(env, da);
    if (*eliminate) return cmd_eliminate(env, el_degree, el_param, el_weight, el_all, el_grid_only, el_grid);
    if (*gen) return cmd_genus(env, g_id, {{"q", g_q}, {"p", g_p}, {"a", g_a}}, g_verbatim, g_sweep);
    if (*plot) return cmd_plot(env, pl_id, {{"q", pl_q}, {"p", pl_p}, {"a", pl_a}}, pl_window, pl_res, pl_seeds, pl_t,
                               pl_out, pl_verbatim);
    if (*rep) return cmd_repair(env, r_id, r_write);
    if (*cat) return cmd_catalog(env, c_action, c_arg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownVariable& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace darboux::cli
