#include "darboux/catalog/catalog.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "darboux/io/expr.hpp"
#include "json.hpp"

namespace darboux::catalog {

namespace detail {
struct RawFile {
  const char* name;
  std::string_view text;
  std::string_view sha256;
};
extern const RawFile kFiles[];
extern const std::size_t kFileCount;
}  // namespace detail

using Json = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string_view embedded_text() { return detail::kFiles[0].text; }
std::string_view embedded_sha256() { return detail::kFiles[0].sha256; }

std::vector<EmbeddedFile> embedded_files() {
  std::vector<EmbeddedFile> out;
  for (std::size_t i = 0; i < detail::kFileCount; ++i) {
    out.push_back(EmbeddedFile{detail::kFiles[i].name, detail::kFiles[i].text, detail::kFiles[i].sha256});
  }
  return out;
}

bool embedded_intact() {
  for (const auto& f : embedded_files()) {
    if (!f.intact()) return false;
  }
  return true;
}

const std::vector<io::CatalogEntry>& builtin() {
  static const std::vector<io::CatalogEntry> entries = [] {
    if (!embedded_intact()) throw Error("embedded catalog does not match its build-time checksum");
    auto parsed = io::parse_catalog(embedded_text());
    if (!parsed) throw Error("embedded catalog is invalid: " + parsed.error().describe());
    return std::move(parsed).value();
  }();
  return entries;
}

const io::CatalogEntry* find(const std::vector<io::CatalogEntry>& entries, std::string_view id) {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

// ---------------------------------------------------------------- errata

namespace {

const std::set<std::string> kKinds{"certified", "manual"};

std::string required_string(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw io::SchemaError{path + "." + key, "expected a string"};
  }
  return j[key].get<std::string>();
}

}  // namespace

Outcome<Erratum, io::SchemaError> parse_erratum(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    return io::SchemaError{"", e.what()};
  }
  try {
    if (!j.is_object()) throw io::SchemaError{"", "expected an object"};
    if (!j.contains("schema_version") || j["schema_version"] != io::kCatalogSchemaVersion) {
      throw io::SchemaError{"schema_version", "expected " + std::to_string(io::kCatalogSchemaVersion)};
    }
    Erratum e;
    e.id = required_string(j, "id", "");
    e.kind = required_string(j, "kind", "");
    if (!kKinds.count(e.kind)) throw io::SchemaError{"kind", "expected \"certified\" or \"manual\""};
    if (!j.contains("system") || !j["system"].is_object()) throw io::SchemaError{"system", "expected an object"};
    e.system_p = required_string(j["system"], "p", "system");
    e.system_q = required_string(j["system"], "q", "system");
    e.curve = required_string(j, "curve", "");
    e.cofactor = required_string(j, "cofactor", "");
    e.note = j.contains("note") ? required_string(j, "note", "") : "";
    if (j.contains("diffs")) {
      if (!j["diffs"].is_array()) throw io::SchemaError{"diffs", "expected an array"};
      for (std::size_t i = 0; i < j["diffs"].size(); ++i) {
        const Json& d = j["diffs"][i];
        const std::string path = "diffs[" + std::to_string(i) + "]";
        e.diffs.push_back(ErratumDiff{required_string(d, "part", path), required_string(d, "monomial", path),
                                      required_string(d, "printed", path), required_string(d, "corrected", path)});
      }
    }
    for (const auto* s : {&e.system_p, &e.system_q, &e.curve, &e.cofactor}) {
      auto p = io::parse_polynomial(*s, standard_context());
      if (!p) throw io::SchemaError{"", "'" + *s + "' does not parse: " + p.error().describe()};
    }
    return e;
  } catch (const io::SchemaError& err) {
    return err;
  }
}

std::string serialize_erratum(const Erratum& e) {
  Json j;
  j["schema_version"] = io::kCatalogSchemaVersion;
  j["id"] = e.id;
  j["kind"] = e.kind;
  j["system"] = Json{{"p", e.system_p}, {"q", e.system_q}};
  j["curve"] = e.curve;
  j["cofactor"] = e.cofactor;
  Json diffs = Json::array();
  for (const auto& d : e.diffs) {
    diffs.push_back(Json{{"part", d.part}, {"monomial", d.monomial}, {"printed", d.printed}, {"corrected", d.corrected}});
  }
  j["diffs"] = diffs;
  j["note"] = e.note;
  return j.dump(2) + "\n";
}

const std::vector<Erratum>& builtin_errata() {
  static const std::vector<Erratum> errata = [] {
    if (!embedded_intact()) throw Error("embedded errata do not match their build-time checksums");
    std::vector<Erratum> out;
    for (std::size_t i = 1; i < detail::kFileCount; ++i) {
      auto e = parse_erratum(detail::kFiles[i].text);
      if (!e) throw Error(std::string("embedded ") + detail::kFiles[i].name + ": " + e.error().describe());
      out.push_back(std::move(e).value());
    }
    return out;
  }();
  return errata;
}

const Erratum* find_erratum(std::string_view id) {
  for (const auto& e : builtin_errata()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

io::CatalogEntry apply(const io::CatalogEntry& entry, const Erratum& e) {
  io::CatalogEntry out = entry;
  out.system_p = e.system_p;
  out.system_q = e.system_q;
  out.curve = e.curve;
  out.stated_cofactor = e.cofactor;
  return out;
}

namespace {

void diff_into(std::vector<ErratumDiff>& out, const std::string& part, const Polynomial& printed,
               const Polynomial& corrected) {
  std::set<Monomial, std::greater<>> support;
  for (const auto& t : printed.terms()) support.insert(t.monomial);
  for (const auto& t : corrected.terms()) support.insert(t.monomial);
  const auto& ctx = printed.context();
  for (const auto& m : support) {
    const Rational a = printed.coefficient(m), b = corrected.coefficient(m);
    if (a == b) continue;
    out.push_back(ErratumDiff{part, io::print_polynomial(Polynomial::monomial(ctx, m)), to_string(a), to_string(b)});
  }
}

}  // namespace

std::optional<Erratum> erratum_from_repair(const io::CatalogEntry& entry, const discovery::RepairReport& rep) {
  if (!rep.system) return std::nullopt;
  const auto g = rep.corrected_curve();
  if (!g) return std::nullopt;
  const field::Verdict v = field::verify_certificate(field::make_certificate(*rep.system, *g, rep.cofactor));
  if (!v.pass) return std::nullopt;
  const auto& ctx = standard_context();
  const field::PolyVectorField printed = discovery::system_of(entry);
  Erratum e;
  e.id = entry.id;
  e.kind = "certified";
  e.system_p = io::print_polynomial(rep.system->P());
  e.system_q = io::print_polynomial(rep.system->Q());
  e.cofactor = io::print_polynomial(rep.cofactor);
  diff_into(e.diffs, "system_p", printed.P(), rep.system->P());
  diff_into(e.diffs, "system_q", printed.Q(), rep.system->Q());
  auto verbatim = io::parse_polynomial(entry.curve, ctx);
  if (verbatim) {
    diff_into(e.diffs, "curve", verbatim.value(), *g);
    // Keep the printed text when only the system changed.
    e.curve = verbatim.value() == *g ? entry.curve : io::print_polynomial(*g);
  } else {
    e.curve = io::print_polynomial(*g);
  }
  if (e.diffs.empty()) return std::nullopt;
  std::ostringstream note;
  note << "kernel repair at degree " << rep.degree << " with cofactor " << e.cofactor << " (" << rep.cofactor_source
       << ")";
  for (const auto& n : rep.notes) note << "; " << n;
  e.note = note.str();
  return e;
}

field::Verdict verify_erratum(const io::CatalogEntry& entry, const Erratum& e) {
  const io::CatalogEntry fixed = apply(entry, e);
  const field::PolyVectorField X = discovery::system_of(fixed);
  const auto& ctx = standard_context();
  return field::verify_certificate(
      field::make_certificate(X, io::parse_or_throw(fixed.curve, ctx), io::parse_or_throw(fixed.stated_cofactor, ctx)));
}

void export_to(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "errata");
  std::ostringstream sums;
  for (const auto& f : embedded_files()) {
    const std::filesystem::path rel = f.name == "catalog.json" ? f.name : "errata/" + f.name;
    std::ofstream out(dir / rel, std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / rel).string());
    out << f.text;
    sums << f.sha256 << "  " << rel.string() << "\n";
  }
  std::ofstream out(dir / "SHA256SUMS", std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / "SHA256SUMS").string());
  out << sums.str();
}

bool matches_embedded(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot read " + file.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(text) == embedded_sha256();
}

}  // namespace darboux::catalog
