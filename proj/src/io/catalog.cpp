#include "darboux/io/catalog.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace darboux::io {

namespace {

using Json = nlohmann::ordered_json;

struct SchemaFailure {
  SchemaError error;
};

[[noreturn]] void violation(const std::string& path, const std::string& message) {
  throw SchemaFailure{SchemaError{path, message}};
}

const Json& field(const Json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) violation(path + "." + key, "missing required field");
  return *it;
}

std::string string_field(const Json& obj, const std::string& path, const char* key, bool required = true) {
  if (!required && !obj.contains(key)) return {};
  const Json& v = field(obj, path, key);
  if (!v.is_string()) violation(path + "." + key, "expected string");
  return v.get<std::string>();
}

int int_field(const Json& obj, const std::string& path, const char* key, int fallback, bool required) {
  if (!required && !obj.contains(key)) return fallback;
  const Json& v = field(obj, path, key);
  if (!v.is_number_integer()) violation(path + "." + key, "expected integer");
  return v.get<int>();
}

CatalogEntry parse_entry(const Json& obj, const std::string& path) {
  if (!obj.is_object()) violation(path, "expected object");
  CatalogEntry e;
  e.id = string_field(obj, path, "id");
  if (e.id.empty()) violation(path + ".id", "must not be empty");
  e.section = string_field(obj, path, "section");
  if (obj.contains("state")) {
    const Json& s = obj["state"];
    if (!s.is_array() || s.size() != 2 || !s[0].is_string() || !s[1].is_string()) {
      violation(path + ".state", "expected a list of two variable names");
    }
    e.state = {s[0].get<std::string>(), s[1].get<std::string>()};
  }
  e.system_p = string_field(obj, path, "system_p");
  e.system_q = string_field(obj, path, "system_q");
  e.curve = string_field(obj, path, "curve");
  e.stated_degree = int_field(obj, path, "stated_degree", 0, true);
  if (e.stated_degree < 1) violation(path + ".stated_degree", "must be positive");
  e.stated_cofactor = string_field(obj, path, "stated_cofactor", false);
  e.stated_genus = int_field(obj, path, "stated_genus", -1, false);
  const std::string trust = string_field(obj, path, "trust");
  if (trust == "verbatim-trusted") {
    e.trust = Trust::kVerbatimTrusted;
  } else if (trust == "verbatim-untrusted") {
    e.trust = Trust::kVerbatimUntrusted;
  } else {
    violation(path + ".trust", "expected 'verbatim-trusted' or 'verbatim-untrusted'");
  }
  e.notes = string_field(obj, path, "notes", false);
  if (obj.contains("bindings")) {
    const Json& b = obj["bindings"];
    if (!b.is_object()) violation(path + ".bindings", "expected object of strings");
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (!it.value().is_string()) violation(path + ".bindings." + it.key(), "expected string");
      e.bindings[it.key()] = it.value().get<std::string>();
    }
  }
  return e;
}

}  // namespace

std::string_view to_string(Trust t) {
  return t == Trust::kVerbatimTrusted ? "verbatim-trusted" : "verbatim-untrusted";
}

Outcome<std::vector<CatalogEntry>, SchemaError> parse_catalog(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return std::vector<CatalogEntry>{};
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    return SchemaError{"$", std::string("malformed document: ") + err.what()};
  }
  try {
    if (!doc.is_object()) violation("$", "expected object");
    const int version = int_field(doc, "$", "schema_version", 0, true);
    if (version != kCatalogSchemaVersion) violation("$.schema_version", "unsupported version " + std::to_string(version));
    const Json& entries = field(doc, "$", "entries");
    if (!entries.is_array()) violation("$.entries", "expected list");
    std::vector<CatalogEntry> out;
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const std::string path = "entries[" + std::to_string(i) + "]";
      out.push_back(parse_entry(entries[i], path));
      if (!seen.emplace(out.back().id, i).second) violation(path + ".id", "duplicate id '" + out.back().id + "'");
    }
    return out;
  } catch (const SchemaFailure& f) {
    return f.error;
  }
}

std::string serialize_catalog(const std::vector<CatalogEntry>& entries) {
  Json doc;
  doc["schema_version"] = kCatalogSchemaVersion;
  Json list = Json::array();
  for (const auto& e : entries) {
    Json obj;
    obj["id"] = e.id;
    obj["section"] = e.section;
    obj["state"] = e.state;
    obj["system_p"] = e.system_p;
    obj["system_q"] = e.system_q;
    obj["curve"] = e.curve;
    obj["stated_degree"] = e.stated_degree;
    if (!e.stated_cofactor.empty()) obj["stated_cofactor"] = e.stated_cofactor;
    if (e.stated_genus >= 0) obj["stated_genus"] = e.stated_genus;
    obj["trust"] = std::string(to_string(e.trust));
    if (!e.notes.empty()) obj["notes"] = e.notes;
    if (!e.bindings.empty()) {
      Json b = Json::object();
      for (const auto& [k, v] : e.bindings) b[k] = v;
      obj["bindings"] = b;
    }
    list.push_back(std::move(obj));
  }
  doc["entries"] = std::move(list);
  return doc.dump(2) + "\n";
}

Outcome<std::vector<CatalogEntry>, SchemaError> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return SchemaError{path.string(), "cannot open file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

void save_catalog(const std::filesystem::path& path, const std::vector<CatalogEntry>& entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_catalog(entries);
}

}  // namespace darboux::io
