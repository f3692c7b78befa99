#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "darboux/poly/errors.hpp"

namespace darboux::io {

enum class Trust { kVerbatimTrusted, kVerbatimUntrusted };

std::string_view to_string(Trust t);

/// One transcribed system/curve pair. Polynomials are kept as text so that
/// a curve that fails to parse can still be stored, shown and repaired.
struct CatalogEntry {
  std::string id;
  std::string section;
  std::vector<std::string> state{"z", "y"};
  std::string system_p;
  std::string system_q;
  std::string curve;
  int stated_degree = 0;
  std::string stated_cofactor;  // empty when the source gives none
  int stated_genus = -1;        // -1 when the source gives none
  Trust trust = Trust::kVerbatimTrusted;
  std::string notes;
  /// Default parameter specialization for genus and plotting, e.g. {"q": "1"}.
  std::map<std::string, std::string> bindings;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct SchemaError {
  std::string path;  // e.g. "entries[3].stated_degree"
  std::string message;

  std::string describe() const { return path + ": " + message; }
};

inline constexpr int kCatalogSchemaVersion = 1;

Outcome<std::vector<CatalogEntry>, SchemaError> parse_catalog(std::string_view text);
std::string serialize_catalog(const std::vector<CatalogEntry>& entries);

/// Reads a catalog document from disk. An empty file is an empty catalog.
Outcome<std::vector<CatalogEntry>, SchemaError> load_catalog(const std::filesystem::path& path);
void save_catalog(const std::filesystem::path& path, const std::vector<CatalogEntry>& entries);

}  // namespace darboux::io
