#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "darboux/discovery/repair.hpp"
#include "darboux/field/vector_field.hpp"
#include "darboux/io/catalog.hpp"

namespace darboux::catalog {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// The catalog document compiled into the binary, and the digest recorded
/// for it at build time.
std::string_view embedded_text();
std::string_view embedded_sha256();

/// A fixture file with the digest recorded at build time.
struct EmbeddedFile {
  std::string name;
  std::string_view text;
  std::string_view sha256;
  /// The digest recomputed now.
  bool intact() const { return sha256_hex(text) == sha256; }
};
/// catalog.json followed by errata/<id>.json in name order.
std::vector<EmbeddedFile> embedded_files();
bool embedded_intact();

/// The embedded catalog, parsed once. Throws if the embedded data was
/// altered after the build or fails to parse.
const std::vector<io::CatalogEntry>& builtin();
const io::CatalogEntry* find(const std::vector<io::CatalogEntry>& entries, std::string_view id);

struct ErratumDiff {
  std::string part;  // "curve", "system_p" or "system_q"
  std::string monomial, printed, corrected;

  friend bool operator==(const ErratumDiff&, const ErratumDiff&) = default;
};

/// A correction to one catalog entry. "certified" errata come from repair
/// and are re-verified exactly; "manual" ones were derived by hand and are
/// re-verified all the same, but never rescue an entry's verdict.
struct Erratum {
  std::string id;
  std::string kind;
  std::string system_p, system_q, curve, cofactor;
  std::vector<ErratumDiff> diffs;
  std::string note;

  friend bool operator==(const Erratum&, const Erratum&) = default;
};

Outcome<Erratum, io::SchemaError> parse_erratum(std::string_view text);
std::string serialize_erratum(const Erratum& e);

const std::vector<Erratum>& builtin_errata();
const Erratum* find_erratum(std::string_view id);

/// The entry with the erratum's system, curve and cofactor substituted.
io::CatalogEntry apply(const io::CatalogEntry& entry, const Erratum& e);

/// Certified erratum from a repair whose corrected curve verifies; nothing
/// when the repair changed nothing.
std::optional<Erratum> erratum_from_repair(const io::CatalogEntry& entry, const discovery::RepairReport& rep);

/// Exact check of the corrected curve against the corrected system.
field::Verdict verify_erratum(const io::CatalogEntry& entry, const Erratum& e);

/// Writes catalog.json, errata/<id>.json and SHA256SUMS under dir.
void export_to(const std::filesystem::path& dir);

/// Compares a catalog file with the embedded digest.
bool matches_embedded(const std::filesystem::path& file);

}  // namespace darboux::catalog
