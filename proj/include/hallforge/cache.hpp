/// \file
/// Persistent cache of class lists and subobject tables, one JSON file per
/// configuration fingerprint.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "hallforge/hall.hpp"

namespace hallforge::cache {

std::string sha256_hex(const std::string& data);

/// Content hash of the canonical quiver JSON together with q and t.
std::string fingerprint(const repcat::Quiver& quiver, std::uint32_t q, int t);

/// Everything tabulated so far in `hall` and its registry.
nlohmann::json export_state(const hall::HallEngine& hall, const std::string& fingerprint);

/// Installs a state produced by export_state. Throws CacheInvalid when the
/// fingerprint differs or the content is malformed or inconsistent.
void import_state(repcat::ClassRegistry& registry, hall::HallEngine& hall, const nlohmann::json& state,
                  const std::string& fingerprint);

class CacheStore {
 public:
  explicit CacheStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// The directory named by HALLFORGE_CACHE, if set and non-empty.
  static std::optional<CacheStore> from_env();

  std::filesystem::path path_for(const std::string& fingerprint) const;

  /// False when nothing is stored under the fingerprint. Throws CacheInvalid
  /// when the stored file is unreadable or inconsistent.
  bool load(repcat::ClassRegistry& registry, hall::HallEngine& hall, const std::string& fingerprint) const;
  /// Writes to a private temporary file and renames it into place, so
  /// concurrent writers of one key leave one complete file.
  void store(const hall::HallEngine& hall, const std::string& fingerprint) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace hallforge::cache
