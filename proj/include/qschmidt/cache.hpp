// On-disk result cache: one JSON file per operation,
//   {"schema_version": N, "operation": "...", "entries": {key: result}}.
// A file with a different schema version is treated as empty.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace qschmidt {

class ResultCache {
 public:
  static constexpr int kSchemaVersion = 1;
  static constexpr const char* kDirEnv = "QSCHMIDT_CACHE_DIR";

  // Explicit directory, else $QSCHMIDT_CACHE_DIR, else ./.qschmidt-cache.
  static std::filesystem::path resolve_dir(const std::string& explicit_dir = {}) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv(kDirEnv); env != nullptr && *env != '\0') return env;
    return ".qschmidt-cache";
  }

  ResultCache(std::filesystem::path dir, std::string operation)
      : path_(std::move(dir) / (operation + ".json")), operation_(std::move(operation)) {
    std::ifstream in(path_);
    if (!in) return;
    auto doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) return;
    if (doc.value("schema_version", -1) != kSchemaVersion) return;
    if (doc.contains("entries") && doc["entries"].is_object()) entries_ = doc["entries"];
  }

  std::optional<nlohmann::json> get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return std::optional<nlohmann::json>(std::in_place, *it);
  }

  void put(const std::string& key, nlohmann::json value) {
    entries_[key] = std::move(value);
    dirty_ = true;
  }

  // Throws std::runtime_error on I/O failure.
  void save() {
    if (!dirty_) return;
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
    if (ec) throw std::runtime_error("cannot create cache directory " + path_.parent_path().string());
    const auto tmp = path_.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache file " + tmp);
      nlohmann::json doc{{"schema_version", kSchemaVersion}, {"operation", operation_}, {"entries", entries_}};
      out << doc.dump(2) << '\n';
      if (!out) throw std::runtime_error("cannot write cache file " + tmp);
    }
    std::filesystem::rename(tmp, path_, ec);
    if (ec) throw std::runtime_error("cannot replace cache file " + path_.string());
    dirty_ = false;
  }

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
  std::string operation_;
  nlohmann::json entries_ = nlohmann::json::object();
  bool dirty_ = false;
};

}  // namespace qschmidt
