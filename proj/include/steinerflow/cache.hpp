#pragma once
// Persistent JSON cache for search results. The directory comes from the
// STEINERFLOW_CACHE environment variable (read per call, so tests can
// redirect it), defaulting to ./.steinerflow-cache. Entries carry a content
// digest and every load is re-verified by the caller's invariants.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "steinerflow/common.hpp"

namespace steinerflow {

inline std::filesystem::path cache_dir() {
  const char* env = std::getenv("STEINERFLOW_CACHE");
  return std::filesystem::path(env && *env ? env : "./.steinerflow-cache");
}

// Returns the parsed entry when present, digest-valid, and format-matching.
inline std::optional<nlohmann::ordered_json> cache_load(const std::string& key,
                                                        const std::string& format) {
  std::filesystem::path p = cache_dir() / (key + ".json");
  std::ifstream in(p);
  if (!in) return std::nullopt;
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (...) {
    return std::nullopt;
  }
  if (!j.contains("format") || j["format"] != format) return std::nullopt;
  if (!j.contains("digest") || !j.contains("payload")) return std::nullopt;
  std::string digest = j["digest"].get<std::string>();
  if (digest != to_hex16(fnv1a64(j["payload"].dump()))) return std::nullopt;
  return j["payload"];
}

inline void cache_store(const std::string& key, const std::string& format,
                        const nlohmann::ordered_json& payload) {
  std::error_code ec;
  std::filesystem::create_directories(cache_dir(), ec);
  if (ec) return;  // caching is best-effort
  nlohmann::ordered_json j;
  j["format"] = format;
  j["digest"] = to_hex16(fnv1a64(payload.dump()));
  j["payload"] = payload;
  // last-writer-wins is benign: content is keyed by its inputs
  std::ofstream out(cache_dir() / (key + ".json"));
  if (out) out << j.dump(1) << "\n";
}

}  // namespace steinerflow
