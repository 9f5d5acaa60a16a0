#include "siegel/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace siegel {

unsigned long long fnv1a64(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hex64(unsigned long long v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", v);
  return std::string(buf);
}

std::string entry_path(const std::string& cache_dir, const std::string& key) {
  return cache_dir + "/" + key + ".json";
}

}  // namespace

std::string cache_key(const std::string& description) { return hex64(fnv1a64(description)); }

void cache_store(const std::string& cache_dir, const std::string& key, const FourierExpansion& f) {
  std::filesystem::create_directories(cache_dir);
  std::string payload = expansion_to_json(f);
  nlohmann::ordered_json j;
  j["key"] = key;
  j["checksum"] = hex64(fnv1a64(payload));
  j["expansion"] = nlohmann::ordered_json::parse(payload);
  std::string path = entry_path(cache_dir, key);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::InvalidInput, "cannot write cache entry " + tmp);
    out << j.dump() << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    raise(ErrorCode::InvalidInput, "cannot rename cache entry into place");
}

std::optional<FourierExpansion> cache_load(const std::string& cache_dir, const std::string& key) {
  std::string path = entry_path(cache_dir, key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception&) {
    raise(ErrorCode::ChecksumMismatch, "cache entry is not valid JSON: " + path);
  }
  if (!j.contains("checksum") || !j.contains("expansion"))
    raise(ErrorCode::ChecksumMismatch, "cache entry lacks checksum or payload: " + path);
  std::string payload = j["expansion"].dump();
  if (j["checksum"].get<std::string>() != hex64(fnv1a64(payload)))
    raise(ErrorCode::ChecksumMismatch, "cache checksum mismatch: " + path);
  return expansion_from_json(payload);
}

}  // namespace siegel
