#ifndef SIEGEL_CACHE_HPP
#define SIEGEL_CACHE_HPP

#include <optional>
#include <string>

#include "siegel/fourier.hpp"

namespace siegel {

// FNV-1a over bytes; used both for cache keys and payload checksums.
unsigned long long fnv1a64(const std::string& bytes);

// Content-addressed key for a generator invocation (hex of the hash of the
// description string, e.g. "theta-e8-bound9").
std::string cache_key(const std::string& description);

// Store/load a generated expansion under cachedir/<key>.json. The stored
// document carries a checksum of the expansion payload; a mismatch on load
// raises ChecksumMismatch (callers regenerate). A missing entry is nullopt.
void cache_store(const std::string& cache_dir, const std::string& key, const FourierExpansion& f);
std::optional<FourierExpansion> cache_load(const std::string& cache_dir, const std::string& key);

}  // namespace siegel

#endif
