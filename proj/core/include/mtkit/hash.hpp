#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace mtkit {

// 64-bit FNV-1a. Stable across platforms; used for manifests and
// preprocessing fingerprints, not for security.
std::uint64_t fnv1a64(std::string_view data,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);
std::string content_hash(std::string_view data);
std::string file_hash(const std::filesystem::path& path);

// SplitMix64 step; used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mtkit
