#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "cxqt/group.hpp"

namespace cxqt {

/*
 * Cache file layout (all integers little-endian):
 *
 *   header   "CXQT" | u32 version | u32 len, label bytes | u32 rank | u64 order | u32 root count
 *   body     u32 ambient dim
 *            root coordinates: root count * dim strings (u32 len + scalar text)
 *            u32 simple count, u32 simple root indices
 *            element keys: order * root count bytes
 *            parents: order * u32, parent generators: order * u8
 *            u32 class count, per class u32 representative + u64 size
 *            class of each element: order * u32
 *   trailer  u32 CRC-32 of the body
 */
inline constexpr std::uint32_t kCacheVersion = 1;

struct CacheError : std::runtime_error {
  enum class Kind { io, format, version, checksum, closure };
  CacheError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

struct CachedGroup {
  FiniteGroup group;
  ClassTable classes;
};

void cache_store(const FiniteGroup& g, const ClassTable& classes, const std::filesystem::path& path);
/// Verifies version and checksum, then checks closure under the generators on
/// a random sample of elements. Class invariants are recomputed.
CachedGroup cache_load(const std::filesystem::path& path, unsigned threads = 1);

/// <dir>/<label>.cxqt with '+' and parentheses replaced by '_'.
std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& label);

}  // namespace cxqt
