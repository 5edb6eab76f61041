#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <cstring>
#include <iterator>

#include <unistd.h>
#include <zlib.h>

#include "cxqt/cache.hpp"

using namespace cxqt;
namespace fs = std::filesystem;

namespace {

std::vector<char> read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_all(const fs::path& p, const std::vector<char>& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::string> invariant_multiset(const ClassTable& t) {
  std::vector<std::string> out;
  for (const auto& c : t.classes)
    out.push_back(std::to_string(c.size) + "|" + std::to_string(c.order) + "|" + c.det.str() + "|" + c.trace.str() +
                  "|" + c.charpoly.str() + "|" + std::to_string(c.e_grade));
  std::sort(out.begin(), out.end());
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("cxqt_cache_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

CacheError::Kind load_error(const fs::path& p) {
  try {
    cache_load(p);
  } catch (const CacheError& e) {
    return e.kind;
  }
  FAIL("load unexpectedly succeeded");
  return CacheError::Kind::io;
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("round trip keeps orders and class invariants") {
    TempDir dir;
    for (const char* label : {"H4", "E6", "A2+B2"}) {
      const FiniteGroup g = generate(RootSystem::from_label(label));
      const ClassTable t = conjugacy_classes(g);
      const fs::path p = cache_path(dir.path, label);
      cache_store(g, t, p);
      const CachedGroup back = cache_load(p, 2);
      CAPTURE(label);
      CHECK(back.group.order() == g.order());
      CHECK(back.group.raw_keys() == g.raw_keys());
      CHECK(back.group.system().label() == label);
      CHECK(invariant_multiset(back.classes) == invariant_multiset(t));
      CHECK(back.classes.class_of == t.class_of);
    }
    CHECK(cache_path(dir.path, "I2(5)+A1").filename() == "I2_5__A1.cxqt");
  }

  TEST_CASE("damaged files are rejected with the matching error") {
    TempDir dir;
    const FiniteGroup g = generate(RootSystem::build(Family::H3));
    const fs::path good = dir.path / "h3.cxqt";
    cache_store(g, conjugacy_classes(g), good);
    const std::vector<char> bytes = read_all(good);
    const std::size_t body_start = 4 + 4 + 4 + 2 + 4 + 8 + 4;  // label "H3"

    const fs::path bad = dir.path / "bad.cxqt";
    SUBCASE("flipped body byte") {
      auto b = bytes;
      b[body_start + b.size() / 2 % (b.size() - body_start - 4)] ^= 0x5a;
      write_all(bad, b);
      CHECK(load_error(bad) == CacheError::Kind::checksum);
    }
    SUBCASE("wrong version") {
      auto b = bytes;
      b[4] = 7;
      write_all(bad, b);
      CHECK(load_error(bad) == CacheError::Kind::version);
    }
    SUBCASE("bad magic") {
      auto b = bytes;
      b[0] = 'X';
      write_all(bad, b);
      CHECK(load_error(bad) == CacheError::Kind::format);
    }
    SUBCASE("truncated") {
      write_all(bad, std::vector<char>(bytes.begin(), bytes.begin() + static_cast<long>(bytes.size() / 2)));
      const auto kind = load_error(bad);
      CHECK((kind == CacheError::Kind::format || kind == CacheError::Kind::checksum));
    }
    SUBCASE("consistent checksum over a tampered key") {
      auto b = bytes;
      // overwrite the key of element 1 with the identity key, then re-seal
      const std::size_t roots = 30, dim = 3;
      std::size_t off = body_start + 4;
      for (std::size_t i = 0; i < roots * dim; ++i) {
        std::uint32_t len;
        std::memcpy(&len, &b[off], 4);
        off += 4 + len;
      }
      std::uint32_t simple;
      std::memcpy(&simple, &b[off], 4);
      off += 4 + 4 * simple;
      std::copy(b.begin() + static_cast<long>(off), b.begin() + static_cast<long>(off + roots),
                b.begin() + static_cast<long>(off + roots));
      const std::size_t body_len = b.size() - body_start - 4;
      const auto crc = static_cast<std::uint32_t>(
          ::crc32(0, reinterpret_cast<const Bytef*>(&b[body_start]), static_cast<uInt>(body_len)));
      std::memcpy(&b[b.size() - 4], &crc, 4);
      write_all(bad, b);
      const auto kind = load_error(bad);
      CHECK(kind != CacheError::Kind::checksum);
      CHECK(kind != CacheError::Kind::io);
    }
    SUBCASE("missing file") { CHECK(load_error(dir.path / "none.cxqt") == CacheError::Kind::io); }
  }
}
