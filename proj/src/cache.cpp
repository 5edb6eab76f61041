#include "cxqt/cache.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <random>

#include <zlib.h>

namespace cxqt {

namespace {

constexpr char kMagic[4] = {'C', 'X', 'Q', 'T'};

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  void bytes(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(const char* p, std::size_t n) : p_(p), end_(p + n) {}
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(*p_++);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(u8()) << (8 * i);
    return v;
  }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(p_, n);
    p_ += n;
    return s;
  }
  void bytes(void* out, std::size_t n) {
    need(n);
    std::memcpy(out, p_, n);
    p_ += n;
  }
  std::size_t remaining() const { return static_cast<std::size_t>(end_ - p_); }
  const char* position() const { return p_; }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw CacheError(CacheError::Kind::format, "cache file is truncated");
  }
  const char* p_;
  const char* end_;
};

std::uint32_t checksum(const char* p, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  while (n > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(p), chunk);
    p += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir, const std::string& label) {
  std::string name = label;
  for (char& c : name)
    if (c == '+' || c == '(' || c == ')') c = '_';
  return dir / (name + ".cxqt");
}

void cache_store(const FiniteGroup& g, const ClassTable& classes, const std::filesystem::path& path) {
  const RootSystem& r = g.system();
  Writer head;
  head.bytes(kMagic, 4);
  head.u32(kCacheVersion);
  head.str(r.label());
  head.u32(static_cast<std::uint32_t>(r.rank()));
  head.u64(g.order());
  head.u32(static_cast<std::uint32_t>(r.size()));

  Writer body;
  body.u32(static_cast<std::uint32_t>(r.ambient_dim()));
  for (const auto& v : r.roots())
    for (Eigen::Index i = 0; i < v.size(); ++i) body.str(v(i).str());
  body.u32(static_cast<std::uint32_t>(r.simple_roots().size()));
  for (auto s : r.simple_roots()) body.u32(static_cast<std::uint32_t>(s));
  body.bytes(g.raw_keys().data(), g.raw_keys().size());
  for (auto p : g.raw_parents()) body.u32(p);
  body.bytes(g.raw_parent_generators().data(), g.raw_parent_generators().size());
  body.u32(static_cast<std::uint32_t>(classes.classes.size()));
  for (const auto& c : classes.classes) {
    body.u32(c.representative);
    body.u64(c.size);
  }
  for (auto c : classes.class_of) body.u32(c);

  Writer tail;
  tail.u32(checksum(body.data().data(), body.data().size()));

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError(CacheError::Kind::io, "cannot open " + path.string() + " for writing");
  out.write(head.data().data(), static_cast<std::streamsize>(head.data().size()));
  out.write(body.data().data(), static_cast<std::streamsize>(body.data().size()));
  out.write(tail.data().data(), static_cast<std::streamsize>(tail.data().size()));
  if (!out) throw CacheError(CacheError::Kind::io, "write to " + path.string() + " failed");
}

CachedGroup cache_load(const std::filesystem::path& path, unsigned threads) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError(CacheError::Kind::io, "cannot open " + path.string());
  const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Reader head(file.data(), file.size());
  char magic[4];
  head.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw CacheError(CacheError::Kind::format, "not a CXQT cache file");
  const std::uint32_t version = head.u32();
  if (version != kCacheVersion)
    throw CacheError(CacheError::Kind::version, "cache format version " + std::to_string(version) +
                                                    " is not supported (expected " +
                                                    std::to_string(kCacheVersion) + ")");
  const std::string label = head.str();
  const int rank = static_cast<int>(head.u32());
  const std::uint64_t order = head.u64();
  const std::uint32_t root_count = head.u32();

  if (head.remaining() < 4) throw CacheError(CacheError::Kind::format, "cache file is truncated");
  const std::size_t body_size = head.remaining() - 4;
  Reader tail(head.position() + body_size, 4);
  if (tail.u32() != checksum(head.position(), body_size))
    throw CacheError(CacheError::Kind::checksum, "checksum mismatch in " + path.string());

  Reader body(head.position(), body_size);
  const int dim = static_cast<int>(body.u32());
  std::vector<ExactVector> roots(root_count, ExactVector(dim));
  try {
    for (auto& v : roots)
      for (int i = 0; i < dim; ++i) v(i) = QSqrt5::parse(body.str());
  } catch (const std::invalid_argument& e) {
    throw CacheError(CacheError::Kind::format, std::string("bad root coordinate: ") + e.what());
  }
  const std::uint32_t simple_count = body.u32();
  std::vector<ExactVector> simple;
  for (std::uint32_t s = 0; s < simple_count; ++s) {
    const std::uint32_t idx = body.u32();
    if (idx >= root_count) throw CacheError(CacheError::Kind::format, "simple root index out of range");
    simple.push_back(roots[idx]);
  }
  if (order == 0 || root_count == 0 || order * root_count > body_size)
    throw CacheError(CacheError::Kind::format, "header sizes do not match the body");
  std::vector<RootIndex> keys(order * root_count);
  body.bytes(keys.data(), keys.size());
  for (auto k : keys)
    if (k >= root_count) throw CacheError(CacheError::Kind::format, "element key refers to a missing root");
  std::vector<ElementId> parents(order);
  for (auto& p : parents) p = body.u32();
  std::vector<std::uint8_t> parent_gens(order);
  body.bytes(parent_gens.data(), parent_gens.size());

  ClassTable table;
  table.classes.resize(body.u32());
  for (auto& c : table.classes) {
    c.representative = body.u32();
    c.size = body.u64();
  }
  table.class_of.resize(order);
  for (auto& c : table.class_of) {
    c = body.u32();
    if (c >= table.classes.size()) throw CacheError(CacheError::Kind::format, "class index out of range");
  }

  std::vector<Component> components;
  try {
    components = parse_type(label);
  } catch (const InvalidInput& e) {
    throw CacheError(CacheError::Kind::format, e.what());
  }
  RootSystem system = RootSystem::from_data(std::move(components), rank, dim, std::move(roots), simple);
  if (system.size() != root_count) throw CacheError(CacheError::Kind::format, "root count mismatch");
  if (body.remaining() != 0) throw CacheError(CacheError::Kind::format, "trailing bytes in cache body");
  FiniteGroup g = [&] {
    try {
      return FiniteGroup::assemble(std::move(system), std::move(keys), std::move(parents), std::move(parent_gens));
    } catch (const std::runtime_error& e) {
      throw CacheError(CacheError::Kind::closure, e.what());
    }
  }();
  if (g.order() != order) throw CacheError(CacheError::Kind::format, "element count mismatch");

  std::mt19937_64 rng(order ^ root_count);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(order - 1));
  const std::size_t samples = std::min<std::uint64_t>(order, 256);
  for (std::size_t i = 0; i < samples; ++i) {
    const ElementId e = pick(rng);
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      if (!g.find(g.compose(g.key(e), g.generator_key(s))))
        throw CacheError(CacheError::Kind::closure, "sampled element times a generator is missing from " +
                                                        path.string());
    }
  }
  for (const auto& c : table.classes)
    if (c.representative >= order || table.class_of[c.representative] != static_cast<std::uint32_t>(&c - table.classes.data()))
      throw CacheError(CacheError::Kind::format, "class representative inconsistent with partition");

  fill_invariants(g, table, threads);
  return {std::move(g), std::move(table)};
}

}  // namespace cxqt
