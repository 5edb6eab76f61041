#include "cxqt/group.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <numeric>
#include <string_view>

namespace cxqt {

namespace {

constexpr ElementId kEmpty = 0xffffffffu;

bool contains_family(const RootSystem& r, Family f) {
  const auto& cs = r.components();
  return std::any_of(cs.begin(), cs.end(), [f](const Component& c) { return c.family == f; });
}

bool key_less(Key a, Key b) { return std::memcmp(a.data(), b.data(), a.size()) < 0; }

}  // namespace

void check_budget(const RootSystem& r, const Budget& budget) {
  if (r.is_symbolic()) throw InvalidInput(r.label() + " is handled symbolically and cannot be enumerated");
  const Integer order = r.predicted_order();
  if (contains_family(r, Family::E8) && !budget.force_e8)
    throw BudgetExceeded("refusing to enumerate " + r.label() + ": |W| = " + order.get_str() +
                         (r.label() == "E8" ? " = 2*8*12*14*18*20*24*30" : " (W(E8) alone has 696729600)") +
                         " elements, far past desk scale; pass --force-e8 to override");
  if (contains_family(r, Family::E7) && !budget.slow_ok)
    throw BudgetExceeded("enumerating " + r.label() + " (|W| = " + order.get_str() +
                         ") is a long run; pass --slow to allow it");
  if (!budget.force_e8 && order > Integer(std::to_string(budget.max_elements)))
    throw BudgetExceeded("|W(" + r.label() + ")| = " + order.get_str() + " exceeds the element budget of " +
                         std::to_string(budget.max_elements));
  if (order > Integer("4000000000"))
    throw BudgetExceeded("|W(" + r.label() + ")| = " + order.get_str() + " does not fit 32-bit element ids");
  if (r.size() > 255)
    throw BudgetExceeded(r.label() + " has " + std::to_string(r.size()) + " roots; keys hold at most 255");
}

bool fits_budget(const RootSystem& r, const Budget& budget) {
  try {
    check_budget(r, budget);
    return true;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

FiniteGroup::FiniteGroup(RootSystem system) : system_(std::move(system)), width_(system_.size()) {
  const int dim = system_.ambient_dim();
  const int rank = system_.rank();
  ExactMatrix basis(dim, rank);
  for (int s = 0; s < rank; ++s) {
    const ExactVector& alpha = system_.root(system_.simple_roots()[s]);
    basis.col(s) = alpha;
    gen_matrices_.push_back(reflection_matrix(alpha));
    std::vector<RootIndex> perm(width_);
    for (std::size_t i = 0; i < width_; ++i) {
      auto image = system_.find(reflect(alpha, system_.root(i)));
      if (!image) throw std::logic_error("simple reflection does not permute the roots of " + system_.label());
      perm[i] = static_cast<RootIndex>(*image);
    }
    gen_perms_.push_back(std::move(perm));
  }
  complement_ = nullspace(basis.transpose());
  ExactMatrix full(dim, dim);
  full << basis, complement_;
  basis_inverse_ = cxqt::inverse(full);
}

std::uint64_t FiniteGroup::hash(Key k) const {
  return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(k.data()), k.size()));
}

void FiniteGroup::reserve_index(std::size_t expected) {
  std::size_t cap = 16;
  while (cap < 2 * expected) cap <<= 1;
  table_.assign(cap, kEmpty);
  mask_ = cap - 1;
}

void FiniteGroup::index_insert(ElementId id) {
  std::uint64_t slot = hash(key(id)) & mask_;
  while (table_[slot] != kEmpty) slot = (slot + 1) & mask_;
  table_[slot] = id;
}

std::optional<ElementId> FiniteGroup::find(Key k) const {
  if (k.size() != width_ || table_.empty()) return std::nullopt;
  std::uint64_t slot = hash(k) & mask_;
  while (table_[slot] != kEmpty) {
    const ElementId id = table_[slot];
    if (std::memcmp(keys_.data() + std::size_t(id) * width_, k.data(), width_) == 0) return id;
    slot = (slot + 1) & mask_;
  }
  return std::nullopt;
}

ElementId FiniteGroup::append(Key k, ElementId parent, std::uint8_t gen) {
  const auto id = static_cast<ElementId>(parent_.size());
  keys_.insert(keys_.end(), k.begin(), k.end());
  parent_.push_back(parent);
  parent_gen_.push_back(gen);
  if (2 * parent_.size() > table_.size()) {
    reserve_index(2 * parent_.size());
    for (ElementId i = 0; i < parent_.size(); ++i) index_insert(i);
  } else {
    index_insert(id);
  }
  return id;
}

std::vector<int> FiniteGroup::word(ElementId i) const {
  std::vector<int> w;
  while (parent_gen_[i] != kNoGen) {
    w.push_back(parent_gen_[i]);
    i = parent_[i];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<RootIndex> FiniteGroup::compose(Key gi, Key gj) const {
  std::vector<RootIndex> out(width_);
  for (std::size_t r = 0; r < width_; ++r) out[r] = gi[gj[r]];
  return out;
}

std::vector<RootIndex> FiniteGroup::inverse(Key g) const {
  std::vector<RootIndex> out(width_);
  for (std::size_t r = 0; r < width_; ++r) out[g[r]] = static_cast<RootIndex>(r);
  return out;
}

ElementId FiniteGroup::multiply(ElementId i, ElementId j) const {
  const auto k = compose(key(i), key(j));
  auto id = find(k);
  if (!id) throw std::logic_error("group is not closed under multiplication");
  return *id;
}

ExactMatrix FiniteGroup::matrix(Key k) const {
  const int dim = system_.ambient_dim();
  const int rank = system_.rank();
  ExactMatrix images(dim, dim);
  for (int s = 0; s < rank; ++s) images.col(s) = system_.root(k[system_.simple_roots()[s]]);
  if (dim > rank) images.rightCols(dim - rank) = complement_;
  return images * basis_inverse_;
}

ExactMatrix FiniteGroup::matrix_from_word(ElementId i) const {
  ExactMatrix m = ExactMatrix::Identity(dim(), dim());
  for (int s : word(i)) m = (m * gen_matrices_[s]).eval();
  return m;
}

std::vector<RootIndex> FiniteGroup::key_of_matrix(const ExactMatrix& m) const {
  std::vector<RootIndex> out(width_);
  for (std::size_t r = 0; r < width_; ++r) {
    auto image = system_.find(m * system_.root(r));
    if (!image) return {};
    out[r] = static_cast<RootIndex>(*image);
  }
  return out;
}

FiniteGroup FiniteGroup::assemble(RootSystem system, std::vector<RootIndex> keys, std::vector<ElementId> parents,
                                  std::vector<std::uint8_t> parent_generators) {
  FiniteGroup g(std::move(system));
  g.keys_ = std::move(keys);
  g.parent_ = std::move(parents);
  g.parent_gen_ = std::move(parent_generators);
  g.reserve_index(g.parent_.size());
  for (ElementId i = 0; i < g.parent_.size(); ++i) g.index_insert(i);
  for (const auto& perm : g.gen_perms_) {
    auto id = g.find(perm);
    if (!id) throw std::runtime_error("simple reflection missing from serialized group");
    g.generators_.push_back(*id);
  }
  return g;
}

FiniteGroup generate(const RootSystem& r, const Budget& budget) {
  check_budget(r, budget);
  const std::uint64_t predicted = r.predicted_order().get_ui();
  FiniteGroup g(r);
  const std::size_t width = g.width_;
  const std::size_t gens = g.gen_perms_.size();
  g.keys_.reserve(predicted * width);
  g.parent_.reserve(predicted);
  g.parent_gen_.reserve(predicted);
  g.reserve_index(predicted);

  std::vector<RootIndex> identity(width);
  std::iota(identity.begin(), identity.end(), RootIndex{0});
  g.append(identity, 0, FiniteGroup::kNoGen);

  struct Candidate {
    ElementId parent;
    std::uint8_t gen;
  };
  const unsigned threads = std::max(1u, budget.threads);
  std::vector<std::vector<RootIndex>> cand_keys(threads);
  std::vector<std::vector<Candidate>> cand_meta(threads);

  std::size_t lo = 0;
  std::size_t hi = 1;
  while (lo < hi) {
    parallel_chunks(hi - lo, threads, [&](std::size_t begin, std::size_t end, std::size_t w) {
      auto& keys = cand_keys[w];
      auto& meta = cand_meta[w];
      keys.clear();
      meta.clear();
      std::vector<RootIndex> child(width);
      for (std::size_t e = lo + begin; e < lo + end; ++e) {
        const RootIndex* parent = g.keys_.data() + e * width;
        for (std::size_t s = 0; s < gens; ++s) {
          const auto& sp = g.gen_perms_[s];
          for (std::size_t i = 0; i < width; ++i) child[i] = parent[sp[i]];
          if (g.find(child)) continue;
          keys.insert(keys.end(), child.begin(), child.end());
          meta.push_back({static_cast<ElementId>(e), static_cast<std::uint8_t>(s)});
        }
      }
    });
    for (unsigned w = 0; w < threads; ++w) {
      for (std::size_t c = 0; c < cand_meta[w].size(); ++c) {
        Key k(cand_keys[w].data() + c * width, width);
        if (g.find(k)) continue;
        if (g.order() >= predicted)
          throw std::logic_error("enumeration of " + r.label() + " exceeded the predicted order " +
                                 std::to_string(predicted));
        g.append(k, cand_meta[w][c].parent, cand_meta[w][c].gen);
      }
      cand_keys[w].clear();
      cand_meta[w].clear();
    }
    lo = hi;
    hi = g.order();
  }
  if (g.order() != predicted)
    throw std::logic_error("enumeration of " + r.label() + " closed at " + std::to_string(g.order()) +
                           " elements, expected " + std::to_string(predicted));

  for (std::size_t s = 0; s < gens; ++s) g.generators_.push_back(*g.find(g.gen_perms_[s]));
  return g;
}

int element_order(Key k) {
  std::vector<bool> seen(k.size(), false);
  long order = 1;
  for (std::size_t start = 0; start < k.size(); ++start) {
    if (seen[start]) continue;
    long len = 0;
    for (std::size_t i = start; !seen[i]; i = k[i]) {
      seen[i] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return static_cast<int>(order);
}

int element_order(const FiniteGroup& g, ElementId i) { return element_order(g.key(i)); }

ConjugacyClass element_invariants(const FiniteGroup& g, ElementId i) {
  ConjugacyClass c;
  const ExactMatrix m = g.matrix(i);
  c.representative = i;
  c.order = element_order(g, i);
  c.det = det(m);
  c.trace = m.trace();
  c.charpoly = char_poly(m);
  c.e_grade = static_cast<int>(eigenspace_dim(m, QSqrt5(-1)));
  c.rep_word = g.word(i);
  return c;
}

ClassTable conjugacy_partition(const FiniteGroup& g, unsigned threads) {
  const std::size_t n = g.order();
  const std::size_t width = g.key_width();
  const std::size_t gens = g.generators().size();

  // conj[e * gens + s] = id of s g_e s
  std::vector<ElementId> conj(n * gens);
  parallel_chunks(n, std::max(1u, threads), [&](std::size_t begin, std::size_t end, std::size_t) {
    std::vector<RootIndex> out(width);
    for (std::size_t e = begin; e < end; ++e) {
      const Key ge = g.key(static_cast<ElementId>(e));
      for (std::size_t s = 0; s < gens; ++s) {
        const Key sp = g.generator_key(s);
        for (std::size_t i = 0; i < width; ++i) out[i] = sp[ge[sp[i]]];
        auto id = g.find(out);
        if (!id) throw std::logic_error("group is not closed under conjugation");
        conj[e * gens + s] = *id;
      }
    }
  });

  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> raw_class(n, kUnset);
  struct Orbit {
    ElementId min_element;
    std::uint64_t size;
  };
  std::vector<Orbit> orbits;
  std::deque<ElementId> queue;
  for (ElementId start = 0; start < n; ++start) {
    if (raw_class[start] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(orbits.size());
    Orbit orbit{start, 0};
    raw_class[start] = label;
    queue.push_back(start);
    while (!queue.empty()) {
      const ElementId e = queue.front();
      queue.pop_front();
      ++orbit.size;
      if (key_less(g.key(e), g.key(orbit.min_element))) orbit.min_element = e;
      for (std::size_t s = 0; s < gens; ++s) {
        const ElementId c = conj[std::size_t(e) * gens + s];
        if (raw_class[c] == kUnset) {
          raw_class[c] = label;
          queue.push_back(c);
        }
      }
    }
    orbits.push_back(orbit);
  }

  std::vector<std::uint32_t> perm(orbits.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (orbits[a].size != orbits[b].size) return orbits[a].size < orbits[b].size;
    return key_less(g.key(orbits[a].min_element), g.key(orbits[b].min_element));
  });
  std::vector<std::uint32_t> rank_of(orbits.size());
  ClassTable table;
  table.classes.resize(orbits.size());
  for (std::uint32_t r = 0; r < perm.size(); ++r) {
    rank_of[perm[r]] = r;
    table.classes[r].representative = orbits[perm[r]].min_element;
    table.classes[r].size = orbits[perm[r]].size;
  }
  table.class_of.resize(n);
  for (std::size_t e = 0; e < n; ++e) table.class_of[e] = rank_of[raw_class[e]];
  return table;
}

void fill_invariants(const FiniteGroup& g, ClassTable& table, unsigned threads) {
  parallel_chunks(table.classes.size(), std::max(1u, threads), [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t c = begin; c < end; ++c) {
      auto& cls = table.classes[c];
      ConjugacyClass inv = element_invariants(g, cls.representative);
      inv.size = cls.size;
      cls = std::move(inv);
    }
  });
}

ClassTable conjugacy_classes(const FiniteGroup& g, unsigned threads) {
  ClassTable table = conjugacy_partition(g, threads);
  fill_invariants(g, table, threads);
  return table;
}

}  // namespace cxqt
