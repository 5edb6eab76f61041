#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cxqt/linalg.hpp"
#include "cxqt/root_system.hpp"

namespace cxqt {

/// Raised when a requested enumeration is larger than the configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Budget {
  std::uint64_t max_elements = 5'000'000;
  bool slow_ok = false;   // admits W(E7)
  bool force_e8 = false;  // admits W(E8), ignoring max_elements
  unsigned threads = 1;
};

/// Throws BudgetExceeded (or InvalidInput for symbolic systems) when `r`
/// may not be enumerated under `budget`.
void check_budget(const RootSystem& r, const Budget& budget);
bool fits_budget(const RootSystem& r, const Budget& budget);

/// Index of a root in RootSystem::roots(); keys are arrays of these.
using RootIndex = std::uint8_t;
using Key = std::span<const RootIndex>;
using ElementId = std::uint32_t;

/**
 * W(R) as an explicit element list.
 *
 * Each element is stored once, keyed by the permutation it induces on the
 * ordered root list (key[i] = index of g(root_i)). Roots span the root
 * space and the complement is fixed pointwise, so the key is faithful and
 * the matrix is recovered from it on demand. Element 0 is the identity and
 * every other element records its breadth-first parent, so
 * element = parent * s_gen and word() reads the product left to right.
 */
class FiniteGroup {
 public:
  const RootSystem& system() const { return system_; }
  std::size_t order() const { return parent_.size(); }
  std::size_t key_width() const { return width_; }
  int rank() const { return system_.rank(); }
  int dim() const { return system_.ambient_dim(); }

  Key key(ElementId i) const { return {keys_.data() + std::size_t(i) * width_, width_}; }
  std::optional<ElementId> find(Key k) const;
  /// Element ids of the simple reflections, in simple-root order.
  const std::vector<ElementId>& generators() const { return generators_; }
  Key generator_key(std::size_t s) const { return gen_perms_[s]; }

  /// Simple-reflection indices w with element = s_w[0] s_w[1] ... s_w[k].
  std::vector<int> word(ElementId i) const;
  ElementId parent(ElementId i) const { return parent_[i]; }
  int parent_generator(ElementId i) const { return parent_gen_[i] == kNoGen ? -1 : parent_gen_[i]; }

  /// Key of g_i g_j (g_j applied first).
  std::vector<RootIndex> compose(Key gi, Key gj) const;
  std::vector<RootIndex> inverse(Key g) const;
  ElementId multiply(ElementId i, ElementId j) const;

  ExactMatrix matrix(Key k) const;
  ExactMatrix matrix(ElementId i) const { return matrix(key(i)); }
  /// Product of simple reflection matrices along word(i); independent of the key.
  ExactMatrix matrix_from_word(ElementId i) const;
  /// Root permutation induced by m; empty if m does not permute the roots.
  std::vector<RootIndex> key_of_matrix(const ExactMatrix& m) const;

  /// Internal layout, for serialization.
  const std::vector<RootIndex>& raw_keys() const { return keys_; }
  const std::vector<ElementId>& raw_parents() const { return parent_; }
  const std::vector<std::uint8_t>& raw_parent_generators() const { return parent_gen_; }

  static constexpr std::uint8_t kNoGen = 0xff;

  /// Rebuilds a group from serialized arrays, re-indexing every key.
  static FiniteGroup assemble(RootSystem system, std::vector<RootIndex> keys, std::vector<ElementId> parents,
                              std::vector<std::uint8_t> parent_generators);

 private:
  explicit FiniteGroup(RootSystem system);
  friend FiniteGroup generate(const RootSystem& r, const Budget& budget);

  std::uint64_t hash(Key k) const;
  void reserve_index(std::size_t expected);
  void index_insert(ElementId id);
  ElementId append(Key k, ElementId parent, std::uint8_t gen);

  RootSystem system_;
  std::size_t width_ = 0;
  std::vector<RootIndex> keys_;
  std::vector<ElementId> parent_;
  std::vector<std::uint8_t> parent_gen_;
  std::vector<ElementId> generators_;
  std::vector<std::vector<RootIndex>> gen_perms_;
  std::vector<ElementId> table_;
  std::uint64_t mask_ = 0;
  ExactMatrix complement_;      // basis of the orthogonal complement of the root span
  ExactMatrix basis_inverse_;   // inverse of [simple roots | complement]
  std::vector<ExactMatrix> gen_matrices_;
};

/// Breadth-first closure from the identity under right multiplication by
/// simple reflections. Work on each level is split across budget.threads
/// workers; insertion order is fixed, so ids do not depend on thread count.
FiniteGroup generate(const RootSystem& r, const Budget& budget = {});

/// Least m >= 1 with g^m = 1 (cycle lengths of the root permutation).
int element_order(const FiniteGroup& g, ElementId i);
int element_order(Key k);

struct ConjugacyClass {
  ElementId representative = 0;  // minimal key in the class
  std::uint64_t size = 0;
  int order = 1;
  QSqrt5 det;
  QSqrt5 trace;
  ExactPoly charpoly;  // monic det(tI - g)
  int e_grade = 0;     // dim of the (-1)-eigenspace
  std::vector<int> rep_word;
};

struct ClassTable {
  std::vector<ConjugacyClass> classes;   // sorted by (size, representative key)
  std::vector<std::uint32_t> class_of;   // element id -> index into classes
};

/// Orbits of conjugation by the simple reflections, with invariants filled in.
ClassTable conjugacy_classes(const FiniteGroup& g, unsigned threads = 1);

/// Partition only (invariants left default); used by cache loading.
ClassTable conjugacy_partition(const FiniteGroup& g, unsigned threads = 1);
void fill_invariants(const FiniteGroup& g, ClassTable& table, unsigned threads = 1);

/// Invariant record for an arbitrary element (size and representative unset).
ConjugacyClass element_invariants(const FiniteGroup& g, ElementId i);

/// Runs fn(begin, end, chunk) over [0, n) split into contiguous chunks.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn);

}  // namespace cxqt

#include "cxqt/detail/parallel.hpp"
