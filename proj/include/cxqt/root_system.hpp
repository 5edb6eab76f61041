#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cxqt/linalg.hpp"
#include "cxqt/scalar.hpp"

namespace cxqt {

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Family { A, B, C, BC, D, E6, E7, E8, F4, G2, H3, H4, I2 };

std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);
bool is_exceptional(Family f);

/// One irreducible summand, e.g. {A, 3} for A_3 or {I2, 5} for I2(5).
/// Exceptional families carry their rank in `n`.
struct Component {
  Family family;
  int n;

  int rank() const;
  std::string label() const;
  /// Degrees of the basic invariants; their product is |W|.
  std::vector<int> degrees() const;
  Integer group_order() const;
  friend bool operator==(const Component&, const Component&) = default;
};

/// Parses "H3", "A4", "BC2", "I2(5)", sums like "A2+B2", or a bare family
/// name combined with an explicit rank ("A", 4). Throws InvalidInput.
std::vector<Component> parse_type(std::string_view label, std::optional<int> n = std::nullopt);
std::string type_label(const std::vector<Component>& components);

class RootSystem {
 public:
  /// Standard-coordinate construction of one irreducible system; validated.
  static RootSystem build(Family family, int n = 0);
  static RootSystem build(const Component& c) { return build(c.family, c.n); }
  /// Direct sum of the irreducible systems named by `parse_type`.
  static RootSystem from_label(std::string_view label, std::optional<int> n = std::nullopt);
  /// Unvalidated assembly from raw data (hand-built systems, cache loads).
  /// Roots are sorted into canonical order; `simple` lists simple-root vectors.
  static RootSystem from_data(std::vector<Component> components, int rank, int ambient_dim,
                              std::vector<ExactVector> roots, const std::vector<ExactVector>& simple);

  const std::vector<Component>& components() const { return components_; }
  std::string label() const { return type_label(components_); }
  int rank() const { return rank_; }
  int ambient_dim() const { return ambient_dim_; }
  const std::vector<ExactVector>& roots() const { return roots_; }
  std::size_t size() const { return roots_.size(); }
  const ExactVector& root(std::size_t i) const { return roots_[i]; }
  /// Indices into roots(), one per simple root, in generator order.
  const std::vector<std::size_t>& simple_roots() const { return simple_; }
  std::optional<int> dihedral_n() const { return dihedral_n_; }
  /// I2(n) has no matrix model here; see closed_forms.
  bool is_symbolic() const { return symbolic_; }
  bool is_reduced() const;
  bool is_crystallographic() const;
  Integer predicted_order() const;

  std::optional<std::size_t> find(const ExactVector& v) const;

 private:
  std::vector<Component> components_;
  int rank_ = 0;
  int ambient_dim_ = 0;
  std::vector<ExactVector> roots_;
  std::vector<std::size_t> simple_;
  std::optional<int> dihedral_n_;
  bool symbolic_ = false;
};

/// x - 2 (x, v) / (v, v) v
ExactVector reflect(const ExactVector& v, const ExactVector& x);
/// Matrix of the reflection in the hyperplane orthogonal to v.
ExactMatrix reflection_matrix(const ExactVector& v);
/// As above, but v must be a root of r.
ExactMatrix reflection_matrix(const RootSystem& r, const ExactVector& v);

RootSystem direct_sum(const RootSystem& r1, const RootSystem& r2);

struct RootSystemReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

RootSystemReport verify_root_system(const RootSystem& r);

nlohmann::ordered_json to_json(const RootSystem& r);
RootSystem root_system_from_json(const nlohmann::ordered_json& j);

/// 1 x n lexicographic comparison under the real ordering.
bool lex_less(const ExactVector& x, const ExactVector& y);

}  // namespace cxqt
