#pragma once

#include <vector>

#include "cxqt/root_system.hpp"
#include "cxqt/scalar.hpp"

namespace cxqt {

/// Partition counts for 0..n_max, filled by dynamic programming over part sizes.
struct PartitionTable {
  int n_max = 0;
  std::vector<Integer> p_all;         // all partitions
  std::vector<Integer> p_odd;         // every part odd
  std::vector<Integer> p_even_evens;  // an even number of even parts

  static PartitionTable compute(int n_max);
};

Integer p_all(int n);
Integer p_odd(int n);
Integer p_even_evens(int n);

/// One conjugacy class of the dihedral group of order 2n acting on the plane.
struct DihedralClass {
  bool reflection = false;
  int power = 0;  // r^power or s r^power for the representative
  int size = 0;
  int e_grade = 0;
};

/// Classes of I2(n) = <r, s | r^n = s^2 = (sr)^2 = 1>, found by conjugation
/// orbits on the 2n symbolic elements, with E read off the rotation angle.
std::vector<DihedralClass> dihedral_classes(int n);
/// Number of dihedral classes with no eigenvalue -1.
Integer q_dihedral(int n);

/// Q for an irreducible type from partition counts, the dihedral model, or
/// the exceptional constants.
Integer q_closed(const Component& c);
Integer q_closed(Family family, int n);
/// Product over the summands.
Integer q_closed(const std::vector<Component>& components);

}  // namespace cxqt
