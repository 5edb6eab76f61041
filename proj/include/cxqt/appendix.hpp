#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cxqt/group.hpp"
#include "cxqt/quaternion.hpp"

namespace cxqt {

// ---------------------------------------------------------------- H3 model

struct H3Generators {
  ExactMatrix a, b, c;
};

/// The three 3x3 reflections over Q(sqrt 5) for the roots e_2,
/// (-e_1 + k e_2 + k^-1 e_3)/2 and e_1, k the golden ratio.
H3Generators h3_generators();
/// Product of generators spelled with the letters a, b, c ("abab").
ExactMatrix h3_word(std::string_view word);

/// det(1 - t g), i.e. t^n p(1/t) for p = det(tI - g).
ExactPoly one_minus_tg_poly(const ExactMatrix& g);

struct H3TableRow {
  std::string word;
  ExactPoly computed;  // det(1 - t g)
  ExactPoly expected;
  bool match = false;
};

/// Positive-determinant class representatives 1, ac, bc, ab, abab with
/// their det(1 - t g) next to the tabulated factorizations.
std::vector<H3TableRow> h3_charpoly_table();

// ------------------------------------------- matrix-keyed group (oracle)

/// Group generated by explicit matrices, keyed by the matrices themselves.
struct MatrixGroup {
  std::vector<ExactMatrix> elements;  // elements[0] is the identity
};

struct MatrixClass {
  std::size_t representative = 0;
  std::size_t size = 0;
  int order = 1;
  QSqrt5 det;
  QSqrt5 trace;
  ExactPoly charpoly;
  int e_grade = 0;
};

/// Breadth-first closure; throws std::length_error past `cap` elements.
MatrixGroup generate_matrix_group(const std::vector<ExactMatrix>& generators, std::size_t cap = 20000);
/// Classes by conjugating every element with every group element.
std::vector<MatrixClass> matrix_group_classes(const MatrixGroup& g);
int matrix_order(const ExactMatrix& m, int cap = 1000);

// ------------------------------------------------------ H4 quaternion lemmas

struct DetIdentityCheck {
  QSqrt5 det;       // det of x -> l x + x r
  QSqrt5 expected;  // 4 (l_0 + r_0)^2
  bool holds() const { return det == expected; }
};

DetIdentityCheck verify_det_identity(const Quaternion& l, const Quaternion& r);

/// ((l0+r0)^2 + |l_v|^2 + |r_v|^2)^2 - 4 |l_v|^2 |r_v|^2, the value observed for
/// arbitrary (non-unit) l, r. Reported, not relied on.
QSqrt5 det_left_plus_right_general(const Quaternion& l, const Quaternion& r);

/// True iff x -> l x r* has no eigenvalue -1, by the l_0 + r_0 != 0 test.
bool h4_no_minus_one_criterion(const Quaternion& l, const Quaternion& r);

/// Kernel witness for x -> p x* + x: -1 + p, or i when p = 1.
Quaternion star_minus_one_witness(const Quaternion& p);

struct H4LiftReport {
  std::size_t pairs = 0;               // (l, r) icosian pairs examined
  std::size_t pairs_in_group = 0;      // map_lr(l, r) found in W(H4)
  std::size_t criterion_agrees = 0;    // (l0 + r0 != 0) <=> e_grade == 0
  std::size_t rotations_hit = 0;       // distinct det +1 elements reached
  std::size_t rotations = 0;           // det +1 elements of W(H4)
  std::size_t star_maps = 0;           // p x* maps examined
  std::size_t star_in_group = 0;
  std::size_t star_with_minus_one = 0;
  std::size_t star_witness_ok = 0;
  bool ok() const {
    return pairs_in_group == pairs && criterion_agrees == pairs && rotations_hit == rotations &&
           star_in_group == star_maps && star_with_minus_one == star_maps && star_witness_ok == star_maps;
  }
};

/// Runs every icosian pair (l, r) and every icosian p through W(H4), whose
/// roots must be the icosians themselves.
H4LiftReport h4_quaternion_lift(const FiniteGroup& h4, const ClassTable& classes);

}  // namespace cxqt
