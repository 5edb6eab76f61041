#include "cxqt/appendix.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

#include "cxqt/class_counter.hpp"

namespace cxqt {

namespace {

void require_unit(const Quaternion& q, const char* what) {
  if (!q.is_unit()) throw InvalidInput(std::string(what) + " must be a unit quaternion");
}

QSqrt5 random_small(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> denom(1, 4);
  std::uniform_int_distribution<int> kind(0, 3);
  const int d = denom(rng);
  switch (kind(rng)) {
    case 0: return QSqrt5(0);
    case 1: return QSqrt5(Rational(coeff(rng), d));
    default: return QSqrt5(Rational(coeff(rng), d), Rational(coeff(rng), d));
  }
}

}  // namespace

// ------------------------------------------------------------ quaternions

ExactMatrix map_lr(const Quaternion& l, const Quaternion& r) {
  require_unit(l, "l");
  require_unit(r, "r");
  const Quaternion rc = r.conj();
  return quaternion_map_matrix<QSqrt5>([&](const Quaternion& x) { return l * x * rc; });
}

ExactMatrix map_star(const Quaternion& p) {
  require_unit(p, "p");
  return quaternion_map_matrix<QSqrt5>([&](const Quaternion& x) { return p * x.conj(); });
}

ExactMatrix map_left_plus_right(const Quaternion& l, const Quaternion& r) {
  return quaternion_map_matrix<QSqrt5>([&](const Quaternion& x) { return l * x + x * r; });
}

std::vector<Quaternion> icosians() {
  std::vector<Quaternion> out;
  const QSqrt5 h(Rational(1, 2));
  for (int i = 0; i < 4; ++i) {
    for (int s : {1, -1}) {
      std::array<QSqrt5, 4> v{0, 0, 0, 0};
      v[i] = s;
      out.push_back({v[0], v[1], v[2], v[3]});
    }
  }
  for (int mask = 0; mask < 16; ++mask) {
    std::array<QSqrt5, 4> v;
    for (int i = 0; i < 4; ++i) v[i] = (mask >> i) & 1 ? -h : h;
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  const QSqrt5 tau = QSqrt5::golden();
  const std::array<QSqrt5, 4> base{QSqrt5(0), h, h * tau.inverse(), h * tau};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
    if (inversions % 2) continue;
    for (int signs = 0; signs < 8; ++signs) {
      std::array<QSqrt5, 4> v;
      for (int k = 0; k < 4; ++k) {
        QSqrt5 value = base[k];
        if (k > 0 && ((signs >> (k - 1)) & 1)) value = -value;
        v[perm[k]] = value;
      }
      out.push_back({v[0], v[1], v[2], v[3]});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Quaternion random_unit_quaternion(std::mt19937_64& rng) {
  const QSqrt5 a = random_small(rng);
  const QSqrt5 b = random_small(rng);
  const QSqrt5 c = random_small(rng);
  const QSqrt5 n = a * a + b * b + c * c;
  const QSqrt5 inv = (QSqrt5(1) + n).inverse();
  Quaternion q{(QSqrt5(1) - n) * inv, QSqrt5(2) * a * inv, QSqrt5(2) * b * inv, QSqrt5(2) * c * inv};
  static const std::vector<Quaternion> units = icosians();
  std::uniform_int_distribution<std::size_t> pick(0, 3 * units.size() - 1);
  const std::size_t choice = pick(rng);
  if (choice < units.size()) q = units[choice] * q;
  return q;
}

// ------------------------------------------------------------------- H3

H3Generators h3_generators() {
  const QSqrt5 k = QSqrt5::golden();
  const QSqrt5 h(Rational(1, 2));
  H3Generators g;
  g.a = ExactMatrix::Identity(3, 3);
  g.a(1, 1) = -1;
  g.b.resize(3, 3);
  g.b << h, h * k, h * (k - 1),
         h * k, h * (1 - k), -h,
         h * (k - 1), -h, h * k;
  g.c = ExactMatrix::Identity(3, 3);
  g.c(0, 0) = -1;
  return g;
}

ExactMatrix h3_word(std::string_view word) {
  const H3Generators g = h3_generators();
  ExactMatrix m = ExactMatrix::Identity(3, 3);
  for (char ch : word) {
    switch (ch) {
      case 'a': m = (m * g.a).eval(); break;
      case 'b': m = (m * g.b).eval(); break;
      case 'c': m = (m * g.c).eval(); break;
      case '1': break;
      default: throw InvalidInput(std::string("unknown H3 generator '") + ch + "'");
    }
  }
  return m;
}

ExactPoly one_minus_tg_poly(const ExactMatrix& g) { return char_poly(g).reversed(); }

std::vector<H3TableRow> h3_charpoly_table() {
  const QSqrt5 k = QSqrt5::golden();
  const ExactPoly one_minus_t{1, -1};
  const ExactPoly one_plus_t{1, 1};
  const std::vector<std::pair<std::string, ExactPoly>> expected = {
      {"1", one_minus_t * one_minus_t * one_minus_t},
      {"ac", one_minus_t * one_plus_t * one_plus_t},
      {"bc", one_minus_t * ExactPoly{1, 1, 1}},
      {"ab", one_minus_t * ExactPoly{1, QSqrt5(1) - k, 1}},
      {"abab", one_minus_t * ExactPoly{1, k, 1}},
  };
  std::vector<H3TableRow> rows;
  for (const auto& [word, poly] : expected) {
    H3TableRow row{word, one_minus_tg_poly(h3_word(word)), poly, false};
    row.match = row.computed == row.expected;
    rows.push_back(std::move(row));
  }
  return rows;
}

// --------------------------------------------------------- matrix groups

int matrix_order(const ExactMatrix& m, int cap) {
  const ExactMatrix id = ExactMatrix::Identity(m.rows(), m.cols());
  ExactMatrix p = m;
  for (int k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = (p * m).eval();
  }
  throw std::length_error("matrix order exceeds " + std::to_string(cap));
}

MatrixGroup generate_matrix_group(const std::vector<ExactMatrix>& generators, std::size_t cap) {
  if (generators.empty()) throw InvalidInput("no generators");
  const Eigen::Index n = generators.front().rows();
  MatrixGroup g;
  std::map<std::string, std::size_t> index;
  g.elements.push_back(ExactMatrix::Identity(n, n));
  index.emplace(matrix_str(g.elements.back()), 0);
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& s : generators) {
      ExactMatrix next = g.elements[head] * s;
      auto [it, inserted] = index.emplace(matrix_str(next), g.elements.size());
      if (!inserted) continue;
      g.elements.push_back(std::move(next));
      if (g.elements.size() > cap) throw std::length_error("matrix group exceeds " + std::to_string(cap));
    }
  }
  return g;
}

std::vector<MatrixClass> matrix_group_classes(const MatrixGroup& g) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.elements.size(); ++i) index.emplace(matrix_str(g.elements[i]), i);
  std::vector<ExactMatrix> inverses;
  for (const auto& m : g.elements) inverses.push_back(cxqt::inverse(m));

  std::vector<int> class_of(g.elements.size(), -1);
  std::vector<MatrixClass> classes;
  for (std::size_t h = 0; h < g.elements.size(); ++h) {
    if (class_of[h] >= 0) continue;
    const int label = static_cast<int>(classes.size());
    MatrixClass cls;
    cls.representative = h;
    for (std::size_t x = 0; x < g.elements.size(); ++x) {
      const ExactMatrix conj = g.elements[x] * g.elements[h] * inverses[x];
      const std::size_t id = index.at(matrix_str(conj));
      if (class_of[id] < 0) {
        class_of[id] = label;
        ++cls.size;
      }
    }
    const ExactMatrix& m = g.elements[h];
    cls.order = matrix_order(m);
    cls.det = det(m);
    cls.trace = m.trace();
    cls.charpoly = char_poly(m);
    cls.e_grade = e_grade(m);
    classes.push_back(std::move(cls));
  }
  return classes;
}

// ------------------------------------------------------------------- H4

DetIdentityCheck verify_det_identity(const Quaternion& l, const Quaternion& r) {
  const QSqrt5 s = l.w + r.w;
  return {det(map_left_plus_right(l, r)), QSqrt5(4) * s * s};
}

QSqrt5 det_left_plus_right_general(const Quaternion& l, const Quaternion& r) {
  const QSqrt5 s = l.w + r.w;
  const QSqrt5 lv = l.x * l.x + l.y * l.y + l.z * l.z;
  const QSqrt5 rv = r.x * r.x + r.y * r.y + r.z * r.z;
  const QSqrt5 t = s * s + lv + rv;
  return t * t - QSqrt5(4) * lv * rv;
}

bool h4_no_minus_one_criterion(const Quaternion& l, const Quaternion& r) {
  require_unit(l, "l");
  require_unit(r, "r");
  return !(l.w + r.w).is_zero();
}

Quaternion star_minus_one_witness(const Quaternion& p) {
  if (p == Quaternion::real(1)) return {0, 1, 0, 0};
  return Quaternion::real(-1) + p;
}

H4LiftReport h4_quaternion_lift(const FiniteGroup& h4, const ClassTable& classes) {
  const RootSystem& sys = h4.system();
  if (sys.label() != "H4") throw InvalidInput("quaternion lift needs W(H4), got " + sys.label());
  const auto& simple = sys.simple_roots();

  // Elements are determined by where they send the simple roots.
  std::map<std::array<RootIndex, 4>, ElementId> by_simple_images;
  for (ElementId e = 0; e < h4.order(); ++e) {
    std::array<RootIndex, 4> images;
    for (int s = 0; s < 4; ++s) images[s] = h4.key(e)[simple[s]];
    by_simple_images.emplace(images, e);
  }
  auto locate = [&](const ExactMatrix& m) -> std::optional<ElementId> {
    std::array<RootIndex, 4> images;
    for (int s = 0; s < 4; ++s) {
      auto idx = sys.find(m * sys.root(simple[s]));
      if (!idx) return std::nullopt;
      images[s] = static_cast<RootIndex>(*idx);
    }
    auto it = by_simple_images.find(images);
    if (it == by_simple_images.end() || h4.matrix(it->second) != m) return std::nullopt;
    return it->second;
  };

  H4LiftReport report;
  for (const auto& c : classes.classes)
    if (c.det == QSqrt5(1)) report.rotations += c.size;

  const auto units = icosians();
  std::set<ElementId> hit;
  for (const auto& l : units) {
    for (const auto& r : units) {
      ++report.pairs;
      const ExactMatrix m = map_lr(l, r);
      const auto e = locate(m);
      if (!e) continue;
      ++report.pairs_in_group;
      hit.insert(*e);
      const int grade = e_grade(m);
      const int class_grade = classes.classes[classes.class_of[*e]].e_grade;
      if (grade == class_grade && h4_no_minus_one_criterion(l, r) == (grade == 0)) ++report.criterion_agrees;
    }
  }
  report.rotations_hit = hit.size();

  for (const auto& p : units) {
    ++report.star_maps;
    const ExactMatrix m = map_star(p);
    if (locate(m)) ++report.star_in_group;
    if (e_grade(m) >= 1) ++report.star_with_minus_one;
    const Quaternion x = star_minus_one_witness(p);
    if (!x.norm().is_zero() && (m * x.vector()).eval() == -x.vector()) ++report.star_witness_ok;
  }
  return report;
}

}  // namespace cxqt
