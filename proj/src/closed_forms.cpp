#include "cxqt/closed_forms.hpp"

#include <deque>

namespace cxqt {

namespace {

void check_n(int n) {
  if (n < 0) throw InvalidInput("partition count of a negative integer");
}

// Symbolic dihedral element: r^power, or s r^power when reflection is set.
struct DihedralElement {
  bool reflection;
  int power;
};

int mod(int a, int n) { return ((a % n) + n) % n; }

DihedralElement dihedral_mul(DihedralElement x, DihedralElement y, int n) {
  // r^a r^b = r^(a+b); r^a s r^b = s r^(b-a); s r^a r^b = s r^(a+b); s r^a s r^b = r^(b-a)
  if (!y.reflection) return {x.reflection, mod(x.power + y.power, n)};
  return {!x.reflection, mod(y.power - x.power, n)};
}

DihedralElement dihedral_inv(DihedralElement x, int n) {
  if (x.reflection) return x;
  return {false, mod(-x.power, n)};
}

}  // namespace

PartitionTable PartitionTable::compute(int n_max) {
  check_n(n_max);
  PartitionTable t;
  t.n_max = n_max;
  const std::size_t size = static_cast<std::size_t>(n_max) + 1;
  t.p_all.assign(size, 0);
  t.p_odd.assign(size, 0);
  std::vector<Integer> even(size, 0);  // even number of even parts
  std::vector<Integer> odd(size, 0);   // odd number of even parts
  t.p_all[0] = t.p_odd[0] = even[0] = 1;
  for (int part = 1; part <= n_max; ++part) {
    for (int m = part; m <= n_max; ++m) {
      t.p_all[m] += t.p_all[m - part];
      if (part % 2) {
        t.p_odd[m] += t.p_odd[m - part];
        even[m] += even[m - part];
        odd[m] += odd[m - part];
      } else {
        // one more even part flips the parity
        even[m] += odd[m - part];
        odd[m] += even[m - part];
      }
    }
  }
  t.p_even_evens = std::move(even);
  return t;
}

Integer p_all(int n) {
  check_n(n);
  return PartitionTable::compute(n).p_all[n];
}

Integer p_odd(int n) {
  check_n(n);
  return PartitionTable::compute(n).p_odd[n];
}

Integer p_even_evens(int n) {
  check_n(n);
  return PartitionTable::compute(n).p_even_evens[n];
}

std::vector<DihedralClass> dihedral_classes(int n) {
  if (n < 2) throw InvalidInput("I2(n) needs n >= 2");
  auto index = [n](DihedralElement e) { return (e.reflection ? n : 0) + e.power; };
  const DihedralElement generators[] = {{false, 1}, {true, 0}};
  std::vector<int> class_of(2 * n, -1);
  std::vector<DihedralClass> classes;
  for (int start = 0; start < 2 * n; ++start) {
    if (class_of[start] >= 0) continue;
    const DihedralElement rep{start >= n, start % n};
    DihedralClass cls{rep.reflection, rep.power, 0, 0};
    std::deque<DihedralElement> queue{rep};
    class_of[start] = static_cast<int>(classes.size());
    while (!queue.empty()) {
      const DihedralElement x = queue.front();
      queue.pop_front();
      ++cls.size;
      for (const auto& g : generators) {
        const DihedralElement y = dihedral_mul(dihedral_mul(g, x, n), dihedral_inv(g, n), n);
        if (class_of[index(y)] < 0) {
          class_of[index(y)] = static_cast<int>(classes.size());
          queue.push_back(y);
        }
      }
    }
    // A reflection fixes a line and negates its normal. A rotation by
    // 2 pi k / n has eigenvalues exp(+-2 pi i k / n), equal to -1 iff 2k = n,
    // in which case it is -I on the plane.
    if (cls.reflection)
      cls.e_grade = 1;
    else
      cls.e_grade = 2 * cls.power == n ? 2 : 0;
    classes.push_back(cls);
  }
  return classes;
}

Integer q_dihedral(int n) {
  Integer q = 0;
  for (const auto& c : dihedral_classes(n))
    if (c.e_grade == 0) ++q;
  return q;
}

Integer q_closed(const Component& c) {
  switch (c.family) {
    case Family::A: return p_odd(c.n + 1);
    case Family::B:
    case Family::C:
    case Family::BC: return p_all(c.n);
    case Family::D: return p_even_evens(c.n);
    case Family::E6: return 9;
    case Family::E7: return 12;
    case Family::E8: return 30;
    case Family::F4: return 9;
    case Family::G2: return 3;
    case Family::H3: return 4;
    case Family::H4: return 20;
    case Family::I2: return q_dihedral(c.n);
  }
  return 0;
}

Integer q_closed(Family family, int n) {
  return q_closed(parse_type(family_name(family), is_exceptional(family) ? std::nullopt : std::optional<int>(n)).front());
}

Integer q_closed(const std::vector<Component>& components) {
  Integer q = 1;
  for (const auto& c : components) q *= q_closed(c);
  return q;
}

}  // namespace cxqt
