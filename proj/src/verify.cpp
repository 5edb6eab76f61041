#include "cxqt/verify.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "cxqt/appendix.hpp"
#include "cxqt/class_counter.hpp"
#include "cxqt/closed_forms.hpp"

namespace cxqt {

namespace {

struct Enumerated {
  FiniteGroup group;
  ClassTable classes;
};

class GroupStore {
 public:
  explicit GroupStore(const VerifyOptions& o) : options_(o) {}

  const Enumerated& get(const std::string& label) {
    auto it = store_.find(label);
    if (it != store_.end()) return *it->second;
    Budget budget;
    budget.slow_ok = options_.slow;
    budget.threads = options_.threads;
    FiniteGroup g = generate(RootSystem::from_label(label), budget);
    ClassTable t = conjugacy_classes(g, options_.threads);
    auto entry = std::make_unique<Enumerated>(Enumerated{std::move(g), std::move(t)});
    return *store_.emplace(label, std::move(entry)).first->second;
  }

 private:
  const VerifyOptions& options_;
  std::map<std::string, std::unique_ptr<Enumerated>> store_;
};

std::string str(const Integer& x) { return x.get_str(); }

bool same_invariants(const ConjugacyClass& a, const ConjugacyClass& b) {
  return a.order == b.order && a.det == b.det && a.trace == b.trace && a.charpoly == b.charpoly &&
         a.e_grade == b.e_grade;
}

}  // namespace

std::vector<std::string> suite_names() { return {"roots", "order", "classes", "oracle", "multiplicativity", "appendix"}; }

std::vector<Component> enumerable_types(bool slow) {
  std::vector<Component> out;
  for (int n = 1; n <= 7; ++n) out.push_back({Family::A, n});
  for (Family f : {Family::B, Family::C, Family::BC})
    for (int n = 1; n <= 6; ++n) out.push_back({f, n});
  for (int n = 2; n <= 6; ++n) out.push_back({Family::D, n});
  for (Family f : {Family::G2, Family::F4, Family::H3, Family::H4, Family::E6}) out.push_back({f, 0});
  if (slow) out.push_back({Family::E7, 0});
  for (auto& c : out)
    if (is_exceptional(c.family)) c.n = c.rank();
  return out;
}

std::vector<Component> builtin_types() {
  auto out = enumerable_types(true);
  out.push_back({Family::E8, 8});
  out.push_back({Family::D, 7});
  return out;
}

std::string check_reflections(const RootSystem& r) {
  for (const auto& v : r.roots()) {
    const ExactMatrix m = reflection_matrix(r, v);
    const Eigen::Index n = m.rows();
    if ((m * m).eval() != ExactMatrix::Identity(n, n)) return "R_v^2 != I for v = " + matrix_str(v.transpose());
    if (!is_orthogonal(m)) return "R_v not orthogonal for v = " + matrix_str(v.transpose());
    if ((m * v).eval() != -v) return "R_v(v) != -v for v = " + matrix_str(v.transpose());
    if (m != reflection_matrix(-v)) return "R_v != R_{-v} for v = " + matrix_str(v.transpose());
  }
  return {};
}

std::string check_class_properties(const FiniteGroup& g, const ClassTable& t, std::size_t samples,
                                   std::uint64_t seed) {
  std::ostringstream err;
  std::uint64_t total = 0;
  for (const auto& c : t.classes) {
    total += c.size;
    if (g.order() % c.size != 0) err << "class size " << c.size << " does not divide " << g.order() << "; ";
  }
  if (total != g.order()) err << "class sizes sum to " << total << " not " << g.order() << "; ";
  if (t.classes[t.class_of[0]].size != 1) err << "identity is not a singleton class; ";

  const int n = g.dim();
  for (std::size_t ci = 0; ci < t.classes.size(); ++ci) {
    const auto& c = t.classes[ci];
    const ExactMatrix m = g.matrix(c.representative);
    const std::string where = "class " + std::to_string(ci) + ": ";
    if (m != g.matrix_from_word(c.representative)) err << where << "key and word give different matrices; ";
    if (!is_orthogonal(m)) err << where << "representative is not orthogonal; ";
    if (c.charpoly.degree() != n) err << where << "charpoly degree; ";
    const int minus = c.charpoly.root_multiplicity(QSqrt5(-1));
    if (minus != c.e_grade) err << where << "nullity(g+I) = " << c.e_grade << " but charpoly has -1 with multiplicity " << minus << "; ";
    const ExactMatrix shifted = m + ExactMatrix::Identity(n, n);
    if ((c.e_grade == 0) != !det(shifted).is_zero()) err << where << "det(g+I) disagrees with e_grade; ";
    // t^n p(1/t) = (-1)^n det(g) p(t)
    const QSqrt5 sign = (n % 2 ? QSqrt5(-1) : QSqrt5(1)) * c.det;
    if (c.charpoly.reversed() != sign * c.charpoly) err << where << "charpoly is not (anti)palindromic; ";
    ExactPoly rest = c.charpoly;
    for (int k = 0; k < minus; ++k) rest = rest.deflate(QSqrt5(-1));
    const int plus = rest.root_multiplicity(QSqrt5(1));
    for (int k = 0; k < plus; ++k) rest = rest.deflate(QSqrt5(1));
    if (minus + plus + rest.degree() != n || rest.degree() % 2 != 0)
      err << where << "eigenvalue count " << minus << " + " << plus << " + " << rest.degree() << " != " << n << "; ";
  }

  // random members of each class carry the class invariants
  std::mt19937_64 rng(seed);
  std::vector<std::vector<ElementId>> picked(t.classes.size());
  std::vector<std::uint64_t> seen(t.classes.size(), 0);
  for (ElementId e = 0; e < g.order(); ++e) {
    const auto ci = t.class_of[e];
    auto& bucket = picked[ci];
    const std::uint64_t k = seen[ci]++;
    if (bucket.size() < samples) {
      bucket.push_back(e);
    } else {
      std::uniform_int_distribution<std::uint64_t> d(0, k);
      const auto slot = d(rng);
      if (slot < samples) bucket[slot] = e;
    }
  }
  for (std::size_t ci = 0; ci < t.classes.size(); ++ci)
    for (ElementId e : picked[ci])
      if (!same_invariants(element_invariants(g, e), t.classes[ci])) {
        err << "class " << ci << ": member " << e << " has different invariants; ";
        break;
      }

  // inverse closure: exhaustive for small groups, sampled otherwise
  const bool exhaustive = g.order() <= 10000;
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(g.order() - 1));
  const std::size_t checks = exhaustive ? g.order() : 1000;
  for (std::size_t i = 0; i < checks; ++i) {
    const ElementId e = exhaustive ? static_cast<ElementId>(i) : pick(rng);
    if (!g.find(g.inverse(g.key(e)))) {
      err << "inverse of element " << e << " missing; ";
      break;
    }
  }
  return err.str();
}

std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> results;
  std::string current;
  auto report = [&](std::string name, bool passed, std::string detail = {}, bool info = false) {
    CheckResult r{current, std::move(name), passed, std::move(detail), info};
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  auto wanted = [&](const std::string& suite) {
    return options.suites.empty() ||
           std::find(options.suites.begin(), options.suites.end(), suite) != options.suites.end();
  };
  const auto known = suite_names();
  for (const auto& s : options.suites)
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw InvalidInput("unknown verification suite '" + s + "'");

  GroupStore store(options);
  const auto types = enumerable_types(options.slow);

  if (wanted("roots")) {
    current = "roots";
    for (const auto& c : builtin_types()) {
      const RootSystem r = RootSystem::build(c);
      const auto rep = verify_root_system(r);
      const std::string refl = check_reflections(r);
      report(c.label() + " closure/pairs/simple roots (" + std::to_string(r.size()) + " roots)", rep.ok() && refl.empty(),
             rep.ok() ? refl : rep.violations.front());
    }
    const RootSystem sum = direct_sum(RootSystem::build(Family::A, 1), RootSystem::build(Family::B, 2));
    report("A1+B2 direct sum closure (" + std::to_string(sum.size()) + " roots)",
           verify_root_system(sum).ok() && sum.size() == 10);
  }

  if (wanted("order")) {
    current = "order";
    for (const auto& c : types) {
      const auto& e = store.get(c.label());
      const Integer expected = c.group_order();
      report("|W(" + c.label() + ")| = " + std::to_string(e.group.order()), expected == static_cast<unsigned long>(e.group.order()),
             "degree product " + str(expected));
    }
  }

  if (wanted("classes")) {
    current = "classes";
    for (const auto& c : types) {
      const auto& e = store.get(c.label());
      const std::string problems = check_class_properties(e.group, e.classes, 100);
      report(c.label() + ": " + std::to_string(e.classes.classes.size()) + " classes", problems.empty(), problems);
    }
  }

  if (wanted("oracle")) {
    current = "oracle";
    for (const auto& c : types) {
      const auto& e = store.get(c.label());
      const QReport brute = make_report(e.group, e.classes);
      const Integer closed = q_closed(c);
      report("Q(" + c.label() + ") brute " + str(brute.q) + " vs closed " + str(closed), brute.q == closed);
    }
    bool dihedral_ok = true;
    int bad = 0;
    for (int n = 2; n <= 1000; ++n)
      if (q_dihedral(n) != (n + 1) / 2) {
        dihedral_ok = false;
        bad = n;
        break;
      }
    report("dihedral class model gives floor((n+1)/2) for 2 <= n <= 1000", dihedral_ok,
           dihedral_ok ? "" : "first mismatch at n = " + std::to_string(bad));
    const std::pair<int, const char*> coincidences[] = {{2, "A1+A1"}, {3, "A2"}, {4, "B2"}, {6, "G2"}};
    for (const auto& [n, label] : coincidences) {
      const auto& e = store.get(label);
      const Integer brute = make_report(e.group, e.classes).q;
      report("I2(" + std::to_string(n) + ") symbolic " + str(q_dihedral(n)) + " vs " + label + " brute " + str(brute),
             brute == q_dihedral(n));
    }
  }

  if (wanted("multiplicativity")) {
    current = "multiplicativity";
    const std::pair<const char*, const char*> pairs[] = {{"A1", "A1"}, {"A2", "A1"}, {"A2", "B2"}, {"B2", "B2"}};
    for (const auto& [a, b] : pairs) {
      const auto& ea = store.get(a);
      const auto& eb = store.get(b);
      const auto& es = store.get(std::string(a) + "+" + b);
      const Integer qa = make_report(ea.group, ea.classes).q;
      const Integer qb = make_report(eb.group, eb.classes).q;
      const Integer qs = make_report(es.group, es.classes).q;
      report(std::string("Q(") + a + "+" + b + ") = " + str(qs) + " = " + str(qa) + " * " + str(qb), qs == qa * qb);
    }
  }

  if (wanted("appendix")) {
    current = "appendix";
    const H3Generators h = h3_generators();
    const ExactMatrix id = ExactMatrix::Identity(3, 3);
    auto power = [](const ExactMatrix& m, int k) {
      ExactMatrix p = ExactMatrix::Identity(m.rows(), m.cols());
      for (int i = 0; i < k; ++i) p = (p * m).eval();
      return p;
    };
    const bool relations = (h.a * h.a).eval() == id && (h.b * h.b).eval() == id && (h.c * h.c).eval() == id &&
                           power(h.a * h.b, 5) == id && power(h.b * h.c, 3) == id && power(h.a * h.c, 2) == id;
    report("H3 a^2 = b^2 = c^2 = (ab)^5 = (bc)^3 = (ac)^2 = 1", relations,
           "orders ab " + std::to_string(matrix_order(h.a * h.b)) + ", bc " + std::to_string(matrix_order(h.b * h.c)) +
               ", ac " + std::to_string(matrix_order(h.a * h.c)));
    for (const auto& row : h3_charpoly_table())
      report("H3 det(1 - t*" + row.word + ") = " + row.computed.str(), row.match, "expected " + row.expected.str());

    const MatrixGroup mg = generate_matrix_group({h.a, h.b, h.c});
    const auto mclasses = matrix_group_classes(mg);
    int positive = 0;
    int negative_with_minus_one = 0;
    int q = 0;
    for (const auto& c : mclasses) {
      if (c.det == QSqrt5(1)) ++positive;
      else if (c.charpoly.root_multiplicity(QSqrt5(-1)) > 0) ++negative_with_minus_one;
      if (c.e_grade == 0) ++q;
    }
    report("H3 matrices generate " + std::to_string(mg.elements.size()) + " elements in " +
               std::to_string(mclasses.size()) + " classes (" + std::to_string(positive) + " with det +1)",
           mg.elements.size() == 120 && mclasses.size() == 10 && positive == 5);
    report("every det -1 class of H3 has eigenvalue -1", negative_with_minus_one == 5,
           std::to_string(negative_with_minus_one) + " of 5");
    report("H3 classes without eigenvalue -1: " + std::to_string(q), q == 4);

    const auto& eh3 = store.get("H3");
    std::vector<std::string> a_inv, b_inv;
    for (const auto& c : mclasses)
      a_inv.push_back(std::to_string(c.size) + "|" + c.charpoly.str() + "|" + std::to_string(c.order));
    for (const auto& c : eh3.classes.classes)
      b_inv.push_back(std::to_string(c.size) + "|" + c.charpoly.str() + "|" + std::to_string(c.order));
    std::sort(a_inv.begin(), a_inv.end());
    std::sort(b_inv.begin(), b_inv.end());
    report("H3 matrix model and root-system group have equal class invariants", a_inv == b_inv);

    const auto& eh4 = store.get("H4");
    const QReport h4 = make_report(eh4.group, eh4.classes);
    report("H4: " + std::to_string(*h4.num_classes) + " classes, " + str(h4.q) + " without eigenvalue -1",
           *h4.num_classes == 34 && h4.q == 20);
    const H4LiftReport lift = h4_quaternion_lift(eh4.group, eh4.classes);
    report("x -> l x r*: l0 + r0 != 0 <=> no eigenvalue -1, over all " + std::to_string(lift.pairs) + " icosian pairs",
           lift.pairs_in_group == lift.pairs && lift.criterion_agrees == lift.pairs,
           std::to_string(lift.criterion_agrees) + " agree, " + std::to_string(lift.pairs_in_group) + " in W(H4)");
    report("icosian pairs reach all " + std::to_string(lift.rotations) + " det +1 elements of W(H4)",
           lift.rotations_hit == lift.rotations, std::to_string(lift.rotations_hit) + " reached");
    report("x -> p x* has eigenvalue -1 with witness -1 + p (or i), for all " + std::to_string(lift.star_maps) +
               " icosians p",
           lift.star_in_group == lift.star_maps && lift.star_with_minus_one == lift.star_maps &&
               lift.star_witness_ok == lift.star_maps);

    const Quaternion one = Quaternion::real(1);
    const Quaternion qi{0, 1, 0, 0};
    const Quaternion qj{0, 0, 1, 0};
    const auto c1 = verify_det_identity(one, one);
    report("det(x -> x + x) = " + c1.det.str() + " = 4(1+1)^2", c1.holds() && c1.det == QSqrt5(16));
    const auto c2 = verify_det_identity(qi, qi);
    const bool kernel_j = (qi * qj + qj * qi) == Quaternion{};
    report("det(x -> ix + xi) = " + c2.det.str() + ", kernel contains j", c2.holds() && c2.det.is_zero() && kernel_j);
    std::mt19937_64 rng(20260101);
    int holds = 0;
    int general_matches = 0;
    constexpr int kPairs = 1000;
    for (int i = 0; i < kPairs; ++i) {
      const Quaternion l = random_unit_quaternion(rng);
      const Quaternion r = random_unit_quaternion(rng);
      if (verify_det_identity(l, r).holds()) ++holds;
    }
    report("det(x -> lx + xr) = 4(l0 + r0)^2 on " + std::to_string(kPairs) + " random exact unit pairs", holds == kPairs,
           std::to_string(holds) + " hold");
    for (int i = 0; i < 200; ++i) {
      Quaternion l = random_unit_quaternion(rng);
      Quaternion r = random_unit_quaternion(rng);
      l = l + Quaternion::real(QSqrt5(i % 3));
      r = r - Quaternion{0, QSqrt5(i % 2), 0, 0};
      if (det(map_left_plus_right(l, r)) == det_left_plus_right_general(l, r)) ++general_matches;
    }
    report("non-unit l, r: det = ((l0+r0)^2 + |lv|^2 + |rv|^2)^2 - 4|lv|^2|rv|^2 observed on " +
               std::to_string(general_matches) + "/200 pairs",
           true, {}, true);
  }
  return results;
}

}  // namespace cxqt
