#include <doctest.h>

#include <algorithm>
#include <functional>

#include "cxqt/class_counter.hpp"
#include "cxqt/group.hpp"

using namespace cxqt;

namespace {

// Sizes of the conjugacy classes of S_m from cycle types: m! / prod k^a_k a_k!.
std::vector<std::uint64_t> symmetric_class_sizes(int m) {
  std::vector<std::uint64_t> out;
  std::uint64_t fact = 1;
  for (int i = 2; i <= m; ++i) fact *= i;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      std::uint64_t denom = 1;
      for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        for (std::size_t k = 1; k <= j - i; ++k) denom *= parts[i] * k;
        i = j;
      }
      out.push_back(fact / denom);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(left - p, p);
      parts.pop_back();
    }
  };
  rec(m, m);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> sizes(const ClassTable& t) {
  std::vector<std::uint64_t> s;
  for (const auto& c : t.classes) s.push_back(c.size);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_SUITE("group") {
  TEST_CASE("W(A_n) has the class sizes of the symmetric group") {
    for (int n = 1; n <= 5; ++n) {
      const FiniteGroup g = generate(RootSystem::build(Family::A, n));
      CHECK(sizes(conjugacy_classes(g)) == symmetric_class_sizes(n + 1));
    }
    const FiniteGroup a2 = generate(RootSystem::build(Family::A, 2));
    CHECK(sizes(conjugacy_classes(a2)) == std::vector<std::uint64_t>{1, 2, 3});
  }

  TEST_CASE("orders match degree products") {
    for (const char* label : {"B3", "C4", "BC3", "D4", "G2", "F4", "H3", "H4", "A2+B2"}) {
      const RootSystem r = RootSystem::from_label(label);
      CAPTURE(label);
      CHECK(Integer(static_cast<unsigned long>(generate(r).order())) == r.predicted_order());
    }
  }

  TEST_CASE("group operations") {
    const FiniteGroup g = generate(RootSystem::build(Family::H3));
    REQUIRE(g.order() == 120);
    CHECK(g.key(0).size() == g.key_width());
    for (ElementId i = 0; i < g.order(); i += 7) {
      const ExactMatrix mi = g.matrix(i);
      CHECK(mi == g.matrix_from_word(i));
      CHECK(g.key_of_matrix(mi) == std::vector<RootIndex>(g.key(i).begin(), g.key(i).end()));
      const auto inv = g.find(g.inverse(g.key(i)));
      REQUIRE(inv);
      CHECK(g.multiply(i, *inv) == 0);
      for (ElementId j = 0; j < g.order(); j += 11) {
        CHECK(g.matrix(g.multiply(i, j)) == (mi * g.matrix(j)).eval());
      }
      CHECK(element_order(g, i) >= 1);
    }
    CHECK(g.word(0).empty());
    CHECK(g.generators().size() == 3);
  }

  TEST_CASE("enumeration does not depend on the thread count") {
    for (const char* label : {"H4", "D5"}) {
      Budget b1, b4, b8;
      b4.threads = 4;
      b8.threads = 8;
      const RootSystem r = RootSystem::from_label(label);
      const FiniteGroup g1 = generate(r, b1), g4 = generate(r, b4), g8 = generate(r, b8);
      CHECK(g1.raw_keys() == g4.raw_keys());
      CHECK(g1.raw_keys() == g8.raw_keys());
      CHECK(g1.raw_parents() == g8.raw_parents());
      const auto j1 = to_json(make_report(g1, conjugacy_classes(g1, 1))).dump();
      CHECK(j1 == to_json(make_report(g4, conjugacy_classes(g4, 4))).dump());
      CHECK(j1 == to_json(make_report(g8, conjugacy_classes(g8, 8))).dump());
    }
  }

  TEST_CASE("class invariants are constant on classes") {
    const FiniteGroup g = generate(RootSystem::build(Family::B, 4));
    const ClassTable t = conjugacy_classes(g);
    for (ElementId e = 0; e < g.order(); ++e) {
      const auto& c = t.classes[t.class_of[e]];
      const ConjugacyClass inv = element_invariants(g, e);
      CHECK(inv.charpoly == c.charpoly);
      CHECK(inv.e_grade == c.e_grade);
      CHECK(inv.order == c.order);
    }
  }

  TEST_CASE("budget") {
    CHECK_THROWS_AS(check_budget(RootSystem::build(Family::E8), {}), BudgetExceeded);
    CHECK_THROWS_AS(check_budget(RootSystem::build(Family::E7), {}), BudgetExceeded);
    Budget slow;
    slow.slow_ok = true;
    CHECK_NOTHROW(check_budget(RootSystem::build(Family::E7), slow));
    Budget tiny;
    tiny.max_elements = 100;
    CHECK_THROWS_AS(generate(RootSystem::build(Family::H3), tiny), BudgetExceeded);
    CHECK_THROWS_AS(generate(RootSystem::from_label("I2(5)")), InvalidInput);
    CHECK(fits_budget(RootSystem::build(Family::E6), {}));
  }
}
