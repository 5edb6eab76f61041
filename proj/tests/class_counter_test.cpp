#include <doctest.h>

#include "cxqt/class_counter.hpp"
#include "cxqt/closed_forms.hpp"

using namespace cxqt;

namespace {

int zero_grade_classes(const QReport& r) {
  int n = 0;
  for (const auto& c : r.classes) n += c.e_grade == 0;
  return n;
}

}  // namespace

TEST_SUITE("class_counter") {
  TEST_CASE("brute-force reports") {
    const QReport h3 = q_bruteforce(RootSystem::build(Family::H3));
    CHECK(h3.q == 4);
    CHECK(h3.group_order == 120);
    CHECK(*h3.num_classes == 10);
    CHECK(zero_grade_classes(h3) == 4);

    const QReport f4 = q_bruteforce(RootSystem::build(Family::F4));
    CHECK(f4.group_order == 1152);
    CHECK(zero_grade_classes(f4) == 9);

    const QReport e6 = q_bruteforce(RootSystem::build(Family::E6));
    CHECK(e6.group_order == 51840);
    CHECK(e6.q == 9);
  }

  TEST_CASE("e_grade is the nullity of g + I") {
    const FiniteGroup g = generate(RootSystem::build(Family::D, 4));
    for (ElementId i = 0; i < g.order(); i += 5) {
      const ExactMatrix m = g.matrix(i);
      const ExactMatrix shifted = m + ExactMatrix::Identity(m.rows(), m.cols());
      CHECK(e_grade(g, i) == nullity(shifted));
    }
    CHECK(e_grade(ExactMatrix(-ExactMatrix::Identity(4, 4))) == 4);
  }

  TEST_CASE("multiplicativity") {
    const auto m = verify_multiplicativity(RootSystem::build(Family::A, 2), RootSystem::build(Family::B, 2));
    CHECK(m.q1 == 2);
    CHECK(m.q2 == 2);
    CHECK(m.holds());
  }

  TEST_CASE("JSON layout") {
    const auto j = to_json(q_bruteforce(RootSystem::build(Family::A, 2)));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"type", "rank", "group_order", "num_classes", "q", "method", "classes"});
    CHECK(j["classes"].size() == 3);
    CHECK(j["classes"][0]["charpoly"] == "-1,3,-3,1");

    const auto closed = to_json(q_closed_report(parse_type("E8")));
    CHECK(closed["q"] == 30);
    CHECK(closed["group_order"] == 696729600);
    CHECK(closed["num_classes"].is_null());
    CHECK(closed["method"] == "closed");
    CHECK(integer_json(Integer("123456789012345678901234567890")) == "123456789012345678901234567890");
  }
}
