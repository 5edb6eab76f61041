#include <doctest.h>

#include <algorithm>

#include "cxqt/root_system.hpp"

using namespace cxqt;

TEST_SUITE("root_system") {
  TEST_CASE("root counts equal rank times the largest degree") {
    for (Family f : {Family::A, Family::B, Family::C, Family::D})
      for (int n = (f == Family::D ? 2 : 1); n <= 7; ++n) {
        const Component c{f, n};
        const auto d = c.degrees();
        CAPTURE(c.label());
        CHECK(RootSystem::build(c).size() == std::size_t(n) * std::size_t(*std::max_element(d.begin(), d.end())));
      }
    for (Family f : {Family::E6, Family::E7, Family::E8, Family::F4, Family::G2, Family::H3, Family::H4}) {
      const Component c{f, Component{f, 0}.rank()};
      const auto d = c.degrees();
      CAPTURE(c.label());
      CHECK(RootSystem::build(c).size() == std::size_t(c.rank()) * std::size_t(*std::max_element(d.begin(), d.end())));
    }
    // BC_n is B_n together with the doubled short roots
    CHECK(RootSystem::build(Family::BC, 3).size() == 18 + 6);
  }

  TEST_CASE("every built-in system passes validation") {
    for (Family f : {Family::A, Family::B, Family::C, Family::BC, Family::D})
      for (int n = 2; n <= 6; ++n) CHECK(verify_root_system(RootSystem::build(f, n)).ok());
    for (Family f : {Family::E6, Family::E7, Family::E8, Family::F4, Family::G2, Family::H3, Family::H4})
      CHECK(verify_root_system(RootSystem::build(f)).ok());
    CHECK_FALSE(RootSystem::build(Family::BC, 2).is_reduced());
    CHECK_FALSE(RootSystem::build(Family::H4).is_crystallographic());
    CHECK(RootSystem::build(Family::F4).is_crystallographic());
  }

  TEST_CASE("validation reports broken systems") {
    const RootSystem a2 = RootSystem::build(Family::A, 2);
    std::vector<ExactVector> roots(a2.roots().begin(), a2.roots().end() - 1);
    std::vector<ExactVector> simple;
    for (auto i : a2.simple_roots()) simple.push_back(a2.root(i));
    const RootSystem broken = RootSystem::from_data(a2.components(), 2, 3, roots, simple);
    CHECK_FALSE(verify_root_system(broken).ok());
  }

  TEST_CASE("simple-root Gram matrices have the expected Coxeter orders") {
    // pairwise products of simple reflections have order m_ij, read off
    // cos^2(pi / m) = (a,b)^2 / ((a,a)(b,b)) in {0, 1/4, 1/2, 3/4, tau^2/4}
    const RootSystem h4 = RootSystem::build(Family::H4);
    const auto& s = h4.simple_roots();
    const QSqrt5 tau = QSqrt5::golden();
    auto cos2 = [&](std::size_t i, std::size_t j) {
      const ExactVector& a = h4.root(s[i]);
      const ExactVector& b = h4.root(s[j]);
      const QSqrt5 ab = a.dot(b);
      return ab * ab / (a.dot(a) * b.dot(b));
    };
    CHECK(cos2(0, 1) == tau * tau / QSqrt5(4));
    CHECK(cos2(1, 2) == QSqrt5(Rational(1, 4)));
    CHECK(cos2(2, 3) == QSqrt5(Rational(1, 4)));
    CHECK(cos2(0, 2).is_zero());
    CHECK(cos2(0, 3).is_zero());
    CHECK(cos2(1, 3).is_zero());
  }

  TEST_CASE("type labels") {
    CHECK(type_label(parse_type("a2+b2")) == "A2+B2");
    CHECK(type_label(parse_type("A", 4)) == "A4");
    CHECK(type_label(parse_type("I2(5)")) == "I2(5)");
    CHECK(type_label(parse_type("E", 6)) == "E6");
    CHECK_THROWS_AS(parse_type("Q3"), InvalidInput);
    CHECK_THROWS_AS(parse_type("A0"), InvalidInput);
    CHECK_THROWS_AS(parse_type("D1"), InvalidInput);
    CHECK_THROWS_AS(parse_type("E9"), InvalidInput);
    CHECK_THROWS_AS(parse_type("I2(1)"), InvalidInput);
    CHECK(RootSystem::from_label("I2(7)").is_symbolic());
  }

  TEST_CASE("direct sums and JSON round trip") {
    const RootSystem sum = RootSystem::from_label("A2+B2");
    CHECK(sum.rank() == 4);
    CHECK(sum.size() == 6 + 8);
    CHECK(verify_root_system(sum).ok());
    const RootSystem back = root_system_from_json(to_json(sum));
    CHECK(back.roots() == sum.roots());
    CHECK(back.simple_roots() == sum.simple_roots());
    CHECK_THROWS_AS(direct_sum(RootSystem::from_label("I2(5)"), sum), InvalidInput);
  }

  TEST_CASE("reflections") {
    const RootSystem f4 = RootSystem::build(Family::F4);
    for (const auto& v : f4.roots()) {
      const ExactMatrix m = reflection_matrix(f4, v);
      CHECK((m * m).eval() == ExactMatrix::Identity(4, 4));
      for (const auto& w : f4.roots()) CHECK(f4.find(reflect(v, w)).has_value());
    }
    ExactVector not_root(4);
    not_root << 1, 2, 3, 4;
    CHECK_THROWS(reflection_matrix(f4, not_root));
  }
}
