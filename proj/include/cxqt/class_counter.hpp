#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cxqt/group.hpp"

namespace cxqt {

enum class Method { brute, closed };

std::string_view method_name(Method m);

/// Q(R) together with the data it was computed from.
struct QReport {
  std::string type;
  int rank = 0;
  Integer group_order;
  std::optional<std::size_t> num_classes;  // unknown for closed forms
  Integer q;
  Method method = Method::brute;
  std::vector<ConjugacyClass> classes;  // empty for closed forms
};

/// dim{x : g x = -x}, as the nullity of g + I.
int e_grade(const FiniteGroup& g, ElementId i);
int e_grade(const ExactMatrix& m);

QReport make_report(const FiniteGroup& g, const ClassTable& table);
/// Enumerates W(r), splits it into classes and counts those with E(g) = 0.
QReport q_bruteforce(const RootSystem& r, const Budget& budget = {});
QReport q_closed_report(const std::vector<Component>& components);

struct Multiplicativity {
  Integer q1;
  Integer q2;
  Integer q_sum;
  bool holds() const { return q_sum == q1 * q2; }
};

/// Brute-force Q of r1, r2 and their direct sum.
Multiplicativity verify_multiplicativity(const RootSystem& r1, const RootSystem& r2, const Budget& budget = {});

/// Integer as a JSON number when it fits 64 bits, else as a decimal string.
nlohmann::ordered_json integer_json(const Integer& x);
nlohmann::ordered_json to_json(const ConjugacyClass& c);
/// Keys in fixed order: type, rank, group_order, num_classes, q, method, classes.
nlohmann::ordered_json to_json(const QReport& report);

}  // namespace cxqt
