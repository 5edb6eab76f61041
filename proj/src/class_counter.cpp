#include "cxqt/class_counter.hpp"

#include "cxqt/closed_forms.hpp"

namespace cxqt {

std::string_view method_name(Method m) { return m == Method::brute ? "brute" : "closed"; }

int e_grade(const ExactMatrix& m) { return static_cast<int>(eigenspace_dim(m, QSqrt5(-1))); }

int e_grade(const FiniteGroup& g, ElementId i) { return e_grade(g.matrix(i)); }

QReport make_report(const FiniteGroup& g, const ClassTable& table) {
  QReport report;
  report.type = g.system().label();
  report.rank = g.system().rank();
  report.group_order = static_cast<unsigned long>(g.order());
  report.num_classes = table.classes.size();
  report.method = Method::brute;
  report.classes = table.classes;
  report.q = 0;
  for (const auto& c : table.classes)
    if (c.e_grade == 0) ++report.q;
  return report;
}

QReport q_bruteforce(const RootSystem& r, const Budget& budget) {
  const FiniteGroup g = generate(r, budget);
  return make_report(g, conjugacy_classes(g, budget.threads));
}

QReport q_closed_report(const std::vector<Component>& components) {
  QReport report;
  report.type = type_label(components);
  report.rank = 0;
  report.group_order = 1;
  for (const auto& c : components) {
    report.rank += c.rank();
    report.group_order *= c.group_order();
  }
  report.q = q_closed(components);
  report.method = Method::closed;
  return report;
}

Multiplicativity verify_multiplicativity(const RootSystem& r1, const RootSystem& r2, const Budget& budget) {
  Multiplicativity m;
  m.q1 = q_bruteforce(r1, budget).q;
  m.q2 = q_bruteforce(r2, budget).q;
  m.q_sum = q_bruteforce(direct_sum(r1, r2), budget).q;
  return m;
}

nlohmann::ordered_json integer_json(const Integer& x) {
  if (x.fits_ulong_p()) return static_cast<std::uint64_t>(x.get_ui());
  return x.get_str();
}

nlohmann::ordered_json to_json(const ConjugacyClass& c) {
  nlohmann::ordered_json j;
  j["size"] = c.size;
  j["order"] = c.order;
  j["det"] = c.det.str();
  j["trace"] = c.trace.str();
  j["charpoly"] = c.charpoly.str();
  j["e_grade"] = c.e_grade;
  j["rep_word"] = c.rep_word;
  return j;
}

nlohmann::ordered_json to_json(const QReport& report) {
  nlohmann::ordered_json j;
  j["type"] = report.type;
  j["rank"] = report.rank;
  j["group_order"] = integer_json(report.group_order);
  j["num_classes"] = report.num_classes ? nlohmann::ordered_json(*report.num_classes) : nlohmann::ordered_json();
  j["q"] = integer_json(report.q);
  j["method"] = method_name(report.method);
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : report.classes) classes.push_back(to_json(c));
  j["classes"] = std::move(classes);
  return j;
}

}  // namespace cxqt
