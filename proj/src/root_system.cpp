#include "cxqt/root_system.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>

namespace cxqt {

namespace {

constexpr std::array<std::pair<std::string_view, Family>, 13> kFamilyNames{{
    {"BC", Family::BC},
    {"I2", Family::I2},
    {"E6", Family::E6},
    {"E7", Family::E7},
    {"E8", Family::E8},
    {"F4", Family::F4},
    {"G2", Family::G2},
    {"H3", Family::H3},
    {"H4", Family::H4},
    {"A", Family::A},
    {"B", Family::B},
    {"C", Family::C},
    {"D", Family::D},
}};

struct LexLess {
  bool operator()(const ExactVector& x, const ExactVector& y) const { return lex_less(x, y); }
};

ExactVector unit(int dim, int i, const QSqrt5& scale = QSqrt5(1)) {
  ExactVector v = ExactVector::Zero(dim);
  v(i) = scale;
  return v;
}

ExactVector make_vec(std::initializer_list<QSqrt5> xs) {
  ExactVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

QSqrt5 dot(const ExactVector& x, const ExactVector& y) {
  QSqrt5 acc(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += x(i) * y(i);
  return acc;
}

bool is_zero_vec(const ExactVector& v) {
  return std::all_of(v.data(), v.data() + v.size(), [](const QSqrt5& x) { return x.is_zero(); });
}

void check_rank(Family f, int n) {
  int min = 1;
  if (f == Family::D || f == Family::I2) min = 2;
  if (!is_exceptional(f) && n < min)
    throw InvalidInput(std::string(family_name(f)) + " requires n >= " + std::to_string(min) + ", got " +
                       std::to_string(n));
}

/// W-orbit of the simple roots under the simple reflections, i.e. all roots.
std::vector<ExactVector> close_under_reflections(const std::vector<ExactVector>& simple) {
  std::set<ExactVector, LexLess> seen(simple.begin(), simple.end());
  std::deque<ExactVector> queue(simple.begin(), simple.end());
  while (!queue.empty()) {
    const ExactVector x = queue.front();
    queue.pop_front();
    for (const auto& s : simple) {
      ExactVector y = reflect(s, x);
      if (seen.insert(y).second) queue.push_back(std::move(y));
      if (seen.size() > 100000) throw std::logic_error("root closure does not terminate");
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<ExactVector> e8_simple_roots() {
  const QSqrt5 h(Rational(1, 2));
  std::vector<ExactVector> s;
  s.push_back(make_vec({h, -h, -h, -h, -h, -h, -h, h}));
  s.push_back(unit(8, 0) + unit(8, 1));
  for (int i = 0; i < 6; ++i) s.push_back(unit(8, i + 1) - unit(8, i));
  return s;
}

int parse_int(std::string_view s, std::string_view context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("cannot parse rank in '" + std::string(context) + "'");
  return value;
}

Component parse_component(std::string_view token, std::optional<int> n) {
  for (const auto& [name, family] : kFamilyNames) {
    if (token.substr(0, name.size()) != name) continue;
    std::string_view rest = token.substr(name.size());
    Component c{family, 0};
    if (is_exceptional(family)) {
      if (!rest.empty()) continue;
      c.n = c.rank();
      return c;
    }
    if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    if (rest.empty()) {
      if (!n) throw InvalidInput("type '" + std::string(token) + "' needs a rank");
      c.n = *n;
    } else {
      c.n = parse_int(rest, token);
    }
    check_rank(family, c.n);
    return c;
  }
  // "E" 6, "F" 4 ... spelled with a separate rank
  if (token.size() == 1 && n) return parse_component(std::string(token) + std::to_string(*n), std::nullopt);
  throw InvalidInput("unknown root system type '" + std::string(token) + "'");
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [name, family] : kFamilyNames)
    if (family == f) return name;
  return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& [n, family] : kFamilyNames)
    if (n == name) return family;
  return std::nullopt;
}

bool is_exceptional(Family f) {
  switch (f) {
    case Family::E6:
    case Family::E7:
    case Family::E8:
    case Family::F4:
    case Family::G2:
    case Family::H3:
    case Family::H4:
      return true;
    default:
      return false;
  }
}

int Component::rank() const {
  switch (family) {
    case Family::E6: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    case Family::F4: return 4;
    case Family::G2: return 2;
    case Family::H3: return 3;
    case Family::H4: return 4;
    case Family::I2: return 2;
    default: return n;
  }
}

std::string Component::label() const {
  std::string out(family_name(family));
  if (family == Family::I2) return out + "(" + std::to_string(n) + ")";
  if (!is_exceptional(family)) out += std::to_string(n);
  return out;
}

std::vector<int> Component::degrees() const {
  std::vector<int> d;
  switch (family) {
    case Family::A:
      for (int i = 2; i <= n + 1; ++i) d.push_back(i);
      break;
    case Family::B:
    case Family::C:
    case Family::BC:
      for (int i = 1; i <= n; ++i) d.push_back(2 * i);
      break;
    case Family::D:
      for (int i = 1; i < n; ++i) d.push_back(2 * i);
      d.push_back(n);
      break;
    case Family::E6: d = {2, 5, 6, 8, 9, 12}; break;
    case Family::E7: d = {2, 6, 8, 10, 12, 14, 18}; break;
    case Family::E8: d = {2, 8, 12, 14, 18, 20, 24, 30}; break;
    case Family::F4: d = {2, 6, 8, 12}; break;
    case Family::G2: d = {2, 6}; break;
    case Family::H3: d = {2, 6, 10}; break;
    case Family::H4: d = {2, 12, 20, 30}; break;
    case Family::I2: d = {2, n}; break;
  }
  return d;
}

Integer Component::group_order() const {
  Integer order = 1;
  for (int d : degrees()) order *= d;
  return order;
}

std::vector<Component> parse_type(std::string_view label, std::optional<int> n) {
  std::vector<Component> out;
  std::string cleaned;
  for (char ch : label)
    if (!std::isspace(static_cast<unsigned char>(ch))) cleaned += static_cast<char>(std::toupper(ch));
  std::string_view rest = cleaned;
  if (rest.empty()) throw InvalidInput("empty root system type");
  const bool is_sum = rest.find('+') != std::string_view::npos;
  if (is_sum && n) throw InvalidInput("a rank argument cannot be combined with a direct sum label");
  while (!rest.empty()) {
    const auto plus = rest.find('+');
    out.push_back(parse_component(rest.substr(0, plus), n));
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 1);
    if (rest.empty()) throw InvalidInput("dangling '+' in type label");
  }
  return out;
}

std::string type_label(const std::vector<Component>& components) {
  std::string out;
  for (const auto& c : components) {
    if (!out.empty()) out += '+';
    out += c.label();
  }
  return out;
}

bool lex_less(const ExactVector& x, const ExactVector& y) {
  for (Eigen::Index i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x(i) == y(i)) continue;
    return x(i) < y(i);
  }
  return x.size() < y.size();
}

ExactVector reflect(const ExactVector& v, const ExactVector& x) {
  const QSqrt5 c = QSqrt5(2) * dot(x, v) / dot(v, v);
  if (c.is_zero()) return x;
  ExactVector y = x;
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) -= c * v(i);
  return y;
}

ExactMatrix reflection_matrix(const ExactVector& v) {
  if (is_zero_vec(v)) throw InvalidInput("reflection in the zero vector");
  const Eigen::Index n = v.size();
  const QSqrt5 scale = QSqrt5(2) / dot(v, v);
  ExactMatrix m = ExactMatrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (!v(i).is_zero() && !v(j).is_zero()) m(i, j) -= scale * v(i) * v(j);
  return m;
}

ExactMatrix reflection_matrix(const RootSystem& r, const ExactVector& v) {
  if (!r.find(v)) throw InvalidInput("vector is not a root of " + r.label());
  return reflection_matrix(v);
}

RootSystem RootSystem::from_data(std::vector<Component> components, int rank, int ambient_dim,
                                 std::vector<ExactVector> roots, const std::vector<ExactVector>& simple) {
  RootSystem r;
  r.components_ = std::move(components);
  r.rank_ = rank;
  r.ambient_dim_ = ambient_dim;
  std::sort(roots.begin(), roots.end(), LexLess{});
  r.roots_ = std::move(roots);
  for (const auto& s : simple) {
    auto idx = r.find(s);
    if (!idx) throw InvalidInput("simple root is not in the root list");
    r.simple_.push_back(*idx);
  }
  return r;
}

RootSystem RootSystem::build(Family family, int n) {
  check_rank(family, n);
  std::vector<ExactVector> roots;
  std::vector<ExactVector> simple;
  int dim = 0;
  int rank = 0;
  bool explicit_roots = true;

  auto add_pm_pairs = [&](int d) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int si : {1, -1})
          for (int sj : {1, -1}) roots.push_back(unit(d, i, si) + unit(d, j, sj));
  };
  auto add_chain = [&](int d, int count) {
    for (int i = 0; i + 1 <= count; ++i) simple.push_back(unit(d, i) - unit(d, i + 1));
  };

  switch (family) {
    case Family::A:
      dim = n + 1;
      rank = n;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          if (i != j) roots.push_back(unit(dim, i) - unit(dim, j));
      add_chain(dim, n);
      break;
    case Family::B:
    case Family::C:
    case Family::BC:
      dim = rank = n;
      add_pm_pairs(n);
      for (int i = 0; i < n; ++i) {
        for (int s : {1, -1}) {
          if (family != Family::C) roots.push_back(unit(n, i, s));
          if (family != Family::B) roots.push_back(unit(n, i, 2 * s));
        }
      }
      add_chain(n, n - 1);
      simple.push_back(unit(n, n - 1, family == Family::C ? 2 : 1));
      break;
    case Family::D:
      dim = rank = n;
      add_pm_pairs(n);
      add_chain(n, n - 1);
      simple.push_back(unit(n, n - 2) + unit(n, n - 1));
      break;
    case Family::E8: {
      dim = rank = 8;
      add_pm_pairs(8);
      const QSqrt5 h(Rational(1, 2));
      for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) % 2) continue;
        ExactVector v(8);
        for (int i = 0; i < 8; ++i) v(i) = (mask >> i) & 1 ? -h : h;
        roots.push_back(v);
      }
      simple = e8_simple_roots();
      break;
    }
    case Family::E7:
    case Family::E6:
      dim = 8;
      rank = family == Family::E7 ? 7 : 6;
      simple = e8_simple_roots();
      simple.resize(rank);
      explicit_roots = false;
      break;
    case Family::F4: {
      dim = rank = 4;
      add_pm_pairs(4);
      for (int i = 0; i < 4; ++i)
        for (int s : {1, -1}) roots.push_back(unit(4, i, s));
      const QSqrt5 h(Rational(1, 2));
      for (int mask = 0; mask < 16; ++mask) {
        ExactVector v(4);
        for (int i = 0; i < 4; ++i) v(i) = (mask >> i) & 1 ? -h : h;
        roots.push_back(v);
      }
      simple = {unit(4, 1) - unit(4, 2), unit(4, 2) - unit(4, 3), unit(4, 3), make_vec({h, -h, -h, -h})};
      break;
    }
    case Family::G2:
      dim = 3;
      rank = 2;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
          if (i != j) roots.push_back(unit(3, i) - unit(3, j));
        const ExactVector long_root = unit(3, i, 2) - unit(3, (i + 1) % 3) - unit(3, (i + 2) % 3);
        roots.push_back(long_root);
        roots.push_back(-long_root);
      }
      simple = {unit(3, 0) - unit(3, 1), unit(3, 1) + unit(3, 2) - unit(3, 0, 2)};
      break;
    case Family::H3: {
      // e_2, (-e_1 + k e_2 + k^-1 e_3)/2, e_1 with k the golden ratio
      dim = rank = 3;
      const QSqrt5 k = QSqrt5::golden();
      const QSqrt5 h(Rational(1, 2));
      simple = {unit(3, 1), make_vec({-h, h * k, h * k.inverse()}), unit(3, 0)};
      explicit_roots = false;
      break;
    }
    case Family::H4: {
      // Unit icosians; the 5-bond sits between the first two.
      dim = rank = 4;
      const QSqrt5 h(Rational(1, 2));
      const QSqrt5 half_tau = h * QSqrt5::golden();
      const QSqrt5 half_inv_tau = h * QSqrt5::golden().inverse();
      simple = {
          make_vec({0, h, -half_inv_tau, -half_tau}),
          unit(4, 3),
          make_vec({0, -half_inv_tau, half_tau, -h}),
          make_vec({half_inv_tau, -h, -half_tau, 0}),
      };
      explicit_roots = false;
      break;
    }
    case Family::I2: {
      RootSystem r;
      r.components_ = {{Family::I2, n}};
      r.rank_ = 2;
      r.ambient_dim_ = 2;
      r.dihedral_n_ = n;
      r.symbolic_ = true;
      return r;
    }
  }

  if (!explicit_roots) roots = close_under_reflections(simple);
  Component c{family, n};
  if (is_exceptional(family)) c.n = c.rank();
  RootSystem r = from_data({c}, rank, dim, std::move(roots), simple);
  if (auto report = verify_root_system(r); !report.ok())
    throw std::logic_error("built-in root system " + r.label() + " failed validation: " + report.violations.front());
  return r;
}

RootSystem RootSystem::from_label(std::string_view label, std::optional<int> n) {
  const auto components = parse_type(label, n);
  RootSystem r = build(components.front());
  for (std::size_t i = 1; i < components.size(); ++i) r = direct_sum(r, build(components[i]));
  return r;
}

bool RootSystem::is_reduced() const {
  return std::none_of(components_.begin(), components_.end(), [](const Component& c) { return c.family == Family::BC; });
}

bool RootSystem::is_crystallographic() const {
  return std::none_of(components_.begin(), components_.end(), [](const Component& c) {
    return c.family == Family::H3 || c.family == Family::H4 ||
           (c.family == Family::I2 && c.n != 2 && c.n != 3 && c.n != 4 && c.n != 6);
  });
}

Integer RootSystem::predicted_order() const {
  Integer order = 1;
  for (const auto& c : components_) order *= c.group_order();
  return order;
}

std::optional<std::size_t> RootSystem::find(const ExactVector& v) const {
  auto it = std::lower_bound(roots_.begin(), roots_.end(), v, LexLess{});
  if (it == roots_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - roots_.begin());
}

RootSystem direct_sum(const RootSystem& r1, const RootSystem& r2) {
  if (r1.is_symbolic() || r2.is_symbolic())
    throw InvalidInput("direct sum needs concrete root systems; I2(n) is symbolic");
  const int d1 = r1.ambient_dim();
  const int d = d1 + r2.ambient_dim();
  std::vector<ExactVector> roots;
  roots.reserve(r1.size() + r2.size());
  auto embed = [d](const ExactVector& v, int offset) {
    ExactVector out = ExactVector::Zero(d);
    out.segment(offset, v.size()) = v;
    return out;
  };
  for (const auto& v : r1.roots()) roots.push_back(embed(v, 0));
  for (const auto& v : r2.roots()) roots.push_back(embed(v, d1));
  std::vector<ExactVector> simple;
  for (auto i : r1.simple_roots()) simple.push_back(embed(r1.root(i), 0));
  for (auto i : r2.simple_roots()) simple.push_back(embed(r2.root(i), d1));
  auto components = r1.components();
  components.insert(components.end(), r2.components().begin(), r2.components().end());
  return RootSystem::from_data(std::move(components), r1.rank() + r2.rank(), d, std::move(roots), simple);
}

RootSystemReport verify_root_system(const RootSystem& r) {
  if (r.is_symbolic()) throw InvalidInput(r.label() + " is symbolic and has no root list to verify");
  RootSystemReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  std::vector<QSqrt5> norms;
  for (const auto& v : r.roots()) {
    if (v.size() != r.ambient_dim()) fail("root has wrong dimension");
    if (is_zero_vec(v)) fail("zero vector in root list");
    norms.push_back(dot(v, v));
  }
  if (!report.ok()) return report;

  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    if (r.root(i) == r.root(i + 1)) fail("duplicate root " + matrix_str(r.root(i).transpose()));

  for (const auto& v : r.roots())
    if (!r.find(-v)) fail("root " + matrix_str(v.transpose()) + " has no negative in the list");

  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& v = r.root(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      const auto& w = r.root(j);
      const QSqrt5 vw = dot(v, w);
      if (!r.find(reflect(v, w))) {
        fail("closure: reflection of " + matrix_str(w.transpose()) + " in " + matrix_str(v.transpose()) +
             " is not a root");
        if (report.violations.size() > 20) return report;
      }
      if (i < j && vw * vw == norms[i] * norms[j]) {
        // parallel roots
        const QSqrt5 ratio = vw / norms[i];
        const bool opposite = ratio == QSqrt5(-1);
        const bool doubled = abs(ratio) == QSqrt5(2) || abs(ratio) == QSqrt5(Rational(1, 2));
        if (!opposite && !(doubled && !r.is_reduced()))
          fail("non-reduced pair " + matrix_str(v.transpose()) + ", " + matrix_str(w.transpose()));
      }
    }
  }

  if (static_cast<int>(r.simple_roots().size()) != r.rank()) {
    fail("expected " + std::to_string(r.rank()) + " simple roots, found " + std::to_string(r.simple_roots().size()));
  } else if (r.rank() > 0) {
    ExactMatrix basis(r.ambient_dim(), r.rank());
    for (int k = 0; k < r.rank(); ++k) basis.col(k) = r.root(r.simple_roots()[k]);
    if (cxqt::rank(basis) != r.rank()) fail("simple roots are linearly dependent");
  }
  return report;
}

nlohmann::ordered_json to_json(const RootSystem& r) {
  nlohmann::ordered_json j;
  j["label"] = r.label();
  j["rank"] = r.rank();
  j["ambient_dim"] = r.ambient_dim();
  if (r.dihedral_n()) j["dihedral_n"] = *r.dihedral_n();
  auto roots = nlohmann::ordered_json::array();
  for (const auto& v : r.roots()) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i).str());
    roots.push_back(std::move(row));
  }
  j["roots"] = std::move(roots);
  j["simple_roots"] = r.simple_roots();
  return j;
}

RootSystem root_system_from_json(const nlohmann::ordered_json& j) {
  const auto components = parse_type(j.at("label").get<std::string>());
  if (components.size() == 1 && components.front().family == Family::I2) return RootSystem::build(components.front());
  const int dim = j.at("ambient_dim").get<int>();
  std::vector<ExactVector> roots;
  for (const auto& row : j.at("roots")) {
    if (static_cast<int>(row.size()) != dim) throw InvalidInput("root has wrong dimension in JSON");
    ExactVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = QSqrt5::parse(row[i].get<std::string>());
    roots.push_back(std::move(v));
  }
  std::vector<ExactVector> simple;
  for (const auto& idx : j.at("simple_roots")) simple.push_back(roots.at(idx.get<std::size_t>()));
  return RootSystem::from_data(components, j.at("rank").get<int>(), dim, std::move(roots), simple);
}

}  // namespace cxqt
