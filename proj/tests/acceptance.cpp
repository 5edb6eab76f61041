// Acceptance gate: one [PASS]/[FAIL] line per criterion, detail lines indented.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "cxqt/appendix.hpp"
#include "cxqt/cache.hpp"
#include "cxqt/class_counter.hpp"
#include "cxqt/closed_forms.hpp"
#include "cxqt/verify.hpp"

using namespace cxqt;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  std::string id;
  std::string title;
  bool ok = true;
  std::vector<std::string> notes;

  void check(bool cond, const std::string& what) {
    ok = ok && cond;
    notes.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

int failures = 0;

void finish(const Criterion& c) {
  for (const auto& n : c.notes) std::cout << "    " << n << "\n";
  std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << "\n" << std::flush;
  if (!c.ok) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

long peak_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss / 1024;
}

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

Integer brute_q(const std::string& label, const Budget& budget = {}) { return q_bruteforce(RootSystem::from_label(label), budget).q; }

// Each generator of one system lies in the reflection group of the other.
bool same_reflection_group(const FiniteGroup& a, const FiniteGroup& b) {
  auto contains_generators = [](const FiniteGroup& from, const FiniteGroup& in) {
    for (ElementId gen : from.generators()) {
      const auto key = in.key_of_matrix(from.matrix(gen));
      if (key.empty() || !in.find(key)) return false;
    }
    return true;
  };
  return a.order() == b.order() && contains_generators(a, b) && contains_generators(b, a);
}

std::vector<std::string> invariant_multiset(const ClassTable& t) {
  std::vector<std::string> out;
  for (const auto& c : t.classes)
    out.push_back(std::to_string(c.size) + "|" + std::to_string(c.order) + "|" + c.det.str() + "|" + c.trace.str() +
                  "|" + c.charpoly.str() + "|" + std::to_string(c.e_grade));
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------------- AC1

void table_reproduction() {
  Criterion c{"AC1", "table reproduction, brute force vs closed form", true, {}};

  auto t0 = Clock::now();
  const int a_expected[] = {1, 2, 2, 3, 4, 5, 6};
  for (int n = 2; n <= 8; ++n) {
    const Integer b = brute_q("A" + std::to_string(n - 1));
    c.check(b == a_expected[n - 2] && b == q_closed(Family::A, n - 1) && b == p_odd(n),
            "A" + std::to_string(n - 1) + ": Q = " + b.get_str());
  }
  const double ta = seconds_since(t0);
  c.check(ta < 60, "A1..A7 took " + fmt(ta) + " (< 60 s)");

  t0 = Clock::now();
  const int bc_expected[] = {1, 2, 3, 5, 7, 11};
  for (int n = 1; n <= 6; ++n) {
    const std::string sn = std::to_string(n);
    const FiniteGroup gb = generate(RootSystem::build(Family::B, n));
    const FiniteGroup gc = generate(RootSystem::build(Family::C, n));
    const FiniteGroup gbc = generate(RootSystem::build(Family::BC, n));
    const Integer qb = make_report(gb, conjugacy_classes(gb)).q;
    const Integer qc = make_report(gc, conjugacy_classes(gc)).q;
    const Integer qbc = make_report(gbc, conjugacy_classes(gbc)).q;
    c.check(qb == bc_expected[n - 1] && qc == qb && qbc == qb && qb == q_closed(Family::B, n) && qb == p_all(n),
            "B" + sn + "/C" + sn + "/BC" + sn + ": Q = " + qb.get_str() + "/" + qc.get_str() + "/" + qbc.get_str());
    c.check(same_reflection_group(gb, gc) && same_reflection_group(gb, gbc),
            "B" + sn + ", C" + sn + ", BC" + sn + " generate the same group of order " + std::to_string(gb.order()));
  }
  const double tb = seconds_since(t0);
  c.check(tb < 120, "B/C/BC 1..6 took " + fmt(tb) + " (< 120 s)");

  t0 = Clock::now();
  const int d_expected[] = {1, 2, 3, 4, 6};
  for (int n = 2; n <= 6; ++n) {
    const Integer b = brute_q("D" + std::to_string(n));
    c.check(b == d_expected[n - 2] && b == q_closed(Family::D, n) && b == p_even_evens(n),
            "D" + std::to_string(n) + ": Q = " + b.get_str());
  }
  const double td = seconds_since(t0);
  c.check(td < 120, "D2..D6 took " + fmt(td) + " (< 120 s)");

  struct Exceptional {
    const char* label;
    int q;
    unsigned long order;
    int classes;  // 0: not asserted
  };
  for (const Exceptional& e : {Exceptional{"G2", 3, 12, 0}, Exceptional{"F4", 9, 1152, 0},
                               Exceptional{"H3", 4, 120, 0}, Exceptional{"H4", 20, 14400, 34},
                               Exceptional{"E6", 9, 51840, 0}}) {
    t0 = Clock::now();
    const QReport r = q_bruteforce(RootSystem::from_label(e.label));
    const bool classes_ok = e.classes == 0 || *r.num_classes == std::size_t(e.classes);
    c.check(r.q == e.q && r.group_order == e.order && classes_ok && r.q == q_closed(parse_type(e.label)),
            std::string(e.label) + ": Q = " + r.q.get_str() + ", |W| = " + r.group_order.get_str() + ", " +
                std::to_string(*r.num_classes) + " classes, " + fmt(seconds_since(t0)));
  }

  // E7 is the long run: it needs the slow flag and is measured here.
  {
    Budget refuse;
    bool refused = false;
    try {
      check_budget(RootSystem::build(Family::E7), refuse);
    } catch (const BudgetExceeded&) {
      refused = true;
    }
    c.check(refused, "E7 is refused without the slow flag");
    Budget slow;
    slow.slow_ok = true;
    t0 = Clock::now();
    const QReport r = q_bruteforce(RootSystem::build(Family::E7), slow);
    const double te = seconds_since(t0);
    const long rss = peak_rss_mb();
    c.check(r.q == 12 && r.group_order == 2903040 && r.q == q_closed(Family::E7, 7),
            "E7: Q = " + r.q.get_str() + ", |W| = " + r.group_order.get_str() + ", " +
                std::to_string(*r.num_classes) + " classes");
    c.check(te < 600, "E7 took " + fmt(te) + " (< 600 s)");
    c.check(rss < 4096, "peak resident memory of this process " + std::to_string(rss) + " MB (< 4096 MB)");
  }

  // E8 is accepted through the closed constant only.
  {
    std::string why;
    try {
      check_budget(RootSystem::build(Family::E8), {});
    } catch (const BudgetExceeded& e) {
      why = e.what();
    }
    c.check(why.find("696729600") != std::string::npos, "E8 brute force refused: " + why);
    c.check(Component{Family::E8, 8}.group_order() == 696729600, "|W(E8)| = 2*8*12*14*18*20*24*30 = 696729600");
    c.check(q_closed(Family::E8, 8) == 30, "E8: Q = 30 from the closed constant; no brute-force claim");
  }
  finish(c);
}

// ------------------------------------------------------------------- AC2

void h3_model() {
  Criterion c{"AC2", "H3 matrices, relations, det(1 - tg) table, classes", true, {}};
  const H3Generators h = h3_generators();
  const ExactMatrix id = ExactMatrix::Identity(3, 3);
  auto pow = [](const ExactMatrix& m, int k) {
    ExactMatrix p = ExactMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) p = (p * m).eval();
    return p;
  };
  c.check((h.a * h.a).eval() == id, "a^2 = 1");
  c.check((h.b * h.b).eval() == id, "b^2 = 1");
  c.check((h.c * h.c).eval() == id, "c^2 = 1");
  c.check(pow(h.a * h.b, 5) == id && matrix_order(h.a * h.b) == 5, "(ab)^5 = 1");
  c.check(pow(h.b * h.c, 3) == id && matrix_order(h.b * h.c) == 3, "(bc)^3 = 1");
  c.check(pow(h.a * h.c, 2) == id && matrix_order(h.a * h.c) == 2, "(ac)^2 = 1");
  for (const auto& row : h3_charpoly_table())
    c.check(row.match, "det(1 - t " + row.word + ") = " + row.computed.str() + " (coefficients from t^0)");

  const MatrixGroup mg = generate_matrix_group({h.a, h.b, h.c});
  const auto classes = matrix_group_classes(mg);
  int positive = 0, negative = 0, q = 0;
  for (const auto& k : classes) {
    (k.det == QSqrt5(1) ? positive : negative) += 1;
    q += k.e_grade == 0;
  }
  c.check(mg.elements.size() == 120 && classes.size() == 10,
          std::to_string(mg.elements.size()) + " elements in " + std::to_string(classes.size()) + " classes");
  c.check(positive == 5 && negative == 5,
          std::to_string(positive) + " classes with det +1, " + std::to_string(negative) + " with det -1");
  c.check(q == 4, "Q(H3) = " + std::to_string(q));
  finish(c);
}

// ------------------------------------------------------------------- AC3

void quaternion_lemmas() {
  Criterion c{"AC3", "H4 quaternion lemmas", true, {}};

  const auto units = icosians();
  std::mt19937_64 rng(2718);
  std::size_t star_ok = 0, star_total = 0;
  std::vector<Quaternion> ps(units.begin(), units.end());
  for (int i = 0; i < 200; ++i) ps.push_back(random_unit_quaternion(rng));
  for (const auto& p : ps) {
    ++star_total;
    const ExactMatrix m = map_star(p);
    const Quaternion x = star_minus_one_witness(p);
    if (!x.norm().is_zero() && (m * x.vector()).eval() == -x.vector() && e_grade(m) >= 1) ++star_ok;
  }
  const ExactMatrix one = map_star(Quaternion::real(1));
  bool imaginary_ok = true;
  for (const Quaternion& x : {Quaternion{0, 1, 0, 0}, Quaternion{0, 0, 1, 0}, Quaternion{0, 0, 0, 1},
                              Quaternion{0, 3, -2, QSqrt5::golden()}})
    imaginary_ok = imaginary_ok && (one * x.vector()).eval() == -x.vector();
  c.check(star_ok == star_total, "x -> p x* has eigenvalue -1 with witness -1 + p: " + std::to_string(star_ok) + "/" +
                                     std::to_string(star_total) + " (120 icosians, 200 random)");
  c.check(imaginary_ok, "p = 1: every imaginary quaternion is a (-1)-eigenvector");

  int holds = 0;
  const int pairs = 1000;
  for (int i = 0; i < pairs; ++i) {
    const Quaternion l = random_unit_quaternion(rng), r = random_unit_quaternion(rng);
    holds += verify_det_identity(l, r).holds();
  }
  c.check(holds == pairs, "det(x -> lx + xr) = 4(l0 + r0)^2 on " + std::to_string(holds) + "/" +
                              std::to_string(pairs) + " exact unit pairs");
  const auto d1 = verify_det_identity(Quaternion::real(1), Quaternion::real(1));
  c.check(d1.holds() && d1.det == QSqrt5(16), "l = r = 1: det = " + d1.det.str());
  const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0};
  const auto d2 = verify_det_identity(i, i);
  c.check(d2.holds() && d2.det.is_zero() && (i * j + j * i) == Quaternion{},
          "l = r = i: det = " + d2.det.str() + ", kernel vector j");

  const FiniteGroup h4 = generate(RootSystem::build(Family::H4));
  const ClassTable t = conjugacy_classes(h4);
  const QReport r = make_report(h4, t);
  c.check(*r.num_classes == 34 && r.q == 20,
          "W(H4): " + std::to_string(*r.num_classes) + " classes, " + r.q.get_str() + " with e_grade 0");
  const H4LiftReport lift = h4_quaternion_lift(h4, t);
  c.check(lift.ok(), "all " + std::to_string(lift.pairs) + " icosian maps l x r* lie in W(H4) and satisfy " +
                         "l0 + r0 != 0 <=> e_grade 0; star maps " + std::to_string(lift.star_in_group) + "/" +
                         std::to_string(lift.star_maps) + " in W(H4)");
  finish(c);
}

// ------------------------------------------------------------------- AC4

void multiplicativity() {
  Criterion c{"AC4", "Q is multiplicative over direct sums", true, {}};
  const std::pair<const char*, const char*> pairs[] = {{"A1", "A1"}, {"A2", "A1"}, {"A2", "B2"}, {"B2", "B2"},
                                                       {"A1", "H3"}, {"G2", "B3"}};
  for (const auto& [a, b] : pairs) {
    const auto m = verify_multiplicativity(RootSystem::from_label(a), RootSystem::from_label(b));
    c.check(m.holds(), std::string("Q(") + a + "+" + b + ") = " + m.q_sum.get_str() + " = " + m.q1.get_str() + " * " +
                           m.q2.get_str());
  }
  finish(c);
}

// ------------------------------------------------------------------- AC5

void property_suites() {
  Criterion c{"AC5", "property suites", true, {}};
  VerifyOptions opts;
  opts.suites = {"roots", "order", "classes", "oracle"};
  std::size_t passed = 0, total = 0;
  for (const auto& r : run_verification(opts)) {
    if (r.informational) continue;
    ++total;
    if (r.passed) {
      ++passed;
    } else {
      c.check(false, r.suite + ": " + r.name + " (" + r.detail + ")");
    }
  }
  c.check(passed == total, std::to_string(passed) + "/" + std::to_string(total) +
                               " checks: root closure, reflections, |W| = degree product, class sums, "
                               "sampled class invariants, charpoly vs nullity, dihedral model to n = 1000");

  for (const char* label : {"H4", "D5", "F4"}) {
    std::vector<std::string> reports;
    for (unsigned threads : {1u, 4u, 8u}) {
      Budget b;
      b.threads = threads;
      const FiniteGroup g = generate(RootSystem::from_label(label), b);
      reports.push_back(to_json(make_report(g, conjugacy_classes(g, threads))).dump(2));
    }
    c.check(reports[0] == reports[1] && reports[0] == reports[2],
            std::string(label) + " report byte-identical with 1, 4 and 8 threads (" +
                std::to_string(reports[0].size()) + " bytes)");
  }
  finish(c);
}

// ------------------------------------------------------------------- AC6

void cache_round_trip() {
  Criterion c{"AC6", "cache round trip and damaged-file rejection", true, {}};
  const fs::path dir = fs::temp_directory_path() / "cxqt_acceptance_cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto load_kind = [](const fs::path& p) -> std::optional<CacheError::Kind> {
    try {
      cache_load(p);
    } catch (const CacheError& e) {
      return e.kind;
    }
    return std::nullopt;
  };
  for (const char* label : {"H4", "E6"}) {
    const FiniteGroup g = generate(RootSystem::from_label(label));
    const ClassTable t = conjugacy_classes(g);
    const fs::path p = cache_path(dir, label);
    cache_store(g, t, p);
    const CachedGroup back = cache_load(p);
    c.check(back.group.order() == g.order() && invariant_multiset(back.classes) == invariant_multiset(t),
            std::string(label) + ": reloaded order " + std::to_string(back.group.order()) + ", " +
                std::to_string(back.classes.classes.size()) + " class invariants identical");

    std::vector<char> bytes;
    {
      std::ifstream in(p, std::ios::binary);
      bytes.assign(std::istreambuf_iterator<char>(in), {});
    }
    auto write = [&](const std::vector<char>& b) {
      const fs::path bad = dir / "bad.cxqt";
      std::ofstream out(bad, std::ios::binary | std::ios::trunc);
      out.write(b.data(), static_cast<std::streamsize>(b.size()));
      return bad;
    };
    auto corrupt = bytes;
    corrupt[corrupt.size() / 2] ^= 0x01;
    c.check(load_kind(write(corrupt)) == CacheError::Kind::checksum, std::string(label) + ": flipped byte -> checksum error");
    auto version = bytes;
    version[4] = static_cast<char>(kCacheVersion + 1);
    c.check(load_kind(write(version)) == CacheError::Kind::version, std::string(label) + ": wrong version -> version error");
  }
  fs::remove_all(dir);
  finish(c);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  table_reproduction();
  h3_model();
  quaternion_lemmas();
  multiplicativity();
  property_suites();
  cache_round_trip();
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : std::string("acceptance: all criteria passed"))
            << " in " << fmt(seconds_since(t0)) << "\n";
  return failures ? 1 : 0;
}
