// cxqt: count conjugacy classes of Coxeter groups without eigenvalue -1.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cxqt/cache.hpp"
#include "cxqt/class_counter.hpp"
#include "cxqt/closed_forms.hpp"
#include "cxqt/verify.hpp"

using namespace cxqt;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kBudget = 3 };

struct RunConfig {
  std::string command;
  std::string type;
  std::optional<int> n;
  std::string method = "auto";
  int n_max = 7;
  unsigned threads = 0;
  std::string cache_dir;
  std::string format;
  bool slow = false;
  bool force_e8 = false;
  std::string out;
  std::vector<std::string> suites;
};

constexpr unsigned long kAutoBruteLimit = 100000;

Budget budget_of(const RunConfig& cfg) {
  Budget b;
  b.slow_ok = cfg.slow;
  b.force_e8 = cfg.force_e8;
  b.threads = cfg.threads;
  return b;
}

struct Enumeration {
  FiniteGroup group;
  ClassTable classes;
};

// Brute-force enumeration, going through the on-disk cache when one is configured.
Enumeration enumerate(const RootSystem& r, const RunConfig& cfg) {
  const Budget budget = budget_of(cfg);
  check_budget(r, budget);
  if (!cfg.cache_dir.empty()) {
    const auto path = cache_path(cfg.cache_dir, r.label());
    if (std::filesystem::exists(path)) {
      try {
        CachedGroup c = cache_load(path, cfg.threads);
        return {std::move(c.group), std::move(c.classes)};
      } catch (const CacheError& e) {
        std::cerr << "cxqt: ignoring cache " << path.string() << ": " << e.what() << "\n";
      }
    }
  }
  FiniteGroup g = generate(r, budget);
  ClassTable t = conjugacy_classes(g, cfg.threads);
  if (!cfg.cache_dir.empty()) {
    std::filesystem::create_directories(cfg.cache_dir);
    cache_store(g, t, cache_path(cfg.cache_dir, r.label()));
  }
  return {std::move(g), std::move(t)};
}

bool is_symbolic(const std::vector<Component>& components) {
  for (const auto& c : components)
    if (c.family == Family::I2) return true;
  return false;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string word_str(const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
  return s;
}

// ----------------------------------------------------------------- count

int cmd_count(const RunConfig& cfg, std::ostream& os) {
  const auto components = parse_type(cfg.type, cfg.n);
  const std::string label = type_label(components);
  const Integer order = q_closed_report(components).group_order;

  bool brute = cfg.method == "brute";
  if (cfg.method == "auto")
    brute = !is_symbolic(components) && order <= kAutoBruteLimit;

  QReport report;
  std::optional<Integer> closed;
  if (brute) {
    const RootSystem r = RootSystem::from_label(label);
    const Enumeration e = enumerate(r, cfg);
    report = make_report(e.group, e.classes);
    if (cfg.method == "auto") closed = q_closed(components);
  } else {
    report = q_closed_report(components);
  }

  json j = to_json(report);
  if (closed) {
    j["q_closed"] = integer_json(*closed);
    j["match"] = *closed == report.q;
  }

  const std::string format = cfg.format.empty() ? "text" : cfg.format;
  if (format == "json") {
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    os << "type,rank,group_order,num_classes,q,method\n";
    os << csv_field(report.type) << "," << report.rank << "," << report.group_order.get_str() << ","
       << (report.num_classes ? std::to_string(*report.num_classes) : "") << "," << report.q.get_str() << ","
       << method_name(report.method) << "\n";
  } else {
    os << "q=" << report.q.get_str() << " type=" << report.type << " rank=" << report.rank
       << " order=" << report.group_order.get_str();
    if (report.num_classes) os << " classes=" << *report.num_classes;
    os << " method=" << method_name(report.method);
    if (closed) os << " q_closed=" << closed->get_str() << " match=" << (*closed == report.q ? "yes" : "no");
    os << "\n";
  }
  return closed && *closed != report.q ? kVerifyFailed : kOk;
}

// ----------------------------------------------------------------- table

struct TableRow {
  std::string type;
  int rank = 0;
  Integer q_closed;
  std::optional<Integer> q_brute;
};

int cmd_table(const RunConfig& cfg, std::ostream& os) {
  if (cfg.n_max < 1) throw InvalidInput("--n-max must be at least 1");
  std::vector<Component> rows;
  for (int n = 1; n <= cfg.n_max; ++n) rows.push_back({Family::A, n});
  for (Family f : {Family::B, Family::C, Family::BC})
    for (int n = 1; n <= cfg.n_max; ++n) rows.push_back({f, n});
  for (int n = 2; n <= cfg.n_max; ++n) rows.push_back({Family::D, n});
  for (Family f : {Family::E6, Family::E7, Family::E8, Family::F4, Family::G2, Family::H3, Family::H4})
    rows.push_back({f, Component{f, 0}.rank()});
  for (int n : {5, 7, 8, 10, 12}) rows.push_back({Family::I2, n});

  const Budget budget = budget_of(cfg);
  bool mismatch = false;
  std::vector<TableRow> table;
  for (const auto& c : rows) {
    TableRow row{c.label(), c.rank(), q_closed(c), std::nullopt};
    if (cfg.method != "closed" && c.family != Family::I2) {
      const bool run = cfg.method == "brute" ? fits_budget(RootSystem::build(c), budget)
                                             : c.group_order() <= kAutoBruteLimit;
      if (run) {
        const Enumeration e = enumerate(RootSystem::build(c), cfg);
        row.q_brute = make_report(e.group, e.classes).q;
        mismatch |= *row.q_brute != row.q_closed;
      }
    }
    table.push_back(std::move(row));
  }

  const std::string format = cfg.format.empty() ? "text" : cfg.format;
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : table) {
      json j;
      j["type"] = r.type;
      j["rank"] = r.rank;
      j["q_closed"] = integer_json(r.q_closed);
      j["q_brute"] = r.q_brute ? integer_json(*r.q_brute) : json();
      j["match"] = r.q_brute ? json(*r.q_brute == r.q_closed) : json();
      arr.push_back(j);
    }
    os << arr.dump(2) << "\n";
  } else if (format == "csv") {
    os << "type,rank,q_closed,q_brute,match\n";
    for (const auto& r : table)
      os << csv_field(r.type) << "," << r.rank << "," << r.q_closed.get_str() << ","
         << (r.q_brute ? r.q_brute->get_str() : "") << ","
         << (r.q_brute ? (*r.q_brute == r.q_closed ? "true" : "false") : "") << "\n";
  } else {
    os << std::left;
    os << "type      rank  q_closed  q_brute  match\n";
    for (const auto& r : table) {
      std::ostringstream line;
      line.setf(std::ios::left);
      line.width(10);
      line << r.type;
      line.width(6);
      line << r.rank;
      line.width(10);
      line << r.q_closed.get_str();
      line.width(9);
      line << (r.q_brute ? r.q_brute->get_str() : "-");
      line << (r.q_brute ? (*r.q_brute == r.q_closed ? "yes" : "NO") : "-");
      os << line.str() << "\n";
    }
  }
  return mismatch ? kVerifyFailed : kOk;
}

// --------------------------------------------------------------- classes

int cmd_classes(const RunConfig& cfg, std::ostream& os) {
  const auto components = parse_type(cfg.type, cfg.n);
  const RootSystem r = RootSystem::from_label(type_label(components));
  if (r.is_symbolic()) throw InvalidInput("classes needs a concrete root system; " + r.label() + " is symbolic");
  const Enumeration e = enumerate(r, cfg);
  const QReport report = make_report(e.group, e.classes);

  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "json") {
    os << to_json(report).dump(2) << "\n";
  } else if (format == "csv") {
    os << "index,size,order,det,trace,charpoly,e_grade,rep_word\n";
    for (std::size_t i = 0; i < report.classes.size(); ++i) {
      const auto& c = report.classes[i];
      os << i << "," << c.size << "," << c.order << "," << csv_field(c.det.str()) << "," << csv_field(c.trace.str())
         << "," << csv_field(c.charpoly.str()) << "," << c.e_grade << "," << csv_field(word_str(c.rep_word)) << "\n";
    }
  } else {
    os << report.type << ": |W| = " << report.group_order.get_str() << ", " << report.classes.size()
       << " classes, Q = " << report.q.get_str() << "\n";
    for (std::size_t i = 0; i < report.classes.size(); ++i) {
      const auto& c = report.classes[i];
      os << "  " << i << "  size " << c.size << "  order " << c.order << "  det " << c.det.str() << "  E "
         << c.e_grade << "  p(t) = " << c.charpoly.str() << "  word [" << word_str(c.rep_word) << "]\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg, std::ostream& os) {
  VerifyOptions opts;
  opts.slow = cfg.slow;
  opts.threads = cfg.threads;
  opts.suites = cfg.suites;
  const std::string format = cfg.format.empty() ? "text" : cfg.format;
  int failures = 0;
  auto print = [&](const CheckResult& r) {
    if (!r.passed && !r.informational) ++failures;
    if (format != "text") return;
    os << (r.informational ? "[INFO] " : r.passed ? "[PASS] " : "[FAIL] ") << r.suite << ": " << r.name;
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << "\n" << std::flush;
  };
  const auto results = run_verification(opts, print);
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      json j;
      j["suite"] = r.suite;
      j["name"] = r.name;
      j["passed"] = r.passed;
      j["informational"] = r.informational;
      j["detail"] = r.detail;
      arr.push_back(j);
    }
    os << arr.dump(2) << "\n";
  } else if (format == "csv") {
    os << "suite,name,passed,informational,detail\n";
    for (const auto& r : results)
      os << r.suite << "," << csv_field(r.name) << "," << (r.passed ? "true" : "false") << ","
         << (r.informational ? "true" : "false") << "," << csv_field(r.detail) << "\n";
  } else {
    os << results.size() << " checks, " << failures << " failed\n";
  }
  return failures ? kVerifyFailed : kOk;
}

unsigned env_threads() {
  if (const char* v = std::getenv("CXQT_THREADS")) {
    try {
      const int t = std::stoi(v);
      if (t > 0) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
    std::cerr << "cxqt: ignoring CXQT_THREADS=" << v << "\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Counts conjugacy classes of finite Coxeter groups with no eigenvalue -1"};
  app.require_subcommand(1);

  std::optional<unsigned> threads;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker threads (env CXQT_THREADS)")->check(CLI::PositiveNumber);
    sub->add_option("--cache-dir", cfg.cache_dir, "group cache directory (env CXQT_CACHE_DIR)");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag("--slow", cfg.slow, "allow W(E7)");
    sub->add_flag("--force-e8", cfg.force_e8, "allow W(E8), ignoring the element budget");
    sub->add_option("--out", cfg.out, "write output to a file");
  };
  auto typed = [&](CLI::App* sub) {
    sub->add_option("type", cfg.type, "root system, e.g. H3, A 4, I2(5), A2+B2")->required();
    sub->add_option("n", cfg.n, "rank for a bare family name");
  };

  auto* count = app.add_subcommand("count", "compute Q for one type");
  typed(count);
  common(count);
  count->add_option("--method", cfg.method, "closed, brute or auto")
      ->check(CLI::IsMember({"closed", "brute", "auto"}));

  auto* table = app.add_subcommand("table", "Q for every family up to --n-max");
  common(table);
  table->add_option("--method", cfg.method, "closed, brute or auto")
      ->check(CLI::IsMember({"closed", "brute", "auto"}));
  table->add_option("--n-max", cfg.n_max, "largest rank of the classical rows");

  auto* classes = app.add_subcommand("classes", "per-class report from brute force");
  typed(classes);
  common(classes);

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  common(verify);
  std::vector<std::string> suite_flags;
  verify->add_option("suites", cfg.suites, "suites to run (default all)");
  verify->add_option("--suite", suite_flags, "suite to run; may repeat");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  cfg.suites.insert(cfg.suites.end(), suite_flags.begin(), suite_flags.end());
  cfg.threads = threads ? *threads : env_threads();
  if (cfg.cache_dir.empty())
    if (const char* v = std::getenv("CXQT_CACHE_DIR")) cfg.cache_dir = v;

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      std::cerr << "cxqt: cannot write " << cfg.out << "\n";
      return kInvalid;
    }
  }
  std::ostream& os = cfg.out.empty() ? std::cout : file;

  try {
    if (*count) return cmd_count(cfg, os);
    if (*table) return cmd_table(cfg, os);
    if (*classes) return cmd_classes(cfg, os);
    return cmd_verify(cfg, os);
  } catch (const InvalidInput& e) {
    std::cerr << "cxqt: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "cxqt: " << e.what() << "\n";
    return kBudget;
  }
}
