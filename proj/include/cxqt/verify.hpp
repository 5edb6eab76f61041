#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cxqt/group.hpp"

namespace cxqt {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  bool informational = false;  // printed, never counted as a failure
};

struct VerifyOptions {
  bool slow = false;  // adds W(E7)
  unsigned threads = 1;
  std::vector<std::string> suites;  // empty: every suite
};

std::vector<std::string> suite_names();

/// Irreducible types whose groups the suites enumerate.
std::vector<Component> enumerable_types(bool slow);
/// Every built-in concrete root system (including E8, which is never enumerated).
std::vector<Component> builtin_types();

/// Empty string on success, otherwise the first violation.
std::string check_reflections(const RootSystem& r);
/// Sizes, identity class, charpoly/nullity agreement, palindromy, and
/// invariants of up to `samples` random members per class.
std::string check_class_properties(const FiniteGroup& g, const ClassTable& t, std::size_t samples,
                                   std::uint64_t seed = 1);

/// Runs the selected suites, reporting each result as it is produced.
std::vector<CheckResult> run_verification(const VerifyOptions& options,
                                          const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace cxqt
