#pragma once

#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "autorb/orbit.hpp"

namespace autorb {

/// Builds each group at most once per run; safe to share across threads.
class ConstructionCache {
public:
  std::shared_ptr<const Construction> get(const std::string& spec_text);

private:
  std::mutex mu_;
  std::map<std::string, std::shared_future<std::shared_ptr<const Construction>>> futures_;
};

struct SuiteEntry {
  std::string id;
  std::string location;
  std::string expected;
  std::string computed;
  std::string status;  // "pass" | "fail"
  std::vector<std::string> trusted;
  long long wall_ms = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteEntry> entries;

  bool overall_pass() const;
  int count(const std::string& status) const;
};

/// Known selectors: thm21, lemma22, thm41, stroppel, all. Throws
/// parse_error for anything else. Check order is fixed; --parallel only
/// distributes the work.
SuiteReport run_suite(const std::string& selector, bool parallel = false);

std::vector<std::string> suite_names();

}  // namespace autorb
