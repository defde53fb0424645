#pragma once

#include "json.hpp"
#include <string>
#include <vector>

#include "riemext/geometry.hpp"
#include "riemext/zero_test.hpp"

namespace riemext {

/// pass/fail/unknown come from zero tests. "skipped" marks a check whose
/// input does not apply, "precondition" one whose precondition was violated,
/// and "erratum" a stated claim that the engine shows does not hold; none of
/// these three fail a suite.
enum class Status { Pass, Fail, Unknown, Skipped, Precondition, Erratum };

std::string to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Pass;
  ZeroVerdict verdict;
  std::string note;

  bool failed() const { return status == Status::Fail || status == Status::Unknown; }
};

Check make_check(std::string name, const ZeroVerdict& v, std::string note = {});
Check note_check(std::string name, Status status, std::string note);

struct Report {
  std::string suite;
  RicciConvention convention = RicciConvention::Standard;
  std::vector<Check> checks;

  bool passed() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const std::vector<Check>& more) { checks.insert(checks.end(), more.begin(), more.end()); }
  const Check* find(const std::string& name) const;
};

/// {"point": {...}, "value": v, "component": "[i,j]"}, or null when the
/// verdict carries nothing.
nlohmann::ordered_json witness_json(const ZeroVerdict& v);

/// {"schema": 1, "suite", "convention", "checks": [{"name", "status", "witness"}]}
nlohmann::ordered_json to_json(const Report& r);

/// One line per check: "pass  name" plus witness details.
std::string render_text(const Report& r);

}  // namespace riemext
