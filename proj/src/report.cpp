#include "riemext/report.hpp"

#include <sstream>

#include "riemext/render.hpp"

namespace riemext {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Unknown:
      return "unknown";
    case Status::Skipped:
      return "skipped";
    case Status::Precondition:
      return "precondition";
    case Status::Erratum:
      return "erratum";
  }
  return "unknown";
}

Check make_check(std::string name, const ZeroVerdict& v, std::string note) {
  Status s = v.verdict == Verdict::Zero      ? Status::Pass
             : v.verdict == Verdict::NonZero ? Status::Fail
                                             : Status::Unknown;
  return Check{std::move(name), s, v, std::move(note)};
}

Check note_check(std::string name, Status status, std::string note) {
  return Check{std::move(name), status, ZeroVerdict{Verdict::Zero, std::nullopt, 0.0, {}},
               std::move(note)};
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (c.failed()) return false;
  return true;
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::ordered_json witness_json(const ZeroVerdict& v) {
  if (!v.witness && v.location.empty()) return nullptr;
  nlohmann::ordered_json w = nlohmann::ordered_json::object();
  if (!v.location.empty()) w["component"] = v.location;
  if (v.witness) {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [s, q] : *v.witness) p[s.name()] = render(Expr(q));
    w["point"] = std::move(p);
    w["value"] = v.value;
  }
  return w;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["suite"] = r.suite;
  j["convention"] = to_string(r.convention);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["witness"] = witness_json(c.verdict);
    if (!c.note.empty()) e["note"] = c.note;
    j["checks"].push_back(std::move(e));
  }
  return j;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "suite " << r.suite << " (convention " << to_string(r.convention) << ")\n";
  for (const auto& c : r.checks) {
    std::string st = to_string(c.status);
    out << st << std::string(st.size() < 13 ? 13 - st.size() : 1, ' ') << c.name;
    if (!c.verdict.location.empty()) out << " at " << c.verdict.location;
    if (c.verdict.witness) {
      out << " where";
      for (const auto& [s, q] : *c.verdict.witness) out << " " << s.name() << "=" << q.get_str();
      out << " value=" << c.verdict.value;
    }
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << (r.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace riemext
