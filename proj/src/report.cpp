#include "qmexpect/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace qmexpect {

namespace {

using Json = nlohmann::ordered_json;

Json complex_json(std::complex<double> z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string complex_text(std::complex<double> z) {
  if (z.imag() == 0.0) return fmt("%.12g", z.real());
  return fmt("%.12g", z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt("%.6g", std::abs(z.imag())) + "i";
}

}  // namespace

std::string to_json(const VerificationReport& report, int indent) {
  Json root;
  root["suite"] = report.suite;
  Json config = Json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  root["config"] = std::move(config);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["id"] = c.id;
    j["claim"] = c.claim;
    j["computed"] = complex_json(c.computed);
    if (c.reference)
      j["reference"] = complex_json(*c.reference);
    else
      j["reference"] = c.errored ? Json(nullptr) : Json("qualitative");
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    j["note"] = c.note;
    checks.push_back(std::move(j));
  }
  root["checks"] = std::move(checks);
  root["all_passed"] = report.all_passed;
  return root.dump(indent) + "\n";
}

std::string to_text(const VerificationReport& report) {
  std::ostringstream os;
  std::size_t failed = 0;
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.id.size());
  os << "suite: " << report.suite << "\n";
  for (const auto& c : report.checks) {
    if (!c.passed) ++failed;
    os << (c.passed ? "PASS  " : "FAIL  ") << c.id << std::string(width - c.id.size() + 2, ' ')
       << complex_text(c.computed);
    if (c.reference)
      os << "  ref " << complex_text(*c.reference) << "  tol " << fmt("%.3g", c.tolerance);
    else
      os << (c.errored ? "  (error)" : "  (qualitative)");
    os << "\n";
    if (!c.note.empty() && (!c.passed || !c.reference)) os << "      " << c.note << "\n";
  }
  os << report.checks.size() << " checks, " << failed << " failed: "
     << (report.all_passed ? "all passed" : "not all passed") << "\n";
  return os.str();
}

}  // namespace qmexpect
