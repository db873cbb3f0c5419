#include "holonomy/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace holonomy::report {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::finding_failed: return "finding_failed";
    case Status::input_error: return "input_error";
    case Status::unsupported: return "unsupported";
  }
  return "?";
}

int exit_code(Status s) {
  switch (s) {
    case Status::pass: return 0;
    case Status::finding_failed: return 1;
    case Status::input_error: return 2;
    case Status::unsupported: return 3;
  }
  return 1;
}

Finding& RunReport::add(std::string claim, bool pass, std::string citation, Json values) {
  findings.push_back({std::move(claim), pass, std::move(values), std::move(citation)});
  return findings.back();
}

bool RunReport::all_pass() const {
  return std::all_of(findings.begin(), findings.end(), [](const Finding& f) { return f.pass; });
}

Status RunReport::status() const {
  if (!unsupported.empty()) return Status::unsupported;
  return all_pass() ? Status::pass : Status::finding_failed;
}

Json RunReport::to_json() const {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["digest"] = digest;
  j["status"] = status_name(status());
  if (!unsupported.empty()) j["unsupported"] = unsupported;
  Json list = Json::array();
  for (const auto& f : findings) {
    Json e;
    e["claim"] = f.claim;
    e["pass"] = f.pass;
    e["values"] = f.values;
    e["citation"] = f.citation;
    list.push_back(std::move(e));
  }
  j["findings"] = std::move(list);
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << command << "  [digest " << digest << "]\n";
  for (const auto& f : findings) {
    os << (f.pass ? "  PASS  " : "  FAIL  ") << f.claim << "\n";
    os << "        source: " << f.citation << "\n";
  }
  if (!unsupported.empty()) os << "  UNSUPPORTED  " << unsupported << "\n";
  const auto passed = std::count_if(findings.begin(), findings.end(), [](const Finding& f) { return f.pass; });
  os << "  " << passed << "/" << findings.size() << " findings pass";
  if (timing_ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", *timing_ms);
    os << " in " << buf << " ms";
  }
  os << "\n";
  return os.str();
}

void Digest::mix(unsigned char c) {
  h_ ^= c;
  h_ *= 1099511628211ull;
}

Digest& Digest::add(std::string_view bytes) {
  std::uint64_t n = bytes.size();
  for (int k = 0; k < 8; ++k) mix(static_cast<unsigned char>(n >> (8 * k)));
  for (char c : bytes) mix(static_cast<unsigned char>(c));
  return *this;
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

Status Bundle::status() const {
  Status worst = Status::pass;
  for (const auto& r : runs) worst = std::max(worst, r.status(), [](Status a, Status b) { return exit_code(a) < exit_code(b); });
  return worst;
}

Json Bundle::to_json() const {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["status"] = status_name(status());
  Json list = Json::array();
  for (const auto& r : runs) {
    Json e = r.to_json();
    e.erase("schema");
    list.push_back(std::move(e));
  }
  j["runs"] = std::move(list);
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

std::string Bundle::to_text() const {
  std::string out;
  for (const auto& r : runs) out += r.to_text() + "\n";
  out += std::string("overall: ") + status_name(status()) + "\n";
  return out;
}

}  // namespace holonomy::report
