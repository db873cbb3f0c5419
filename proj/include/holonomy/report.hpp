#pragma once

// Run reports: findings with values and citations, rendered as text or as a
// versioned JSON document with a fixed key order.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace holonomy::report {

using Json = nlohmann::ordered_json;

struct Finding {
  std::string claim;
  bool pass = false;
  Json values = Json::object();
  // What the finding reproduces, or "plumbing".
  std::string citation;
};

enum class Status { pass, finding_failed, input_error, unsupported };
const char* status_name(Status s);
int exit_code(Status s);

struct RunReport {
  std::string command;
  // FNV-1a 64 over the inputs, as 16 hex digits.
  std::string digest;
  std::vector<Finding> findings;
  // Set when an unsupported local model or configuration stopped the run.
  std::string unsupported;
  std::optional<double> timing_ms;

  Finding& add(std::string claim, bool pass, std::string citation, Json values = Json::object());
  bool all_pass() const;
  Status status() const;

  Json to_json() const;
  std::string to_text() const;
};

// Hashes each input with its length so that concatenations cannot collide.
class Digest {
 public:
  Digest& add(std::string_view bytes);
  std::string hex() const;

 private:
  std::uint64_t h_ = 14695981039346656037ull;
  void mix(unsigned char c);
};

// Several runs under one command; the combined status is the worst one.
struct Bundle {
  std::string command;
  std::vector<RunReport> runs;
  std::optional<double> timing_ms;

  Status status() const;
  Json to_json() const;
  std::string to_text() const;
};

}  // namespace holonomy::report
