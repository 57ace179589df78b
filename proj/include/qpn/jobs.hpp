#pragma once
// Subcommand drivers shared by the command-line tool and the acceptance harness.

#include <optional>
#include <string>

#include "json.hpp"
#include "qpn/scalars.hpp"

namespace qpn {

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& w) : std::invalid_argument(w) {}
};

struct Specialization {
  Point pt;
  std::optional<mpq_class> c;
  bool has_point = false;
};

/// "q=9/4,y1=2,y2=1,z=q^-1,c=3". z fixes y1 = z * y2. Defaults q = 9/4, y2 = 1.
Specialization parse_spec(const std::string& s);

struct JobConfig {
  int n = 1;
  std::string hw = "e1";
  std::string module = "natural";  // descriptor for b-decompose / bundle
  int trunc = 3;
  int degree = 3;
  int component = -1;  // bundle: -1 means all components
  std::string spec;
  int threads = 1;
};

struct JobResult {
  nlohmann::json report;
  int exit_code = 0;
};

/// Runs one subcommand. Mathematical failures give exit code 2, bad configurations 1.
JobResult run_job(const std::string& subcommand, const JobConfig& cfg);
/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump_report(const nlohmann::json& j);

}  // namespace qpn
