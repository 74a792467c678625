#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vortex/analysis.hpp"

namespace vortex::io {

inline constexpr int kProfileRows = 1024;

/// 17 significant digits, locale independent.
std::string format_double(double value);

/// Header r,u,u_r,u_rr then `rows` uniformly spaced radii including 0 and R.
void write_profile_csv(std::ostream& out, const Profile& profile, int rows = kProfileRows);
SampledProfile read_profile_csv(std::istream& in);

/// One solve as stored in summary.csv.
struct Summary {
  ProblemSpec spec;
  double beta = 0.0;
  double delta_beta = 0.0;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  bool positive = false;
};

Summary make_summary(const ProblemSpec& spec, const SolveResult& result);

/// Header row plus one data row; the bounds report columns follow the solve.
void write_summary_csv(std::ostream& out, const Summary& summary, const BoundsReport& report);
void write_summary_jsonl(std::ostream& out, const Summary& summary, const BoundsReport& report);
/// Reads the spec and solve columns back; other columns are ignored.
Summary read_summary_csv(std::istream& in);

/// m,P0,beta,delta_beta,beta_upper_bound,converged,positive,error
void write_sweep_csv(std::ostream& out, const std::vector<SweepItem>& items);
void write_sweep_jsonl(std::ostream& out, const std::vector<SweepItem>& items);

struct ConfigEntry {
  std::string value;
  int line = 0;
};

/// `key = value` lines; `#` starts a comment; blank lines are skipped; a
/// repeated key keeps its last value. Throws ParseError with the line number.
std::map<std::string, ConfigEntry> parse_config(std::istream& in);

}  // namespace vortex::io
