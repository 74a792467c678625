#include "vortex/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace vortex::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + text + "'", line);
  }
}

int parse_int(const std::string& text, int line) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + text + "'", line);
  }
}

bool parse_bool(const std::string& text, int line) {
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false") return false;
  throw ParseError("expected 0/1, got '" + text + "'", line);
}

const char* flag(bool value) { return value ? "1" : "0"; }

std::string optional_double(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::string optional_flag(const std::optional<bool>& value) {
  return value ? std::string(flag(*value)) : std::string();
}

std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

const char* kSummaryHeader =
    "R,m,alpha,P0,N,beta,delta_beta,objective,iterations,converged,positive,"
    "beta_upper_bound,beta_ok,peak_bound_sq,max_u_sq,peak_ok,decay_applicable,"
    "epsilon0_fit,epsilon0_floor,decay_ok,poincare_ratio,poincare_ok,flux,flux_ok";

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_profile_csv(std::ostream& out, const Profile& profile, int rows) {
  if (rows < 2) throw InvalidArgument("profile needs at least two rows");
  const double radius = profile.basis->radius();
  out << "r,u,u_r,u_rr\n";
  for (int i = 0; i < rows; ++i) {
    const double r = i == rows - 1 ? radius : radius * i / (rows - 1.0);
    out << format_double(r) << ',' << format_double(eval(profile, r, 0)) << ','
        << format_double(eval(profile, r, 1)) << ',' << format_double(eval(profile, r, 2))
        << '\n';
  }
}

SampledProfile read_profile_csv(std::istream& in) {
  SampledProfile samples;
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty profile file", 1);
  ++line_no;
  if (trim(line) != "r,u,u_r,u_rr") throw ParseError("expected header r,u,u_r,u_rr", line_no);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw ParseError("expected 4 columns", line_no);
    samples.r.push_back(parse_double(fields[0], line_no));
    samples.u.push_back(parse_double(fields[1], line_no));
    samples.ur.push_back(parse_double(fields[2], line_no));
    samples.urr.push_back(parse_double(fields[3], line_no));
    if (samples.r.size() > 1 && !(samples.r.back() > samples.r[samples.r.size() - 2])) {
      throw ParseError("radii must be strictly increasing", line_no);
    }
  }
  if (samples.r.size() < 2) throw ParseError("profile needs at least two data rows", line_no);
  return samples;
}

Summary make_summary(const ProblemSpec& spec, const SolveResult& result) {
  return Summary{spec,          result.beta,      result.delta_beta, result.objective,
                 result.iterations, result.converged, result.positive};
}

void write_summary_csv(std::ostream& out, const Summary& s, const BoundsReport& b) {
  out << kSummaryHeader << '\n';
  out << format_double(s.spec.R) << ',' << s.spec.m << ',' << format_double(s.spec.alpha) << ','
      << format_double(s.spec.P0) << ',' << s.spec.N << ',' << format_double(s.beta) << ','
      << format_double(s.delta_beta) << ',' << format_double(s.objective) << ',' << s.iterations
      << ',' << flag(s.converged) << ',' << flag(s.positive) << ','
      << format_double(b.beta_upper) << ',' << flag(b.beta_ok) << ','
      << format_double(b.peak_bound_sq) << ',' << format_double(b.max_u_sq) << ','
      << flag(b.peak_ok) << ',' << flag(b.decay_applicable) << ','
      << optional_double(b.epsilon0_fit) << ',' << format_double(b.epsilon0_floor) << ','
      << optional_flag(b.decay_ok) << ',' << format_double(b.poincare_ratio) << ','
      << flag(b.poincare_ok) << ',' << format_double(b.flux) << ',' << flag(b.flux_ok) << '\n';
}

void write_summary_jsonl(std::ostream& out, const Summary& s, const BoundsReport& b) {
  nlohmann::ordered_json row;
  row["R"] = s.spec.R;
  row["m"] = s.spec.m;
  row["alpha"] = s.spec.alpha;
  row["P0"] = s.spec.P0;
  row["N"] = s.spec.N;
  row["beta"] = s.beta;
  row["delta_beta"] = s.delta_beta;
  row["objective"] = s.objective;
  row["iterations"] = s.iterations;
  row["converged"] = s.converged;
  row["positive"] = s.positive;
  row["beta_upper_bound"] = b.beta_upper;
  row["beta_ok"] = b.beta_ok;
  row["peak_bound_sq"] = b.peak_bound_sq;
  row["max_u_sq"] = b.max_u_sq;
  row["peak_ok"] = b.peak_ok;
  row["decay_applicable"] = b.decay_applicable;
  row["epsilon0_fit"] = b.epsilon0_fit ? nlohmann::ordered_json(*b.epsilon0_fit) : nullptr;
  row["epsilon0_floor"] = b.epsilon0_floor;
  row["decay_ok"] = b.decay_ok ? nlohmann::ordered_json(*b.decay_ok) : nullptr;
  row["poincare_ratio"] = b.poincare_ratio;
  row["poincare_ok"] = b.poincare_ok;
  row["flux"] = b.flux;
  row["flux_ok"] = b.flux_ok;
  out << row.dump() << '\n';
}

Summary read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty summary file", 1);
  const auto header = split_csv(line);
  if (!std::getline(in, line)) throw ParseError("summary has no data row", 2);
  const auto values = split_csv(line);
  if (values.size() != header.size()) throw ParseError("column count does not match header", 2);
  std::map<std::string, std::string> row;
  for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = values[i];
  auto field = [&](const char* name) -> const std::string& {
    const auto it = row.find(name);
    if (it == row.end()) throw ParseError(std::string("missing column ") + name, 1);
    return it->second;
  };
  Summary s;
  s.spec.R = parse_double(field("R"), 2);
  s.spec.m = parse_int(field("m"), 2);
  s.spec.alpha = parse_double(field("alpha"), 2);
  s.spec.P0 = parse_double(field("P0"), 2);
  s.spec.N = parse_int(field("N"), 2);
  s.beta = parse_double(field("beta"), 2);
  s.delta_beta = parse_double(field("delta_beta"), 2);
  s.objective = parse_double(field("objective"), 2);
  s.iterations = parse_int(field("iterations"), 2);
  s.converged = parse_bool(field("converged"), 2);
  s.positive = parse_bool(field("positive"), 2);
  return s;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepItem>& items) {
  out << "m,P0,beta,delta_beta,beta_upper_bound,converged,positive,error\n";
  for (const SweepItem& item : items) {
    const double bound = check_beta_bound(0.0, item.spec).threshold;
    out << item.spec.m << ',' << format_double(item.spec.P0) << ',';
    if (item.result) {
      out << format_double(item.result->beta) << ',' << format_double(item.result->delta_beta)
          << ',' << format_double(bound) << ',' << flag(item.result->converged) << ','
          << flag(item.result->positive) << ",\n";
    } else {
      out << ",," << format_double(bound) << ",0,0," << csv_escape(item.error) << '\n';
    }
  }
}

void write_sweep_jsonl(std::ostream& out, const std::vector<SweepItem>& items) {
  for (const SweepItem& item : items) {
    nlohmann::ordered_json row;
    row["m"] = item.spec.m;
    row["P0"] = item.spec.P0;
    row["beta"] = item.result ? nlohmann::ordered_json(item.result->beta) : nullptr;
    row["delta_beta"] = item.result ? nlohmann::ordered_json(item.result->delta_beta) : nullptr;
    row["beta_upper_bound"] = check_beta_bound(0.0, item.spec).threshold;
    row["converged"] = item.result && item.result->converged;
    row["positive"] = item.result && item.result->positive;
    row["error"] = item.error;
    out << row.dump() << '\n';
  }
}

std::map<std::string, ConfigEntry> parse_config(std::istream& in) {
  std::map<std::string, ConfigEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line_no);
    if (value.empty()) throw ParseError("missing value for key '" + key + "'", line_no);
    entries[key] = ConfigEntry{value, line_no};
  }
  return entries;
}

}  // namespace vortex::io
