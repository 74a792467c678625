#include <doctest.h>

#include <sstream>

#include "vortex/io.hpp"

using namespace vortex;

namespace {

int parse_error_line(const std::string& text, bool profile) {
  std::istringstream in(text);
  try {
    if (profile) {
      io::read_profile_csv(in);
    } else {
      io::parse_config(in);
    }
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.0, -1.0354687, 1e-300, 3.141592653589793, -0.1 + 0.2}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("profile csv round trip") {
  const ProblemSpec spec{20.0, 1, 1.0, 100.0, 20};
  const SolveResult r = minimize(spec);
  std::stringstream buffer;
  io::write_profile_csv(buffer, r.profile);
  std::string header;
  std::getline(buffer, header);
  CHECK(header == "r,u,u_r,u_rr");
  buffer.seekg(0);
  const SampledProfile s = io::read_profile_csv(buffer);
  REQUIRE(s.r.size() == static_cast<std::size_t>(io::kProfileRows));
  CHECK(s.r.front() == 0.0);
  CHECK(s.r.back() == 20.0);
  CHECK(s.u.front() == 0.0);
  CHECK(s.u.back() == 0.0);
  for (std::size_t i : {100u, 512u, 900u}) {
    CHECK(s.u[i] == eval(r.profile, s.r[i]));
    CHECK(s.ur[i] == eval(r.profile, s.r[i], 1));
    CHECK(s.urr[i] == eval(r.profile, s.r[i], 2));
  }
  const BoundsReport report = validate_sampled(s, spec, r.beta);
  CHECK(report.flux == doctest::Approx(100.0).epsilon(1e-3));
  CHECK(report.all_ok());
}

TEST_CASE("profile parse errors carry line numbers") {
  CHECK(parse_error_line("r,u\n0,0\n", true) == 1);
  CHECK(parse_error_line("r,u,u_r,u_rr\n0,0,0,0\n1,2,3\n", true) == 3);
  CHECK(parse_error_line("r,u,u_r,u_rr\n0,0,0,0\n1,abc,0,0\n", true) == 3);
  CHECK(parse_error_line("r,u,u_r,u_rr\n0,0,0,0\n1,0,0,0\n1,0,0,0\n", true) == 4);
  CHECK(parse_error_line("", true) == 1);
}

TEST_CASE("config parsing") {
  std::istringstream in("# comment\nR = 40\n\nm = 1,2,3  # trailing\nR=20\n");
  const auto config = io::parse_config(in);
  REQUIRE(config.size() == 2);
  CHECK(config.at("R").value == "20");
  CHECK(config.at("R").line == 5);
  CHECK(config.at("m").value == "1,2,3");
  CHECK(parse_error_line("R = 1\nnonsense\n", false) == 2);
  CHECK(parse_error_line("= 3\n", false) == 1);
  CHECK(parse_error_line("R =\n", false) == 1);
}

TEST_CASE("summary csv round trip") {
  const ProblemSpec spec{20.0, 2, 1.5, 50.0, 12};
  const SolveResult r = minimize(spec);
  const auto rule = default_rule(spec.R, spec.N);
  const io::Summary summary = io::make_summary(spec, r);
  std::stringstream buffer;
  io::write_summary_csv(buffer, summary, validate_solution(r, spec, rule));
  const io::Summary back = io::read_summary_csv(buffer);
  CHECK(back.spec.R == spec.R);
  CHECK(back.spec.m == spec.m);
  CHECK(back.spec.alpha == spec.alpha);
  CHECK(back.spec.P0 == spec.P0);
  CHECK(back.spec.N == spec.N);
  CHECK(back.beta == r.beta);
  CHECK(back.delta_beta == r.delta_beta);
  CHECK(back.iterations == r.iterations);
  CHECK(back.converged == r.converged);
  CHECK(back.positive == r.positive);
}

TEST_CASE("sweep tables") {
  const ProblemSpec good{20.0, 1, 1.0, 50.0, 10};
  const ProblemSpec bad{20.0, 1, 1.0, -5.0, 10};
  const auto items = sweep({good, bad}, {}, {}, 1);
  std::stringstream csv;
  io::write_sweep_csv(csv, items);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "m,P0,beta,delta_beta,beta_upper_bound,converged,positive,error");
  std::getline(csv, line);
  CHECK(line.rfind("1,50,", 0) == 0);
  std::getline(csv, line);
  CHECK(line.find("P0 must be positive") != std::string::npos);

  std::stringstream jsonl;
  io::write_sweep_jsonl(jsonl, items);
  int lines = 0;
  while (std::getline(jsonl, line)) {
    CHECK(line.front() == '{');
    ++lines;
  }
  CHECK(lines == 2);
}
