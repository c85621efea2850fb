#include <doctest.h>

#include <regex>
#include <sstream>
#include <string>

#include "centrosec/error.hpp"
#include "centrosec/families.hpp"
#include "centrosec/instance.hpp"
#include "centrosec/report.hpp"

using namespace centrosec;

namespace {

int count(const std::string& s, const std::string& needle) {
  int c = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++c;
  return c;
}

int error_line(const std::string& text) {
  try {
    parse_instance_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("parse a full spec") {
  const auto spec = parse_instance_string(R"(# square and disk
dimension = 2
seed = 17
K.kind = hpolytope
K.facet = 1 0 1
K.facet = 0 1 1
L.kind = ellipsoid
L.semiaxes = 0.5 0.25
L.rotation = 0 -1 1 0
solver.starts = 40
solver.mode = descent
solver.residual_tol = 1e-8
)");
  CHECK(spec.dimension == 2);
  CHECK(spec.seed == 17);
  CHECK(spec.solver.seed == 17);
  REQUIRE(spec.K);
  REQUIRE(spec.L);
  CHECK(spec.K->kind() == BodyKind::HPolytope);
  CHECK(spec.K->volume() == doctest::Approx(4.0));
  Vec e1 = Vec::Unit(2, 0);
  CHECK(spec.L->support(e1) == doctest::Approx(0.25));
  CHECK(spec.solver.starts == 40);
  CHECK(spec.solver.mode == SearchMode::Descent);
  CHECK(spec.solver.residual_tol == 1e-8);
}

TEST_CASE("other body kinds") {
  const auto s = parse_instance_string(
      "dimension = 3\nK.kind = cube\nK.half_width = 2\nL.kind = lp\nL.p = 3\nL.scale = 0.5\n");
  CHECK(s.K->volume() == doctest::Approx(64.0));
  CHECK(s.L->lp_exponent() == 3.0);
  const auto v = parse_instance_string("dimension = 2\nK.kind = vpolytope\nK.vertex = 1 1\nK.vertex = 1 -1\n");
  CHECK(v.K->volume() == doctest::Approx(4.0));
  CHECK_FALSE(v.L);
  const auto m = parse_instance_string("dimension = 2\nL.kind = ellipsoid\nL.matrix = 4 0 0 1\n");
  CHECK(m.L->support(Vec::Unit(2, 0)) == doctest::Approx(0.5));
}

TEST_CASE("parse errors name the line") {
  CHECK(error_line("dimension = 2\nK.kind = ball\nK.radius = abc\n") == 3);
  CHECK(error_line("dimension = 2\nK.kind = ball\nK.radius = 1\nK.colour = red\n") == 4);
  CHECK(error_line("dimension = 2\nK.kind = ball\nK.radius = 1\nK.radius = 2\n") == 4);
  CHECK(error_line("dimension = 2\n\nK.kind = blob\n") == 3);
  CHECK(error_line("dimension = 2\nthis line has no equals sign\n") == 2);
  CHECK(error_line("dimension = 2\nK.kind = vpolytope\nK.vertex = 1 2 3\n") == 3);
  CHECK(error_line("dimension = 1\n") == 1);
  CHECK(error_line("dimension = 2\ncolour = red\n") == 2);
  CHECK(error_line("dimension = 2\nsolver.mode = sideways\n") == 2);
  CHECK(error_line("dimension = 2\nK.kind = ball\nK.radius = -1\n") == 2);
  try {
    parse_instance_string("dimension = 2\nK.kind = ball\nK.radius = x\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("K.radius") != std::string::npos);
  }
  CHECK_THROWS_AS(load_instance("/nonexistent/spec.txt"), ParseError);
}

TEST_CASE("number formatting") {
  CHECK(round_sig(-0.0) == 0.0);
  CHECK_FALSE(std::signbit(round_sig(-1e-320 * 0)));
  CHECK(format_number(1.0 / 3) == "0.333333333333");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("csv quoting") {
  std::ostringstream os;
  CsvWriter w(os);
  w.row({"a", "b,c", "say \"hi\"", "line\nbreak"});
  CHECK(os.str() == "a,\"b,c\",\"say \"\"hi\"\"\",\"line\nbreak\"\r\n");
}

TEST_CASE("json report layout and svg") {
  const auto inst = generate_instance(Family::EllipsoidInPolytope, 2, 4);
  SolverConfig cfg;
  cfg.starts = 24;
  cfg.seed = 4;
  const auto r = solve(inst.K, inst.L, cfg);
  const std::string js = report_json_string(r);
  const auto j = nlohmann::ordered_json::parse(js);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema", "instance", "config", "pairs", "pair_count", "certified",
                                         "budget_exhausted", "continuum", "justification", "diagnostics"});
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["pair_count"] == r.pairs.size());
  CHECK(j["pairs"][0].contains("touch_point"));
  CHECK(js.back() == '\n');

  const std::string svg = report_svg(r);
  CHECK(count(svg, "class=\"tangent-line\"") == 2 * static_cast<int>(r.pairs.size()));
  CHECK(count(svg, "class=\"centroid\"") == static_cast<int>(r.pairs.size()));
  CHECK(count(svg, "class=\"body-K\"") == 1);
  CHECK(count(svg, "class=\"body-L\"") == 1);

  const auto i3 = generate_instance(Family::LpInBall, 3, 4);
  cfg.starts = 6;
  CHECK_THROWS_AS(report_svg(solve(i3.K, i3.L, cfg)), InvalidArgument);
}
