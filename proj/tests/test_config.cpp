#include "caustica/config.hpp"
#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "doctest.h"

using namespace caustica;

namespace {

const char* kGrid = R"("grid": {"lo": [0.5, 0.2, 0.1], "hi": [0.5, 0.2, 0.1], "count": [1, 1, 1]})";

std::string job(const std::string& body) { return "{" + body + ", " + kGrid + "}"; }

}  // namespace

TEST_CASE("parsing a full job") {
  const JobConfig c = parse_config(R"({
    "example": "evolved-beam", "representation": "auto", "compare": ["new", "reference"],
    "amplitude": {"kind": "gaussian", "alpha_width": 0.7},
    "beam": {"profile": "constant", "value": 1.5, "k": 0.5},
    "evolution": {"t": 0.25, "c": 2.0},
    "grid": {"lo": [-1, -1, 0], "hi": [1, 1, 0], "count": [5, 5, 1]},
    "h": [0.1, 0.05],
    "heatmap": {"axes": [0, 1], "fixed": [0, 0, 0]},
    "quadrature": {"rel_tol": 1e-9},
    "tolerance": {"order_min": 0.8, "max_diff": 1e-4}
  })");
  CHECK(c.example == "evolved-beam");
  CHECK(c.representation == "auto");
  CHECK(c.compare.size() == 2);
  CHECK(c.amplitude.get("alpha_width", 1.0) == 0.7);
  CHECK(c.amplitude.get("phi_width", 1.0) == 1.0);
  CHECK(c.beam.profile == "constant");
  CHECK(c.t == 0.25);
  CHECK(c.c == 2.0);
  CHECK(c.grid.size() == 25);
  CHECK(c.h == std::vector<double>{0.1, 0.05});
  REQUIRE(c.heatmap.has_value());
  CHECK(c.quadrature.rel_tol == 1e-9);
  CHECK(c.order_min == 0.8);
  CHECK(c.order_max == 1.5);
  CHECK(c.max_diff == 1e-4);
  CHECK(parse_config(job(R"("example": "radial", "h": 0.2)")).h == std::vector<double>{0.2});
}

TEST_CASE("malformed jobs raise ConfigError") {
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config(job(R"("representation": "new")")), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"example": "radial"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(job(R"("example": "radial", "h": [])")), ConfigError);
  CHECK_THROWS_AS(parse_config(job(R"("example": "radial", "h": -0.1)")), ConfigError);
  CHECK_THROWS_AS(parse_config(job(R"("example": "radial", "h": "small")")), ConfigError);
  CHECK_THROWS_AS(parse_config(job(R"("example": "radial", "amplitude": {"kind": "cap", "theta_support": "wide"})")),
                  ConfigError);
  CHECK_THROWS_AS(build_problem(parse_config(job(R"("example": "sphere")"))), ConfigError);
  CHECK_THROWS_AS(build_problem(parse_config(job(R"("example": "beam", "beam": {"profile": "sine"})"))), ConfigError);
  CHECK_THROWS_AS(build_problem(parse_config(job(R"("example": "evolved-beam", "evolution": {"t": -1})"))),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/job.json"), ConfigError);
}

TEST_CASE("problems expose their representations") {
  const Problem r = build_problem(parse_config(job(R"("example": "radial")")));
  CHECK(r.oracle == "exact");
  CHECK(r.representations.count("new") == 1);
  CHECK(r.representations.count("standard") == 0);  // a unit amplitude reaches the equator
  CHECK_THROWS_AS(r.get("standard"), ConfigError);
  const Vec x{{0.5, 0.2, 0.1}};
  CHECK(std::abs(r.get("new")(x, 0.1) - radial_field(x, 0.1)) <= 1e-8);
  CHECK(std::abs(r.get("auto")(x, 0.1) - radial_field(x, 0.1)) <= 1e-8);

  const Problem cap = build_problem(parse_config(job(R"("example": "radial", "amplitude": {"kind": "cap"})")));
  CHECK(cap.representations.count("standard") == 1);
  CHECK(cap.oracle.empty());

  const Problem b = build_problem(parse_config(job(R"("example": "beam")")));
  CHECK(std::abs(b.get("new")(x, 0.1) - b.get("reference")(x, 0.1)) <= 1e-8);

  const Problem e0 = build_problem(parse_config(job(R"("example": "evolved-beam")")));
  CHECK(e0.oracle == "reference");
  const Problem e1 = build_problem(parse_config(job(R"("example": "evolved-beam", "evolution": {"t": 0.3})")));
  CHECK(e1.oracle.empty());
  CHECK(std::stod(e1.info.at("t")) == 0.3);
}
