#include <cmath>
#include <limits>

#include "commands.hpp"
#include "doctest.h"
#include "serialize.hpp"

using namespace pbounds::cli;

TEST_CASE("measure specs") {
  const MeasureSpec d = parse_measure_spec("dirac:-0.25");
  CHECK(d.kind == MeasureSpec::Kind::dirac);
  CHECK(d.value == -0.25);
  CHECK(parse_measure_spec("uniform:0.5").kind == MeasureSpec::Kind::uniform);
  CHECK(parse_measure_spec("scan:1e-1").value == 0.1);
  for (const char* bad : {"", "dirac", "dirac:", "dirac:1,5", "scan:0", "uniform:-2", "box:1", "dirac:inf"})
    CHECK_THROWS_AS(parse_measure_spec(bad), ConfigError);
}

TEST_CASE("CSV numbers round-trip with the shortest representation") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  for (double v : {1.0 / 3.0, 2.544180314000702, -7.25e-17}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("JSON reports write non-finite numbers as null") {
  const json j{{"x", std::nan("")}, {"y", 1.5}};
  CHECK(j.dump() == R"({"x":null,"y":1.5})");
}
