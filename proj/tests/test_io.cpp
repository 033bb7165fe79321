#include <doctest.h>

#include <random>
#include <stdexcept>
#include <sstream>

#include "pdembed/checks.hpp"
#include "pdembed/io.hpp"

using namespace pdembed;

TEST_CASE("csv parsing") {
  const std::string text =
      "birth,death\n"
      "1,2\n"
      "diag,diag\n"
      "\n"
      "birth,death\n"
      "0.5,3.25\n";
  const auto ds = parse_diagrams(text, 0);
  REQUIRE(ds.size() == 2);
  CHECK(ds[0] == Diagram({Point(1, 2), Point::diag()}));
  CHECK(ds[1] == Diagram({Point(0.5, 3.25)}));

  // padding to a requested arity
  const auto padded = parse_diagrams(text, 3);
  CHECK(padded[1].arity() == 3);
  CHECK(padded[1] == Diagram({Point(0.5, 3.25)}).padded(3));

  CHECK_THROWS(parse_diagrams(text, 1));  // more points than arity
  CHECK_THROWS(parse_diagrams("birth,death\n1,1\n", 0));  // birth = death rejected
  CHECK_THROWS(parse_diagrams("", 0));
  CHECK_THROWS(parse_diagrams("birth,death\nnot-a-row\n", 0));
}

TEST_CASE("json parsing") {
  const auto one = parse_diagrams(R"({"n": 3, "points": [[1.0, 2.0], "diag"]})", 0);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Diagram({Point(1, 2)}).padded(3));

  const auto many = parse_diagrams(R"([
    {"points": [[1.0, 2.0]]},
    {"points": ["diag", [0.0, 4.0]]}
  ])", 2);
  REQUIRE(many.size() == 2);
  CHECK(many[0] == Diagram({Point(1, 2)}).padded(2));
  CHECK(many[1] == Diagram({Point::diag(), Point(0, 4)}));

  CHECK_THROWS(parse_diagrams(R"({"points": [[1.0]]})", 0));
  CHECK_THROWS(parse_diagrams(R"({"n": 1, "points": [[1,2],[3,4]]})", 0));
  CHECK_THROWS(parse_diagrams(R"({"points": ["nope"]})", 0));
}

TEST_CASE("csv round trip") {
  std::mt19937_64 rng(97);
  std::vector<Diagram> ds;
  for (int i = 0; i < 50; ++i) ds.push_back(sample_diagram(rng, 3, 10.0, 0.3));
  std::ostringstream os;
  write_diagrams_csv(os, ds);
  const auto back = parse_diagrams(os.str(), 0);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) CHECK(back[i] == ds[i]);
}

TEST_CASE("double formatting round-trips") {
  for (double v : {0.0, 1.0, 0.1, 1.0 / 3.0, 123456.789, 1e-12, 3.141592653589793}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(2.0) == "2");
}
