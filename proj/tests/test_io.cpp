#include "doctest.h"
#include "support.hpp"

#include "symdisc/io.hpp"

#include <sstream>

using namespace symdisc;
using namespace symdisc::testing;

TEST_CASE("parse_complex forms") {
  CHECK(parse_complex("1.5") == cplx(1.5, 0));
  CHECK(parse_complex("-2i") == cplx(0, -2));
  CHECK(parse_complex("i") == cplx(0, 1));
  CHECK(parse_complex("-i") == cplx(0, -1));
  CHECK(parse_complex("3-4.5i") == cplx(3, -4.5));
  CHECK(parse_complex("1e-3+2e-1j") == cplx(1e-3, 0.2));
  CHECK(parse_complex(" 2+i ") == cplx(2, 1));
  CHECK_THROWS_AS(parse_complex("abc"), InputError);
  CHECK_THROWS_AS(parse_complex(""), InputError);
  CHECK_THROWS_AS(parse_complex("1+2"), InputError);
}

TEST_CASE("parse_complex_list reports the column of the bad entry") {
  const auto v = parse_complex_list("3,3,1");
  CHECK(v == std::vector<cplx>{3.0, 3.0, 1.0});
  try {
    parse_complex_list("1, 2, x", "--point");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.column() == 7);
    CHECK(std::string(e.what()).find("--point:1:7") == 0);
  }
}

TEST_CASE("CSV points") {
  std::istringstream ok("n,s1_re,s1_im,p_re,p_im\n2,2,0,1,0\n# comment\n3,3,0,3,0,1,0\n");
  const auto pts = read_points_csv(ok);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].n() == 2);
  CHECK(pts[1].p() == cplx(1.0));

  std::istringstream bad_field("n,a,b,c,d\n2,2,0,zz,0\n");
  try {
    read_points_csv(bad_field, "pts.csv");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 7);
    CHECK(std::string(e.what()).find("pts.csv:2:7:") == 0);
  }
  std::istringstream short_row("n\n2,1,0,1\n");
  CHECK_THROWS_AS(read_points_csv(short_row), InputError);
  std::istringstream no_header("2,1,0,1,0\n");
  CHECK_THROWS_AS(read_points_csv(no_header), InputError);
  std::istringstream bad_n("n\n1.5,1,0\n");
  CHECK_THROWS_AS(read_points_csv(bad_n), InputError);
}

TEST_CASE("JSON points") {
  auto pts = read_points_json(R"([{"coords": [2, 1]}, [[0, 1], "0.5-i"]])");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].s(1) == cplx(0, 1));
  CHECK(pts[1].p() == cplx(0.5, -1));
  pts = read_points_json(R"({"points": [{"coords": [3, 3, 1]}]})");
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].n() == 3);
  pts = read_points_json("[3, 3, 1]");
  REQUIRE(pts.size() == 1);
  CHECK_THROWS_AS(read_points_json("[[1]]"), InputError);
  try {
    read_points_json("[[1, 2],\n [3, ]]", "p.json");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("tuple JSON round trip") {
  Rng rng(70);
  const OperatorTuple t = unitary_tuple(3, 4, rng);
  const OperatorTuple back = read_tuple_json(to_json(t).dump());
  REQUIRE(back.n() == 3);
  for (int k = 0; k < 3; ++k) CHECK(operator_norm(back.member(k) - t.member(k)) == 0.0);

  const OperatorTuple nested = read_tuple_json(
      R"({"members": [{"re": [[1, 0], [0, 2]]}, {"re": [[0, 0], [0, 0]], "im": [[1, 0], [0, 1]]}]})");
  CHECK(nested.member(1)(1, 1) == cplx(0, 1));
  CHECK_THROWS_AS(read_tuple_json(R"({"S": [{"re": [1, 2, 3]}], "P": {"re": [1]}})"), InputError);
  CHECK_THROWS_AS(read_tuple_json(R"({"n": 3, "S": [{"re": [1]}], "P": {"re": [1]}})"), InputError);
  CHECK_THROWS_AS(read_tuple_json("{"), InputError);
}

TEST_CASE("reports serialize with tolerances") {
  const MembershipReport r = in_closed_gamma(GammaPoint::from_coords(std::vector<cplx>{3.0, 3.0, 1.0}));
  const Json j = to_json(r);
  CHECK(j["verdict"] == "BoundaryGamma_b");
  CHECK(j["tolerance"]["abs_eps"] == 1e-10);
  CHECK(j["tolerance"]["boundary_band"] == 1e-9);
  CHECK(j["conditions"].size() > 0);
  CHECK(j["conditions"][0].contains("decisive"));

  const CertReport c = pencil_positivity(
      OperatorTuple::scalar(GammaPoint::from_coords(std::vector<cplx>{0.0, 1.5})));
  const Json cj = to_json(c);
  CHECK(cj["kind"] == "Violation");
  CHECK(cj.contains("witness"));
  CHECK(cj.contains("tolerance"));
}
