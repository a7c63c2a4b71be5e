#pragma once

// Text and JSON input/output: complex-number parsing, point files (CSV or
// JSON), tuple files, and JSON renderings of every report type.

#include "symdisc/counterexample.hpp"
#include "symdisc/fundamental.hpp"
#include "symdisc/geometry.hpp"
#include "symdisc/tuples.hpp"

#include "json.hpp"

#include <istream>
#include <string>
#include <vector>

namespace symdisc {

using Json = nlohmann::json;

/// Malformed input. line/column are 1-based; 0 means unknown.
class InputError : public Error {
 public:
  InputError(const std::string& source, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses "1.5", "-2i", "i", "3-4.5i", "1e-3+2e-1j". `column` is used for
/// diagnostics only.
cplx parse_complex(const std::string& text, const std::string& source = "argument", int line = 1,
                   int column = 1);

/// Comma-separated complex numbers, e.g. "3,3,1" or "0.5+0.1i, -i".
std::vector<cplx> parse_complex_list(const std::string& text,
                                     const std::string& source = "argument");

/// CSV with header "n,s1_re,s1_im,...,p_re,p_im". Rows may have different
/// n; each row must carry exactly 1 + 2n fields.
std::vector<GammaPoint> read_points_csv(std::istream& in, const std::string& source = "csv");

/// JSON: an array of points, or {"points": [...]}. A point is an array of
/// coordinates or {"coords": [...]}; a coordinate is a number or [re, im].
std::vector<GammaPoint> read_points_json(const std::string& text,
                                         const std::string& source = "json");

/// Picks CSV or JSON from the file extension (".json" means JSON).
std::vector<GammaPoint> read_points_file(const std::string& path);

OperatorTuple read_tuple_json(const std::string& text, const std::string& source = "json");
OperatorTuple read_tuple_file(const std::string& path);

Json to_json(cplx c);
Json to_json(const ComplexMatrix& m);
Json to_json(const Tolerance& t);
Json to_json(const GammaPoint& pt);
Json to_json(const MembershipReport& r);
Json to_json(const OperatorTuple& t);
Json to_json(const JointSpectrum& js);
Json to_json(const CertReport& r);
Json to_json(const Check& c);
Json to_json(const FundamentalTuple& ft);
Json to_json(const RadiusCheck& rc);
Json to_json(const AlmostNormalCheck& an);
Json to_json(const ObstructionReport& r);
Json to_json(const CfReport& r);

ComplexMatrix matrix_from_json(const Json& j, const std::string& what);

}  // namespace symdisc
