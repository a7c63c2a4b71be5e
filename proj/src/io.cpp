#include "symdisc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace symdisc {

namespace {

std::string located(const std::string& source, int line, int column, const std::string& msg) {
  std::ostringstream os;
  os << source;
  if (line > 0) {
    os << ":" << line;
    if (column > 0) os << ":" << column;
  }
  os << ": " << msg;
  return os.str();
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

std::string trim(const std::string& s, int* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = static_cast<int>(a);
  return s.substr(a, b - a);
}

// Line and column of a byte offset.
std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    const auto pos = what.find("parse error");
    throw InputError(source, line, col, pos == std::string::npos ? what : what.substr(pos));
  }
}

cplx coordinate_from_json(const Json& c, const std::string& source) {
  if (c.is_number()) return {c.get<double>(), 0.0};
  if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
    return {c[0].get<double>(), c[1].get<double>()};
  }
  if (c.is_string()) return parse_complex(c.get<std::string>(), source, 0, 0);
  throw InputError(source, 0, 0, "coordinate must be a number, [re, im] or a string: " + c.dump());
}

}  // namespace

InputError::InputError(const std::string& source, int line, int column, const std::string& message)
    : Error(located(source, line, column, message)), line_(line), column_(column) {}

cplx parse_complex(const std::string& text, const std::string& source, int line, int column) {
  int lead = 0;
  std::string s = trim(text, &lead);
  const int col = column > 0 ? column + lead : 0;
  if (s.empty()) throw InputError(source, line, col, "empty complex number");
  const char last = s.back();
  if (last != 'i' && last != 'j' && last != 'I' && last != 'J') {
    double re = 0.0;
    if (!parse_double(s, re)) throw InputError(source, line, col, "cannot parse number '" + s + "'");
    return {re, 0.0};
  }
  s.pop_back();
  // Split at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : trim(s.substr(0, split));
  std::string im_part = trim(split == std::string::npos ? s : s.substr(split));
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  double re = 0.0;
  double im = 0.0;
  if (!re_part.empty() && !parse_double(re_part, re)) {
    throw InputError(source, line, col, "cannot parse real part '" + re_part + "'");
  }
  if (!parse_double(im_part, im)) {
    throw InputError(source, line, col, "cannot parse imaginary part of '" + text + "'");
  }
  return {re, im};
}

std::vector<cplx> parse_complex_list(const std::string& text, const std::string& source) {
  std::vector<cplx> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string field = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
    out.push_back(parse_complex(field, source, 1, static_cast<int>(start) + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<GammaPoint> read_points_csv(std::istream& in, const std::string& source) {
  std::vector<GammaPoint> out;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::vector<std::pair<std::string, int>> fields;  // text, 1-based column
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start),
                          static_cast<int>(start) + 1);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!header) {
      if (trim(fields[0].first) != "n") {
        throw InputError(source, lineno, 1, "expected header starting with 'n'");
      }
      header = true;
      continue;
    }
    double nd = 0.0;
    const std::string nf = trim(fields[0].first);
    if (!parse_double(nf, nd) || nd != std::floor(nd) || nd < 2) {
      throw InputError(source, lineno, fields[0].second, "n must be an integer >= 2, got '" + nf + "'");
    }
    const int n = static_cast<int>(nd);
    const std::size_t expected = 1 + 2 * static_cast<std::size_t>(n);
    // Trailing empty fields are allowed when a file mixes several n.
    while (fields.size() > expected && trim(fields.back().first).empty()) fields.pop_back();
    if (fields.size() != expected) {
      std::ostringstream os;
      os << "expected " << expected << " fields for n = " << n << ", found " << fields.size();
      throw InputError(source, lineno, fields.size() < expected ? static_cast<int>(line.size()) + 1
                                                                : fields[expected].second,
                       os.str());
    }
    std::vector<cplx> coords;
    for (int k = 0; k < n; ++k) {
      double re = 0.0;
      double im = 0.0;
      const auto& fr = fields[1 + 2 * k];
      const auto& fi = fields[2 + 2 * k];
      if (!parse_double(trim(fr.first), re)) {
        throw InputError(source, lineno, fr.second, "cannot parse number '" + trim(fr.first) + "'");
      }
      if (!parse_double(trim(fi.first), im)) {
        throw InputError(source, lineno, fi.second, "cannot parse number '" + trim(fi.first) + "'");
      }
      coords.emplace_back(re, im);
    }
    out.push_back(GammaPoint::from_coords(coords));
  }
  if (!header) throw InputError(source, lineno, 0, "missing header line");
  return out;
}

std::vector<GammaPoint> read_points_json(const std::string& text, const std::string& source) {
  const Json j = parse_json_text(text, source);
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("points")) throw InputError(source, 0, 0, "object without a 'points' array");
    arr = &j["points"];
  }
  if (!arr->is_array()) throw InputError(source, 0, 0, "expected an array of points");
  // A bare coordinate list is a single point.
  const bool single = !arr->empty() && ((*arr)[0].is_number() || (*arr)[0].is_string() ||
                                        ((*arr)[0].is_array() && (*arr)[0].size() == 2 &&
                                         (*arr)[0][0].is_number()));
  std::vector<GammaPoint> out;
  auto one = [&](const Json& p, std::size_t idx) {
    const Json& c = p.is_object() ? p.at("coords") : p;
    if (!c.is_array() || c.size() < 2) {
      throw InputError(source, 0, 0, "point " + std::to_string(idx) + ": need >= 2 coordinates");
    }
    std::vector<cplx> coords;
    for (const auto& x : c) coords.push_back(coordinate_from_json(x, source));
    if (p.is_object() && p.contains("n") && p["n"].get<int>() != static_cast<int>(coords.size())) {
      throw InputError(source, 0, 0, "point " + std::to_string(idx) + ": n does not match coords");
    }
    out.push_back(GammaPoint::from_coords(coords));
  };
  if (single) {
    one(*arr, 0);
  } else {
    for (std::size_t k = 0; k < arr->size(); ++k) one((*arr)[k], k);
  }
  return out;
}

std::vector<GammaPoint> read_points_file(const std::string& path) {
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (json) return read_points_json(read_file(path), path);
  std::ifstream in(path);
  if (!in) throw InputError(path, 0, 0, "cannot open file");
  return read_points_csv(in, path);
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("re")) throw Error(what + ": expected {\"re\": [...], \"im\": [...]}");
  const auto& re = j["re"];
  if (!re.is_array()) throw Error(what + ": 're' must be an array");
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> flat_re;
  std::vector<double> flat_im;
  // Nested rows or a flat row-major list with an explicit "rows".
  if (!re.empty() && re[0].is_array()) {
    rows = re.size();
    cols = re[0].size();
    for (const auto& r : re) {
      if (r.size() != cols) throw Error(what + ": ragged rows");
      for (const auto& x : r) flat_re.push_back(x.get<double>());
    }
    if (j.contains("im")) {
      for (const auto& r : j["im"]) {
        for (const auto& x : r) flat_im.push_back(x.get<double>());
      }
    }
  } else {
    for (const auto& x : re) flat_re.push_back(x.get<double>());
    if (j.contains("im")) {
      for (const auto& x : j["im"]) flat_im.push_back(x.get<double>());
    }
    if (j.contains("rows")) {
      rows = j["rows"].get<std::size_t>();
    } else {
      rows = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat_re.size()))));
    }
    cols = rows ? flat_re.size() / rows : 0;
  }
  if (rows == 0 || cols == 0 || rows * cols != flat_re.size()) {
    throw Error(what + ": entry count does not match the shape");
  }
  if (!flat_im.empty() && flat_im.size() != flat_re.size()) {
    throw Error(what + ": 'im' and 're' sizes differ");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t k = r * cols + c;
      m(r, c) = cplx(flat_re[k], flat_im.empty() ? 0.0 : flat_im[k]);
    }
  }
  require_well_formed(m, what);
  return m;
}

OperatorTuple read_tuple_json(const std::string& text, const std::string& source) {
  const Json j = parse_json_text(text, source);
  try {
    std::vector<ComplexMatrix> members;
    if (j.contains("members")) {
      for (std::size_t k = 0; k < j["members"].size(); ++k) {
        members.push_back(matrix_from_json(j["members"][k], "member " + std::to_string(k + 1)));
      }
    } else {
      if (!j.contains("S") || !j.contains("P")) {
        throw Error("tuple needs 'S' (list) and 'P', or 'members'");
      }
      for (std::size_t k = 0; k < j["S"].size(); ++k) {
        members.push_back(matrix_from_json(j["S"][k], "S" + std::to_string(k + 1)));
      }
      members.push_back(matrix_from_json(j["P"], "P"));
    }
    if (j.contains("n") && j["n"].get<int>() != static_cast<int>(members.size())) {
      throw Error("'n' does not match the number of matrices");
    }
    return OperatorTuple::from_members(std::move(members));
  } catch (const InputError&) {
    throw;
  } catch (const Json::exception& e) {
    throw InputError(source, 0, 0, e.what());
  } catch (const Error& e) {
    throw InputError(source, 0, 0, e.what());
  }
}

OperatorTuple read_tuple_file(const std::string& path) {
  return read_tuple_json(read_file(path), path);
}

Json to_json(cplx c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Json to_json(const Tolerance& t) { return Json{{"abs_eps", t.abs_eps}, {"rel_eps", t.rel_eps}}; }

Json to_json(const GammaPoint& pt) {
  Json coords = Json::array();
  for (const cplx c : pt.coords()) coords.push_back(to_json(c));
  return Json{{"n", pt.n()}, {"coords", coords}};
}

Json to_json(const MembershipReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    conds.push_back(Json{{"id", c.id},
                         {"value", c.value},
                         {"threshold", c.threshold},
                         {"margin", c.margin},
                         {"passed", c.passed},
                         {"decisive", c.decisive}});
  }
  Json roots = Json::array();
  for (const cplx z : r.oracle_roots) roots.push_back(to_json(z));
  Json tol = to_json(r.options.tol);
  tol["boundary_band"] = r.options.boundary_band;
  return Json{{"queried", to_string(r.queried)},
              {"member", r.member},
              {"verdict", to_string(r.verdict)},
              {"theorem_verdict", to_string(r.theorem_verdict)},
              {"oracle_verdict", to_string(r.oracle_verdict)},
              {"oracle_disagreement", r.oracle_disagreement},
              {"conditions", conds},
              {"oracle",
               Json{{"max_root_modulus", r.oracle_max_root_modulus},
                    {"min_root_modulus", r.oracle_min_root_modulus},
                    {"roots", roots}}},
              {"tolerance", tol}};
}

Json to_json(const OperatorTuple& t) {
  Json s = Json::array();
  for (int i = 1; i <= t.n() - 1; ++i) s.push_back(to_json(t.S(i)));
  return Json{{"n", t.n()},
              {"dim", t.dim()},
              {"S", s},
              {"P", to_json(t.P())},
              {"commute_residual", t.commute_residual()},
              {"commute_tolerance", t.commute_tolerance()}};
}

Json to_json(const JointSpectrum& js) {
  Json pts = Json::array();
  for (std::size_t k = 0; k < js.points.size(); ++k) {
    Json p = Json::array();
    for (const cplx c : js.points[k]) p.push_back(to_json(c));
    pts.push_back(Json{{"point", p}, {"residual", js.residuals[k]}});
  }
  return Json{{"points", pts}, {"max_residual", js.max_residual()}};
}

Json to_json(const Check& c) {
  return Json{{"name", c.name},
              {"value", c.value},
              {"threshold", c.threshold},
              {"margin", c.margin},
              {"passed", c.passed}};
}

Json to_json(const CertReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json j{{"kind", to_string(r.kind)},
         {"checks", checks},
         {"notes", r.notes},
         {"tolerance", to_json(r.tol)},
         {"witness", nullptr}};
  if (r.witness) {
    Json w{{"description", r.witness->description},
           {"index", r.witness->index},
           {"parameter", to_json(r.witness->parameter)},
           {"value", r.witness->value}};
    if (r.witness->polynomial) w["polynomial"] = r.witness->polynomial->to_string(17);
    j["witness"] = w;
  }
  return j;
}

Json to_json(const FundamentalTuple& ft) {
  Json fs = Json::array();
  for (const auto& f : ft.F) fs.push_back(to_json(f));
  Json j{{"n", ft.n},
         {"defect_rank", ft.space.rank},
         {"F", fs},
         {"residuals", ft.residuals},
         {"consistency_residuals", ft.consistency},
         {"radius_margins", ft.radius_margins}};
  j["basis"] = ft.space.rank > 0 ? to_json(ft.space.basis) : Json(nullptr);
  return j;
}

Json to_json(const RadiusCheck& rc) {
  return Json{{"passed", rc.passed}, {"worst_margin", rc.worst}, {"margins", rc.margins}};
}

Json to_json(const AlmostNormalCheck& an) {
  return Json{{"is_almost_normal", an.is_almost_normal}, {"defect_norms", an.defect_norms}};
}

Json to_json(const ObstructionReport& r) {
  auto checks = [](const std::vector<Check>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(to_json(c));
    return a;
  };
  Json fot{{"defect_rank", r.fot.space.rank},
           {"residuals", r.fot.residuals},
           {"consistency_residuals", r.fot.consistency}};
  return Json{{"n", r.n},
              {"N", r.N},
              {"eta", r.eta},
              {"hypothesis_checks", checks(r.hypothesis_checks)},
              {"edge_diagnostics", checks(r.edge_diagnostics)},
              {"fot_checks", checks(r.fot_checks)},
              {"fot", fot},
              {"almost_normal", r.almost_normal},
              {"pair_defect_norms", r.almost_normal_pairs.defect_norms},
              {"pair_defect_full", r.pair_defect_full},
              {"pair_defect_interior", r.pair_defect_interior},
              {"contraction_evidence", to_json(r.contraction_evidence)},
              {"linear_collapse_residual", r.linear_collapse_residual},
              {"obstruction_confirmed", r.obstruction_confirmed},
              {"notes", r.notes}};
}

Json to_json(const CfReport& r) {
  return Json{{"cf_value", r.cf_value}, {"worst_gap", r.worst_gap}, {"worst_trial", r.worst_trial}};
}

}  // namespace symdisc
