#include "cli.hpp"

#include "symdisc/counterexample.hpp"
#include "symdisc/fundamental.hpp"
#include "symdisc/geometry.hpp"
#include "symdisc/io.hpp"
#include "symdisc/tuples.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace symdisc::cli {

namespace {

const std::map<std::string, Command> kCommands{
    {"membership", Command::Membership},   {"boundary", Command::Boundary},
    {"symmetrize", Command::Symmetrize},   {"check-tuple", Command::CheckTuple},
    {"fundamental", Command::Fundamental}, {"counterexample", Command::Counterexample},
    {"cf-check", Command::CfCheck}};

std::string command_name(Command c) {
  for (const auto& [name, cmd] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

std::string fmt_cplx(cplx c) {
  std::ostringstream os;
  os << std::setprecision(12) << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag())
     << "i";
  return os.str();
}

std::string fmt_point(const GammaPoint& pt) {
  std::string s = "(";
  const auto c = pt.coords();
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? ", " : "") + fmt_cplx(c[k]);
  return s + ")";
}

Json parameters(const RunConfig& c) {
  return Json{{"seed", c.seed},
              {"tolerance",
               Json{{"abs_eps", c.abs_eps}, {"rel_eps", c.rel_eps}, {"boundary_band", c.band}}}};
}

std::vector<GammaPoint> input_points(const RunConfig& c) {
  std::vector<GammaPoint> pts;
  if (c.input_path) {
    pts = read_points_file(*c.input_path);
  } else if (c.point) {
    pts.push_back(GammaPoint::from_coords(parse_complex_list(*c.point, "--point")));
  } else {
    throw InputError("arguments", 0, 0, "give --point or --input");
  }
  if (c.n) {
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (pts[k].n() != *c.n) {
        std::ostringstream os;
        os << "point " << k + 1 << " has " << pts[k].n() << " coordinates but --n is " << *c.n;
        throw InputError("arguments", 0, 0, os.str());
      }
    }
  }
  return pts;
}

OperatorTuple input_tuple(const RunConfig& c) {
  if (!c.input_path) throw InputError("arguments", 0, 0, "this command needs --input <tuple.json>");
  OperatorTuple t = read_tuple_file(*c.input_path);
  if (c.n && t.n() != *c.n) throw InputError("arguments", 0, 0, "tuple size does not match --n");
  return t;
}

struct Outcome {
  Json json;
  std::string text;
  int code = kExitOk;
};

Outcome do_membership(const RunConfig& c, PointSet set) {
  Outcome o;
  MembershipOptions mo;
  mo.tol = Tolerance{c.abs_eps, c.rel_eps};
  mo.boundary_band = c.band;
  Json reports = Json::array();
  std::ostringstream text;
  for (const auto& pt : input_points(c)) {
    MembershipReport r;
    switch (set) {
      case PointSet::OpenG: r = in_open_g(pt, mo); break;
      case PointSet::ClosedGamma: r = in_closed_gamma(pt, mo); break;
      case PointSet::DistinguishedBoundary: r = in_distinguished_boundary(pt, mo); break;
    }
    Json j = to_json(r);
    j["point"] = to_json(pt);
    reports.push_back(j);
    text << fmt_point(pt) << ": verdict " << to_string(r.verdict) << ", member of "
         << to_string(set) << ": " << (r.member ? "yes" : "no") << " (oracle max |root| "
         << std::setprecision(12) << r.oracle_max_root_modulus << ")";
    if (r.oracle_disagreement) {
      text << " ORACLE DISAGREEMENT";
      o.code = kExitNegative;
    }
    text << "\n";
  }
  o.json["reports"] = reports;
  o.text = text.str();
  return o;
}

Outcome do_symmetrize(const RunConfig& c) {
  if (!c.point) throw InputError("arguments", 0, 0, "symmetrize needs --point z1,...,zn");
  const std::vector<cplx> z = parse_complex_list(*c.point, "--point");
  if (c.n && static_cast<int>(z.size()) != *c.n) {
    throw InputError("arguments", 0, 0, "number of values does not match --n");
  }
  const GammaPoint pt = symmetrize(z);
  Outcome o;
  Json zs = Json::array();
  for (const cplx v : z) zs.push_back(to_json(v));
  o.json["z"] = zs;
  o.json["point"] = to_json(pt);
  o.text = "symmetrized point " + fmt_point(pt) + "\n";
  return o;
}

int trials_or(const RunConfig& c, int fallback) { return c.trials.value_or(fallback); }

Outcome do_check_tuple(const RunConfig& c) {
  const OperatorTuple t = input_tuple(c);
  Outcome o;
  Tolerance tol{c.abs_eps, c.rel_eps};
  o.json["tuple"] = Json{{"n", t.n()},
                         {"dim", t.dim()},
                         {"commute_residual", t.commute_residual()},
                         {"commute_tolerance", t.commute_tolerance()},
                         {"commuting", t.is_commuting()}};
  if (!t.is_commuting()) {
    throw InputError("input", 0, 0, "tuple does not commute (residual " +
                                        std::to_string(t.commute_residual()) + ")");
  }
  const JointSpectrum js = joint_eigenvalues(t, c.seed);
  o.json["joint_spectrum"] = to_json(js);
  const CertReport pencil = pencil_positivity(t, DiskGrid{c.alpha_radii, c.alpha_angles}, tol);
  o.json["pencil_positivity"] = to_json(pencil);
  const CertReport unitary = gamma_unitary_check(t, tol);
  o.json["gamma_unitary"] = to_json(unitary);
  const CertReport iso = gamma_isometry_check(t, IsometryOptions{c.beta_grid, tol});
  o.json["gamma_isometry"] = to_json(iso);
  VonNeumannOptions vo;
  vo.degree = c.degree;
  vo.trials = trials_or(c, 200);
  vo.torus_grid = c.torus_grid;
  vo.seed = c.seed;
  const CertReport vn = von_neumann_sample(t, vo);
  o.json["von_neumann"] = to_json(vn);

  std::ostringstream text;
  text << "tuple n = " << t.n() << ", dim = " << t.dim() << ", commute residual "
       << t.commute_residual() << "\n"
       << "joint spectrum: " << js.points.size() << " points, max residual " << js.max_residual()
       << "\n"
       << "pencil positivity: " << to_string(pencil.kind) << "\n"
       << "gamma-unitary: " << (unitary.kind == CertKind::GammaUnitary ? "yes" : "no") << "\n"
       << "gamma-isometry: " << (iso.kind == CertKind::GammaIsometry ? "yes" : "no") << "\n"
       << "von Neumann sampling: " << to_string(vn.kind) << "\n";
  o.text = text.str();
  // pencil positivity only counts as negative evidence where it is necessary
  const bool pencil_bad = pencil.kind == CertKind::Violation && t.n() <= 3;
  if (pencil_bad || vn.kind == CertKind::Violation) o.code = kExitNegative;
  return o;
}

Outcome do_fundamental(const RunConfig& c) {
  const OperatorTuple t = input_tuple(c);
  Outcome o;
  SolveOptions so;
  so.tol = Tolerance{c.abs_eps, c.rel_eps};
  try {
    FundamentalTuple ft = solve_fundamental(t, so);
    const RadiusCheck rc = radius_bound_check(ft, c.z_grid, 720, so.tol);
    const AlmostNormalCheck an = almost_normal_check(ft, so.tol);
    o.json["consistent"] = true;
    o.json["fundamental"] = to_json(ft);
    o.json["radius_bound"] = to_json(rc);
    o.json["almost_normal"] = to_json(an);
    std::ostringstream text;
    text << "defect rank " << ft.space.rank << ", max residual "
         << *std::max_element(ft.residuals.begin(), ft.residuals.end()) << "\n"
         << "radius bound: " << (rc.passed ? "holds" : "FAILS") << " (worst margin " << rc.worst
         << ")\n"
         << "almost normal: " << (an.is_almost_normal ? "yes" : "no") << "\n";
    o.text = text.str();
    // the bound n is exceeded by genuine Gamma_n-contractions once n >= 4
    if (!rc.passed && t.n() <= 3) o.code = kExitNegative;
  } catch (const InconsistentEquation& e) {
    o.json["consistent"] = false;
    o.json["error"] = e.what();
    o.text = std::string("no fundamental operators: ") + e.what() + "\n";
    o.code = kExitNegative;
  }
  return o;
}

Outcome do_counterexample(const RunConfig& c) {
  const int n = c.n.value_or(3);
  if (n < 3) throw InputError("arguments", 0, 0, "counterexample needs --n >= 3");
  const TruncatedModel m = n == 3 ? build_case_a(c.depth, c.eta) : build_case_b(n, c.depth, c.eta);
  ObstructionOptions oo;
  oo.vn_trials = trials_or(c, 200);
  oo.vn_degree = c.degree;
  oo.torus_grid = c.torus_grid;
  oo.seed = c.seed;
  oo.tol = Tolerance{c.abs_eps, c.rel_eps};
  const ObstructionReport r = verify_obstruction(m, oo);
  Outcome o;
  o.json["report"] = to_json(r);
  std::ostringstream text;
  text << "model n = " << n << ", depth N = " << c.depth << ", eta = " << c.eta << " (dim "
       << m.map.dim() << ")\n";
  for (const auto& ch : r.hypothesis_checks) {
    text << "  hypothesis " << ch.name << ": " << (ch.passed ? "ok" : "FAIL") << " (" << ch.value
         << ")\n";
  }
  for (const auto& ch : r.fot_checks) {
    text << "  fundamental " << ch.name << ": " << (ch.passed ? "ok" : "FAIL") << " (" << ch.value
         << ")\n";
  }
  text << "almost_normal=" << (r.almost_normal ? "true" : "false") << ", defect "
       << std::setprecision(12) << r.pair_defect_interior << "\n"
       << "von Neumann sampling: " << to_string(r.contraction_evidence.kind) << "\n"
       << "linear collapse residual: " << r.linear_collapse_residual << "\n"
       << "obstruction confirmed: " << (r.obstruction_confirmed ? "yes" : "no") << "\n";
  o.text = text.str();
  if (!r.obstruction_confirmed) o.code = kExitNegative;
  return o;
}

Outcome do_cf_check(const RunConfig& c) {
  const cplx b0 = parse_complex(c.b0, "--b0");
  const cplx b1 = parse_complex(c.b1, "--b1");
  CfOptions co;
  co.trials = trials_or(c, 2000);
  co.degree = c.degree;
  co.torus_grid = c.circle_grid;
  co.seed = c.seed;
  const CfReport r = cf_lower_bound_check(b0, b1, co);
  Outcome o;
  o.json["b0"] = to_json(b0);
  o.json["b1"] = to_json(b1);
  o.json["result"] = to_json(r);
  o.json["gap_floor"] = -1e-6;
  std::ostringstream text;
  text << std::setprecision(15) << "||[[b0,0],[b1,b0]]|| = " << r.cf_value
       << ", worst sampled gap " << r.worst_gap << " (trial " << r.worst_trial << ")\n";
  o.text = text.str();
  if (r.worst_gap < -1e-6) o.code = kExitNegative;
  return o;
}

}  // namespace

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out,
                                    std::ostream& err, int& exit_code) {
  RunConfig cfg;
  CLI::App app{"Numerical toolkit for the symmetrized polydisc"};
  app.set_config("--config", "", "Read options from a key = value file");
  std::string command;
  std::vector<std::string> names;
  for (const auto& kv : kCommands) names.push_back(kv.first);
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("--set", cfg.set, "membership: which set to test")
      ->check(CLI::IsMember({"open", "closed", "boundary"}));
  app.add_option("--input", cfg.input_path, "Point file (.csv or .json) or tuple file (.json)");
  app.add_option("--point", cfg.point, "Comma-separated complex coordinates, e.g. \"3,3,1\"");
  app.add_option("--n", cfg.n, "Number of coordinates")->check(CLI::Range(2, 64));
  app.add_option("--depth", cfg.depth, "Truncation depth N")->check(CLI::Range(2, 4096));
  app.add_option("--eta", cfg.eta, "Counterexample parameter eta in (0, 1]");
  app.add_option("--degree", cfg.degree, "Polynomial degree")->check(CLI::Range(1, 32));
  app.add_option("--trials", cfg.trials, "Number of random trials")->check(CLI::Range(1, 10000000));
  app.add_option("--torus-grid", cfg.torus_grid, "Torus lattice points per dimension")
      ->check(CLI::Range(4, 100000));
  app.add_option("--circle-grid", cfg.circle_grid, "cf-check: points on the unit circle")
      ->check(CLI::Range(8, 10000000));
  app.add_option("--alpha-radii", cfg.alpha_radii, "Radii of the alpha grid")
      ->check(CLI::Range(1, 100000));
  app.add_option("--alpha-angles", cfg.alpha_angles, "Angles of the alpha grid")
      ->check(CLI::Range(4, 100000));
  app.add_option("--beta-grid", cfg.beta_grid, "Points of the beta grid")
      ->check(CLI::Range(8, 1000000));
  app.add_option("--z-grid", cfg.z_grid, "Points of the z grid for the radius bound")
      ->check(CLI::Range(1, 1000000));
  app.add_option("--seed", cfg.seed, "Random seed")->envname(kSeedEnv);
  app.add_option("--abs-eps", cfg.abs_eps, "Absolute tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--rel-eps", cfg.rel_eps, "Relative tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--band", cfg.band, "Boundary band")->check(CLI::NonNegativeNumber);
  app.add_option("--b0", cfg.b0, "cf-check: constant coefficient");
  app.add_option("--b1", cfg.b1, "cf-check: linear coefficient");
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", cfg.output_path, "Write the report to this file");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    exit_code = rc == 0 ? kExitOk : kExitInputError;
    return std::nullopt;
  }
  cfg.command = kCommands.at(command);
  cfg.format = format == "text" ? Format::Text : Format::Json;
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) {
    err << "error: --eta must lie in (0, 1]\n";
    exit_code = kExitInputError;
    return std::nullopt;
  }
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    switch (config.command) {
      case Command::Membership: {
        PointSet set = PointSet::ClosedGamma;
        if (config.set == "open") set = PointSet::OpenG;
        if (config.set == "boundary") set = PointSet::DistinguishedBoundary;
        o = do_membership(config, set);
        break;
      }
      case Command::Boundary: o = do_membership(config, PointSet::DistinguishedBoundary); break;
      case Command::Symmetrize: o = do_symmetrize(config); break;
      case Command::CheckTuple: o = do_check_tuple(config); break;
      case Command::Fundamental: o = do_fundamental(config); break;
      case Command::Counterexample: o = do_counterexample(config); break;
      case Command::CfCheck: o = do_cf_check(config); break;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  o.json["command"] = command_name(config.command);
  o.json["parameters"] = parameters(config);
  o.json["exit_code"] = o.code;
  const std::string body = config.format == Format::Json ? o.json.dump(2) + "\n" : o.text;
  if (config.output_path) {
    std::ofstream f(*config.output_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << *config.output_path << "\n";
      return kExitInputError;
    }
    f << body;
  } else {
    out << body;
  }
  return o.code;
}

}  // namespace symdisc::cli
