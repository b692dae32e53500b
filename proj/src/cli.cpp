#include "mqm/cli.hpp"

#include "mqm/covariance.hpp"
#include "mqm/io.hpp"
#include "mqm/numerics.hpp"
#include "mqm/operators.hpp"
#include "mqm/oracle.hpp"
#include "mqm/polarization.hpp"
#include "mqm/products.hpp"
#include "mqm/synthesis.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace mqm {

namespace {

using nlohmann::json;

void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &where) {
  for (const auto &[key, value] : j.items())
    if (allowed.find(key) == allowed.end())
      throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
}

double fetch_positive(const json &j, const std::string &key, double fallback) {
  if (!j.contains(key))
    return fallback;
  const double v = j.at(key);
  if (!(v > 0.0))
    throw std::invalid_argument("config: '" + key + "' must be strictly positive");
  return v;
}

Vec3 fetch_vec3(const json &j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("config: expected a 3-component array");
  return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

VectorXd profile_from_spec(const KGrid &grid, const json &spec) {
  reject_unknown(spec, {"kind", "q", "k0", "s", "amp"}, "state.profile");
  const std::string kind = spec.at("kind");
  const double amp = spec.value("amp", 1.0);
  VectorXd profile = VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  if (kind == "delta") {
    const std::size_t node = grid.index_of_k(fetch_vec3(spec.at("q")));
    profile[static_cast<Eigen::Index>(node)] = amp;
  } else if (kind == "gaussian") {
    const Vec3 k0 = fetch_vec3(spec.at("k0"));
    const double s = spec.at("s");
    for (std::size_t f = 0; f < grid.size(); ++f)
      profile[static_cast<Eigen::Index>(f)] =
          amp * std::exp(-0.5 * (grid.node_k(f) - k0).squaredNorm() * s * s);
  } else {
    throw std::invalid_argument("config: unknown profile kind '" + kind + "'");
  }
  return profile;
}

Mode mode_from_lambda(const json &j) {
  const int l = j;
  switch (l) {
  case 0:
    return Mode::scalar;
  case 1:
    return Mode::plus;
  case -1:
    return Mode::minus;
  case 3:
    return Mode::longitudinal;
  }
  throw std::invalid_argument("config: lambda must be one of 0, 1, -1, 3");
}

FreqSign eps_from_spec(const json &j) {
  const std::string s = j;
  if (s == "+")
    return FreqSign::positive;
  if (s == "-")
    return FreqSign::negative;
  throw std::invalid_argument("config: epsilon must be \"+\" or \"-\"");
}

//! One line of the check report.
struct CheckItem {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

} // namespace

double RunConfig::tolerance(const std::string &name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

RunConfig parse_config_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(j, {"grid", "constants", "state", "experiment", "output_dir", "tolerances",
                     "seed"},
                 "top level");
  if (!j.contains("grid"))
    throw std::invalid_argument("config: missing required 'grid' block");

  RunConfig cfg;
  const json &g = j.at("grid");
  reject_unknown(g, {"n", "k_max", "offset"}, "grid");
  cfg.grid_n = g.at("n");
  cfg.grid_k_max = g.at("k_max");
  cfg.grid_offset = g.value("offset", true);

  if (j.contains("constants")) {
    const json &c = j.at("constants");
    reject_unknown(c, {"c", "hbar", "eps0"}, "constants");
    cfg.constants.c = fetch_positive(c, "c", 1.0);
    cfg.constants.hbar = fetch_positive(c, "hbar", 1.0);
    cfg.constants.eps0 = fetch_positive(c, "eps0", 1.0);
  }
  if (j.contains("state"))
    cfg.state_spec_json = j.at("state").dump();
  if (j.contains("experiment"))
    cfg.experiment = j.at("experiment");
  if (j.contains("output_dir"))
    cfg.output_dir = std::string(j.at("output_dir"));
  if (j.contains("tolerances")) {
    for (const auto &[key, value] : j.at("tolerances").items()) {
      const double v = value;
      if (!(v > 0.0))
        throw std::invalid_argument("config: tolerance '" + key + "' must be positive");
      cfg.tolerances[key] = v;
    }
  }
  if (j.contains("seed"))
    cfg.seed = j.at("seed");

  // constructs the grid once to surface bad n / k_max as config errors
  cfg.make_grid();
  return cfg;
}

RunConfig parse_config(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is)
    throw std::invalid_argument("config: cannot open " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

PhotonState state_from_spec(const GridPtr &grid, const std::string &spec_json) {
  if (spec_json.empty())
    throw std::invalid_argument("config: missing 'state' block");
  const json spec = json::parse(spec_json);
  const std::string type = spec.at("type");
  if (type == "plane_wave") {
    reject_unknown(spec, {"type", "q", "lambda", "epsilon", "amp_re", "amp_im"}, "state");
    const Complex amp(spec.value("amp_re", 1.0), spec.value("amp_im", 0.0));
    return plane_wave(grid, fetch_vec3(spec.at("q")), mode_from_lambda(spec.at("lambda")),
                      eps_from_spec(spec.at("epsilon")), amp);
  }
  if (type == "gaussian_packet") {
    reject_unknown(spec, {"type", "k0", "s", "lambda", "epsilon", "m"}, "state");
    return gaussian_packet(grid, fetch_vec3(spec.at("k0")), spec.at("s"),
                           mode_from_lambda(spec.at("lambda")), eps_from_spec(spec.at("epsilon")),
                           spec.value("m", 1));
  }
  if (type == "localized") {
    reject_unknown(spec, {"type", "y", "lambda", "epsilon", "alpha", "m"}, "state");
    return localized_state(grid, fetch_vec3(spec.at("y")), mode_from_lambda(spec.at("lambda")),
                           eps_from_spec(spec.at("epsilon")), spec.value("alpha", 0.0),
                           spec.value("m", 1));
  }
  if (type == "circular") {
    reject_unknown(spec, {"type", "profile", "lambda", "m"}, "state");
    return circular_state(grid, profile_from_spec(*grid, spec.at("profile")),
                          spec.at("lambda"), spec.value("m", 1));
  }
  if (type == "linear") {
    reject_unknown(spec, {"type", "profile", "axis", "m"}, "state");
    const std::string axis = spec.at("axis");
    if (axis != "theta" && axis != "phi")
      throw std::invalid_argument("config: linear axis must be \"theta\" or \"phi\"");
    return linear_state(grid, profile_from_spec(*grid, spec.at("profile")),
                        axis == "theta" ? LinearAxis::theta : LinearAxis::phi, spec.value("m", 1));
  }
  throw std::invalid_argument("config: unknown state type '" + type + "'");
}

namespace {

std::mt19937 &rng(unsigned seed) {
  static std::mt19937 gen(seed);
  gen.seed(seed);
  return gen;
}

VectorXcd random_coeff(const KGrid &grid, std::mt19937 &gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  VectorXcd c(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index i = 0; i < c.size(); ++i)
    c[i] = Complex(dist(gen), dist(gen));
  return c;
}

PhotonState random_packet(const GridPtr &grid, Mode mode, FreqSign eps, std::mt19937 &gen) {
  std::uniform_real_distribution<double> shift(-0.15, 0.15);
  const double k_max = grid->dk() * grid->n() / 2.0;
  const Vec3 k0{shift(gen) * k_max, shift(gen) * k_max, shift(gen) * k_max};
  const double s = 8.0 / k_max;
  return gaussian_packet(grid, k0, s, mode, eps, 1);
}

} // namespace

int run_check(const RunConfig &cfg) {
  const GridPtr grid = cfg.make_grid();
  auto &gen = rng(cfg.seed);
  std::vector<CheckItem> items;
  auto add = [&](const std::string &name, double value, double tol) {
    items.push_back({name, value, tol, value <= tol});
  };

  // Fourier bridges: round trip and Parseval
  {
    const VectorXcd c = random_coeff(*grid, gen);
    const VectorXcd back = x_to_k(*grid, k_to_x(*grid, c, MeasureKind::trivial,
                                                 FreqSign::positive, 0.0));
    add("grid.round_trip", (back - c).norm() / c.norm(), cfg.tolerance("round_trip", 1e-12));

    const VectorXcd psi = k_to_x(*grid, c, MeasureKind::trivial, FreqSign::positive, 0.0);
    const double knorm = c.squaredNorm() * grid->k_weight();
    const double xnorm = psi.squaredNorm() * grid->x_weight();
    add("grid.parseval", std::abs(knorm - xnorm) / knorm, cfg.tolerance("parseval", 1e-12));
  }

  // polarization frame relations
  {
    const PolarizationFrame frame = PolarizationFrame::build(grid, 1);
    double ortho = 0.0, complete = 0.0, helicity = 0.0, metric = 0.0;
    const Mode spatial[3] = {Mode::plus, Mode::minus, Mode::longitudinal};
    for (std::size_t f = 0; f < grid->size(); ++f) {
      CMat3 sum = CMat3::Zero();
      const Vec3 k = grid->node_k(f);
      const Vec3 khat = k / k.norm();
      for (Mode a : spatial) {
        const CVec3 ea = frame.spatial(a, f);
        sum += ea * ea.adjoint();
        for (Mode b : spatial) {
          const Complex dot = frame.spatial(a, f).dot(frame.spatial(b, f));
          ortho = std::max(ortho, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
        const CVec4 &e4 = frame.unit(a, f);
        metric = std::max(metric,
                          std::abs(minkowski_dot(e4.conjugate(), e4) + zeta_of(a)));
        const int lam = helicity_of(a);
        const CVec3 hv = SpinMatrices::helicity_apply(khat, ea);
        helicity = std::max(helicity, (hv - Complex(lam, 0) * ea).norm());
      }
      complete = std::max(complete, (sum - CMat3::Identity()).norm());
      const CVec4 &e0 = frame.unit(Mode::scalar, f);
      metric = std::max(metric,
                        std::abs(minkowski_dot(e0.conjugate(), e0) + zeta_of(Mode::scalar)));
    }
    const double tol = cfg.tolerance("frame", 1e-12);
    add("frame.orthonormality", ortho, tol);
    add("frame.completeness", complete, tol);
    add("frame.helicity", helicity, tol);
    add("frame.metric_zeta", metric, tol);
  }

  // sector orthogonality and gauge cancellation
  {
    const PhotonState a = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    const PhotonState b = random_packet(grid, Mode::minus, FreqSign::positive, gen);
    const PhotonState c = random_packet(grid, Mode::plus, FreqSign::negative, gen);
    add("products.mode_orthogonality", std::abs(inner_product(a, b).value), 1e-15);
    add("products.freq_orthogonality", std::abs(inner_product(a, c).value), 1e-15);

    PhotonState lz(grid);
    const VectorXcd f = random_coeff(*grid, gen);
    lz.set_coeff(Mode::longitudinal, FreqSign::positive, f);
    lz = enforce_lorenz(lz);
    const auto ip = inner_product(lz, lz);
    const double sector_scale =
        std::abs(ip.sector_breakdown.at({Mode::longitudinal, FreqSign::positive}));
    add("products.lorenz_cancellation", std::abs(ip.value) / sector_scale,
        cfg.tolerance("lorenz", 1e-12));

    double worst = 1.0;
    for (int i = 0; i < 5; ++i)
      for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
        const PhotonState s = random_packet(grid, i % 2 == 0 ? Mode::plus : Mode::minus, eps, gen);
        worst = std::min(worst, inner_product(s, s).value.real());
      }
    items.push_back({"products.positivity", worst, 0.0, worst > 0.0});
  }

  // unitarity of time evolution
  {
    const PhotonState s = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    PhotonState evolved = s;
    for (int i = 0; i < 20; ++i)
      evolved = evolve(evolved, 0.37);
    const double drift =
        std::abs(inner_product(evolved, evolved).value.real() - inner_product(s, s).value.real());
    add("operators.unitarity", drift, cfg.tolerance("unitarity", 1e-12));
  }

  // position operator Hermiticity
  {
    const PhotonState s1 = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    const PhotonState s2 = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    double worst = 0.0;
    for (int axis = 0; axis < 3; ++axis)
      worst = std::max(worst, position_hermiticity_asymmetry(s1, s2, axis));
    add("operators.hermiticity", worst, cfg.tolerance("hermiticity", 1e-6));
  }

  // number density: two routes and the norm integral
  {
    const PhotonState s = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    const CurrentField cf = current_field(s, 0.1);
    const double peak = cf.j0.cwiseAbs().maxCoeff();
    add("products.density_two_path", (cf.j0 - cf.j0_dhalf).cwiseAbs().maxCoeff() / peak,
        cfg.tolerance("density", 1e-10));
    const double total = cf.j0.sum() * grid->x_weight();
    const double knorm = inner_product(s, s).value.real();
    add("products.density_norm", std::abs(total - knorm) / knorm,
        cfg.tolerance("density", 1e-10));
  }

  // synthesis consistency: E vs -dt A, time translation
  {
    const PhotonState s = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    const FieldSnapshot snap = synthesize(s, 0.2);
    // -dt A of the transverse content through the invariant route
    const PolarizationFrame frame = PolarizationFrame::build(grid, 1);
    Eigen::MatrixX3cd dtA = Eigen::MatrixX3cd::Zero(static_cast<Eigen::Index>(grid->size()), 3);
    for (FreqSign eps : {FreqSign::positive, FreqSign::negative}) {
      if (!s.has(Mode::plus, eps) && !s.has(Mode::minus, eps))
        continue;
      for (int d = 0; d < 3; ++d) {
        VectorXcd comp = VectorXcd::Zero(static_cast<Eigen::Index>(grid->size()));
        for (Mode mode : {Mode::plus, Mode::minus}) {
          if (!s.has(mode, eps))
            continue;
          const VectorXcd &c = s.coeff(mode, eps);
          for (Eigen::Index f = 0; f < comp.size(); ++f)
            comp[f] += c[f] * frame.spatial(mode, static_cast<std::size_t>(f))[d] *
                       Complex(0, -sign_of(eps) * grid->omega()[f]);
        }
        dtA.col(d) -= Complex(0, 1) * grid->constants().field_scale() *
                      k_to_x(*grid, comp, MeasureKind::invariant, eps, 0.2);
      }
    }
    const double scale = snap.E.cwiseAbs().maxCoeff();
    add("synthesis.e_two_path", (snap.E - dtA).cwiseAbs().maxCoeff() / scale,
        cfg.tolerance("synthesis", 1e-10));

    const FieldSnapshot lhs = synthesize(evolve(s, 0.15), 0.05);
    const FieldSnapshot rhs = synthesize(s, 0.2);
    add("synthesis.time_translation", (lhs.A - rhs.A).cwiseAbs().maxCoeff() /
                                          rhs.A.cwiseAbs().maxCoeff(),
        cfg.tolerance("synthesis", 1e-12));
  }

  // oracle equivalence
  {
    const PhotonState s = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    const PhotonState s2 = random_packet(grid, Mode::plus, FreqSign::positive, gen);
    const Complex main = inner_product(s, s2).value;
    const Complex ref = oracle_inner_product(s, s2).value;
    add("oracle.inner_product", std::abs(main - ref) / std::abs(ref),
        cfg.tolerance("oracle", 1e-10));

    const FieldSnapshot snap = synthesize(s, 0.1);
    std::uniform_int_distribution<int> pick(0, grid->n() - 1);
    double worst = 0.0;
    const double scale = snap.A.cwiseAbs().maxCoeff();
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t f = grid->flat(pick(gen), pick(gen), pick(gen));
      const EventFields ev = evaluate_at_event(s, 0.1, grid->node_x(f));
      for (int nu = 0; nu < 4; ++nu)
        worst = std::max(worst,
                         std::abs(ev.A[nu] - snap.A(static_cast<Eigen::Index>(f), nu)) / scale);
    }
    add("oracle.event_fields", worst, cfg.tolerance("oracle", 1e-10));
  }

  // Born rule on a normalized real-field packet
  {
    VectorXd profile(static_cast<Eigen::Index>(grid->size()));
    const double k_max = grid->dk() * grid->n() / 2.0;
    const Vec3 k0{0.0, 0.0, 0.55 * k_max};
    const double s = 9.0 / k_max;
    for (std::size_t f = 0; f < grid->size(); ++f)
      profile[static_cast<Eigen::Index>(f)] =
          std::exp(-0.5 * (grid->node_k(f) - k0).squaredNorm() * s * s);
    const PhotonState st = normalize_real_field(circular_state(grid, profile, +1, 1));
    const VectorXd psi = reduce_real_psi(st, 0.0);
    const BornDensity bd = born_density(*grid, psi);
    add("products.born_total", std::abs(bd.total - 1.0), cfg.tolerance("born", 1e-8));
  }

  // report
  std::filesystem::create_directories(cfg.output_dir);
  json rep = json::array();
  bool all_pass = true;
  for (const auto &item : items) {
    rep.push_back(json{{"name", item.name},
                       {"value", item.value},
                       {"tolerance", item.tolerance},
                       {"pass", item.pass}});
    all_pass = all_pass && item.pass;
    std::cout << (item.pass ? "[PASS] " : "[FAIL] ") << item.name << " value " << item.value
              << " tolerance " << item.tolerance << "\n";
  }
  std::ofstream os(cfg.output_dir / "report.json");
  os << rep.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

namespace {

std::string fmt17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

int demo_linear_wave(const RunConfig &cfg) {
  const GridPtr grid = cfg.make_grid();
  const int n = grid->n();
  // generic node well inside the lattice
  const std::size_t node = grid->flat(n / 2, n / 2, 3 * n / 4);
  const Vec3 q = grid->node_k(node);
  VectorXd profile = VectorXd::Zero(static_cast<Eigen::Index>(grid->size()));
  profile[static_cast<Eigen::Index>(node)] = 1.0;

  const PhotonState state = linear_state(grid, profile, LinearAxis::theta, 1);
  const FieldSnapshot snap = synthesize(state, 0.0);
  const RealFields real = reduce_real(state, snap);

  const SphericalAngles ax = spherical_axes(q);
  const double sigma = grid->constants().field_scale();
  const double amp = -sigma * grid->k_weight() / 2.0;

  std::vector<std::string> rows;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::size_t f = grid->flat(n / 2, n / 2, j);
    const Vec3 x = grid->node_x(f);
    const Vec3 efield = real.E.row(static_cast<Eigen::Index>(f));
    const double along = efield.dot(ax.e_theta);
    const double expected = amp * std::cos(-q.dot(x));
    worst = std::max(worst, std::abs(along - expected));
    rows.push_back(fmt17(x[2]) + "," + fmt17(along) + "," + fmt17(expected));
  }
  std::filesystem::create_directories(cfg.output_dir);
  write_csv(cfg.output_dir / "linear_wave.csv", "x3,E_theta,expected", rows);
  json man{{"demo", "linear-wave"},
           {"q", {q[0], q[1], q[2]}},
           {"files", {"linear_wave.csv"}},
           {"max_deviation", worst}};
  std::ofstream(cfg.output_dir / "manifest.json") << man.dump(2) << "\n";
  return 0;
}

int demo_circular_wave(const RunConfig &cfg) {
  const GridPtr grid = cfg.make_grid();
  const int n = grid->n();
  const std::size_t node = grid->flat(n / 2, n / 2, 3 * n / 4);
  const Vec3 q = grid->node_k(node);
  VectorXd profile = VectorXd::Zero(static_cast<Eigen::Index>(grid->size()));
  profile[static_cast<Eigen::Index>(node)] = 1.0;

  const int lambda0 = 1;
  const PhotonState state = circular_state(grid, profile, lambda0, 1);
  const FieldSnapshot snap = synthesize(state, 0.0);
  const RealFields real = reduce_real(state, snap);

  const SphericalAngles ax = spherical_axes(q);
  const double sigma = grid->constants().field_scale();
  const double amp = -sigma * grid->k_weight() / (2.0 * std::sqrt(2.0));

  std::vector<std::string> rows;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::size_t f = grid->flat(n / 2, n / 2, j);
    const Vec3 x = grid->node_x(f);
    const Vec3 efield = real.E.row(static_cast<Eigen::Index>(f));
    const double kx = -q.dot(x); // omega t - q.x at t = 0
    const double et = efield.dot(ax.e_theta);
    const double ep = efield.dot(ax.e_phi);
    const double exp_t = amp * std::cos(kx);
    const double exp_p = amp * lambda0 * std::sin(kx);
    worst = std::max(worst, std::max(std::abs(et - exp_t), std::abs(ep - exp_p)));
    rows.push_back(fmt17(x[2]) + "," + fmt17(et) + "," + fmt17(ep) + "," + fmt17(exp_t) + "," +
                   fmt17(exp_p));
  }
  std::filesystem::create_directories(cfg.output_dir);
  write_csv(cfg.output_dir / "circular_wave.csv", "x3,E_theta,E_phi,expected_theta,expected_phi",
            rows);
  json man{{"demo", "circular-wave"},
           {"q", {q[0], q[1], q[2]}},
           {"lambda0", lambda0},
           {"files", {"circular_wave.csv"}},
           {"max_deviation", worst}};
  std::ofstream(cfg.output_dir / "manifest.json") << man.dump(2) << "\n";
  return 0;
}

int demo_localized(const RunConfig &cfg, const DemoOverrides &ov) {
  const GridPtr grid = cfg.make_grid();
  const double s = ov.s.value_or(0.02);
  const double ct = ov.ct.value_or(0.5);
  const double t = ct / grid->constants().c;
  const LocalizedPropagation lp =
      localized_propagation(grid->constants(), Vec3::Zero(), s, t);
  std::filesystem::create_directories(cfg.output_dir);
  write_profile_csv(cfg.output_dir / "psi_real.csv", lp.psi_real);
  write_profile_csv(cfg.output_dir / "psi_positive.csv", lp.psi_positive);
  json man{{"demo", "localized"},
           {"s", s},
           {"ct", ct},
           {"shell_fraction", lp.shell_fraction},
           {"out_mass_real", lp.out_mass_real},
           {"out_mass_positive", lp.out_mass_positive},
           {"files", {"psi_real.csv", "psi_positive.csv"}}};
  std::ofstream(cfg.output_dir / "manifest.json") << man.dump(2) << "\n";
  return 0;
}

int demo_hegerfeldt(const RunConfig &cfg, const DemoOverrides &ov) {
  const double t = ov.t.value_or(0.0);
  const double K = ov.band_limit.value_or(64.0);
  std::vector<double> radii(50);
  for (std::size_t i = 0; i < radii.size(); ++i)
    radii[i] = 0.05 + 0.05 * static_cast<double>(i);
  const HegerfeldtProfiles prof = hegerfeldt_correlator(cfg.constants, t, radii, K);
  std::filesystem::create_directories(cfg.output_dir);
  write_profile_csv(cfg.output_dir / "correlator_positive.csv", prof.positive_frequency);
  write_profile_csv(cfg.output_dir / "correlator_real.csv", prof.real_total);
  json man{{"demo", "hegerfeldt"},
           {"t", t},
           {"band_limit", K},
           {"files", {"correlator_positive.csv", "correlator_real.csv"}}};
  std::ofstream(cfg.output_dir / "manifest.json") << man.dump(2) << "\n";
  return 0;
}

int demo_hyperplane(const RunConfig &cfg) {
  const GridPtr grid = cfg.make_grid();
  const double k_max = grid->dk() * grid->n() / 2.0;
  const double s_pack = 9.0 / k_max;
  const PhotonState s1 =
      gaussian_packet(grid, Vec3{0, 0, 0.1 * k_max}, s_pack, Mode::plus, FreqSign::positive, 1);
  const PhotonState s2 =
      gaussian_packet(grid, Vec3{0, 0, -0.05 * k_max}, s_pack, Mode::plus, FreqSign::positive, 1);
  const Complex reference = inner_product(s1, s2).value;

  const double extent = 6.5 * s_pack;
  json results = json::array();
  for (double eta : {0.0, 0.1, 0.2, 0.3}) {
    const Hyperplane plane = boosted_plane(eta, Vec4::Zero(), extent, 24);
    const Complex v = hyperplane_inner_product(s1, s2, plane);
    results.push_back(json{{"rapidity", eta},
                           {"value_re", v.real()},
                           {"value_im", v.imag()},
                           {"relative_deviation",
                            std::abs(v - reference) / std::abs(reference)}});
  }
  std::filesystem::create_directories(cfg.output_dir);
  json man{{"demo", "hyperplane"},
           {"k_space_re", reference.real()},
           {"k_space_im", reference.imag()},
           {"results", results}};
  std::ofstream(cfg.output_dir / "manifest.json") << man.dump(2) << "\n";
  return 0;
}

} // namespace

int run_demo(const std::string &name, const RunConfig &cfg, const DemoOverrides &ov) {
  if (name == "linear-wave")
    return demo_linear_wave(cfg);
  if (name == "circular-wave")
    return demo_circular_wave(cfg);
  if (name == "localized")
    return demo_localized(cfg, ov);
  if (name == "hegerfeldt")
    return demo_hegerfeldt(cfg, ov);
  if (name == "hyperplane")
    return demo_hyperplane(cfg);
  std::cerr << "unknown demo '" << name
            << "'; available: linear-wave, circular-wave, localized, hegerfeldt, hyperplane\n";
  return 2;
}

int run_evolve(const RunConfig &cfg, double tau, const std::vector<double> &dump_times) {
  const GridPtr grid = cfg.make_grid();
  PhotonState state = state_from_spec(grid, cfg.state_spec_json);
  if (!state.normalizable()) {
    std::cerr << "evolve: the configured state is not normalizable\n";
    return 2;
  }
  std::vector<double> times = dump_times;
  if (times.empty())
    times.push_back(tau);

  std::filesystem::create_directories(cfg.output_dir);
  json log = json::array();
  int index = 0;
  for (double t : times) {
    const PhotonState at_t = evolve(state, t);
    const double norm = inner_product(at_t, at_t).value.real();
    const FieldSnapshot snap = synthesize(state, t);
    const std::string dirname = "snapshot_" + std::to_string(index++);
    save_snapshot(cfg.output_dir / dirname, *grid, snap);
    log.push_back(json{{"t", t}, {"norm", norm}, {"dir", dirname}});
  }
  std::ofstream(cfg.output_dir / "norms.json") << log.dump(2) << "\n";
  return 0;
}

} // namespace mqm
