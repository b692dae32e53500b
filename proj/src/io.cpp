#include "mqm/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace mqm {

namespace {

using nlohmann::json;

void write_doubles(const std::filesystem::path &path, const double *data, std::size_t count) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(reinterpret_cast<const char *>(data), static_cast<std::streamsize>(count * 8));
  if (!os)
    throw std::runtime_error("short write to " + path.string());
}

std::vector<double> read_doubles(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary | std::ios::ate);
  if (!is)
    throw std::runtime_error("cannot open " + path.string());
  const std::streamsize bytes = is.tellg();
  if (bytes % 8 != 0)
    throw std::runtime_error(path.string() + ": size is not a multiple of 8 bytes");
  std::vector<double> v(static_cast<std::size_t>(bytes / 8));
  is.seekg(0);
  is.read(reinterpret_cast<char *>(v.data()), bytes);
  if (!is)
    throw std::runtime_error("short read from " + path.string());
  return v;
}

json grid_json(const KGrid &grid) {
  return json{{"n", grid.n()},
              {"dk", grid.dk()},
              {"dx", grid.dx()},
              {"offset", grid.offset()},
              {"layout", "row-major axis1,axis2,axis3"},
              {"units",
               {{"c", grid.constants().c},
                {"hbar", grid.constants().hbar},
                {"eps0", grid.constants().eps0}}}};
}

void dump_json(const std::filesystem::path &path, const json &j) {
  std::ofstream os(path, std::ios::trunc);
  if (!os)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << j.dump(2) << "\n";
}

json slurp_json(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is)
    throw std::runtime_error("cannot open " + path.string());
  json j;
  is >> j;
  return j;
}

Mode mode_from_label(const std::string &s) {
  if (s == "scalar")
    return Mode::scalar;
  if (s == "plus")
    return Mode::plus;
  if (s == "minus")
    return Mode::minus;
  if (s == "longitudinal")
    return Mode::longitudinal;
  throw std::runtime_error("unknown mode label: " + s);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

} // namespace

void write_array(const std::filesystem::path &path, const VectorXd &v) {
  write_doubles(path, v.data(), static_cast<std::size_t>(v.size()));
}

void write_array(const std::filesystem::path &path, const VectorXcd &v) {
  write_doubles(path, reinterpret_cast<const double *>(v.data()),
                static_cast<std::size_t>(v.size()) * 2);
}

VectorXd read_real_array(const std::filesystem::path &path) {
  const std::vector<double> raw = read_doubles(path);
  return Eigen::Map<const VectorXd>(raw.data(), static_cast<Eigen::Index>(raw.size()));
}

VectorXcd read_complex_array(const std::filesystem::path &path) {
  const std::vector<double> raw = read_doubles(path);
  if (raw.size() % 2 != 0)
    throw std::runtime_error(path.string() + ": odd double count in complex array");
  return Eigen::Map<const VectorXcd>(reinterpret_cast<const Complex *>(raw.data()),
                                     static_cast<Eigen::Index>(raw.size() / 2));
}

void write_grid_manifest(const std::filesystem::path &path, const KGrid &grid,
                         const std::vector<std::string> &entries, bool complex_payload) {
  json j = grid_json(grid);
  j["complex"] = complex_payload;
  j["arrays"] = entries;
  dump_json(path, j);
}

void save_state(const std::filesystem::path &dir, const PhotonState &state) {
  std::filesystem::create_directories(dir);
  json j = grid_json(state.grid());
  j["alpha"] = state.alpha();
  j["m"] = state.frame_index();
  j["real_field"] = state.real_field();
  j["lorenz"] = state.lorenz();
  j["kind"] = static_cast<int>(state.kind());
  json sectors = json::array();
  for (const auto &[key, c] : state.sectors()) {
    const std::string name =
        std::string("c_") + mode_label(key.first) + "_" +
        (key.second == FreqSign::positive ? "p" : "m") + ".bin";
    write_array(dir / name, c);
    sectors.push_back(json{{"mode", mode_label(key.first)},
                           {"epsilon", freq_label(key.second)},
                           {"file", name}});
  }
  j["sectors"] = sectors;
  dump_json(dir / "manifest.json", j);
}

PhotonState load_state(const std::filesystem::path &dir) {
  const json j = slurp_json(dir / "manifest.json");
  PhysicalConstants pc{j.at("units").at("c"), j.at("units").at("hbar"), j.at("units").at("eps0")};
  const int n = j.at("n");
  const double dk = j.at("dk");
  const double k_max = dk * n / 2.0;
  GridPtr grid = KGrid::make(n, k_max, j.at("offset"), pc);
  PhotonState state(grid, j.at("alpha"), j.at("m"));
  state.tag_real_field(j.at("real_field"));
  state.tag_lorenz(j.at("lorenz"));
  state.tag_kind(static_cast<PhotonState::Kind>(static_cast<int>(j.at("kind"))));
  for (const auto &sec : j.at("sectors")) {
    const Mode mode = mode_from_label(sec.at("mode"));
    const FreqSign eps =
        sec.at("epsilon") == std::string("+") ? FreqSign::positive : FreqSign::negative;
    state.set_coeff(mode, eps, read_complex_array(dir / std::string(sec.at("file"))));
  }
  return state;
}

void save_snapshot(const std::filesystem::path &dir, const KGrid &grid,
                   const FieldSnapshot &snapshot) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> names;
  for (int nu = 0; nu < 4; ++nu) {
    const std::string name = "A" + std::to_string(nu) + ".bin";
    write_array(dir / name, VectorXcd(snapshot.A.col(nu)));
    names.push_back(name);
  }
  for (int d = 0; d < 3; ++d) {
    const std::string name = "E" + std::to_string(d + 1) + ".bin";
    write_array(dir / name, VectorXcd(snapshot.E.col(d)));
    names.push_back(name);
  }
  for (int nu = 0; nu < 4; ++nu) {
    const std::string name = "pi" + std::to_string(nu) + ".bin";
    write_array(dir / name, VectorXcd(snapshot.pi.col(nu)));
    names.push_back(name);
  }
  write_array(dir / "psi.bin", snapshot.psi);
  names.push_back("psi.bin");

  json j = grid_json(grid);
  j["complex"] = true;
  j["t"] = snapshot.t;
  j["arrays"] = names;
  dump_json(dir / "manifest.json", j);
}

void write_csv(const std::filesystem::path &path, const std::string &header,
               const std::vector<std::string> &rows) {
  std::ofstream os(path, std::ios::trunc);
  if (!os)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << header << "\n";
  for (const auto &r : rows)
    os << r << "\n";
}

void write_profile_csv(const std::filesystem::path &path, const RadialProfile &profile) {
  std::vector<std::string> rows;
  rows.reserve(profile.radii.size());
  for (std::size_t i = 0; i < profile.radii.size(); ++i)
    rows.push_back(fmt(profile.radii[i]) + "," + fmt(profile.values[i].real()) + "," +
                   fmt(profile.values[i].imag()));
  write_csv(path, "r,re,im", rows);
}

void write_line_csv(const std::filesystem::path &path, const KGrid &grid, const VectorXcd &field,
                    int axis, int fixed_a, int fixed_b) {
  std::vector<std::string> rows;
  for (int i = 0; i < grid.n(); ++i) {
    std::size_t f;
    if (axis == 0)
      f = grid.flat(i, fixed_a, fixed_b);
    else if (axis == 1)
      f = grid.flat(fixed_a, i, fixed_b);
    else
      f = grid.flat(fixed_a, fixed_b, i);
    const Complex v = field[static_cast<Eigen::Index>(f)];
    rows.push_back(fmt(grid.axis_x(i)) + "," + fmt(v.real()) + "," + fmt(v.imag()));
  }
  write_csv(path, "x,re,im", rows);
}

} // namespace mqm
