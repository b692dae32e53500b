#pragma once
#include "mqm/state.hpp"
#include "mqm/types.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace mqm {

//! Parsed experiment configuration. Unknown keys anywhere in the file are
//! rejected; tolerances must be strictly positive.
struct RunConfig {
  int grid_n = 16;
  double grid_k_max = 8.0;
  bool grid_offset = true;
  PhysicalConstants constants{};
  std::string state_spec_json; //!< raw JSON of the state block, empty if absent
  std::string experiment = "check";
  std::filesystem::path output_dir = "out";
  std::map<std::string, double> tolerances;
  unsigned seed = 1234;

  GridPtr make_grid() const { return KGrid::make(grid_n, grid_k_max, grid_offset, constants); }
  double tolerance(const std::string &name, double fallback) const;
};

//! Parse a config file; throws std::invalid_argument on any schema error.
RunConfig parse_config(const std::filesystem::path &path);
RunConfig parse_config_text(const std::string &text);

//! Build a state from the config's state block (constructor + parameters).
PhotonState state_from_spec(const GridPtr &grid, const std::string &spec_json);

//! Demo-specific long-flag overrides.
struct DemoOverrides {
  std::optional<double> ct;
  std::optional<double> s;
  std::optional<double> t;
  std::optional<double> band_limit;
};

// Exit status contract: 0 success, 1 invariant failure, 2 usage/config error.
int run_check(const RunConfig &cfg);
int run_demo(const std::string &name, const RunConfig &cfg, const DemoOverrides &ov);
int run_evolve(const RunConfig &cfg, double tau, const std::vector<double> &dump_times);

} // namespace mqm
