#include "mqm/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
  CLI::App app{"maxwellqm: first-quantized Maxwell photon experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string demo_name;
  double tau = 0.0;
  std::vector<double> dump_times;
  mqm::DemoOverrides overrides;
  double ov_ct = 0.0, ov_s = 0.0, ov_t = 0.0, ov_K = 0.0;

  auto *check = app.add_subcommand("check", "run the invariant suite and write report.json");
  check->add_option("--config", config_path, "JSON config file")->required();

  auto *demo = app.add_subcommand(
      "demo", "run a named demo: linear-wave | circular-wave | localized | hegerfeldt | hyperplane");
  demo->add_option("name", demo_name, "demo name")->required();
  demo->add_option("--config", config_path, "JSON config file")->required();
  auto *o_ct = demo->add_option("--ct", ov_ct, "light-travel distance c t");
  auto *o_s = demo->add_option("--s", ov_s, "smoothing length");
  auto *o_t = demo->add_option("--t", ov_t, "time");
  auto *o_K = demo->add_option("--K", ov_K, "band limit");

  auto *ev = app.add_subcommand("evolve", "evolve the configured state and dump snapshots");
  ev->add_option("--config", config_path, "JSON config file")->required();
  ev->add_option("--tau", tau, "total evolution time")->required();
  ev->add_option("--dump-times", dump_times, "snapshot times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const mqm::RunConfig cfg = mqm::parse_config(config_path);
    if (check->parsed())
      return mqm::run_check(cfg);
    if (demo->parsed()) {
      if (o_ct->count())
        overrides.ct = ov_ct;
      if (o_s->count())
        overrides.s = ov_s;
      if (o_t->count())
        overrides.t = ov_t;
      if (o_K->count())
        overrides.band_limit = ov_K;
      return mqm::run_demo(demo_name, cfg, overrides);
    }
    if (ev->parsed())
      return mqm::run_evolve(cfg, tau, dump_times);
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
