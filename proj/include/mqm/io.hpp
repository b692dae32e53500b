#pragma once
#include "mqm/covariance.hpp"
#include "mqm/state.hpp"
#include "mqm/synthesis.hpp"
#include "mqm/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mqm {

//! Raw little-endian 64-bit float dump, no header; complex arrays are
//! interleaved (re, im). A JSON sidecar manifest carries the metadata.
void write_array(const std::filesystem::path &path, const VectorXd &v);
void write_array(const std::filesystem::path &path, const VectorXcd &v);
VectorXd read_real_array(const std::filesystem::path &path);
VectorXcd read_complex_array(const std::filesystem::path &path);

//! Sidecar manifest for one or more arrays on a grid.
void write_grid_manifest(const std::filesystem::path &path, const KGrid &grid,
                         const std::vector<std::string> &entries, bool complex_payload);

//! State persistence: manifest.json plus one binary per stored sector.
void save_state(const std::filesystem::path &dir, const PhotonState &state);
PhotonState load_state(const std::filesystem::path &dir);

//! Snapshot dump: binary arrays (A, E, pi, psi) plus a manifest.
void save_snapshot(const std::filesystem::path &dir, const KGrid &grid,
                   const FieldSnapshot &snapshot);

//! CSV row emission; the first line is the header.
void write_csv(const std::filesystem::path &path, const std::string &header,
               const std::vector<std::string> &rows);

//! Radial profile as "r,re,im" rows.
void write_profile_csv(const std::filesystem::path &path, const RadialProfile &profile);

//! 1-D extraction of a complex lattice array along an axis through a fixed
//! transverse node: "x,re,im" rows.
void write_line_csv(const std::filesystem::path &path, const KGrid &grid, const VectorXcd &field,
                    int axis, int fixed_a, int fixed_b);

} // namespace mqm
