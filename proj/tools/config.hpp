#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tableau/diagram.hpp"

namespace tableau::cli {

struct ExperimentConfig {
  std::string shape = "heart";
  std::string out_dir;  // empty: $TABLEAU_LIMITS_OUT, else the working directory
  std::uint64_t seed = 2024;
  unsigned workers = 1;

  // grids
  int nx = 41;
  int nt = 21;
  double tol = 1e-10;
  double plateau_dt = 1e-3;
  int scan_lines = 400;  // vertical lines searched for plateaus
  int per_segment = 400;

  // Monte Carlo
  std::vector<std::int64_t> n{10, 20, 40};
  int reps = 20;

  // kernels
  std::optional<double> x0;
  std::optional<double> t0;
  int dx_max = 3;
  std::vector<double> dts{-1.0, -0.5, 0.5, 1.0};

  // phase diagram
  double r = 1.0;
  int points = 201;
  int rational_points = 10;
};

/// Throws DomainError on non-positive counts, tolerances or dilations.
void validate(const ExperimentConfig& cfg);

struct ResolvedShape {
  InterlacingDiagram diagram;
  std::string label;
};

/// heart, pipe, square, rect:r, lshape:p,q,r, a row list "(2,1)", or a JSON
/// file with {"rows": [...]} or {"a": [...], "b": [...]}.
ResolvedShape resolve_shape(const std::string& spec);

std::string resolve_out_dir(const ExperimentConfig& cfg);

}  // namespace tableau::cli
