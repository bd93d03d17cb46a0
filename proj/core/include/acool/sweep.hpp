#pragma once

#include <string>
#include <vector>

#include "acool/sim.hpp"

namespace acool {

/// Aggregate over seeds for one grid point.
struct SweepRow {
  SimConfig config;
  std::size_t runs = 0;
  double mean_bits = 0, max_bits = 0;
  double mean_ideal_bits = 0;
  double mean_rounds = 0, max_rounds = 0;
  double bound = 0;  // max(n l, n t log2 q)
  double ratio = 0;  // mean_bits / bound
  std::size_t liveness_failures = 0;
  std::size_t violations = 0;
  std::size_t abba_instance_errors = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double ratio_min = 0, ratio_max = 0;
  double spread() const { return ratio_min > 0 ? ratio_max / ratio_min : 0; }
};

/// Runs every config over seeds base.seed, base.seed + 1, ... Throws on an empty grid.
SweepResult sweep(const std::vector<SimConfig>& grid, std::size_t seeds);

/// One config per n with t = (n - 1) / 3.
std::vector<SimConfig> grid_over_n(const SimConfig& base, const std::vector<std::size_t>& ns);
/// One config per message length.
std::vector<SimConfig> grid_over_len(const SimConfig& base, const std::vector<std::size_t>& lens);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string sweep_csv(const SweepResult& r);

}  // namespace acool
