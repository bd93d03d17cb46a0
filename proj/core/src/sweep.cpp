#include "acool/sweep.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace acool {

SweepResult sweep(const std::vector<SimConfig>& grid, std::size_t seeds) {
  if (grid.empty() || seeds == 0) throw Error(ErrorCode::InvalidConfig, "sweep grid is empty");
  SweepResult res;
  res.ratio_min = std::numeric_limits<double>::infinity();
  for (const SimConfig& base : grid) {
    SweepRow row;
    row.config = base;
    row.bound = complexity_bound(base);
    for (std::size_t s = 0; s < seeds; ++s) {
      SimConfig cfg = base;
      cfg.seed = base.seed + s;
      const RunReport rep = run(cfg);
      const double bits = static_cast<double>(rep.metrics.bits_total);
      row.mean_bits += bits;
      row.max_bits = std::max(row.max_bits, bits);
      row.mean_ideal_bits += rep.metrics.ideal_bits;
      row.mean_rounds += rep.metrics.max_round;
      row.max_rounds = std::max<double>(row.max_rounds, rep.metrics.max_round);
      if (rep.liveness_failure()) ++row.liveness_failures;
      if (!rep.props.safety_ok()) ++row.violations;
      if (!rep.props.single_abba) ++row.abba_instance_errors;
      ++row.runs;
    }
    const auto k = static_cast<double>(row.runs);
    row.mean_bits /= k;
    row.mean_ideal_bits /= k;
    row.mean_rounds /= k;
    row.ratio = row.mean_bits / row.bound;
    res.ratio_min = std::min(res.ratio_min, row.ratio);
    res.ratio_max = std::max(res.ratio_max, row.ratio);
    res.rows.push_back(row);
  }
  return res;
}

std::vector<SimConfig> grid_over_n(const SimConfig& base, const std::vector<std::size_t>& ns) {
  std::vector<SimConfig> grid;
  for (std::size_t n : ns) {
    SimConfig c = base;
    c.n = n;
    c.t = (n - 1) / 3;
    grid.push_back(c);
  }
  return grid;
}

std::vector<SimConfig> grid_over_len(const SimConfig& base, const std::vector<std::size_t>& lens) {
  std::vector<SimConfig> grid;
  for (std::size_t l : lens) {
    SimConfig c = base;
    c.msg_len_bits = l;
    grid.push_back(c);
  }
  return grid;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = std::min(x.size(), y.size());
  if (m < 2) return 0;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < m; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return den == 0 ? 0 : num / den;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "protocol,n,t,len,runs,mean_bits,max_bits,mean_ideal_bits,mean_rounds,max_rounds,bound,ratio,"
        "liveness_failures,violations\n";
  for (const SweepRow& row : r.rows) {
    const SimConfig& c = row.config;
    os << to_string(c.protocol) << ',' << c.n << ',' << c.t << ',' << c.msg_len_bits << ',' << row.runs << ','
       << row.mean_bits << ',' << row.max_bits << ',' << row.mean_ideal_bits << ',' << row.mean_rounds << ','
       << row.max_rounds << ',' << row.bound << ',' << row.ratio << ',' << row.liveness_failures << ','
       << row.violations << '\n';
  }
  return os.str();
}

}  // namespace acool
