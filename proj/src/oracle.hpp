#ifndef DCOPLAB_ORACLE_HPP
#define DCOPLAB_ORACLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "problems.hpp"

namespace dcop {

struct PeriodOptimum {
  std::vector<double> x;
  double f_star = 0.0;
};

/// Per-period global optima of one instance, found by exhaustive grid scan
/// plus local coordinate refinement. Used as the measurement baseline so the
/// performance measures carry no optimizer bias.
struct ReferenceOptima {
  std::vector<PeriodOptimum> per_period;
  int grid_resolution = 0;

  const PeriodOptimum& at(int period) const;
};

/// Scans a grid_resolution^D grid per period, keeps the best feasible point,
/// then refines it with a shrinking coordinate search (feasible moves only).
/// Throws InfeasiblePeriod if a period has no feasible grid point.
ReferenceOptima compute_reference_optima(const Problem& problem,
                                         int grid_resolution);

/// Derivative-free polish used by the oracle: repeated per-coordinate probes
/// with a halving step, accepting only feasible improvements.
PeriodOptimum refine_local(const Problem& problem, int period,
                           std::vector<double> start, double initial_step);

/// Optima table file: CSV `instance,period,x1,x2,f_star`.
using OptimaTable = std::map<std::string, ReferenceOptima>;

void write_optima_table(const OptimaTable& table, const std::string& path);
OptimaTable read_optima_table(const std::string& path);

/// FNV-1a 64-bit checksum of a file's bytes, rendered as 16 hex digits.
std::string file_checksum(const std::string& path);

}  // namespace dcop

#endif
