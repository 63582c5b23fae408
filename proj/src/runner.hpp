#ifndef DCOPLAB_RUNNER_HPP
#define DCOPLAB_RUNNER_HPP

#include <string>

#include "de_engine.hpp"
#include "diversity.hpp"

namespace dcop {

/// Executes one full run: uniform initialization (charging np evaluations),
/// then generations until the budget of f_c * num_periods evaluations is
/// spent. Deterministic given de.rng_seed. Single-threaded.
RunTrace run_single(const Problem& problem, MechanismKind mechanism,
                    const MechanismConfig& mechanism_config,
                    const DEConfig& de);

/// Trace CSV: a `# seed=` comment line, then
/// `run,generation,eval_count,period,best_f,best_feasible,total_violation_best,cv`.
void write_trace_csv(const RunTrace& trace, int run_index,
                     const std::string& path);

}  // namespace dcop

#endif
