#include "dcoplab.h"

#include <cstring>
#include <string>

#include "experiment.hpp"

namespace {

thread_local std::string g_last_error;

dcoplab_status fail(dcoplab_status status, const char* what) {
  g_last_error = what ? what : "";
  return status;
}

/// Maps the core exception hierarchy onto C status codes.
dcoplab_status translate_current_exception() {
  try {
    throw;
  } catch (const dcop::UnknownInstance& e) {
    return fail(DCOPLAB_UNKNOWN_INSTANCE, e.what());
  } catch (const dcop::DomainError& e) {
    return fail(DCOPLAB_DOMAIN_ERROR, e.what());
  } catch (const dcop::BudgetExhausted& e) {
    return fail(DCOPLAB_BUDGET_EXHAUSTED, e.what());
  } catch (const dcop::InfeasiblePeriod& e) {
    return fail(DCOPLAB_INFEASIBLE_PERIOD, e.what());
  } catch (const dcop::ConfigError& e) {
    return fail(DCOPLAB_INVALID_ARGUMENT, e.what());
  } catch (const dcop::IoError& e) {
    return fail(DCOPLAB_IO_ERROR, e.what());
  } catch (const std::exception& e) {
    return fail(DCOPLAB_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(DCOPLAB_INTERNAL_ERROR, "unknown error");
  }
}

}  // namespace

struct dcoplab_problem {
  dcop::Problem impl;
};

struct dcoplab_optima {
  dcop::ReferenceOptima impl;
};

struct dcoplab_config {
  dcop::ExperimentConfig impl;
};

extern "C" {

const char* dcoplab_version(void) { return "0.1.0"; }

const char* dcoplab_status_string(dcoplab_status status) {
  switch (status) {
    case DCOPLAB_OK: return "ok";
    case DCOPLAB_INVALID_ARGUMENT: return "invalid argument";
    case DCOPLAB_UNKNOWN_INSTANCE: return "unknown instance";
    case DCOPLAB_DOMAIN_ERROR: return "domain error";
    case DCOPLAB_BUDGET_EXHAUSTED: return "budget exhausted";
    case DCOPLAB_INFEASIBLE_PERIOD: return "infeasible period";
    case DCOPLAB_IO_ERROR: return "io error";
    case DCOPLAB_PARTIAL_FAILURE: return "partial failure";
    case DCOPLAB_INTERNAL_ERROR: return "internal error";
  }
  return "?";
}

const char* dcoplab_last_error(void) { return g_last_error.c_str(); }

int dcoplab_instance_count(void) {
  return static_cast<int>(dcop::instance_ids().size());
}

const char* dcoplab_instance_id(int index) {
  const auto& ids = dcop::instance_ids();
  if (index < 0 || index >= static_cast<int>(ids.size())) return nullptr;
  return ids[static_cast<std::size_t>(index)].c_str();
}

dcoplab_status dcoplab_problem_create_ex(const char* id, double severity_k,
                                         double severity_s,
                                         int change_frequency, int num_periods,
                                         dcoplab_problem** out) {
  if (!id || !out) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  try {
    dcop::DynamicParams dynamics{severity_k, severity_s, change_frequency,
                                 num_periods};
    *out = new dcoplab_problem{dcop::make_instance(id, dynamics)};
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

dcoplab_status dcoplab_problem_create(const char* id, dcoplab_problem** out) {
  return dcoplab_problem_create_ex(id, 0.5, 20.0, 1000, 10, out);
}

void dcoplab_problem_destroy(dcoplab_problem* problem) { delete problem; }

int dcoplab_problem_dimension(const dcoplab_problem* problem) {
  return problem ? problem->impl.dimension() : 0;
}

int dcoplab_problem_num_constraints(const dcoplab_problem* problem) {
  return problem ? problem->impl.num_constraints() : 0;
}

int dcoplab_problem_num_periods(const dcoplab_problem* problem) {
  return problem ? problem->impl.dynamics().num_periods : 0;
}

dcoplab_status dcoplab_problem_bounds(const dcoplab_problem* problem,
                                      double* lower, double* upper) {
  if (!problem || !lower || !upper) {
    return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  }
  const auto& space = problem->impl.space();
  for (int i = 0; i < space.dimension(); ++i) {
    lower[i] = space.lower[i];
    upper[i] = space.upper[i];
  }
  return DCOPLAB_OK;
}

dcoplab_status dcoplab_problem_evaluate(const dcoplab_problem* problem,
                                        const double* x, int dimension,
                                        int period, dcoplab_evaluation* out) {
  if (!problem || !x || !out) {
    return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  }
  if (dimension != problem->impl.dimension()) {
    return fail(DCOPLAB_INVALID_ARGUMENT, "dimension mismatch");
  }
  try {
    const dcop::Evaluation eval =
        problem->impl.evaluate_at({x, static_cast<std::size_t>(dimension)},
                                  period);
    out->objective = eval.objective;
    out->total_violation = eval.total_violation;
    out->feasible = eval.feasible ? 1 : 0;
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

dcoplab_status dcoplab_feasible_fraction(const dcoplab_problem* problem,
                                         int period, long samples,
                                         unsigned long long seed,
                                         double* out) {
  if (!problem || !out) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  try {
    if (period < 0 || period >= problem->impl.dynamics().num_periods) {
      throw dcop::DomainError("period outside the run schedule");
    }
    *out = dcop::feasible_region_fraction(problem->impl, period, samples, seed);
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

dcoplab_status dcoplab_compute_optima(const dcoplab_problem* problem,
                                      int grid_resolution,
                                      dcoplab_optima** out) {
  if (!problem || !out) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  try {
    *out = new dcoplab_optima{
        dcop::compute_reference_optima(problem->impl, grid_resolution)};
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

void dcoplab_optima_destroy(dcoplab_optima* optima) { delete optima; }

int dcoplab_optima_num_periods(const dcoplab_optima* optima) {
  return optima ? static_cast<int>(optima->impl.per_period.size()) : 0;
}

dcoplab_status dcoplab_optima_get(const dcoplab_optima* optima, int period,
                                  double* x1, double* x2, double* f_star) {
  if (!optima) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  if (period < 0 ||
      period >= static_cast<int>(optima->impl.per_period.size())) {
    return fail(DCOPLAB_INVALID_ARGUMENT, "period out of range");
  }
  const auto& opt = optima->impl.per_period[static_cast<std::size_t>(period)];
  if (x1) *x1 = opt.x[0];
  if (x2) *x2 = opt.x[1];
  if (f_star) *f_star = opt.f_star;
  return DCOPLAB_OK;
}

dcoplab_status dcoplab_compute_optima_table(
    const char* instances, int grid_resolution, double severity_k,
    double severity_s, int change_frequency, int num_periods,
    const char* out_file) {
  if (!instances || !out_file) {
    return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  }
  try {
    dcop::ExperimentConfig scratch;  // reuse the list parser
    scratch.set("experiment.problems", instances);
    dcop::DynamicParams dynamics{severity_k, severity_s, change_frequency,
                                 num_periods};
    dynamics.validate();
    for (const auto& id : scratch.problems) {
      if (!dcop::is_known_instance(id)) throw dcop::UnknownInstance(id);
    }
    dcop::compute_optima_table(scratch.problems, grid_resolution, dynamics,
                               out_file);
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

dcoplab_status dcoplab_config_create(dcoplab_config** out) {
  if (!out) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  try {
    *out = new dcoplab_config{};
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

void dcoplab_config_destroy(dcoplab_config* config) { delete config; }

dcoplab_status dcoplab_config_load_file(dcoplab_config* config,
                                        const char* path) {
  if (!config || !path) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  try {
    config->impl.load_file(path);
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

dcoplab_status dcoplab_config_set(dcoplab_config* config, const char* key,
                                  const char* value) {
  if (!config || !key || !value) {
    return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  }
  try {
    config->impl.set(key, value);
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

dcoplab_status dcoplab_run_experiment(const dcoplab_config* config,
                                      const char* out_dir,
                                      int* cells_failed) {
  if (!config) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  try {
    dcop::ExperimentConfig resolved = config->impl;
    if (out_dir && *out_dir) resolved.out_dir = out_dir;
    const dcop::ExperimentOutcome outcome = dcop::run_experiment(resolved);
    if (cells_failed) {
      *cells_failed = static_cast<int>(outcome.cells_failed);
    }
    if (outcome.cells_failed > 0) {
      return fail(DCOPLAB_PARTIAL_FAILURE,
                  "some experiment cells failed; see manifest.json");
    }
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

dcoplab_status dcoplab_render_reports(const char* dir) {
  if (!dir) return fail(DCOPLAB_INVALID_ARGUMENT, "null argument");
  try {
    dcop::render_reports(dir);
    return DCOPLAB_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

}  // extern "C"
