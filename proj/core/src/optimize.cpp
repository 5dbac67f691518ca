#include "fefkit/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "fefkit/error.hpp"
#include "fefkit/rng.hpp"

namespace fefkit {

SearchBudget SearchBudget::scaled(int factor) const {
  SearchBudget out = *this;
  out.starts = starts * std::max(factor, 1);
  return out;
}

namespace {

struct Callback {
  const Objective* objective = nullptr;
  std::size_t dims = 0;
  long evaluations = 0;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
};

double negated(const gsl_vector* x, void* params) {
  auto* cb = static_cast<Callback*>(params);
  ++cb->evaluations;
  const std::span<const double> point(x->data, cb->dims);
  const double value = (*cb->objective)(point);
  if (value > cb->best) {
    cb->best = value;
    cb->best_x.assign(point.begin(), point.end());
  }
  return -value;
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

void run_simplex(Callback& cb, const std::vector<double>& start, double step,
                 const SearchBudget& budget) {
  const std::size_t n = cb.dims;
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(x.get(), i, start[i]);
    gsl_vector_set(steps.get(), i, step);
  }

  gsl_multimin_function fn{&negated, n, &cb};
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), steps.get());

  double best = gsl_multimin_fminimizer_minimum(minimizer.get());
  int stalled = 0;
  for (int iter = 0; iter < budget.max_iterations; ++iter) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(minimizer.get());
    if (gsl_multimin_test_size(size, budget.tolerance) == GSL_SUCCESS) break;
    const double current = gsl_multimin_fminimizer_minimum(minimizer.get());
    if (current < best - 1e-15 * (1.0 + std::abs(best))) {
      best = current;
      stalled = 0;
    } else if (budget.stall_iterations > 0 && ++stalled >= budget.stall_iterations) {
      break;
    }
  }
}

}  // namespace

SearchResult maximize(const Objective& objective, std::size_t dims, double start_range,
                      const SearchBudget& budget) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;

  if (dims == 0) throw Error(ErrorKind::DimensionMismatch, "maximize over zero parameters");

  SearchResult result;
  result.value = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < std::max(budget.starts, 1); ++k) {
    KeyedRng rng(budget.seed, static_cast<std::uint64_t>(k), Stream::optimizer_start);
    std::vector<double> start(dims);
    for (auto& s : start) s = rng.uniform(0.0, start_range);

    Callback cb;
    cb.objective = &objective;
    cb.dims = dims;
    run_simplex(cb, start, 0.5, budget);
    // Nelder-Mead can stall on a degenerate simplex; one restart around the
    // incumbent fixes that in practice.
    const std::vector<double> incumbent = cb.best_x;
    run_simplex(cb, incumbent, 0.05, budget);

    result.evaluations += cb.evaluations;
    if (cb.best > result.value) {
      result.value = cb.best;
      result.argmax = cb.best_x;
    }
  }
  return result;
}

}  // namespace fefkit
