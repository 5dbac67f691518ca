#pragma once

// Multi-start derivative-free maximization used by the brute-force oracles
// and the maximized-fidelity searches. Backed by GSL's Nelder-Mead simplex.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fefkit {

struct SearchBudget {
  int starts = 8;               ///< independent seeded starting points
  int max_iterations = 4000;    ///< simplex iterations per start
  double tolerance = 1e-10;     ///< simplex size at which a run stops
  /// A run also stops after this many iterations without the best value
  /// improving by more than 1e-15 relative. Objectives with flat directions
  /// never shrink the simplex, so the size test alone would not fire.
  int stall_iterations = 60;
  std::uint64_t seed = 0x5eed;  ///< starting points are drawn from this seed

  /// Same settings, `factor` times as many starts.
  SearchBudget scaled(int factor) const;
};

struct SearchResult {
  double value = 0.0;
  std::vector<double> argmax;
  long evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Maximizes `objective` over R^dims. Starting points are uniform on
/// [0, start_range)^dims. Start k depends only on (seed, k), so raising
/// `starts` never lowers the result.
SearchResult maximize(const Objective& objective, std::size_t dims, double start_range,
                      const SearchBudget& budget);

}  // namespace fefkit
