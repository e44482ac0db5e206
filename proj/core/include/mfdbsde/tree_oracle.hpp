#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfdbsde/problem.hpp"
#include "mfdbsde/regression.hpp"
#include "mfdbsde/solver.hpp"

namespace mfdbsde {

/// Non-recombining scenario tree: per step the Brownian motion moves by
/// +-sqrt(dt) with probability 1/2 and every atom jumps once with
/// probability lambda_j dt. Children of a node are numbered
/// c = s + 2 * (bitmask of jumping atoms), s = 1 for the up move.
class TreeModel {
 public:
  static constexpr std::size_t kMaxSteps = 12;
  static constexpr std::size_t kMaxLeaves = std::size_t{1} << 24;  // 4^12

  TreeModel(const TimeGrid& grid, const LevyModel& levy);

  std::size_t n_steps() const { return n_steps_; }
  std::size_t n_atoms() const { return n_atoms_; }
  std::size_t branching() const { return branching_; }
  double dt() const { return dt_; }
  std::size_t level_size(std::size_t level) const { return levels_[level].prob.size(); }

  double probability(std::size_t level, std::size_t node) const {
    return levels_[level].prob[node];
  }
  double brownian(std::size_t level, std::size_t node) const { return levels_[level].b[node]; }
  double count(std::size_t level, std::size_t node, std::size_t j) const {
    return levels_[level].counts[node * n_atoms_ + j];
  }
  /// Node at the previous level (level >= 1).
  std::size_t parent(std::size_t node) const { return node / branching_; }

  /// Probability of child c given its parent; c < branching().
  double child_probability(std::size_t c) const { return child_prob_[c]; }
  double child_dB(std::size_t c) const { return (c & 1u) ? sqrt_dt_ : -sqrt_dt_; }
  /// Compensated increment J - lambda_j dt of the child's move.
  double child_dN(std::size_t c, std::size_t j) const;

  /// Kahan-summed total probability at a level.
  double total_probability(std::size_t level) const;

 private:
  struct Level {
    std::vector<double> prob;
    std::vector<double> b;
    std::vector<double> counts;
  };

  std::size_t n_steps_;
  std::size_t n_atoms_;
  std::size_t branching_;
  double dt_;
  double sqrt_dt_;
  std::vector<double> jump_prob_;
  std::vector<double> child_prob_;
  std::vector<Level> levels_;
};

struct TreeSolution {
  /// Per level, one value per node. Z and K at the last level repeat the parent's.
  std::vector<std::vector<double>> y;
  std::vector<std::vector<double>> z;
  std::vector<std::vector<double>> k;  // node-major, n_atoms per node
  double y0 = 0.0;
  std::size_t sweeps = 0;
  bool converged = false;
};

struct TreeSolveConfig {
  DriverRule driver_rule = DriverRule::right;
  std::size_t max_sweeps = 500;
  double tol = 1e-14;  // relative agreement of two sweeps
};

/// Exact backward induction on the tree, iterated to the fixed point of the
/// frozen-driver map. The mean-field law at each level is the exact node
/// distribution. Throws ConfigError if the problem does not fit a tree.
TreeSolution tree_solve(const ProblemSpec& problem, const TreeModel& tree,
                        const TreeSolveConfig& cfg = {});

}  // namespace mfdbsde
