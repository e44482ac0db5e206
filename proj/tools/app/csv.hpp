#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "mfdbsde/picard.hpp"
#include "mfdbsde/processes.hpp"
#include "mfdbsde/time_grid.hpp"

namespace mfdbsde::app {

/// %.17g: round-trips every double.
std::string fmt17(double x);

/// Header: t,y_mean,y_std,z_mean,z_std[,k<j>_mean,k<j>_std ...], one row per
/// node. Standard deviations use the n - 1 denominator. Z and K on the
/// terminal node repeat the last step.
void write_solution_csv(std::ostream& os, const TripleProcess& sol, const TimeGrid& grid);

/// Header: delta,converged,iters,observed_ratio,theoretical_factor
void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace mfdbsde::app
