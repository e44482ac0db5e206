#pragma once

#include <cstddef>
#include <functional>

namespace mfdbsde {

/// Worker count for particle loops. Resolution order: set_thread_count()
/// override, then the MFDBSDE_THREADS environment variable, then the
/// OpenMP default.
int thread_count();

/// 0 clears the override.
void set_thread_count(int n);

/// Runs body(i) for i in [0, n) with a static schedule. Bodies must write
/// only to disjoint outputs; no reductions happen here, so results never
/// depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mfdbsde
