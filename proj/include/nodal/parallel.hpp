#pragma once

namespace nodal {

/// Worker cap: NODAL_ATLAS_THREADS when set and positive, otherwise the
/// OpenMP default (1 in serial builds).
int max_workers();

/// Applies the cap process-wide (omp_set_num_threads).
void apply_thread_cap();

} // namespace nodal
