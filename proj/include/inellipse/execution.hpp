#pragma once

namespace inellipse {

/// Selects the serial reference loop or the OpenMP kernel. Both produce
/// identical results; the serial path is kept for testing and benchmarking.
enum class Execution { Serial, Parallel };

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int parallel_thread_count();

}  // namespace inellipse
