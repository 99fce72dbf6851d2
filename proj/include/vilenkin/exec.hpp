#pragma once

namespace vilenkin {

/// Kernel execution policy. Serial paths are the reference implementations;
/// parallel paths must produce identical results.
enum class ExecMode { serial, parallel };

/// Threads used by parallel kernels (OpenMP), 1 when built without OpenMP.
int kernel_threads();

} // namespace vilenkin
