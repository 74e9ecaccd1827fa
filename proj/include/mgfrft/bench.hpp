#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mgfrft {

struct BenchOptions {
  std::size_t repetitions = 3;
  double alpha = 0.9;
  std::uint64_t seed = 1;
  /// Lifts the 4096-vertex cap on the dense baseline.
  bool allow_large = false;
  /// Time the full product eigendecomposition (dominant cost at N = 64).
  bool full_eigendecomposition = true;
};

/// Median wall-clock seconds for one shape. Speedups are baseline / factorized.
struct BenchResult {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double t_factorized = 0.0;
  double t_dense = 0.0;
  double t_eig_factor = 0.0;
  /// Zero when the full eigendecomposition was not timed.
  double t_eig_full = 0.0;
  double speedup_apply = 0.0;
  double speedup_eig = 0.0;
  /// max |factorized - dense| from the correctness gate.
  double gate_error = 0.0;
  std::size_t repetitions = 0;
};

/// Tolerance of the correctness gate run before any timing.
inline constexpr double kBenchGateTolerance = 1e-8;

/// Path factors P_n1 and P_n2. Compares the factorized transform with the
/// dense Kronecker matrix-vector product, then times (a) both applications
/// and (b) the two factor eigendecompositions against the eigendecomposition
/// of the full product Laplacian. Throws NumericalError if the gate fails.
BenchResult run_bench(std::size_t n1, std::size_t n2, const BenchOptions& options = {});

std::string bench_to_json(const BenchResult& r);
std::string bench_sweep_to_csv(const std::vector<BenchResult>& results);

}  // namespace mgfrft
