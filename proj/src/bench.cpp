#include "mgfrft/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mgfrft/csv.hpp"
#include "mgfrft/error.hpp"
#include "mgfrft/transform.hpp"

namespace mgfrft {
namespace {

using Clock = std::chrono::steady_clock;

// Runs `fn` enough times to span at least ~20 ms, returns seconds per call.
template <typename Fn>
double time_once(Fn&& fn) {
  constexpr double kMinSpan = 0.02;
  std::size_t calls = 1;
  for (;;) {
    const auto start = Clock::now();
    for (std::size_t i = 0; i < calls; ++i) fn();
    const double span = std::chrono::duration<double>(Clock::now() - start).count();
    if (span >= kMinSpan || calls >= (std::size_t{1} << 20)) return span / static_cast<double>(calls);
    calls *= 2;
  }
}

template <typename Fn>
double median_time(std::size_t reps, Fn&& fn) {
  std::vector<double> samples;
  for (std::size_t i = 0; i < reps; ++i) samples.push_back(time_once(fn));
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

}  // namespace

BenchResult run_bench(std::size_t n1, std::size_t n2, const BenchOptions& options) {
  if (n1 < 1 || n2 < 1) throw ParameterError("bench shapes must be positive");
  if (options.repetitions < 3) throw ParameterError("bench needs at least 3 repetitions");
  if (n1 * n2 > kDenseCap && !options.allow_large) {
    throw SizeError("dense baseline limited to " + std::to_string(kDenseCap) +
                    " vertices; pass allow_large to override");
  }
  const ProductGraph pg({build_path(n1), build_path(n2)});
  const auto dims = pg.dims();
  const auto bases = laplacian_bases(pg, options.alpha);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd values(static_cast<Eigen::Index>(n1 * n2));
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = unit(rng);
  const ProductSignal f(dims, values);

  const Eigen::MatrixXcd dense = kron(bases[0].kappa, bases[1].kappa).adjoint();

  BenchResult r;
  r.n1 = n1;
  r.n2 = n2;
  r.repetitions = options.repetitions;

  const Eigen::VectorXcd factorized = l_mgfrft(f, bases).data;
  const Eigen::VectorXcd baseline = dense * f.data;
  r.gate_error = (factorized - baseline).cwiseAbs().maxCoeff();
  if (!(r.gate_error <= kBenchGateTolerance)) {
    throw NumericalError("bench correctness gate failed: max difference " +
                         std::to_string(r.gate_error));
  }

  Eigen::VectorXcd sink;
  r.t_factorized = median_time(options.repetitions, [&] { sink = l_mgfrft(f, bases).data; });
  r.t_dense = median_time(options.repetitions, [&] { sink.noalias() = dense * f.data; });

  const Eigen::MatrixXd l1 = laplacian(pg.factors()[0]);
  const Eigen::MatrixXd l2 = laplacian(pg.factors()[1]);
  r.t_eig_factor = median_time(options.repetitions, [&] {
    const auto e1 = eig_sym(l1);
    const auto e2 = eig_sym(l2);
  });
  if (options.full_eigendecomposition) {
    const Eigen::MatrixXd full = product_laplacian_row_major(pg);
    r.t_eig_full = median_time(options.repetitions, [&] { const auto e = eig_sym(full); });
    r.speedup_eig = r.t_eig_full / r.t_eig_factor;
  }
  r.speedup_apply = r.t_dense / r.t_factorized;
  return r;
}

std::string bench_to_json(const BenchResult& r) {
  nlohmann::ordered_json j;
  j["shape"] = {r.n1, r.n2};
  j["t_factorized"] = r.t_factorized;
  j["t_dense"] = r.t_dense;
  j["t_eig_factor"] = r.t_eig_factor;
  j["t_eig_full"] = r.t_eig_full;
  j["speedup_apply"] = r.speedup_apply;
  j["speedup_eig"] = r.speedup_eig;
  j["gate_error"] = r.gate_error;
  j["repetitions"] = r.repetitions;
  return j.dump(2) + "\n";
}

std::string bench_sweep_to_csv(const std::vector<BenchResult>& results) {
  std::ostringstream out;
  out << "n1,n2,t_factorized,t_dense,t_eig_factor,t_eig_full,speedup_apply,speedup_eig\n";
  for (const auto& r : results) {
    out << r.n1 << ',' << r.n2 << ',' << csv::format_double(r.t_factorized) << ','
        << csv::format_double(r.t_dense) << ',' << csv::format_double(r.t_eig_factor) << ','
        << csv::format_double(r.t_eig_full) << ',' << csv::format_double(r.speedup_apply) << ','
        << csv::format_double(r.speedup_eig) << '\n';
  }
  return out.str();
}

}  // namespace mgfrft
