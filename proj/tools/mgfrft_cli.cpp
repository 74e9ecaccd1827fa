// Command-line front end: graph building, transforms, compression runs,
// dataset ingestion and the factorized-vs-dense benchmark.
//
// Exit codes: 0 success, 1 internal or numerical error, 2 usage error
// (bad flags, unreadable files, inconsistent shapes, size caps, too little data).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgfrft/bench.hpp"
#include "mgfrft/compression.hpp"
#include "mgfrft/csv.hpp"
#include "mgfrft/error.hpp"
#include "mgfrft/geo.hpp"
#include "mgfrft/graph_io.hpp"
#include "mgfrft/noaa.hpp"
#include "mgfrft/transform_io.hpp"

namespace {

using namespace mgfrft;

/// Raised for conditions the user can fix by changing the invocation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    csv::write_file(path, contents);
  }
}

std::string read_input(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string("missing ") + what);
  if (!std::filesystem::is_regular_file(path)) {
    throw UsageError(std::string(what) + " '" + path + "' does not exist");
  }
  return csv::read_file(path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    try {
      out.push_back(csv::parse_double(item, 0));
    } catch (const ParseError&) {
      throw UsageError("'" + item + "' is not a number");
    }
  }
  return out;
}

std::vector<Graph> load_factors(const std::string& list) {
  std::vector<Graph> out;
  for (const auto& path : split_list(list)) out.push_back(graph_from_json(read_input(path, "factor graph")));
  if (out.empty()) throw UsageError("--factors lists no graphs");
  return out;
}

// ---------------------------------------------------------------------------

struct GraphArgs {
  std::size_t n = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string stations;
  std::size_t k = 5;
  double sigma2 = 0.0;
  bool mutual = false;
  std::string out;
};

void add_graph_command(CLI::App& app, GraphArgs& a) {
  auto* graph = app.add_subcommand("graph", "Build a graph and write it as JSON");
  graph->require_subcommand(1);
  auto* path = graph->add_subcommand("path", "Path graph P_n");
  path->add_option("n", a.n)->required();
  path->add_option("--out,-o", a.out, "Output file (default stdout)");
  auto* cycle = graph->add_subcommand("cycle", "Cycle graph C_n");
  cycle->add_option("n", a.n)->required();
  cycle->add_option("--out,-o", a.out, "Output file (default stdout)");
  auto* grid = graph->add_subcommand("grid", "Grid graph P_rows x P_cols");
  grid->add_option("rows", a.rows)->required();
  grid->add_option("cols", a.cols)->required();
  grid->add_option("--out,-o", a.out, "Output file (default stdout)");
  auto* knn = graph->add_subcommand("knn", "k-nearest-neighbor station graph");
  knn->add_option("--stations", a.stations, "CSV id,lat_deg,lon_deg")->required();
  knn->add_option("--k", a.k, "Neighbors per station")->default_val(5);
  knn->add_option("--sigma2", a.sigma2, "Gaussian kernel bandwidth (default: mean squared edge distance)");
  knn->add_flag("--mutual", a.mutual, "Keep only mutual neighbors");
  knn->add_option("--out,-o", a.out, "Output file (default stdout)");
}

int run_graph(const CLI::App& graph, const GraphArgs& a) {
  if (graph.got_subcommand("path")) {
    emit(a.out, graph_to_json(build_path(a.n)));
  } else if (graph.got_subcommand("cycle")) {
    emit(a.out, graph_to_json(build_cycle(a.n)));
  } else if (graph.got_subcommand("grid")) {
    emit(a.out, graph_to_json(build_grid(a.rows, a.cols)));
  } else {
    const auto stations = stations_from_csv(read_input(a.stations, "station file"));
    KnnConfig cfg;
    cfg.k = a.k;
    cfg.mode = a.mutual ? KnnMode::kMutual : KnnMode::kUnion;
    if (graph.get_subcommand("knn")->count("--sigma2") > 0) cfg.sigma2 = a.sigma2;
    emit(a.out, graph_to_json(build_station_graph(stations, cfg)));
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string kind = "laplacian";
  double alpha = 1.0;
  std::string factors;
  std::string signal;
  std::string coefficients;
  bool inverse = false;
  std::string out;
  std::string spectrum_table;
};

void add_transform_command(CLI::App& app, TransformArgs& a) {
  auto* t = app.add_subcommand("transform", "Forward or inverse multi-dimensional fractional transform");
  t->add_option("--kind", a.kind, "laplacian or adjacency")
      ->check(CLI::IsMember({"laplacian", "adjacency"}));
  t->add_option("--alpha", a.alpha, "Fractional order in (0, 1]")->required();
  t->add_option("--factors", a.factors, "Comma-separated factor graph JSON files")->required();
  t->add_option("--signal", a.signal, "Signal CSV (forward)");
  t->add_option("--coefficients", a.coefficients, "Coefficient CSV (inverse)");
  t->add_flag("--inverse", a.inverse, "Run the inverse transform");
  t->add_option("--out,-o", a.out, "Output file (default stdout)");
  t->add_option("--spectrum-table", a.spectrum_table,
                "Also write the eigenvalue-sum spectrum table (Laplacian, forward)");
}

int run_transform(const TransformArgs& a) {
  const auto graphs = load_factors(a.factors);
  const bool laplacian_kind = a.kind == "laplacian";
  const SpectrumKind kind = laplacian_kind ? SpectrumKind::kLaplacian : SpectrumKind::kAdjacency;

  std::vector<FractionalBasis> lbases;
  std::vector<GeneralEigenBasis> abases;
  std::vector<std::size_t> dims;
  for (const Graph& g : graphs) {
    dims.push_back(g.size());
    if (laplacian_kind) {
      lbases.push_back(fractional_basis(eig_sym(laplacian(g)), a.alpha));
    } else {
      abases.push_back(eig_general(g.weights()));
    }
  }

  if (a.inverse) {
    if (!a.spectrum_table.empty()) throw UsageError("--spectrum-table applies to forward transforms");
    const auto c = coefficients_from_csv(read_input(a.coefficients, "coefficient file (--coefficients)"),
                                         a.alpha, kind);
    if (c.dims != dims) throw ShapeError("coefficient multi-index range does not match the factors");
    const ProductSignal f = laplacian_kind ? il_mgfrft(c, lbases) : ia_mgfrft(c, abases, a.alpha);
    const double residue = f.data.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-9) {
      std::cerr << "note: discarded imaginary part up to " << residue << "\n";
    }
    emit(a.out, signal_to_csv(f));
    return 0;
  }

  const ProductSignal f = signal_from_csv(read_input(a.signal, "signal file (--signal)"));
  if (f.dims.size() == 2 && dims.size() == 1 && f.dims[1] == 1) {
    // A single-column CSV is a 1-D signal.
  } else if (f.dims != dims) {
    throw ShapeError("signal shape does not match the factor graphs");
  }
  const ProductSignal signal(dims, f.data);
  if (laplacian_kind) {
    const auto c = l_mgfrft(signal, lbases);
    emit(a.out, coefficients_to_csv(c, laplacian_eigsums(lbases, dims)));
    if (!a.spectrum_table.empty()) {
      emit(a.spectrum_table, spectrum_table_to_csv(spectrum_table(c, lbases)));
    }
  } else {
    if (!a.spectrum_table.empty()) throw UsageError("--spectrum-table needs --kind laplacian");
    AdjacencyTransform t(abases, a.alpha);
    if (!factored_power_is_principal(t)) {
      std::cerr << "note: factor eigenvalue arguments sum past pi; the factored power differs "
                   "from the principal power of the Kronecker product\n";
    }
    emit(a.out, coefficients_to_csv(t.forward(signal), adjacency_eigsums(abases, dims)));
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct CompressArgs {
  std::string factors;
  std::string signal;
  double gamma = 0.1;
  double alpha = 1.0;
  std::vector<std::string> sweep;
  std::string out;
  std::string report;
  std::string peak = "compressed";
};

void add_compress_command(CLI::App& app, CompressArgs& a) {
  auto* c = app.add_subcommand("compress", "Spectral compression with RE / PSNR scoring");
  c->add_option("--factors", a.factors, "Comma-separated factor graph JSON files")->required();
  c->add_option("--signal", a.signal, "Signal CSV")->required();
  c->add_option("--gamma", a.gamma, "Fraction of coefficients kept, (0, 1)");
  c->add_option("--alpha", a.alpha, "Fractional order in (0, 1]");
  c->add_option("--sweep", a.sweep, "gammas=g1,g2,... alphas=a1,a2,... (prints a table)")
      ->expected(1, 2);
  c->add_option("--out,-o", a.out, "Compressed signal CSV, or sweep CSV with --sweep");
  c->add_option("--report", a.report, "Report JSON (default stdout)");
  c->add_option("--peak", a.peak, "PSNR peak source: compressed or original")
      ->check(CLI::IsMember({"compressed", "original"}));
}

int run_compress(const CompressArgs& a) {
  const auto graphs = load_factors(a.factors);
  const ProductSignal f = signal_from_csv(read_input(a.signal, "signal file (--signal)"));
  std::vector<std::size_t> dims;
  for (const Graph& g : graphs) dims.push_back(g.size());
  if (element_count(dims) != element_count(f.dims) ||
      (dims.size() == f.dims.size() && dims != f.dims)) {
    throw ShapeError("signal shape does not match the factor graphs");
  }
  const ProductSignal signal(dims, f.data);
  const PeakReference peak = a.peak == "original" ? PeakReference::kOriginal : PeakReference::kCompressed;

  std::vector<SymmetricEigenBasis> eig;
  for (const Graph& g : graphs) eig.push_back(eig_sym(laplacian(g)));

  if (a.sweep.empty()) {
    std::vector<FractionalBasis> bases;
    for (const auto& e : eig) bases.push_back(fractional_basis(e, a.alpha));
    const auto result = compress_pipeline(signal, bases, {a.gamma, a.alpha}, peak);
    if (!a.out.empty()) emit(a.out, signal_to_csv(result.compressed));
    emit(a.report, report_to_json(result.report));
    return 0;
  }

  std::vector<double> gammas{0.02, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  std::vector<double> alphas{0.95, 0.85};
  for (const auto& token : a.sweep) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw UsageError("--sweep expects key=list, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const auto values = parse_doubles(token.substr(eq + 1));
    if (values.empty()) throw UsageError("--sweep " + key + " lists no values");
    if (key == "gammas") {
      gammas = values;
    } else if (key == "alphas") {
      alphas = values;
    } else {
      throw UsageError("--sweep key must be gammas or alphas, got '" + key + "'");
    }
  }

  std::ostringstream table;
  std::ostringstream sweep_csv;
  sweep_csv << "alpha,gamma,retained,re,psnr,imag_residue\n";
  for (double alpha : alphas) {
    std::vector<FractionalBasis> bases;
    for (const auto& e : eig) bases.push_back(fractional_basis(e, alpha));
    const auto coefficients = l_mgfrft(signal, bases);
    std::ostringstream re_row;
    std::ostringstream psnr_row;
    table << "alpha = " << alpha;
    re_row << "RE(%)";
    psnr_row << "PSNR(dB)";
    for (double gamma : gammas) {
      const auto r = compress_coefficients(signal, coefficients, bases, gamma, peak).report;
      char buf[64];
      table << " | gamma = " << gamma;
      std::snprintf(buf, sizeof(buf), " | %.2f", r.re * 100.0);
      re_row << buf;
      std::snprintf(buf, sizeof(buf), " | %.2f", r.psnr);
      psnr_row << buf;
      sweep_csv << csv::format_double(alpha) << ',' << csv::format_double(gamma) << ','
                << r.retained_count << ',' << csv::format_double(r.re) << ','
                << (std::isinf(r.psnr) ? std::string("inf") : csv::format_double(r.psnr)) << ','
                << csv::format_double(r.imag_residue) << '\n';
    }
    table << '\n' << re_row.str() << '\n' << psnr_row.str() << '\n';
  }
  std::cout << table.str();
  if (!a.out.empty()) emit(a.out, sweep_csv.str());
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string sizes = "16,32,64";
  std::size_t reps = 3;
  double alpha = 0.9;
  std::uint64_t seed = 1;
  bool allow_large = false;
  bool skip_full_eig = false;
  std::string json;
  std::string csv_out;
};

void add_bench_command(CLI::App& app, BenchArgs& a) {
  auto* b = app.add_subcommand("bench", "Factorized vs dense transform and eigendecomposition timing");
  b->add_option("--sizes", a.sizes, "Square factor sizes N (shape N x N), comma-separated")
      ->default_val("16,32,64");
  b->add_option("--reps", a.reps, "Repetitions per measurement (median reported, >= 3)")->default_val(3);
  b->add_option("--alpha", a.alpha, "Fractional order")->default_val(0.9);
  b->add_option("--seed", a.seed, "Seed of the random test signal")->default_val(1);
  b->add_flag("--allow-large", a.allow_large, "Allow products above 4096 vertices");
  b->add_flag("--skip-full-eig", a.skip_full_eig, "Do not time the full product eigendecomposition");
  b->add_option("--json", a.json, "BenchResult JSON of the largest shape (default stdout)");
  b->add_option("--csv", a.csv_out, "Timing CSV across the sweep");
}

int run_bench_command(const BenchArgs& a) {
  BenchOptions options;
  options.repetitions = a.reps;
  options.alpha = a.alpha;
  options.seed = a.seed;
  options.allow_large = a.allow_large;
  options.full_eigendecomposition = !a.skip_full_eig;
  std::vector<BenchResult> results;
  for (const auto& item : split_list(a.sizes)) {
    std::size_t n = 0;
    try {
      n = csv::parse_size(item, 0);
    } catch (const ParseError&) {
      throw UsageError("--sizes entry '" + item + "' is not a size");
    }
    results.push_back(run_bench(n, n, options));
    const auto& r = results.back();
    std::cerr << n << "x" << n << ": apply speedup " << r.speedup_apply << ", eig speedup "
              << r.speedup_eig << "\n";
  }
  if (results.empty()) throw UsageError("--sizes lists no shapes");
  if (!a.csv_out.empty()) emit(a.csv_out, bench_sweep_to_csv(results));
  emit(a.json, bench_to_json(results.back()));
  return 0;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string dir;
  std::string out;
  double min_coverage = 0.95;
  std::size_t sample = 0;
  std::uint64_t seed = 1;
};

void add_ingest_command(CLI::App& app, IngestArgs& a) {
  auto* i = app.add_subcommand("ingest", "Build a station x day temperature bundle from GSOD CSVs");
  i->add_option("--dir", a.dir, "Directory of GSOD yearly CSV files")->required();
  i->add_option("--out", a.out, "Bundle output directory")->required();
  i->add_option("--min-coverage", a.min_coverage, "Minimum fraction of days present")->default_val(0.95);
  i->add_option("--sample", a.sample, "Random station subset size (0 keeps all)")->default_val(0);
  i->add_option("--seed", a.seed, "Seed of the station sample")->default_val(1);
}

int run_ingest(const IngestArgs& a) {
  if (!std::filesystem::is_directory(a.dir)) throw UsageError("'" + a.dir + "' is not a directory");
  auto load = load_gsod_directory(a.dir);
  for (const auto& r : load.rejected) std::cerr << "skipped " << r << "\n";
  std::vector<StationRecord> eligible;
  for (auto& r : load.records) {
    if (r.coverage() >= a.min_coverage) eligible.push_back(std::move(r));
  }
  if (a.sample > 0) eligible = sample_records(std::move(eligible), a.sample, a.seed);
  const auto dataset = assemble_dataset(std::move(eligible), a.min_coverage);
  write_dataset_bundle(dataset, a.out);
  std::cerr << "wrote " << dataset.stations.size() << " stations to " << a.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SignalArgs {
  std::string dims;
  std::string pattern = "random";
  std::uint64_t seed = 1;
  std::string out;
};

void add_signal_command(CLI::App& app, SignalArgs& a) {
  auto* s = app.add_subcommand("signal", "Generate a test signal CSV");
  s->add_option("--dims", a.dims, "Comma-separated axis sizes")->required();
  s->add_option("--pattern", a.pattern, "random (uniform in [-1, 1]) or smooth")
      ->check(CLI::IsMember({"random", "smooth"}));
  s->add_option("--seed", a.seed, "Seed for the random pattern")->default_val(1);
  s->add_option("--out,-o", a.out, "Output file (default stdout)");
}

int run_signal(const SignalArgs& a) {
  std::vector<std::size_t> dims;
  for (const auto& item : split_list(a.dims)) {
    try {
      dims.push_back(csv::parse_size(item, 0));
    } catch (const ParseError&) {
      throw UsageError("--dims entry '" + item + "' is not a size");
    }
  }
  if (dims.empty()) throw UsageError("--dims lists no axes");
  const std::size_t total = element_count(dims);
  Eigen::VectorXd values(static_cast<Eigen::Index>(total));
  std::mt19937_64 rng(a.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double v = 1.0;
    if (a.pattern == "random") {
      v = unit(rng);
    } else {
      const auto idx = unflatten(dims, flat);
      for (std::size_t i = 0; i < dims.size(); ++i) {
        v *= std::cos(std::numbers::pi * (static_cast<double>(idx[i]) + 0.5) / static_cast<double>(dims[i])) + 2.0;
      }
    }
    values(static_cast<Eigen::Index>(flat)) = v;
  }
  emit(a.out, signal_to_csv(ProductSignal(dims, values)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-dimensional graph fractional Fourier transform toolkit"};
  app.require_subcommand(1);
  GraphArgs graph_args;
  TransformArgs transform_args;
  CompressArgs compress_args;
  BenchArgs bench_args;
  IngestArgs ingest_args;
  SignalArgs signal_args;
  add_graph_command(app, graph_args);
  add_transform_command(app, transform_args);
  add_compress_command(app, compress_args);
  add_bench_command(app, bench_args);
  add_ingest_command(app, ingest_args);
  add_signal_command(app, signal_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("graph")) return run_graph(*app.get_subcommand("graph"), graph_args);
    if (app.got_subcommand("transform")) return run_transform(transform_args);
    if (app.got_subcommand("compress")) return run_compress(compress_args);
    if (app.got_subcommand("bench")) return run_bench_command(bench_args);
    if (app.got_subcommand("ingest")) return run_ingest(ingest_args);
    if (app.got_subcommand("signal")) return run_signal(signal_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
