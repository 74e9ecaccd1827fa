#include "mgfrft/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mgfrft/error.hpp"

namespace mgfrft {
namespace {

using RowMajorXcd = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_dims(const std::vector<std::size_t>& dims, Eigen::Index size) {
  if (dims.empty()) throw ShapeError("a product signal needs at least one axis");
  for (std::size_t d : dims) {
    if (d == 0) throw ShapeError("product signal axes must be non-empty");
  }
  if (element_count(dims) != static_cast<std::size_t>(size)) {
    std::ostringstream msg;
    msg << "product signal has " << size << " elements but its dims multiply to "
        << element_count(dims);
    throw ShapeError(msg.str());
  }
}

void require_bases_match(const std::vector<std::size_t>& dims, std::span<const FractionalBasis> bases) {
  if (bases.size() != dims.size()) {
    throw ShapeError("got " + std::to_string(bases.size()) + " factor bases for a " +
                     std::to_string(dims.size()) + "-dimensional signal");
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (static_cast<std::size_t>(bases[i].size()) != dims[i]) {
      throw ShapeError("axis " + std::to_string(i) + " has " + std::to_string(dims[i]) +
                       " nodes but its basis has " + std::to_string(bases[i].size()));
    }
    if (bases[i].alpha != bases.front().alpha) {
      throw ParameterError("all factor bases must share one fractional order");
    }
  }
}

std::vector<Eigen::MatrixXcd> kappa_adjoints(std::span<const FractionalBasis> bases) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(bases.size());
  for (const auto& b : bases) out.emplace_back(b.kappa.adjoint());
  return out;
}

std::vector<Eigen::MatrixXcd> kappas(std::span<const FractionalBasis> bases) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(bases.size());
  for (const auto& b : bases) out.push_back(b.kappa);
  return out;
}

}  // namespace

ProductSignal::ProductSignal(std::vector<std::size_t> d, Eigen::VectorXcd values)
    : dims(std::move(d)), data(std::move(values)) {
  require_dims(dims, data.size());
}

ProductSignal ProductSignal::zeros(std::vector<std::size_t> d) {
  const auto n = static_cast<Eigen::Index>(element_count(d));
  return ProductSignal(std::move(d), Eigen::VectorXcd(Eigen::VectorXcd::Zero(n)));
}

cdouble& ProductSignal::operator()(std::span<const std::size_t> index) {
  return data(static_cast<Eigen::Index>(flat_index(dims, index)));
}

cdouble ProductSignal::operator()(std::span<const std::size_t> index) const {
  return data(static_cast<Eigen::Index>(flat_index(dims, index)));
}

cdouble SpectralCoefficients::operator()(std::span<const std::size_t> index) const {
  return data(static_cast<Eigen::Index>(flat_index(dims, index)));
}

void mode_product(const Eigen::MatrixXcd& m, std::span<const std::size_t> dims, std::size_t axis,
                  Eigen::VectorXcd& data) {
  if (axis >= dims.size()) throw ShapeError("mode product axis out of range");
  const auto n = static_cast<Eigen::Index>(dims[axis]);
  if (m.rows() != n || m.cols() != n) {
    throw ShapeError("mode product matrix does not match axis " + std::to_string(axis));
  }
  if (static_cast<std::size_t>(data.size()) != element_count(dims)) {
    throw ShapeError("mode product data does not match dims");
  }
  Eigen::Index pre = 1;
  Eigen::Index post = 1;
  for (std::size_t i = 0; i < axis; ++i) pre *= static_cast<Eigen::Index>(dims[i]);
  for (std::size_t i = axis + 1; i < dims.size(); ++i) post *= static_cast<Eigen::Index>(dims[i]);

  // Each leading index owns an independent n x post row-major slab.
  RowMajorXcd scratch(n, post);
  for (Eigen::Index p = 0; p < pre; ++p) {
    Eigen::Map<RowMajorXcd> slab(data.data() + p * n * post, n, post);
    scratch.noalias() = m * slab;
    slab = scratch;
  }
}

void apply_factorized(std::span<const Eigen::MatrixXcd> factors, std::span<const std::size_t> dims,
                      Eigen::VectorXcd& data) {
  if (factors.size() != dims.size()) throw ShapeError("one factor matrix per axis is required");
  for (std::size_t axis = 0; axis < factors.size(); ++axis) {
    mode_product(factors[axis], dims, axis, data);
  }
}

Eigen::VectorXcd sgfrft_1d(const Eigen::VectorXcd& f, const FractionalBasis& basis) {
  if (f.size() != basis.size()) throw ShapeError("signal length does not match the basis");
  return basis.kappa.adjoint() * f;
}

Eigen::VectorXcd isgfrft_1d(const Eigen::VectorXcd& coefficients, const FractionalBasis& basis) {
  if (coefficients.size() != basis.size()) {
    throw ShapeError("coefficient length does not match the basis");
  }
  return basis.kappa * coefficients;
}

SpectralCoefficients l_mgfrft(const ProductSignal& f, std::span<const FractionalBasis> bases) {
  require_dims(f.dims, f.data.size());
  require_bases_match(f.dims, bases);
  SpectralCoefficients out{f.dims, f.data, bases.front().alpha, SpectrumKind::kLaplacian};
  const auto factors = kappa_adjoints(bases);
  apply_factorized(factors, out.dims, out.data);
  return out;
}

ProductSignal il_mgfrft(const SpectralCoefficients& coefficients,
                        std::span<const FractionalBasis> bases) {
  if (coefficients.kind != SpectrumKind::kLaplacian) {
    throw ParameterError("il_mgfrft needs Laplacian-kind coefficients");
  }
  require_dims(coefficients.dims, coefficients.data.size());
  require_bases_match(coefficients.dims, bases);
  ProductSignal out(coefficients.dims, coefficients.data);
  const auto factors = kappas(bases);
  apply_factorized(factors, out.dims, out.data);
  return out;
}

double check_factor_eigenrelation(std::span<const FractionalBasis> bases, const MultiIndex& index,
                                  std::size_t cap) {
  if (bases.empty()) throw ShapeError("at least one factor basis is required");
  std::vector<std::size_t> dims;
  for (const auto& b : bases) dims.push_back(static_cast<std::size_t>(b.size()));
  if (index.size() != dims.size()) throw ShapeError("multi-index length does not match the factors");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (index[i] >= dims[i]) throw ShapeError("multi-index entry out of range");
  }
  if (element_count(dims) > cap) {
    throw SizeError("dense eigen-relation check limited to " + std::to_string(cap) + " vertices");
  }

  Eigen::MatrixXcd op = bases.front().fractional_operator();
  Eigen::VectorXcd v = bases.front().kappa.col(static_cast<Eigen::Index>(index.front()));
  cdouble eigsum = bases.front().r(static_cast<Eigen::Index>(index.front()));
  for (std::size_t i = 1; i < bases.size(); ++i) {
    op = kronecker_sum_laplacian(op, bases[i].fractional_operator());
    const Eigen::VectorXcd col = bases[i].kappa.col(static_cast<Eigen::Index>(index[i]));
    v = kron(v, col);
    eigsum += bases[i].r(static_cast<Eigen::Index>(index[i]));
  }
  if (bases.size() > 1) op = column_to_row_major(op, dims);
  return (op * v - eigsum * v).cwiseAbs().maxCoeff();
}

AdjacencyTransform::AdjacencyTransform(std::span<const GeneralEigenBasis> bases, double alpha)
    : alpha_(alpha) {
  require_fractional_order(alpha);
  if (bases.empty()) throw ShapeError("at least one factor basis is required");
  for (const auto& basis : bases) {
    if (alpha == 1.0) {
      forward_.push_back(basis.v_inv);
      inverse_.push_back(basis.v);
      continue;
    }
    PrincipalPower p(basis.v_inv, alpha);
    forward_.push_back(p.power());
    inverse_.push_back(p.inverse());
    eigenvalues_.push_back(p.basis().j);
    branch_cut_ += p.diagnostics().branch_cut_eigenvalues;
  }
}

std::vector<std::size_t> AdjacencyTransform::dims() const {
  std::vector<std::size_t> out;
  for (const auto& f : forward_) out.push_back(static_cast<std::size_t>(f.rows()));
  return out;
}

SpectralCoefficients AdjacencyTransform::forward(const ProductSignal& f) const {
  require_dims(f.dims, f.data.size());
  if (f.dims != dims()) throw ShapeError("signal dims do not match the adjacency factors");
  SpectralCoefficients out{f.dims, f.data, alpha_, SpectrumKind::kAdjacency};
  apply_factorized(forward_, out.dims, out.data);
  return out;
}

ProductSignal AdjacencyTransform::inverse(const SpectralCoefficients& coefficients) const {
  if (coefficients.kind != SpectrumKind::kAdjacency) {
    throw ParameterError("ia_mgfrft needs adjacency-kind coefficients");
  }
  require_dims(coefficients.dims, coefficients.data.size());
  if (coefficients.dims != dims()) throw ShapeError("coefficient dims do not match the factors");
  ProductSignal out(coefficients.dims, coefficients.data);
  apply_factorized(inverse_, out.dims, out.data);
  return out;
}

bool factored_power_is_principal(const AdjacencyTransform& t) {
  if (t.alpha() == 1.0) return true;
  double max_sum = 0.0;
  double min_sum = 0.0;
  for (const auto& j : t.factor_eigenvalues()) {
    double hi = -std::numbers::pi;
    double lo = std::numbers::pi;
    for (Eigen::Index k = 0; k < j.size(); ++k) {
      cdouble z = j(k);
      if (z.imag() == 0.0) z = cdouble(z.real(), 0.0);
      const double arg = std::arg(z);
      hi = std::max(hi, arg);
      lo = std::min(lo, arg);
    }
    max_sum += hi;
    min_sum += lo;
  }
  return max_sum <= std::numbers::pi && min_sum > -std::numbers::pi;
}

SpectralCoefficients a_mgfrft(const ProductSignal& f, std::span<const GeneralEigenBasis> bases,
                              double alpha) {
  return AdjacencyTransform(bases, alpha).forward(f);
}

ProductSignal ia_mgfrft(const SpectralCoefficients& coefficients,
                        std::span<const GeneralEigenBasis> bases, double alpha) {
  if (coefficients.kind != SpectrumKind::kAdjacency) {
    throw ParameterError("ia_mgfrft needs adjacency-kind coefficients");
  }
  return AdjacencyTransform(bases, alpha).inverse(coefficients);
}

double eigenvalue_sum(std::span<const FractionalBasis> bases, const MultiIndex& index) {
  cdouble sum = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i) sum += bases[i].r(static_cast<Eigen::Index>(index[i]));
  return sum.real();
}

std::vector<SpectrumRow> spectrum_table(const SpectralCoefficients& coefficients,
                                        std::span<const FractionalBasis> bases) {
  if (coefficients.kind != SpectrumKind::kLaplacian) {
    throw ParameterError("spectrum_table needs Laplacian-kind coefficients");
  }
  require_bases_match(coefficients.dims, bases);
  std::vector<SpectrumRow> rows;
  rows.reserve(static_cast<std::size_t>(coefficients.data.size()));
  for (Eigen::Index flat = 0; flat < coefficients.data.size(); ++flat) {
    MultiIndex idx = unflatten(coefficients.dims, static_cast<std::size_t>(flat));
    const double sum = eigenvalue_sum(bases, idx);
    rows.push_back({std::move(idx), sum, coefficients.data(flat)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SpectrumRow& a, const SpectrumRow& b) {
    if (a.eigsum != b.eigsum) return a.eigsum < b.eigsum;
    return a.index < b.index;
  });
  return rows;
}

std::size_t count_duplicate_eigsums(std::span<const SpectrumRow> table, double tol) {
  std::size_t count = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (std::abs(table[i].eigsum - table[i - 1].eigsum) <= tol) ++count;
  }
  return count;
}

std::vector<FractionalBasis> laplacian_bases(const ProductGraph& pg, double alpha) {
  std::vector<FractionalBasis> out;
  out.reserve(pg.order());
  for (const Graph& g : pg.factors()) out.push_back(fractional_basis(eig_sym(laplacian(g)), alpha));
  return out;
}

double fractionalization_gap(const ProductGraph& pg, double alpha, std::size_t cap) {
  if (pg.node_count() > cap) {
    throw SizeError("dense fractionalization comparison limited to " + std::to_string(cap) +
                    " vertices");
  }
  const auto dims = pg.dims();
  const FractionalBasis full = fractional_basis(eig_sym(product_laplacian_row_major(pg)), alpha);
  const auto bases = laplacian_bases(pg, alpha);
  Eigen::MatrixXcd summed = bases.front().fractional_operator();
  for (std::size_t i = 1; i < bases.size(); ++i) {
    summed = kronecker_sum_adjacency(summed, bases[i].fractional_operator());
  }
  return (full.fractional_operator() - summed).cwiseAbs().maxCoeff();
}

}  // namespace mgfrft
