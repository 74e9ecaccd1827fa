#pragma once

#include <span>
#include <string>
#include <vector>

#include "mgfrft/transform.hpp"

namespace mgfrft {

/// Per-coefficient display keys in flat (row-major) order.
std::vector<double> laplacian_eigsums(std::span<const FractionalBasis> bases,
                                      const std::vector<std::size_t>& dims);
/// Real part of the adjacency eigenvalue sum j_l1 + ... + j_lm.
std::vector<double> adjacency_eigsums(std::span<const GeneralEigenBasis> bases,
                                      const std::vector<std::size_t>& dims);

/// Header `l1,...,lm,re,im,eigsum`, one row per multi-index in row-major order.
std::string coefficients_to_csv(const SpectralCoefficients& c, std::span<const double> eigsums);
/// Reads the coefficient CSV; every multi-index must appear exactly once.
SpectralCoefficients coefficients_from_csv(const std::string& text, double alpha,
                                           SpectrumKind kind);

/// Header `l1,...,lm,eigsum,re,im,abs`, rows in spectrum_table order.
std::string spectrum_table_to_csv(std::span<const SpectrumRow> rows);

/// Signal CSV, one of:
///  * a plain numeric matrix, rows = first-axis nodes, columns = second-axis nodes;
///  * a labelled matrix whose header starts with `station_id` and whose rows
///    start with a label (the ingest bundle layout);
///  * a first line `dims,N1,...,Nm` followed by all values in row-major order.
/// Complex values are not accepted; signals are real.
ProductSignal signal_from_csv(const std::string& text);
/// Writes real parts. 2-D signals use the matrix layout, others the dims layout.
std::string signal_to_csv(const ProductSignal& f);

}  // namespace mgfrft
