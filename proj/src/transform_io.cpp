#include "mgfrft/transform_io.hpp"

#include <algorithm>
#include <sstream>

#include "mgfrft/csv.hpp"
#include "mgfrft/error.hpp"

namespace mgfrft {

std::vector<double> laplacian_eigsums(std::span<const FractionalBasis> bases,
                                      const std::vector<std::size_t>& dims) {
  if (bases.size() != dims.size()) throw ShapeError("one basis per axis is required");
  const std::size_t total = element_count(dims);
  std::vector<double> out(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    out[flat] = eigenvalue_sum(bases, unflatten(dims, flat));
  }
  return out;
}

std::vector<double> adjacency_eigsums(std::span<const GeneralEigenBasis> bases,
                                      const std::vector<std::size_t>& dims) {
  if (bases.size() != dims.size()) throw ShapeError("one basis per axis is required");
  const std::size_t total = element_count(dims);
  std::vector<double> out(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    const MultiIndex idx = unflatten(dims, flat);
    cdouble sum = 0.0;
    for (std::size_t i = 0; i < bases.size(); ++i) sum += bases[i].j(static_cast<Eigen::Index>(idx[i]));
    out[flat] = sum.real();
  }
  return out;
}

std::string coefficients_to_csv(const SpectralCoefficients& c, std::span<const double> eigsums) {
  if (eigsums.size() != static_cast<std::size_t>(c.data.size())) {
    throw ShapeError("one eigenvalue sum per coefficient is required");
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < c.dims.size(); ++i) out << 'l' << (i + 1) << ',';
  out << "re,im,eigsum\n";
  for (Eigen::Index flat = 0; flat < c.data.size(); ++flat) {
    for (std::size_t l : unflatten(c.dims, static_cast<std::size_t>(flat))) out << l << ',';
    out << csv::format_double(c.data(flat).real()) << ',' << csv::format_double(c.data(flat).imag())
        << ',' << csv::format_double(eigsums[static_cast<std::size_t>(flat)]) << '\n';
  }
  return out.str();
}

SpectralCoefficients coefficients_from_csv(const std::string& text, double alpha,
                                           SpectrumKind kind) {
  const auto rows = csv::lines(text);
  if (rows.empty()) throw ParseError("coefficient CSV is empty");
  const auto header = csv::split_line(rows.front());
  if (header.size() < 4 || header[header.size() - 3] != "re" || header[header.size() - 2] != "im" ||
      header.back() != "eigsum") {
    throw ParseError("coefficient CSV header must be l1,...,lm,re,im,eigsum", 1);
  }
  const std::size_t m = header.size() - 3;
  for (std::size_t i = 0; i < m; ++i) {
    if (header[i] != "l" + std::to_string(i + 1)) {
      throw ParseError("coefficient CSV header must be l1,...,lm,re,im,eigsum", 1);
    }
  }

  std::vector<std::pair<MultiIndex, cdouble>> entries;
  std::vector<std::size_t> dims(m, 0);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    const auto fields = csv::split_line(rows[r]);
    if (fields.size() != header.size()) throw ParseError("wrong number of fields", r + 1);
    MultiIndex idx(m);
    for (std::size_t i = 0; i < m; ++i) {
      idx[i] = csv::parse_size(fields[i], r + 1);
      dims[i] = std::max(dims[i], idx[i] + 1);
    }
    entries.emplace_back(std::move(idx), cdouble(csv::parse_double(fields[m], r + 1),
                                                 csv::parse_double(fields[m + 1], r + 1)));
  }
  if (entries.empty()) throw ParseError("coefficient CSV has no rows");
  const std::size_t total = element_count(dims);
  if (entries.size() != total) {
    throw ParseError("coefficient CSV has " + std::to_string(entries.size()) +
                     " rows but the multi-index range spans " + std::to_string(total));
  }
  SpectralCoefficients out{dims, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total)), alpha,
                           kind};
  std::vector<bool> seen(total, false);
  for (const auto& [idx, value] : entries) {
    const std::size_t flat = flat_index(dims, idx);
    if (seen[flat]) throw ParseError("coefficient CSV repeats a multi-index");
    seen[flat] = true;
    out.data(static_cast<Eigen::Index>(flat)) = value;
  }
  return out;
}

std::string spectrum_table_to_csv(std::span<const SpectrumRow> rows) {
  std::ostringstream out;
  const std::size_t m = rows.empty() ? 0 : rows.front().index.size();
  for (std::size_t i = 0; i < m; ++i) out << 'l' << (i + 1) << ',';
  out << "eigsum,re,im,abs\n";
  for (const auto& row : rows) {
    for (std::size_t l : row.index) out << l << ',';
    out << csv::format_double(row.eigsum) << ',' << csv::format_double(row.coefficient.real()) << ','
        << csv::format_double(row.coefficient.imag()) << ','
        << csv::format_double(std::abs(row.coefficient)) << '\n';
  }
  return out.str();
}

ProductSignal signal_from_csv(const std::string& text) {
  std::vector<std::string> rows = csv::lines(text);
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw ParseError("signal CSV is empty");

  const auto first = csv::split_line(rows.front());
  if (!first.empty() && first.front() == "dims") {
    std::vector<std::size_t> dims;
    for (std::size_t i = 1; i < first.size(); ++i) dims.push_back(csv::parse_size(first[i], 1));
    if (dims.empty()) throw ParseError("dims line lists no axes", 1);
    std::vector<double> values;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (rows[r].empty()) continue;
      for (const auto& field : csv::split_line(rows[r])) values.push_back(csv::parse_double(field, r + 1));
    }
    if (values.size() != element_count(dims)) {
      throw ParseError("signal CSV has " + std::to_string(values.size()) +
                       " values but dims multiply to " + std::to_string(element_count(dims)));
    }
    return ProductSignal(dims, Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
                                   values.data(), static_cast<Eigen::Index>(values.size()))));
  }

  const bool labelled = !first.empty() && first.front() == "station_id";
  const std::size_t start = labelled ? 1 : 0;
  const std::size_t skip = labelled ? 1 : 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::size_t nrows = 0;
  for (std::size_t r = start; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    const auto fields = csv::split_line(rows[r]);
    if (fields.size() <= skip) throw ParseError("signal row has no values", r + 1);
    const std::size_t width = fields.size() - skip;
    if (cols == 0) cols = width;
    if (width != cols) throw ParseError("signal rows have differing lengths", r + 1);
    for (std::size_t c = skip; c < fields.size(); ++c) values.push_back(csv::parse_double(fields[c], r + 1));
    ++nrows;
  }
  if (nrows == 0) throw ParseError("signal CSV has no rows");
  return ProductSignal({nrows, cols}, Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
                                          values.data(), static_cast<Eigen::Index>(values.size()))));
}

std::string signal_to_csv(const ProductSignal& f) {
  std::ostringstream out;
  std::size_t width = f.dims.back();
  if (f.dims.size() != 2) {
    out << "dims";
    for (std::size_t d : f.dims) out << ',' << d;
    out << '\n';
  }
  for (Eigen::Index i = 0; i < f.data.size(); ++i) {
    out << csv::format_double(f.data(i).real());
    out << ((static_cast<std::size_t>(i) + 1) % width == 0 ? '\n' : ',');
  }
  return out.str();
}

}  // namespace mgfrft
