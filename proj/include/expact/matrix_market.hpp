// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_MATRIX_MARKET_HPP_
#define EXPACT_MATRIX_MARKET_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "expact/csr.hpp"
#include "expact/errors.hpp"

namespace expact {

/// Parsed Matrix Market content: either a sparse square matrix (coordinate
/// format, symmetric storage expanded, duplicates summed) or a dense block
/// (array format).
struct MatrixMarketData {
  bool sparse = false;
  CsrMatrix csr;        // when sparse
  Eigen::MatrixXd dense;  // when !sparse
};

namespace detail {

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace detail

inline MatrixMarketData read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);

  std::string line;
  int lineno = 1;
  if (!std::getline(in, line))
    throw ParseError(path + ": empty file", lineno);
  std::istringstream hdr(detail::lower(line));
  std::string banner, object, format, field, symmetry;
  hdr >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix")
    throw ParseError(path + ": missing MatrixMarket banner", lineno);
  if (format != "coordinate" && format != "array")
    throw ParseError(path + ": unsupported format '" + format + "'", lineno);
  if (field != "real" && field != "integer")
    throw ParseError(path + ": unsupported field '" + field + "'", lineno);
  const bool symmetric = symmetry == "symmetric";
  const bool skew = symmetry == "skew-symmetric";
  if (!symmetric && !skew && symmetry != "general")
    throw ParseError(path + ": unsupported symmetry '" + symmetry + "'",
                     lineno);

  // Skip comments and blank lines to the size line.
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] != '%' &&
        line.find_first_not_of(" \t\r") != std::string::npos)
      break;
  }
  std::istringstream sz(line);

  MatrixMarketData out;
  if (format == "coordinate") {
    long rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols >> nnz) || rows < 1 || cols != rows || nnz < 0)
      throw ParseError(path + ": bad coordinate size line (square required)",
                       lineno);
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(symmetric || skew ? 2 * nnz : nnz));
    for (long e = 0; e < nnz; ++e) {
      if (!std::getline(in, line))
        throw ParseError(path + ": unexpected end of file", lineno);
      ++lineno;
      std::istringstream ls(line);
      long i = 0, j = 0;
      double v = 0.0;
      if (!(ls >> i >> j >> v) || i < 1 || i > rows || j < 1 || j > cols)
        throw ParseError(path + ": bad coordinate entry", lineno);
      trips.push_back({static_cast<int>(i - 1), static_cast<int>(j - 1), v});
      if ((symmetric || skew) && i != j)
        trips.push_back({static_cast<int>(j - 1), static_cast<int>(i - 1),
                         skew ? -v : v});
    }
    out.sparse = true;
    out.csr = CsrMatrix::from_triplets(static_cast<int>(rows), trips);
  } else {
    long rows = 0, cols = 0;
    if (!(sz >> rows >> cols) || rows < 1 || cols < 1)
      throw ParseError(path + ": bad array size line", lineno);
    out.dense.resize(rows, cols);
    // Array format is column-major; symmetric storage holds the lower
    // triangle only.
    for (long j = 0; j < cols; ++j) {
      const long istart = symmetric || skew ? j : 0;
      for (long i = istart; i < rows; ++i) {
        if (!std::getline(in, line))
          throw ParseError(path + ": unexpected end of file", lineno);
        ++lineno;
        std::istringstream ls(line);
        double v = 0.0;
        if (!(ls >> v))
          throw ParseError(path + ": bad array entry", lineno);
        out.dense(i, j) = v;
        if ((symmetric || skew) && i != j)
          out.dense(j, i) = skew ? -v : v;
      }
    }
  }
  return out;
}

/// Reads a file that must contain a sparse square matrix.
inline CsrMatrix read_matrix_market_csr(const std::string& path) {
  MatrixMarketData d = read_matrix_market(path);
  if (d.sparse) return d.csr;
  if (d.dense.rows() != d.dense.cols())
    throw ParseError(path + ": dense matrix is not square", 0);
  std::vector<Triplet> trips;
  for (int i = 0; i < d.dense.rows(); ++i)
    for (int j = 0; j < d.dense.cols(); ++j)
      if (d.dense(i, j) != 0.0)
        trips.push_back({i, j, d.dense(i, j)});
  return CsrMatrix::from_triplets(static_cast<int>(d.dense.rows()), trips);
}

/// Reads a file as a dense block (array format, or densified coordinate).
inline Eigen::MatrixXd read_matrix_market_dense(const std::string& path) {
  MatrixMarketData d = read_matrix_market(path);
  if (!d.sparse) return d.dense;
  return d.csr.to_dense();
}

/// Writes a CSR matrix in coordinate general format; 17 significant digits
/// make the write/read round trip bitwise exact.
inline void write_matrix_market(const std::string& path, const CsrMatrix& A) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path, 0);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.n << ' ' << A.n << ' ' << A.nnz() << '\n';
  out.precision(17);
  for (int i = 0; i < A.n; ++i)
    for (int k = A.row_ptr[static_cast<size_t>(i)];
         k < A.row_ptr[static_cast<size_t>(i) + 1]; ++k)
      out << i + 1 << ' ' << A.col_idx[static_cast<size_t>(k)] + 1 << ' '
          << A.values[static_cast<size_t>(k)] << '\n';
}

/// Writes a dense block in array general format (column-major).
inline void write_matrix_market(const std::string& path,
                                const Eigen::MatrixXd& M) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path, 0);
  out << "%%MatrixMarket matrix array real general\n";
  out << M.rows() << ' ' << M.cols() << '\n';
  out.precision(17);
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i) out << M(i, j) << '\n';
}

}  // namespace expact

#endif  // EXPACT_MATRIX_MARKET_HPP_
