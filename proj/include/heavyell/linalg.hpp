// Copyright 2026 The heavyell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Thin LAPACKE wrappers over DenseComplexMatrix. Real-valued inputs are
// routed to the d* drivers (real Schur / real bidiagonalization), complex
// ones to the z* drivers; callers see the same contract either way.

#include <complex>
#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "heavyell/errors.hpp"
#include "heavyell/matrix.hpp"

namespace heavyell::linalg {

namespace detail {

inline std::vector<double> real_parts(const DenseComplexMatrix& m) {
  std::vector<double> out(m.data().size());
  std::transform(m.data().begin(), m.data().end(), out.begin(),
                 [](const cplx& v) { return v.real(); });
  return out;
}

inline void check_info(lapack_int info, const char* routine) {
  if (info < 0) throw NumericError(std::string(routine) + ": illegal argument", info);
  if (info > 0) throw NumericError(std::string(routine) + ": iteration did not converge", info);
}

}  // namespace detail

/// All n eigenvalues of a square matrix, with multiplicity, in solver order.
/// Real input yields exact conjugate pairs.
inline std::vector<cplx> eigenvalues(const DenseComplexMatrix& m) {
  if (!m.square()) throw DimensionError("eigenvalues: matrix must be square");
  const auto n = static_cast<lapack_int>(m.rows());
  if (n == 0) return {};
  if (!m.all_finite()) throw NumericError("eigenvalues: non-finite entries");
  std::vector<cplx> out(m.rows());
  if (m.is_real()) {
    auto a = detail::real_parts(m);
    std::vector<double> wr(m.rows()), wi(m.rows());
    const lapack_int info = LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, a.data(), n, wr.data(),
                                          wi.data(), nullptr, n, nullptr, n);
    detail::check_info(info, "dgeev");
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = {wr[i], wi[i]};
  } else {
    std::vector<cplx> a(m.data().begin(), m.data().end());
    const lapack_int info = LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, a.data(), n, out.data(),
                                          nullptr, n, nullptr, n);
    detail::check_info(info, "zgeev");
  }
  return out;
}

/// Singular values s_1 >= ... >= s_min(rows, cols) >= 0.
inline std::vector<double> singular_values(const DenseComplexMatrix& m) {
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  const std::size_t k = std::min(m.rows(), m.cols());
  if (k == 0) return {};
  if (!m.all_finite()) throw NumericError("singular_values: non-finite entries");
  std::vector<double> s(k);
  if (m.is_real()) {
    auto a = detail::real_parts(m);
    const lapack_int info = LAPACKE_dgesdd(LAPACK_ROW_MAJOR, 'N', rows, cols, a.data(), cols,
                                           s.data(), nullptr, rows, nullptr, cols);
    detail::check_info(info, "dgesdd");
  } else {
    std::vector<cplx> a(m.data().begin(), m.data().end());
    const lapack_int info = LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'N', rows, cols, a.data(), cols,
                                           s.data(), nullptr, rows, nullptr, cols);
    detail::check_info(info, "zgesdd");
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower
/// triangle is read.
inline std::vector<double> hermitian_eigenvalues(const DenseComplexMatrix& m) {
  if (!m.square()) throw DimensionError("hermitian_eigenvalues: matrix must be square");
  const auto n = static_cast<lapack_int>(m.rows());
  if (n == 0) return {};
  std::vector<double> w(m.rows());
  if (m.is_real()) {
    auto a = detail::real_parts(m);
    detail::check_info(LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'L', n, a.data(), n, w.data()),
                       "dsyevd");
  } else {
    std::vector<cplx> a(m.data().begin(), m.data().end());
    detail::check_info(LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'L', n, a.data(), n, w.data()),
                       "zheevd");
  }
  return w;
}

inline DenseComplexMatrix inverse(const DenseComplexMatrix& m) {
  if (!m.square()) throw DimensionError("inverse: matrix must be square");
  const auto n = static_cast<lapack_int>(m.rows());
  DenseComplexMatrix out = m;
  std::vector<lapack_int> pivots(m.rows());
  lapack_int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, out.data().data(), n, pivots.data());
  if (info > 0) throw NumericError("inverse: matrix is singular", info);
  detail::check_info(info, "zgetrf");
  info = LAPACKE_zgetri(LAPACK_ROW_MAJOR, n, out.data().data(), n, pivots.data());
  detail::check_info(info, "zgetri");
  return out;
}

// Determinant through partial-pivot LU.
inline cplx determinant(const DenseComplexMatrix& m) {
  if (!m.square()) throw DimensionError("determinant: matrix must be square");
  const auto n = static_cast<lapack_int>(m.rows());
  DenseComplexMatrix lu = m;
  std::vector<lapack_int> pivots(m.rows());
  const lapack_int info =
      LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, lu.data().data(), n, pivots.data());
  if (info < 0) detail::check_info(info, "zgetrf");
  cplx det{1.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    det *= lu(i, i);
    if (pivots[i] != static_cast<lapack_int>(i + 1)) det = -det;
  }
  return det;
}

/// Orthonormal basis (as columns) of the span of the columns of m, m having
/// full column rank. Householder QR.
inline DenseComplexMatrix orthonormal_columns(const DenseComplexMatrix& m) {
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  if (m.cols() == 0) return DenseComplexMatrix(m.rows(), 0);
  if (m.cols() > m.rows()) throw DimensionError("orthonormal_columns: more columns than rows");
  DenseComplexMatrix q = m;
  std::vector<cplx> tau(m.cols());
  detail::check_info(
      LAPACKE_zgeqrf(LAPACK_ROW_MAJOR, rows, cols, q.data().data(), cols, tau.data()), "zgeqrf");
  detail::check_info(LAPACKE_zungqr(LAPACK_ROW_MAJOR, rows, cols, cols, q.data().data(), cols,
                                    tau.data()),
                     "zungqr");
  return q;
}

/// Distance from row i of m to the span of the other rows, by projecting
/// onto a QR basis of that span.
inline double row_distance(const DenseComplexMatrix& m, std::size_t i) {
  if (i >= m.rows()) throw DimensionError("row_distance: row index out of range");
  // Columns of `others` are the conjugated remaining rows; their span is the
  // conjugate of the row span, and conjugation preserves distances.
  DenseComplexMatrix others(m.cols(), m.rows() - 1);
  for (std::size_t r = 0, c = 0; r < m.rows(); ++r) {
    if (r == i) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) others(j, c) = std::conj(m(r, j));
    ++c;
  }
  const DenseComplexMatrix q = orthonormal_columns(others);
  std::vector<cplx> residual(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) residual[j] = std::conj(m(i, j));
  // Two passes of Gram-Schmidt against Q keep the residual orthogonal to
  // working precision even when the row is nearly in the span.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t c = 0; c < q.cols(); ++c) {
      cplx coeff{};
      for (std::size_t j = 0; j < m.cols(); ++j) coeff += std::conj(q(j, c)) * residual[j];
      for (std::size_t j = 0; j < m.cols(); ++j) residual[j] -= coeff * q(j, c);
    }
  }
  double s = 0.0;
  for (const auto& v : residual) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace heavyell::linalg
