// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Pfaffian of complex skew-symmetric matrices.
//
// pf(A) is computed by Parlett-Reid tridiagonalization with partial
// pivoting: congruence transformations A <- P A P^T preserve the Pfaffian
// up to the tracked pivot sign, and for a skew tridiagonal matrix the
// Pfaffian is the product of the superdiagonal entries of the even rows.
// O(n^3), numerically the workhorse behind every amplitude evaluated by
// the Wick-contraction machinery.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace mzm {

// Largest |A + A^T| entry, as a skewness diagnostic.
double skewness_residual(const Eigen::MatrixXcd& a);

// Pfaffian of a skew-symmetric matrix.  Odd dimension gives 0.  The input
// is checked for skewness to an absolute 1e-12 * max|entry| tolerance.
std::complex<double> pfaffian(const Eigen::MatrixXcd& a);

// Pfaffian with the scale factored out: returns (p, e) with
// pf(A) = p * 2^e and p either 0 or with |p| in [1, 2).  Keeps products
// pf * 1/sqrt(N) representable when vacua become nearly orthogonal.
std::pair<std::complex<double>, long> pfaffian_scaled(const Eigen::MatrixXcd& a);

}  // namespace mzm
