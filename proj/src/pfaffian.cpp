// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/pfaffian.hpp"

#include <cmath>
#include <stdexcept>

namespace mzm {

namespace {

// Core Parlett-Reid sweep on an antisymmetrized copy.  Returns the product
// of superdiagonal pivots in scaled form (p, e), pf = p * 2^e.
std::pair<std::complex<double>, long> parlett_reid(Eigen::MatrixXcd a) {
    const Eigen::Index n = a.rows();
    std::complex<double> p(1, 0);
    long e = 0;
    for (Eigen::Index k = 0; k + 1 < n; k += 2) {
        // Partial pivot: largest |A(i,k)| for i > k moves to row k+1.
        Eigen::Index kp = k + 1;
        double best = std::abs(a(k + 1, k));
        for (Eigen::Index i = k + 2; i < n; ++i)
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                kp = i;
            }
        if (best == 0.0) return {0.0, 0};  // column is zero -> singular
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            p = -p;
        }
        const std::complex<double> pivot = a(k, k + 1);
        p *= pivot;
        // Keep |p| in [1, 2) so long products neither overflow nor vanish.
        if (p != 0.0) {
            int scale;
            std::frexp(std::abs(p), &scale);
            if (scale != 1) {
                p = std::ldexp(1.0, -(scale - 1)) * p;
                e += scale - 1;
            }
        }
        if (k + 2 >= n) break;
        // Zero row k beyond the pivot by a unit congruence; only the
        // trailing block matters for the remaining recursion:
        //   D(i,j) <- D(i,j) - (b_i c_j - b_j c_i)/pivot,
        // with b = A(k, k+2:), c = A(k+1, k+2:).
        const Eigen::Index m = n - (k + 2);
        Eigen::VectorXcd b = a.row(k).segment(k + 2, m);
        Eigen::VectorXcd c = a.row(k + 1).segment(k + 2, m);
        a.block(k + 2, k + 2, m, m).noalias() -=
            (b * c.transpose() - c * b.transpose()) / pivot;
    }
    return {p, e};
}

}  // namespace

double skewness_residual(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
    return (a + a.transpose()).cwiseAbs().maxCoeff();
}

std::pair<std::complex<double>, long> pfaffian_scaled(const Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("matrix must be square");
    if (n == 0) return {1.0, 0};
    const double scale = a.cwiseAbs().maxCoeff();
    if (skewness_residual(a) > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("matrix is not skew-symmetric");
    if (n % 2) return {0.0, 0};
    return parlett_reid(0.5 * (a - a.transpose()));
}

std::complex<double> pfaffian(const Eigen::MatrixXcd& a) {
    auto [p, e] = pfaffian_scaled(a);
    return std::ldexp(1.0, static_cast<int>(std::max(-1074L, std::min(1023L, e)))) * p;
}

}  // namespace mzm
