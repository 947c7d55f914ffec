// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Quasiparticle frames and single-particle time evolution for Nambu
// matrices.
//
// Conventions (shared with fock.hpp): Psi = (c_1..c_M, c_1^dag..c_M^dag),
// a mode vector w represents the operator a_w = w^dag Psi, and the
// annihilator of a positive-energy eigenvector psi of M is d = psi^dag Psi;
// its creator corresponds to tau_x conj(psi).  A frame [modes | tau_x
// conj(modes)] is then a unitary 2M x 2M change of basis on Nambu space.
//
// Near-zero eigenvalue clusters (Majorana pairs split below a tolerance)
// have no preferred eigenbasis, so diagonalize() rebuilds them from
// self-conjugate (Majorana-like) vectors, optionally localized on declared
// site groups, and pairs consecutive self-conjugate vectors into
// annihilators d_k = (phi_{2k} + i phi_{2k+1})^dag Psi / sqrt(2).

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "mzm/bdg.hpp"

namespace mzm {

struct NambuModes {
    Eigen::VectorXd energies;       // M, ascending, >= 0 (zero cluster first)
    Eigen::MatrixXcd modes;         // 2M x M annihilator columns
    int n_zero = 0;                 // leading columns built from the zero cluster
    Eigen::MatrixXcd zero_majoranas;  // 2M x 2*n_zero self-conjugate vectors

    Eigen::MatrixXcd frame() const;  // [modes | tau_x conj(modes)]
};

// Diagonalizes a Hermitian, particle-hole-symmetric Nambu matrix.
// Eigenvalues with |e| < zero_factor * max|e| form the zero cluster.
// localize_sites, when given, lists one site group per Majorana in the
// cluster (2*n_zero groups); each self-conjugate vector is chosen to
// maximize its weight on its group, in order.
NambuModes diagonalize(const Eigen::MatrixXcd& m, double zero_factor = 1e-6,
                       const std::vector<std::vector<int>>& localize_sites = {});

// Time-ordered exponential S = Texp(-i \int_{t0}^{t1} M(t) dt) by midpoint
// sampling with steps of at most dt.  A mode vector evolves as w -> S w;
// this is simultaneously the Heisenberg flow of the operators a_w and the
// Schrodinger flow of single-particle wavefunctions.  Throws UnitarityLoss
// if the result drifts from unitarity beyond unitarity_tol.
Eigen::MatrixXcd propagate(const std::function<Eigen::MatrixXcd(double)>& m_of_t,
                           double t0, double t1, double dt,
                           double unitarity_tol = 1e-9);
Eigen::MatrixXcd propagate(const WireNetwork& net, double t0, double t1, double dt,
                           double unitarity_tol = 1e-9);

// Expansion of frame B's quasiparticles in frame A's:
//   d^B_j = sum_i conj(X_ij) d^A_i + conj(Y_ij) d^A_i^dag,
// with X = A^dag B and Y = A^T tau_x B for the annihilator halves A, B.
// Unitary frames give X^dag X + Y^dag Y = I and X^T Y antisymmetric.
struct BogoliubovXY {
    Eigen::MatrixXcd x, y;  // M x M
};
BogoliubovXY bogoliubov_xy(const Eigen::MatrixXcd& modes_a,
                           const Eigen::MatrixXcd& modes_b);

}  // namespace mzm
