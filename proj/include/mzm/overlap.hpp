// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Many-body matrix elements of Gaussian states via Wick contraction.
//
// Everything is expressed over one reference quasiparticle frame (2M x M
// annihilator columns R, operators d_i = R_i^dag Psi).  A LinearOp is any
// operator sum_i alpha_i d_i + beta_i d_i^dag; vacuum expectations of
// products of LinearOps reduce to the Pfaffian of their pairwise
// contraction matrix.  The vacuum of a second frame is rebuilt inside the
// reference vacuum from the Bloch-Messiah form of the connecting
// Bogoliubov transformation:
//
//   |0_B> = N^{-1/2} prod_pairs (f_a f_b) prod_occ (f_j) |0_A>,
//
// where f are the target quasiparticles mixed into canonical form
// (f_a = x e_a - y e_b^dag etc.), each linear in the d's, and
// N = prod_pairs y^2.  This holds up to one global phase, the same for
// every matrix element taken against the construction.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace mzm {

struct LinearOp {
    Eigen::VectorXcd alpha, beta;  // op = sum alpha_i d_i + beta_i d_i^dag

    LinearOp adjoint() const { return {beta.conjugate(), alpha.conjugate()}; }
};

// Annihilator / creator of mode i in an M-mode frame.
LinearOp frame_annihilator(int n_modes, int i);
LinearOp frame_creator(int n_modes, int i);

// The operator a_w = w^dag Psi decomposed over the frame with annihilator
// columns ref_modes (2M x M).
LinearOp mode_in_frame(const Eigen::MatrixXcd& ref_modes, const Eigen::VectorXcd& w);

struct CommonVacuum {
    std::vector<LinearOp> builders;  // apply right-to-left, i.e. ops in
                                     // left-to-right string order
    // N^{-1/2} both ways: the plain value can overflow double once many
    // weak pairs stack up (their Pfaffian counterpart underflows in step),
    // so quantitative consumers combine the log2 form with
    // scaled_vacuum_expectation instead.
    double inv_sqrt_norm = 1;
    double log2_inv_sqrt_norm = 0;
    int n_pairs = 0;
    int n_occupied = 0;
};

// Expresses the vacuum of `target_modes` over the vacuum of `ref_modes`
// (both 2M x M annihilator halves of unitary frames), up to a global phase.
CommonVacuum build_common_vacuum(const Eigen::MatrixXcd& ref_modes,
                                 const Eigen::MatrixXcd& target_modes);

// <0_ref| ops[0] ops[1] ... |0_ref>.  Odd-length products vanish exactly.
std::complex<double> vacuum_expectation(const std::vector<LinearOp>& ops);

// Same value as (p, e) with result = p * 2^e and |p| in [1, 2) (p = 0 for
// a vanishing product): long operator strings leave double range, and the
// exponent cancels against the vacuum normalization only when both are
// kept symbolic.
std::pair<std::complex<double>, long> scaled_vacuum_expectation(
    const std::vector<LinearOp>& ops);

}  // namespace mzm
