// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Canonical (Bloch-Messiah) form of a Bogoliubov transformation.
//
// Input: a canonical pair (X, Y) with X^dag X + Y^dag Y = I and X^T Y
// antisymmetric (as produced by bogoliubov_xy between two unitary frames).
// Output: unitaries C, D and per-mode reals (x_k, y_k) with
//
//   X = C Xc D^dag,   Y = conj(C) Yc D^dag,
//
// where Xc = diag(x), and Yc vanishes except on disjoint index pairs
// (a, b) with Yc_ab = +y, Yc_ba = -y, 0 < y < 1, x_a = x_b = sqrt(1 - y^2),
// plus diagonal entries Yc_jj = 1 on fully occupied modes (x_j = 0, where
// the target annihilator is a reference creator outright).  Xc^T Yc stays
// antisymmetric, which is all canonicity requires.  Remaining modes have
// x = 1: the frames share those quasiparticles up to unitary mixing.
//
// Construction: SVD Y = U S V^dag; G := U^T X V is block-diagonal over
// groups of equal singular values and antisymmetric within each group,
// with Youla structure: singular values of its antisymmetric part are the
// pair x's (in degenerate twos) plus exact zeros on occupied modes.  Each
// uniform sub-cluster is factored as B Jtilde B^T by a greedy antilinear
// pairing (u, A conj(u)); null directions are occupied singles.  The
// canonical entries are then read back from C^dag X D and C^T Y D, so the
// reconstruction identities hold to unitary round-off regardless of
// grouping decisions.

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mzm {

struct CanonicalPair {
    int k1 = 0, k2 = 0;  // k1 < k2
    double x = 0, y = 0;
};

struct BlochMessiah {
    Eigen::MatrixXcd c, d;             // M x M unitaries
    Eigen::VectorXd x;                 // diag of Xc, in [0, 1]
    std::vector<CanonicalPair> pairs;  // modes with 0 < y < 1
    std::vector<int> occupied;         // modes with x = 0, diagonal y = 1
    double structure_residual = 0;     // distance of C^dag X D, C^T Y D from form

    Eigen::MatrixXd xc() const;  // diag(x)
    Eigen::MatrixXd yc() const;  // canonical antisymmetric Y
};

BlochMessiah bloch_messiah(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y,
                           double canon_tol = 1e-7);

}  // namespace mzm
