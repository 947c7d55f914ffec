// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/overlap.hpp"

#include <cmath>

#include "mzm/bloch_messiah.hpp"
#include "mzm/errors.hpp"
#include "mzm/evolution.hpp"
#include "mzm/pfaffian.hpp"

namespace mzm {

using cplx = std::complex<double>;

LinearOp frame_annihilator(int n_modes, int i) {
    LinearOp op{Eigen::VectorXcd::Zero(n_modes), Eigen::VectorXcd::Zero(n_modes)};
    op.alpha[i] = 1;
    return op;
}

LinearOp frame_creator(int n_modes, int i) {
    LinearOp op{Eigen::VectorXcd::Zero(n_modes), Eigen::VectorXcd::Zero(n_modes)};
    op.beta[i] = 1;
    return op;
}

LinearOp mode_in_frame(const Eigen::MatrixXcd& ref_modes, const Eigen::VectorXcd& w) {
    const int half = static_cast<int>(ref_modes.cols());
    if (ref_modes.rows() != 2 * half || w.size() != 2 * half)
        throw Error("mode_in_frame dimension mismatch");
    // Psi = W0 D with W0 = [R | tau_x conj(R)], so a_w = (W0^dag w)^dag D.
    Eigen::VectorXcd proj_ann = ref_modes.adjoint() * w;
    Eigen::VectorXcd tw(2 * half);
    tw.head(half) = w.tail(half);
    tw.tail(half) = w.head(half);
    Eigen::VectorXcd proj_cre = ref_modes.transpose() * tw;  // (tau_x conj R)^dag w
    return {proj_ann.conjugate(), proj_cre.conjugate()};
}

CommonVacuum build_common_vacuum(const Eigen::MatrixXcd& ref_modes,
                                 const Eigen::MatrixXcd& target_modes) {
    const int m = static_cast<int>(ref_modes.cols());
    BogoliubovXY xy = bogoliubov_xy(ref_modes, target_modes);
    BlochMessiah bm = bloch_messiah(xy.x, xy.y);

    // Canonical target quasiparticles over the reference frame:
    //   f_j = sum_i (Xc)_ij e_i + (Yc)_ij e_i^dag  with  e_i = sum_p conj(C_pi) d_p,
    // so alpha(f_j) = x_j conj(C.col(j)) and beta contributions come through
    // C.col(i) with the canonical Y entries.
    auto e_alpha = [&](int i) { return Eigen::VectorXcd(bm.c.col(i).conjugate()); };
    auto e_beta = [&](int i) { return Eigen::VectorXcd(bm.c.col(i)); };

    CommonVacuum cv;
    cv.n_pairs = static_cast<int>(bm.pairs.size());
    cv.n_occupied = static_cast<int>(bm.occupied.size());
    double log2_norm = 0;
    for (const CanonicalPair& p : bm.pairs) {
        // f_a = x e_a - y e_b^dag,  f_b = x e_b + y e_a^dag
        LinearOp fa{p.x * e_alpha(p.k1), -p.y * e_beta(p.k2)};
        LinearOp fb{p.x * e_alpha(p.k2), p.y * e_beta(p.k1)};
        cv.builders.push_back(fa);
        cv.builders.push_back(fb);
        log2_norm += 2.0 * std::log2(p.y);
    }
    for (int j : bm.occupied) {
        // f_j = e_j^dag exactly (x = 0, diagonal y = 1)
        cv.builders.push_back(LinearOp{Eigen::VectorXcd::Zero(m), e_beta(j)});
    }
    cv.log2_inv_sqrt_norm = -0.5 * log2_norm;
    cv.inv_sqrt_norm = std::exp2(cv.log2_inv_sqrt_norm);
    return cv;
}

std::pair<cplx, long> scaled_vacuum_expectation(const std::vector<LinearOp>& ops) {
    const int n = static_cast<int>(ops.size());
    if (n % 2 != 0) return {0.0, 0};
    if (n == 0) return {1.0, 0};
    // <0| O_p O_q |0> = sum_i alpha_i^{(p)} beta_i^{(q)}: only d d^dag
    // cross terms survive in the vacuum.
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            cplx c = ops[p].alpha.cwiseProduct(ops[q].beta).sum();
            a(p, q) = c;
            a(q, p) = -c;
        }
    return pfaffian_scaled(a);
}

cplx vacuum_expectation(const std::vector<LinearOp>& ops) {
    const auto [p, e] = scaled_vacuum_expectation(ops);
    return std::ldexp(1.0, static_cast<int>(std::max(-1074L, std::min(1023L, e)))) * p;
}

}  // namespace mzm
