// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/overlap.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "mzm/errors.hpp"
#include "mzm/evolution.hpp"
#include "mzm/fock.hpp"

using namespace mzm;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXcd random_phs(int half, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(half, half), b(half, half);
    for (int i = 0; i < half; ++i)
        for (int j = 0; j < half; ++j) {
            a(i, j) = cplx(g(rng), g(rng));
            b(i, j) = cplx(g(rng), g(rng));
        }
    a = ((a + a.adjoint()) / 2).eval();
    b = ((b - b.transpose()) / 2).eval();
    Eigen::MatrixXcd m(2 * half, 2 * half);
    m.topLeftCorner(half, half) = a;
    m.topRightCorner(half, half) = b;
    m.bottomLeftCorner(half, half) = -b.conjugate();
    m.bottomRightCorner(half, half) = -a.transpose();
    return m;
}

// Dense matrix of a LinearOp over a given frame, via the exact oracle.
Mat dense_linear_op(const FockSpace& fock, const Eigen::MatrixXcd& ref,
                    const LinearOp& op) {
    const int m = static_cast<int>(ref.cols());
    const int half = m;
    Mat out = Mat::Zero(fock.dim(), fock.dim());
    for (int i = 0; i < m; ++i) {
        if (op.alpha[i] != cplx(0, 0)) {
            Mat di = fock.dense_operator(
                [&](Vec& v) { fock.apply_mode(ref.col(i), v); });
            out += op.alpha[i] * di;
        }
        if (op.beta[i] != cplx(0, 0)) {
            Eigen::VectorXcd cre(2 * half);
            cre.head(half) = ref.col(i).tail(half).conjugate();
            cre.tail(half) = ref.col(i).head(half).conjugate();
            Mat ci = fock.dense_operator([&](Vec& v) { fock.apply_mode(cre, v); });
            out += op.beta[i] * ci;
        }
    }
    return out;
}

LinearOp random_linear_op(int m, std::mt19937& rng) {
    std::normal_distribution<double> g;
    LinearOp op{Eigen::VectorXcd(m), Eigen::VectorXcd(m)};
    for (int i = 0; i < m; ++i) {
        op.alpha[i] = cplx(g(rng), g(rng));
        op.beta[i] = cplx(g(rng), g(rng));
    }
    return op;
}

}  // namespace

TEST_CASE("mode_in_frame reproduces the operator on the oracle") {
    const int m = 3;
    NambuModes nm = diagonalize(random_phs(m, 7));
    FockSpace fock(2 * m);
    std::mt19937 rng(99);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 4; ++trial) {
        Eigen::VectorXcd w(2 * m);
        for (int i = 0; i < 2 * m; ++i) w[i] = cplx(g(rng), g(rng));
        LinearOp op = mode_in_frame(nm.modes, w);
        Mat direct = fock.dense_operator([&](Vec& v) { fock.apply_mode(w, v); });
        Mat recon = dense_linear_op(fock, nm.modes, op);
        CHECK((direct - recon).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("vacuum_expectation: hand-checked small cases") {
    const int m = 2;
    LinearOp d1 = frame_annihilator(m, 0), d2 = frame_annihilator(m, 1);
    LinearOp c1 = frame_creator(m, 0), c2 = frame_creator(m, 1);
    CHECK(vacuum_expectation({}) == cplx(1, 0));
    CHECK(vacuum_expectation({d1}) == cplx(0, 0));  // odd
    CHECK(vacuum_expectation({d1, c1}) == cplx(1, 0));
    CHECK(vacuum_expectation({c1, d1}) == cplx(0, 0));
    CHECK(vacuum_expectation({d1, c2}) == cplx(0, 0));
    CHECK(vacuum_expectation({d1, d2, c2, c1}) == cplx(1, 0));
    CHECK(vacuum_expectation({d2, d1, c2, c1}) == cplx(-1, 0));
    CHECK(vacuum_expectation({d1, c2, d2, c1}) == cplx(0, 0));  // d2 c1 |0> = 0
    CHECK(vacuum_expectation({d1, c1, d2, c2}) == cplx(1, 0));
}

TEST_CASE("scaled_vacuum_expectation keeps tiny products representable") {
    const int m = 2;
    LinearOp d1 = frame_annihilator(m, 0);
    LinearOp c1 = frame_creator(m, 0);
    {
        auto [p, e] = scaled_vacuum_expectation({d1, c1});
        CHECK(std::ldexp(1.0, static_cast<int>(e)) * p == cplx(1, 0));
    }
    // 400 factors of 1e-3 put the product at 1e-1200, far below double
    // range; the (mantissa, exponent) form keeps the full value.
    std::vector<LinearOp> ops;
    for (int k = 0; k < 400; ++k) {
        ops.push_back(LinearOp{1e-3 * d1.alpha, 1e-3 * d1.beta});
        ops.push_back(c1);
    }
    auto [p, e] = scaled_vacuum_expectation(ops);
    const double log2_value =
        std::log2(std::abs(p)) + static_cast<double>(e) + 1200.0 * std::log2(10.0);
    CHECK(std::abs(log2_value) < 1e-6);
    CHECK(std::abs(vacuum_expectation(ops)) < 1e-300);  // collapsed form saturates
}

TEST_CASE("vacuum_expectation matches the oracle on random strings") {
    const int m = 3;
    NambuModes nm = diagonalize(random_phs(m, 17));
    FockSpace fock(2 * m);
    Vec vac = fock.frame_vacuum(nm.modes);
    std::mt19937 rng(2024);
    for (int len : {2, 4, 6}) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<LinearOp> ops;
            Mat prod = Mat::Identity(fock.dim(), fock.dim());
            for (int k = 0; k < len; ++k) {
                ops.push_back(random_linear_op(m, rng));
                prod = prod * dense_linear_op(fock, nm.modes, ops.back());
            }
            cplx direct = (vac.adjoint() * prod * vac).value();
            cplx wick = vacuum_expectation(ops);
            CHECK(std::abs(direct - wick) < 1e-9);
        }
    }
}

TEST_CASE("vacuum_expectation is adjoint-consistent") {
    const int m = 3;
    std::mt19937 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<LinearOp> ops;
        for (int k = 0; k < 4; ++k) ops.push_back(random_linear_op(m, rng));
        std::vector<LinearOp> rev;
        for (int k = 3; k >= 0; --k) rev.push_back(ops[k].adjoint());
        cplx a = vacuum_expectation(ops);
        cplx b = vacuum_expectation(rev);
        CHECK(std::abs(a - std::conj(b)) < 1e-12);
    }
}

TEST_CASE("completeness: inserting a full basis resolves the identity") {
    // sum_m <0|A|m><m|B|0> = <0|AB|0> with |m> = ordered creator strings;
    // validates the occupation-ordering conventions against the algebra.
    const int m = 2;
    std::mt19937 rng(47);
    std::vector<LinearOp> a_ops, b_ops;
    for (int k = 0; k < 2; ++k) {
        a_ops.push_back(random_linear_op(m, rng));
        b_ops.push_back(random_linear_op(m, rng));
    }
    std::vector<LinearOp> ab = a_ops;
    ab.insert(ab.end(), b_ops.begin(), b_ops.end());
    cplx direct = vacuum_expectation(ab);

    cplx total = 0;
    for (unsigned occ = 0; occ < 4; ++occ) {
        // <0|A|m>: A then creators of m in ascending label order
        std::vector<LinearOp> left = a_ops;
        for (int i = 0; i < m; ++i)
            if (occ & (1u << i)) left.push_back(frame_creator(m, i));
        // <m|B|0>: annihilators of m in ascending order, then B
        std::vector<LinearOp> right;
        for (int i = 0; i < m; ++i)
            if (occ & (1u << i)) right.push_back(frame_annihilator(m, i));
        std::reverse(right.begin(), right.end());
        right.insert(right.end(), b_ops.begin(), b_ops.end());
        total += vacuum_expectation(left) * vacuum_expectation(right);
    }
    CHECK(std::abs(direct - total) < 1e-10);
}

TEST_CASE("build_common_vacuum reconstructs the target vacuum") {
    const int m = 3;
    FockSpace fock(2 * m);
    int odd_seen = 0, even_seen = 0;
    for (unsigned seed = 0; seed < 6; ++seed) {
        NambuModes ref = diagonalize(random_phs(m, 300 + seed));
        NambuModes tgt = diagonalize(random_phs(m, 400 + seed));
        CommonVacuum cv = build_common_vacuum(ref.modes, tgt.modes);
        (cv.builders.size() % 2 ? odd_seen : even_seen)++;

        Vec state = fock.frame_vacuum(ref.modes);
        for (auto it = cv.builders.rbegin(); it != cv.builders.rend(); ++it) {
            Mat op = dense_linear_op(fock, ref.modes, *it);
            state = op * state;
        }
        state *= cv.inv_sqrt_norm;
        CAPTURE(seed);
        CHECK(std::abs(state.norm() - 1.0) < 1e-9);
        for (int k = 0; k < m; ++k) {
            Vec killed = state;
            fock.apply_mode(tgt.modes.col(k), killed);
            CHECK(killed.norm() < 1e-9);
        }
        Vec direct = fock.frame_vacuum(tgt.modes);
        CHECK(std::abs(std::abs((direct.adjoint() * state).value()) - 1.0) < 1e-9);
    }
    // both parity sectors must have been exercised
    CHECK(odd_seen > 0);
    CHECK(even_seen > 0);
}

TEST_CASE("common vacuum of a frame with itself is trivial") {
    NambuModes ref = diagonalize(random_phs(3, 777));
    CommonVacuum cv = build_common_vacuum(ref.modes, ref.modes);
    CHECK(cv.builders.empty());
    CHECK(cv.inv_sqrt_norm == 1.0);
    CHECK(cv.n_pairs == 0);
    CHECK(cv.n_occupied == 0);
}
