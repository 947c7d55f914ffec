// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Logical readout and gate identification: reduction of monomials to
// signed logical Paulis (cross-checked against the dense oracle on the
// code space), Clifford reconstruction from frame images, the gate
// catalog, and end-to-end gate prediction for braid words and encoding
// swaps against exact many-body evolution.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "mzm/errors.hpp"
#include "mzm/fock.hpp"
#include "mzm/gates.hpp"
#include "mzm/monomial.hpp"
#include "mzm/pauli.hpp"
#include "mzm/stabilizer.hpp"

using namespace mzm;

namespace {

// All Pauli strings of length n in lexicographic I<X<Y<Z digit order.
std::vector<std::string> all_pauli_strings(int n) {
    const char digits[] = {'I', 'X', 'Y', 'Z'};
    std::vector<std::string> out;
    for (int code = 0; code < (1 << (2 * n)); ++code) {
        std::string s(static_cast<std::size_t>(n), 'I');
        for (int q = 0; q < n; ++q) s[q] = digits[(code >> (2 * q)) & 3];
        out.push_back(s);
    }
    return out;
}

// The signed Pauli equal to u P u^dag, found by exhaustive matching.
LogicalPauli image_of(const Mat& u, const std::string& base) {
    const int n = static_cast<int>(base.size());
    const Mat img = u * pauli_matrix(PauliString{0, base}) * u.adjoint();
    for (const auto& ops : all_pauli_strings(n)) {
        const Mat cand = pauli_matrix(PauliString{0, ops});
        if ((img - cand).norm() < 1e-9) return {+1, ops};
        if ((img + cand).norm() < 1e-9) return {-1, ops};
    }
    throw std::runtime_error("image is not a signed Pauli");
}

// Sparse-encoded logical basis state: qubit q set means both modes of
// its quadruple are occupied.
Vec logical_state(const FockSpace& fock, int bits, int n_qubits) {
    std::uint64_t occ = 0;
    for (int q = 0; q < n_qubits; ++q)
        if ((bits >> q) & 1) occ |= std::uint64_t{0b11} << (2 * q);
    return fock.basis_state(occ);
}

Mat code_projector(const FockSpace& fock, const EncodingLayout& layout) {
    Mat p = Mat::Identity(fock.dim(), fock.dim());
    for (const auto& c : layout.constraints()) p = fock.projector(c, +1) * p;
    return p;
}

}  // namespace

TEST_CASE("logical Pauli reduction on the sparse layout") {
    const auto layout = EncodingLayout::sparse(2);

    CHECK(logical_pauli(layout, layout.logical_z(1)) == LogicalPauli{+1, "ZI"});
    CHECK(logical_pauli(layout, layout.logical_x(2)) == LogicalPauli{+1, "IX"});
    CHECK(logical_pauli(layout, MajoranaMonomial(1, {1, 3})) == LogicalPauli{+1, "YI"});
    CHECK(logical_pauli(layout, layout.logical_z(1).negated()) == LogicalPauli{-1, "ZI"});

    // Representatives reaching the fourth site reduce through the
    // quadruple parity: -i g3 g4 ~ Z_1, -i g1 g4 ~ X_1, -i g2 g4 ~ Y_1.
    CHECK(logical_pauli(layout, pair_parity(3, 4)) == LogicalPauli{+1, "ZI"});
    CHECK(logical_pauli(layout, pair_parity(1, 4)) == LogicalPauli{+1, "XI"});
    CHECK(logical_pauli(layout, pair_parity(2, 4)) == LogicalPauli{+1, "YI"});
    CHECK(logical_pauli(layout, quad_parity(1, 2, 3, 4)) == LogicalPauli{+1, "II"});

    CHECK(logical_pauli(layout, layout.logical_z(1) * layout.logical_x(2)) ==
          LogicalPauli{+1, "ZX"});

    // Z_1 X_1 = i Y_1 is not Hermitian, so it is not a valid parity.
    CHECK_THROWS_AS(logical_pauli(layout, layout.logical_z(1) * layout.logical_x(1)), Error);
    // -i g4 g5 straddles two quadruples and anticommutes with both.
    CHECK_THROWS_AS(logical_pauli(layout, pair_parity(4, 5)), NotInLogicalSubspace);
    CHECK_THROWS_AS(logical_pauli(EncodingLayout::dense(2), pair_parity(3, 4)), Error);
}

TEST_CASE("logical reduction agrees with the dense oracle on the code space") {
    const auto layout = EncodingLayout::sparse(2);
    FockSpace fock(8);
    const Mat pcode = code_projector(fock, layout);

    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> pauli_digit(0, 3), coin(0, 1);
    const char digits[] = {'I', 'X', 'Y', 'Z'};

    for (int trial = 0; trial < 60; ++trial) {
        std::string ops = {digits[pauli_digit(rng)], digits[pauli_digit(rng)]};
        const int sign = coin(rng) ? +1 : -1;

        MajoranaMonomial ref;
        for (int q = 1; q <= 2; ++q) {
            if (ops[q - 1] == 'Z') ref = ref * layout.logical_z(q);
            if (ops[q - 1] == 'X') ref = ref * layout.logical_x(q);
            if (ops[q - 1] == 'Y') ref = ref * MajoranaMonomial(1, {4 * q - 3, 4 * q - 1});
        }
        MajoranaMonomial g = (sign < 0) ? ref.negated() : ref;
        if (coin(rng)) g = g * quad_parity(1, 2, 3, 4);
        if (coin(rng)) g = g * quad_parity(5, 6, 7, 8);

        const LogicalPauli reduced = logical_pauli(layout, g);
        CHECK(reduced.ops == ops);
        CHECK(reduced.sign == sign);

        // Operator identity on the code space, checked densely.
        const Mat lhs = fock.monomial_matrix(g) * pcode;
        const Mat rhs = static_cast<double>(reduced.sign) * fock.monomial_matrix(ref) * pcode;
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("stabilizer state reconstruction") {
    FockSpace fock(4);

    auto set = StabilizerSet::vacuum(4);
    CHECK((stabilizer_state(fock, set) - fock.basis_state(0)).norm() < 1e-12);

    set.apply_braid(2, 3);
    Vec braided = fock.basis_state(0);
    fock.apply_braid(2, 3, braided);
    CHECK(std::abs(std::abs(braided.dot(stabilizer_state(fock, set))) - 1.0) < 1e-12);

    auto measured = StabilizerSet::vacuum(4);
    measured.measure(pair_parity(2, 3), -1);
    Vec projected = fock.basis_state(0);
    fock.apply_projector(pair_parity(2, 3), -1, projected);
    projected /= projected.norm();
    CHECK(std::abs(std::abs(projected.dot(stabilizer_state(fock, measured))) - 1.0) < 1e-12);

    // Partial groups fix a subspace, not a state.
    CHECK_THROWS_AS(stabilizer_state(FockSpace(8), StabilizerSet::code_frame(
                                                         EncodingLayout::sparse(2))),
                    Error);
}

TEST_CASE("clifford reconstruction from frame images") {
    for (const auto& name :
         {"id", "X", "Y", "Z", "H", "S", "Sdg", "sqrt_X", "sqrt_Xdg", "sqrt_Y", "sqrt_Ydg"}) {
        const Mat u = gate_matrix_1q(name);
        const Mat recon = clifford_from_images({image_of(u, "Z")}, {image_of(u, "X")});
        CHECK(phase_free_match(u, recon) > 1.0 - 1e-12);
    }

    std::vector<Mat> two_qubit = {cnot_gate(1, 2, 2), cnot_gate(2, 1, 2), cz_gate(1, 2, 2),
                                  swap_gate(1, 2, 2),
                                  cnot_gate(1, 2, 2) *
                                      kron_chain({gate_matrix_1q("S"), gate_matrix_1q("H")})};
    for (const auto& u : two_qubit) {
        const Mat recon = clifford_from_images({image_of(u, "ZI"), image_of(u, "IZ")},
                                               {image_of(u, "XI"), image_of(u, "IX")});
        CHECK(phase_free_match(u, recon) > 1.0 - 1e-12);
    }

    CHECK_THROWS_AS(clifford_from_images({{+1, "Z"}}, {{+1, "Z"}}), Error);
    CHECK_THROWS_AS(clifford_from_images({{+1, "ZI"}, {+1, "IZ"}}, {{+1, "XX"}, {+1, "IX"}}),
                    Error);
}

TEST_CASE("gate catalog algebra and identification") {
    const Mat x = gate_matrix_1q("X"), z = gate_matrix_1q("Z"), id2 = Mat::Identity(2, 2);
    CHECK((gate_matrix_1q("sqrt_X") * gate_matrix_1q("sqrt_X") - x).norm() < 1e-12);
    CHECK((gate_matrix_1q("sqrt_Y") * gate_matrix_1q("sqrt_Y") - gate_matrix_1q("Y")).norm() <
          1e-12);
    CHECK((gate_matrix_1q("S") * gate_matrix_1q("S") - z).norm() < 1e-12);
    CHECK((gate_matrix_1q("H") * gate_matrix_1q("H") - id2).norm() < 1e-12);
    CHECK((gate_matrix_1q("sqrt_X") * gate_matrix_1q("sqrt_Xdg") - id2).norm() < 1e-12);
    CHECK((cnot_gate(1, 2, 2) * cnot_gate(1, 2, 2) - Mat::Identity(4, 4)).norm() < 1e-12);
    CHECK((swap_gate(1, 2, 2) * swap_gate(1, 2, 2) - Mat::Identity(4, 4)).norm() < 1e-12);

    // CNOT action on basis states, little-endian (qubit 1 = LSB).
    const Mat cn = cnot_gate(1, 2, 2);
    CHECK(std::abs(cn(3, 1) - 1.0) < 1e-15);  // |01> -> |11> (control qubit 1 set)
    CHECK(std::abs(cn(0, 0) - 1.0) < 1e-15);

    CHECK(identify_gate(gate_matrix_1q("sqrt_X")) == "sqrt_X");
    CHECK(identify_gate(embed_gate_1q(gate_matrix_1q("S"), 2, 2)) == "S on qubit 2");
    CHECK(identify_gate(cnot_gate(2, 1, 2)) == "cnot control 2 target 1");
    CHECK(identify_gate(kron_chain({gate_matrix_1q("H"), gate_matrix_1q("sqrt_X")})) ==
          "H on qubit 1, sqrt_X on qubit 2");
    CHECK(identify_gate(std::exp(std::complex<double>(0, 0.7)) * cz_gate(1, 2, 2)) == "cz");

    Mat t_gate(2, 2);
    t_gate << 1, 0, 0, std::polar(1.0, M_PI / 4);
    CHECK(identify_gate(t_gate) == "");
    CHECK_THROWS_AS(gate_matrix_1q("toffoli"), Error);
}

TEST_CASE("braid chirality of sparse single-qubit gates") {
    const auto layout = EncodingLayout::sparse(1);

    auto check_word = [&](const std::vector<std::pair<int, int>>& word,
                          const std::string& expected) {
        auto tr = gate_tracker(layout);
        for (auto [i, j] : word) tr.apply_braid(i, j);
        CHECK(identify_gate(predicted_logical_unitary(layout, tr)) == expected);
    };

    check_word({{3, 2}}, "sqrt_X");
    check_word({{2, 3}}, "sqrt_Xdg");
    check_word({{2, 1}}, "S");
    check_word({{1, 2}}, "Sdg");
    // S * sqrt_X * S is a Hadamard up to phase; first braid acts first.
    check_word({{2, 1}, {3, 2}, {2, 1}}, "H");
    // Double braid = Pauli.
    check_word({{3, 2}, {3, 2}}, "X");
    check_word({{2, 1}, {2, 1}}, "Z");
}

TEST_CASE("predicted gates match exact evolution on random sparse braid words") {
    const auto layout = EncodingLayout::sparse(2);
    FockSpace fock(8);
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> pick_qubit(1, 2), pick_label(0, 3);

    for (int word = 0; word < 10; ++word) {
        auto tr = gate_tracker(layout);
        std::vector<std::pair<int, int>> ops;
        for (int k = 0; k < 12; ++k) {
            const int q = pick_qubit(rng);
            int i = pick_label(rng), j = pick_label(rng);
            while (j == i) j = pick_label(rng);
            ops.emplace_back(4 * (q - 1) + 1 + i, 4 * (q - 1) + 1 + j);
            tr.apply_braid(ops.back().first, ops.back().second);
        }
        CHECK(tr.in_logical_subspace(layout));
        const Mat predicted = predicted_logical_unitary(layout, tr);

        Mat t(4, 4);
        for (int n = 0; n < 4; ++n) {
            Vec v = logical_state(fock, n, 2);
            for (auto [i, j] : ops) fock.apply_braid(i, j, v);
            for (int m = 0; m < 4; ++m) t(m, n) = logical_state(fock, m, 2).dot(v);
        }

        // Align the free global phase on the largest entry, then compare.
        Eigen::Index pr = 0, pc = 0;
        t.cwiseAbs().maxCoeff(&pr, &pc);
        const std::complex<double> align = predicted(pr, pc) / t(pr, pc);
        CHECK(std::abs(std::abs(align) - 1.0) < 1e-10);
        CHECK((align * t - predicted).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("encoding swap round trip predicts the identity") {
    const auto layout = EncodingLayout::sparse(2);
    FockSpace fock(8);

    for (int pair_outcome : {+1, -1}) {
        auto tr = gate_tracker(layout);
        const auto m1 = tr.measure(pair_parity(4, 5), pair_outcome);
        CHECK_FALSE(m1.deterministic);
        CHECK(m1.probability == 0.5);
        const auto m2 = tr.measure(quad_parity(1, 2, 3, 4), +1);
        CHECK_FALSE(m2.deterministic);
        CHECK(tr.in_logical_subspace(layout));
        const Mat predicted = predicted_logical_unitary(layout, tr);

        // Oracle: both projections carry sqrt(2) (each branch has
        // probability 1/2 on every code state).
        Mat t(4, 4);
        for (int n = 0; n < 4; ++n) {
            Vec v = logical_state(fock, n, 2);
            fock.apply_projector(pair_parity(4, 5), pair_outcome, v);
            fock.apply_projector(quad_parity(1, 2, 3, 4), +1, v);
            v *= 2.0;
            for (int m = 0; m < 4; ++m) t(m, n) = logical_state(fock, m, 2).dot(v);
        }

        if (pair_outcome == +1) {
            CHECK((t - Mat::Identity(4, 4)).norm() < 1e-12);
            CHECK(phase_free_match(Mat::Identity(4, 4), predicted) > 1.0 - 1e-12);
        } else {
            // The odd branch realizes a Pauli correction, not a loss of
            // information; tracker and oracle must still agree.
            CHECK((t.adjoint() * t - Mat::Identity(4, 4)).norm() < 1e-12);
        }
        Eigen::Index pr = 0, pc = 0;
        t.cwiseAbs().maxCoeff(&pr, &pc);
        const std::complex<double> align = predicted(pr, pc) / t(pr, pc);
        CHECK(std::abs(std::abs(align) - 1.0) < 1e-12);
        CHECK((align * t - predicted).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("gate tracker flags information-destroying measurements") {
    const auto layout = EncodingLayout::sparse(1);
    auto tr = gate_tracker(layout);
    // A bare logical measurement is not determined by the code constraints
    // and cannot be part of a unitary logical schedule.
    CHECK_THROWS_AS(tr.measure(pair_parity(1, 2), +1), Error);

    // A braid that leaves the code space is reported at reduction time.
    const auto layout2 = EncodingLayout::sparse(2);
    auto tr2 = gate_tracker(layout2);
    tr2.apply_braid(4, 5);
    CHECK_FALSE(tr2.in_logical_subspace(layout2));
    CHECK_THROWS_AS(predicted_logical_unitary(layout2, tr2), NotInLogicalSubspace);
}
