// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force many-body oracle on Fock spaces of up to 2^12 dimensions.
//
// States are dense vectors over the occupation basis of the reference
// pairing d_k = (g_{2k-1} + i g_{2k})/2, little-endian (mode 1 = least
// significant bit), |n> = (c_1^dag)^{n_1} (c_2^dag)^{n_2} ... |0> with the
// lowest mode's creator leftmost.  All operators act matrix-free in O(dim)
// or O(M^2 dim); dense matrices are available for small spaces where tests
// want to inspect them.
//
// Quadratic Hamiltonians enter as Nambu matrices M in the basis
// Psi = (c_1..c_M, c_1^dag..c_M^dag): the generator lifted onto Fock space
// is H = (1/2) Psi^dag M Psi, which makes the single-particle equation
// i dw/dt = M w and the many-body Heisenberg flow literally the same
// rotation (an operator a = w^dag Psi evolves as a(t) = U a U^dag with
// w(t) = S(t) w, S the single-particle propagator of M).

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <functional>

#include "mzm/monomial.hpp"
#include "mzm/pauli.hpp"

namespace mzm {

class FockSpace {
  public:
    // n_majoranas = 2M, capped at 24 (dimension 4096).
    explicit FockSpace(int n_majoranas);

    int n_majoranas() const { return 2 * n_modes_; }
    int n_modes() const { return n_modes_; }
    Eigen::Index dim() const { return Eigen::Index{1} << n_modes_; }

    Vec basis_state(std::uint64_t occupation) const;

    // --- matrix-free applications -------------------------------------
    void apply_majorana(int label, Vec& v) const;
    void apply_monomial(const MajoranaMonomial& m, Vec& v) const;
    // exp(theta g_i g_j) = cos(theta) + sin(theta) g_i g_j.
    void apply_rotation(int i, int j, double theta, Vec& v) const;
    void apply_braid(int i, int j, Vec& v) const { apply_rotation(i, j, M_PI / 4, v); }
    void apply_projector(const MajoranaMonomial& p, int sign, Vec& v) const;

    // a v with a = w^dag Psi (w a 2M Nambu vector), and its adjoint.
    void apply_mode(const Vec& w, Vec& v) const;
    void apply_mode_dagger(const Vec& w, Vec& v) const;

    // H v with H = (1/2) Psi^dag M Psi.
    Vec apply_nambu_hamiltonian(const Mat& m, const Vec& v) const;

    // Midpoint-sampled step exponentials of the lifted Hamiltonian:
    // v <- T-exp(-i integral H dt) v with H(t) = (1/2) Psi^dag M(t) Psi.
    // The per-step exponential is applied by scaled Taylor summation.
    void evolve(const std::function<Mat(double)>& m_of_t, double t_from, double t_to,
                double dt, Vec& v) const;

    // Vacuum of the quasiparticle frame whose annihilators are
    // d_k = frame.col(k)^dag Psi, k = 0..M-1: apply prod_k d_k d_k^dag to
    // a reference basis state and normalize.  The phase is whatever the
    // construction yields; amplitudes where it matters use the same state
    // on both sides.
    Vec frame_vacuum(const Mat& frame_columns) const;

    // (D_1^dag)^{m_1} ... (D_M^dag)^{m_M} |vac>, lowest mode leftmost.
    Vec frame_basis_state(const Mat& frame_columns, std::uint64_t occupation) const;

    // --- dense accessors (dim <= 256) ---------------------------------
    Mat gamma(int label) const;
    Mat monomial_matrix(const MajoranaMonomial& m) const;
    Mat rotation(int i, int j, double theta) const;
    Mat braid(int i, int j) const { return rotation(i, j, M_PI / 4); }
    Mat projector(const MajoranaMonomial& p, int sign) const;
    Mat dense_operator(const std::function<void(Vec&)>& apply) const;

  private:
    int n_modes_;
};

}  // namespace mzm
