// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Phase-tracked products of Majorana operators.
//
// A monomial is  alpha * g_{i1} g_{i2} ... g_{im}  with alpha a fourth root
// of unity and strictly increasing 1-based labels i1 < i2 < ... < im.  The
// operators obey {g_i, g_j} = 2 delta_ij, so any raw product can be brought
// to this normal form by sorting (one sign flip per transposition of
// distinct labels) and cancelling squares (g_i^2 = 1).  The normal form is
// unique, which gives us cheap equality, hashing and commutation tests.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace mzm {

class MajoranaMonomial {
  public:
    // Identity operator (phase +1, no factors).
    MajoranaMonomial() = default;

    // Normalizes an arbitrary product.  `phase_exp` is the power k of the
    // imaginary unit in the prefactor i^k; `raw` is the factor list in
    // left-to-right operator order, repeats allowed.
    MajoranaMonomial(int phase_exp, std::vector<int> raw);

    // Prefactor as i^k with k in {0,1,2,3}.
    int phase_exp() const { return phase_exp_; }
    std::complex<double> phase() const;

    // Sorted, duplicate-free labels.
    const std::vector<int>& indices() const { return indices_; }
    int length() const { return static_cast<int>(indices_.size()); }
    bool is_identity() const { return indices_.empty() && phase_exp_ == 0; }

    // (alpha G)^dagger = conj(alpha) (-1)^{m(m-1)/2} G, so the monomial is
    // Hermitian iff k = m(m-1)/2 (mod 2).
    bool is_hermitian() const;

    // Two monomials commute iff |a||b| - |supp(a) ∩ supp(b)| is even:
    // each swap past a distinct label costs a sign, shared labels do not.
    bool commutes_with(const MajoranaMonomial& other) const;

    MajoranaMonomial adjoint() const;
    MajoranaMonomial negated() const;
    MajoranaMonomial scaled(int phase_exp_delta) const;

    // Image under the counterclockwise exchange of labels i and j.  Our
    // braid convention is B = exp((pi/4) g_i g_j) = (1 + g_i g_j)/sqrt(2),
    // under which conjugation of operators with the state update
    // |psi> -> B|psi> sends  g_i -> -g_j  and  g_j -> +g_i :
    //    B g_i B^dag = -g_j,   B g_j B^dag = +g_i.
    MajoranaMonomial braided(int i, int j) const;

    bool operator==(const MajoranaMonomial& other) const = default;

    // Text form used by golden tests and the CLI: a phase token (+1, -1,
    // +i, -i) followed by the labels, e.g. "-i 1 2".  Identity is "+1".
    std::string to_string() const;
    static MajoranaMonomial parse(const std::string& line);

  private:
    int phase_exp_ = 0;
    std::vector<int> indices_;
};

MajoranaMonomial operator*(const MajoranaMonomial& a, const MajoranaMonomial& b);

// Pair parity  -i g_a g_b  (eigenvalue +1 on the state annihilated by the
// fermion (g_a + i g_b)/2, i.e. "both sites empty" in our pairing).
MajoranaMonomial pair_parity(int a, int b);

// Quadruple parity  -g_a g_b g_c g_d  = (-i g_a g_b)(-i g_c g_d).
MajoranaMonomial quad_parity(int a, int b, int c, int d);

}  // namespace mzm
