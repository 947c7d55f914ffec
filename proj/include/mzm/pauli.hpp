// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Symbolic Pauli strings and small dense spin operators.
//
// The Jordan-Wigner dictionary used throughout maps Majorana site labels
// onto spins via
//     g_{2k-1} = Z_1 ... Z_{k-1} X_k,     g_{2k} = Z_1 ... Z_{k-1} Y_k,
// with spin k carried by fermionic mode k of the pairing
// d_k = (g_{2k-1} + i g_{2k})/2.  Fock basis order is little-endian: the
// occupation of mode 1 is the least significant bit of the basis index.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "mzm/monomial.hpp"

namespace mzm {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// A phase i^k times a tensor product of single-spin Paulis, ops[s] in
// {'I','X','Y','Z'} acting on spin s+1.
struct PauliString {
    int phase_exp = 0;
    std::string ops;

    std::complex<double> phase() const;
    bool operator==(const PauliString&) const = default;
    std::string to_string() const;  // e.g. "-i XYI"
};

PauliString operator*(const PauliString& a, const PauliString& b);

// Jordan-Wigner image of a Majorana monomial on n_spins spins.
PauliString jw_string(const MajoranaMonomial& m, int n_spins);

// Dense 2x2 Paulis and Kronecker helpers.
Mat pauli_matrix_1q(char op);

// ops[0] acts on qubit 1 = least significant bit of the basis index.
Mat kron_chain(const std::vector<Mat>& ops);

Mat pauli_matrix(const PauliString& p);

}  // namespace mzm
