// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/pauli.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace mzm {

namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

// Single-qubit multiplication table: a*b = i^k * c.
// Order of the Paulis in the table: I, X, Y, Z.
int pauli_index(char op) {
    switch (op) {
        case 'I': return 0;
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
    }
    throw std::invalid_argument(std::string("bad Pauli char '") + op + "'");
}

struct MulEntry {
    char result;
    int phase_exp;
};

// XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign.
MulEntry mul_1q(char a, char b) {
    static const char sym[4] = {'I', 'X', 'Y', 'Z'};
    int ia = pauli_index(a), ib = pauli_index(b);
    if (ia == 0) return {b, 0};
    if (ib == 0) return {a, 0};
    if (ia == ib) return {'I', 0};
    // The remaining cases are the cyclic products.
    int ic = 6 - ia - ib;  // {1,2,3} \ {ia, ib}
    bool cyclic = (ib - ia + 3) % 3 == 1;  // X->Y->Z->X
    return {sym[ic], cyclic ? 1 : 3};
}

}  // namespace

std::complex<double> PauliString::phase() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[mod4(phase_exp)];
}

std::string PauliString::to_string() const {
    static const char* tok[4] = {"+1", "+i", "-1", "-i"};
    return std::string(tok[mod4(phase_exp)]) + " " + ops;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
    if (a.ops.size() != b.ops.size())
        throw std::invalid_argument("Pauli string length mismatch");
    PauliString out;
    out.phase_exp = a.phase_exp + b.phase_exp;
    out.ops.resize(a.ops.size());
    for (std::size_t s = 0; s < a.ops.size(); ++s) {
        MulEntry e = mul_1q(a.ops[s], b.ops[s]);
        out.ops[s] = e.result;
        out.phase_exp += e.phase_exp;
    }
    out.phase_exp = mod4(out.phase_exp);
    return out;
}

PauliString jw_string(const MajoranaMonomial& m, int n_spins) {
    PauliString acc{0, std::string(n_spins, 'I')};
    for (int label : m.indices()) {
        int spin = (label + 1) / 2;  // 1-based
        if (spin > n_spins) throw std::invalid_argument("label exceeds spin count");
        PauliString factor{0, std::string(n_spins, 'I')};
        for (int s = 1; s < spin; ++s) factor.ops[s - 1] = 'Z';
        factor.ops[spin - 1] = (label % 2) ? 'X' : 'Y';
        acc = acc * factor;
    }
    acc.phase_exp = mod4(acc.phase_exp + m.phase_exp());
    return acc;
}

Mat pauli_matrix_1q(char op) {
    Mat m(2, 2);
    const std::complex<double> I(0, 1);
    switch (op) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -I, I, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("bad Pauli char");
    }
    return m;
}

Mat kron_chain(const std::vector<Mat>& ops) {
    if (ops.empty()) return Mat::Identity(1, 1);
    // ops[0] must end up innermost (fastest index).
    Mat acc = ops[0];
    for (std::size_t k = 1; k < ops.size(); ++k)
        acc = Eigen::kroneckerProduct(ops[k], acc).eval();
    return acc;
}

Mat pauli_matrix(const PauliString& p) {
    std::vector<Mat> ops;
    ops.reserve(p.ops.size());
    for (char c : p.ops) ops.push_back(pauli_matrix_1q(c));
    return p.phase() * kron_chain(ops);
}

}  // namespace mzm
