// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/gates.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Number of single-qubit positions where two Pauli strings both act
// nontrivially and differ; odd count = anticommuting strings.
bool pauli_strings_anticommute(const std::string& a, const std::string& b) {
    int clashes = 0;
    for (std::size_t q = 0; q < a.size(); ++q)
        if (a[q] != 'I' && b[q] != 'I' && a[q] != b[q]) ++clashes;
    return clashes % 2 == 1;
}

Mat logical_pauli_matrix(const LogicalPauli& p) {
    return pauli_matrix(PauliString{p.sign < 0 ? 2 : 0, p.ops});
}

}  // namespace

std::string LogicalPauli::to_string() const {
    return (sign < 0 ? std::string("-") : std::string("+")) + ops;
}

LogicalPauli logical_pauli(const EncodingLayout& layout, const MajoranaMonomial& g) {
    if (layout.kind != EncodingKind::Sparse)
        throw Error("logical Pauli reduction is defined for the sparse layout");
    if (!g.is_hermitian() || g.length() % 2)
        throw Error("logical reduction needs an even Hermitian monomial: " + g.to_string());
    if (!g.indices().empty() && g.indices().back() > layout.n_labels())
        throw Error("monomial label outside the layout: " + g.to_string());
    for (const auto& c : layout.constraints())
        if (!g.commutes_with(c))
            throw NotInLogicalSubspace("operator anticommutes with a quadruple parity: " +
                                       g.to_string());

    const int n = layout.n_qubits;

    // Canonicalize the support inside each quadruple.  Multiplying by the
    // quadruple parity (a code identity) removes the fourth site and
    // complements four-site support, which lands every per-qubit factor in
    // {}, {a,b}, {b,c}, {a,c}.
    MajoranaMonomial work = g;
    for (int q = 1; q <= n; ++q) {
        int in_quad = 0;
        bool has_d = false;
        for (int idx : work.indices()) {
            if (idx >= 4 * q - 3 && idx <= 4 * q) {
                ++in_quad;
                if (idx == 4 * q) has_d = true;
            }
        }
        if (has_d || in_quad == 4)
            work = work * quad_parity(4 * q - 3, 4 * q - 2, 4 * q - 1, 4 * q);
    }

    // Read each quadruple's canonical support and rebuild the reference
    // product whose phase fixes the sign.
    std::string ops(static_cast<std::size_t>(n), 'I');
    MajoranaMonomial ref;
    for (int q = 1; q <= n; ++q) {
        const int a = 4 * q - 3, b = 4 * q - 2, c = 4 * q - 1;
        std::vector<int> sub;
        for (int idx : work.indices())
            if (idx >= a && idx <= a + 3) sub.push_back(idx);
        if (sub.empty()) continue;
        if (sub == std::vector<int>{a, b}) {
            ops[q - 1] = 'Z';
            ref = ref * layout.logical_z(q);
        } else if (sub == std::vector<int>{b, c}) {
            ops[q - 1] = 'X';
            ref = ref * layout.logical_x(q);
        } else if (sub == std::vector<int>{a, c}) {
            ops[q - 1] = 'Y';
            ref = ref * MajoranaMonomial(1, {a, c});  // Y_q = +i g_a g_c
        } else {
            throw Error("internal: unreachable quadruple support in " + work.to_string());
        }
    }
    if (work.indices() != ref.indices())
        throw Error("internal: logical reduction support mismatch for " + g.to_string());

    const int delta = (work.phase_exp() - ref.phase_exp() + 4) % 4;
    if (delta == 0) return {+1, std::move(ops)};
    if (delta == 2) return {-1, std::move(ops)};
    throw Error("internal: non-real phase ratio reducing " + g.to_string());
}

std::vector<PauliString> logical_readout(const StabilizerSet& set) {
    std::vector<PauliString> out;
    out.reserve(set.generators().size());
    for (const auto& g : set.generators()) out.push_back(jw_string(g, set.n_modes()));
    return out;
}

Vec stabilizer_state(const FockSpace& fock, const StabilizerSet& set) {
    if (fock.n_majoranas() != set.n_labels())
        throw Error("stabilizer set and Fock space sizes disagree");
    if (static_cast<int>(set.generators().size()) != set.n_modes())
        throw Error("state reconstruction needs a maximal stabilizer group");
    // The projector product over a maximal commuting set has rank one, so
    // some basis state overlaps the fixed state by at least 1/sqrt(dim).
    for (Eigen::Index ref = 0; ref < fock.dim(); ++ref) {
        Vec v = fock.basis_state(static_cast<std::uint64_t>(ref));
        for (const auto& g : set.generators()) fock.apply_projector(g, +1, v);
        const double norm = v.norm();
        if (norm > 1e-6) return v / norm;
    }
    throw Error("internal: no reference state overlaps the stabilized state");
}

Mat clifford_from_images(const std::vector<LogicalPauli>& z_images,
                         const std::vector<LogicalPauli>& x_images) {
    const int n = static_cast<int>(z_images.size());
    if (n == 0 || x_images.size() != z_images.size())
        throw Error("need matching nonempty Z and X image lists");
    for (const auto& list : {&z_images, &x_images})
        for (const auto& p : *list)
            if (static_cast<int>(p.ops.size()) != n)
                throw Error("image string length does not match qubit count");
    for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r) {
            const bool want = (q == r);  // Z_q, X_r anticommute iff q == r
            if (pauli_strings_anticommute(z_images[q].ops, x_images[r].ops) != want)
                throw Error("images do not preserve the Pauli frame algebra");
            if (r > q && (pauli_strings_anticommute(z_images[q].ops, z_images[r].ops) ||
                          pauli_strings_anticommute(x_images[q].ops, x_images[r].ops)))
                throw Error("images do not preserve the Pauli frame algebra");
        }

    const Eigen::Index dim = Eigen::Index{1} << n;
    std::vector<Mat> zp, xp;
    for (int q = 0; q < n; ++q) {
        zp.push_back(logical_pauli_matrix(z_images[q]));
        xp.push_back(logical_pauli_matrix(x_images[q]));
    }

    // Joint +1 eigenvector of all image Z operators (rank-one projector
    // product), then the image X operators generate the rest of the basis:
    // U = sum_b X'^b |psi0><b|.
    Vec psi0;
    for (Eigen::Index ref = 0; ref < dim; ++ref) {
        Vec v = Vec::Zero(dim);
        v(ref) = 1.0;
        for (int q = 0; q < n; ++q) v = 0.5 * (v + zp[q] * v);
        if (v.norm() > 1e-6) {
            psi0 = v / v.norm();
            break;
        }
    }
    if (psi0.size() == 0) throw Error("internal: no joint +1 eigenvector of the Z images");

    Mat u(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Vec col = psi0;
        for (int q = 0; q < n; ++q)
            if ((b >> q) & 1) col = xp[q] * col;
        u.col(b) = col;
    }
    if ((u.adjoint() * u - Mat::Identity(dim, dim)).norm() > 1e-10)
        throw Error("internal: reconstructed image map is not unitary");
    return u;
}

StabilizerSet gate_tracker(const EncodingLayout& layout) {
    StabilizerSet set = StabilizerSet::code_frame(layout);
    for (int q = 1; q <= layout.n_qubits; ++q) set.track(layout.logical_z(q));
    for (int q = 1; q <= layout.n_qubits; ++q) set.track(layout.logical_x(q));
    return set;
}

Mat predicted_logical_unitary(const EncodingLayout& layout, const StabilizerSet& set) {
    const int n = layout.n_qubits;
    if (static_cast<int>(set.tracked().size()) != 2 * n)
        throw Error("tracker does not carry the [Z_1..Z_n, X_1..X_n] frame");
    // The schedule defines a gate only if the evolved constraint group
    // still fixes the code space: every generator must reduce to +identity
    // as a logical Pauli.  The tracked images commuting with the original
    // constraints is necessary but not sufficient -- a braid word can send
    // a quadruple parity to an operator outside the constraint group while
    // all four tracked images happen to commute with everything.
    for (const auto& g : set.generators()) {
        const LogicalPauli lp = logical_pauli(layout, g);
        if (lp.sign != +1 || lp.ops.find_first_not_of('I') != std::string::npos)
            throw NotInLogicalSubspace("a parity constraint evolves to " + g.to_string() +
                                       " (logical " + lp.to_string() +
                                       "); the schedule leaves the code space");
    }
    std::vector<LogicalPauli> z_images, x_images;
    for (int q = 0; q < n; ++q) z_images.push_back(logical_pauli(layout, set.tracked()[q]));
    for (int q = 0; q < n; ++q) x_images.push_back(logical_pauli(layout, set.tracked()[n + q]));
    return clifford_from_images(z_images, x_images);
}

Mat gate_matrix_1q(const std::string& name) {
    Mat g(2, 2);
    const std::complex<double> h = (1.0 + kI) / 2.0;  // exp(i pi/4)/sqrt(2)
    if (name == "id") g = Mat::Identity(2, 2);
    else if (name == "X") g = pauli_matrix_1q('X');
    else if (name == "Y") g = pauli_matrix_1q('Y');
    else if (name == "Z") g = pauli_matrix_1q('Z');
    else if (name == "H") g << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
    else if (name == "S") g << 1, 0, 0, kI;
    else if (name == "Sdg") g << 1, 0, 0, -kI;
    else if (name == "sqrt_X") g << h, std::conj(h), std::conj(h), h;
    else if (name == "sqrt_Xdg") g << std::conj(h), h, h, std::conj(h);
    else if (name == "sqrt_Y") g << h, -h, h, h;
    else if (name == "sqrt_Ydg") g << std::conj(h), std::conj(h), -std::conj(h), std::conj(h);
    else throw Error("unknown single-qubit gate name: " + name);
    return g;
}

Mat embed_gate_1q(const Mat& g, int qubit, int n_qubits) {
    if (g.rows() != 2 || g.cols() != 2) throw Error("embed_gate_1q expects a 2x2 matrix");
    if (qubit < 1 || qubit > n_qubits) throw Error("qubit index out of range");
    std::vector<Mat> ops(static_cast<std::size_t>(n_qubits), Mat::Identity(2, 2));
    ops[qubit - 1] = g;
    return kron_chain(ops);
}

Mat cnot_gate(int control, int target, int n_qubits) {
    if (control == target || control < 1 || target < 1 || control > n_qubits ||
        target > n_qubits)
        throw Error("bad cnot qubit indices");
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Mat u = Mat::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Eigen::Index out = b;
        if ((b >> (control - 1)) & 1) out = b ^ (Eigen::Index{1} << (target - 1));
        u(out, b) = 1.0;
    }
    return u;
}

Mat cz_gate(int a, int b, int n_qubits) {
    if (a == b || a < 1 || b < 1 || a > n_qubits || b > n_qubits)
        throw Error("bad cz qubit indices");
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Mat u = Mat::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        u(k, k) = (((k >> (a - 1)) & 1) && ((k >> (b - 1)) & 1)) ? -1.0 : 1.0;
    return u;
}

Mat swap_gate(int a, int b, int n_qubits) {
    if (a == b || a < 1 || b < 1 || a > n_qubits || b > n_qubits)
        throw Error("bad swap qubit indices");
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Mat u = Mat::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Eigen::Index ba = (k >> (a - 1)) & 1, bb = (k >> (b - 1)) & 1;
        Eigen::Index out = k;
        if (ba != bb) out = k ^ (Eigen::Index{1} << (a - 1)) ^ (Eigen::Index{1} << (b - 1));
        u(out, k) = 1.0;
    }
    return u;
}

double phase_free_match(const Mat& g, const Mat& u) {
    if (g.rows() != u.rows() || g.cols() != u.cols()) throw Error("gate dimension mismatch");
    return std::abs((g.adjoint() * u).trace()) / static_cast<double>(g.rows());
}

std::string identify_gate(const Mat& u, double tol) {
    static const std::vector<std::string> names = {"id",     "X",        "Y",      "Z",
                                                   "H",      "S",        "Sdg",    "sqrt_X",
                                                   "sqrt_Xdg", "sqrt_Y", "sqrt_Ydg"};
    const Eigen::Index dim = u.rows();
    if (dim == 2) {
        for (const auto& name : names)
            if (phase_free_match(gate_matrix_1q(name), u) > 1.0 - tol) return name;
        return "";
    }
    if (dim == 4) {
        for (const auto& a : names)
            for (const auto& b : names) {
                const Mat cand = kron_chain({gate_matrix_1q(a), gate_matrix_1q(b)});
                if (phase_free_match(cand, u) <= 1.0 - tol) continue;
                if (a == "id" && b == "id") return "id";
                if (b == "id") return a + " on qubit 1";
                if (a == "id") return b + " on qubit 2";
                return a + " on qubit 1, " + b + " on qubit 2";
            }
        const std::vector<std::pair<std::string, Mat>> two_qubit = {
            {"cnot control 1 target 2", cnot_gate(1, 2, 2)},
            {"cnot control 2 target 1", cnot_gate(2, 1, 2)},
            {"cz", cz_gate(1, 2, 2)},
            {"swap", swap_gate(1, 2, 2)},
        };
        for (const auto& [name, cand] : two_qubit)
            if (phase_free_match(cand, u) > 1.0 - tol) return name;
        return "";
    }
    return "";
}

}  // namespace mzm
