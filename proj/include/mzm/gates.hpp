// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Logical-level readout of the stabilizer tracker.
//
// A braid-and-measure schedule carries the logical Pauli operators of the
// encoded qubits along as tracked spectators.  This module reduces the
// tracked monomials to signed logical Pauli strings (modulo the encoding's
// parity constraints), reconstructs the logical Clifford unitary those
// images determine (up to global phase), and names it against a small
// catalog of standard gates.  It also rebuilds the dense many-body state
// fixed by a stabilizer set, which is how tracker predictions are compared
// against the exact oracle.

#pragma once

#include <string>
#include <vector>

#include "mzm/fock.hpp"
#include "mzm/pauli.hpp"
#include "mzm/stabilizer.hpp"

namespace mzm {

// A signed Pauli string on logical qubits: sign * P_1 ⊗ ... ⊗ P_n with
// ops[q-1] in {'I','X','Y','Z'} acting on qubit q.
struct LogicalPauli {
    int sign = +1;
    std::string ops;

    bool operator==(const LogicalPauli&) const = default;
    std::string to_string() const;  // e.g. "-XZ"
};

// Reduces an even Hermitian monomial that commutes with every constraint
// of `layout` to its logical Pauli class.  For the sparse encoding the
// reduction is modulo the quadruple parities: any factor reaching a
// qubit's fourth site is multiplied by that quadruple's parity (a code
// identity), which canonicalizes the per-qubit support to one of
// {}, {a,b}, {b,c}, {a,c} = I, Z, X, Y.  The sign is exact.
// Throws NotInLogicalSubspace if the monomial fails the constraint check.
LogicalPauli logical_pauli(const EncodingLayout& layout, const MajoranaMonomial& g);

// Jordan-Wigner Pauli strings of all generators (diagnostic readout).
std::vector<PauliString> logical_readout(const StabilizerSet& set);

// The state fixed by the stabilizer set: projector product over the
// generators applied to a reference basis state, normalized.  The global
// phase is construction-dependent.
Vec stabilizer_state(const FockSpace& fock, const StabilizerSet& set);

// The unitary U with U Z_q U^dag = z_images[q-1], U X_q U^dag =
// x_images[q-1], fixed up to global phase.  The images must form a valid
// Clifford frame (anticommutation patterns preserved); this is checked.
Mat clifford_from_images(const std::vector<LogicalPauli>& z_images,
                         const std::vector<LogicalPauli>& x_images);

// Code-frame tracker for gate prediction: generators are only the
// layout's parity constraints, and the logical frame [Z_1..Z_n, X_1..X_n]
// rides along as tracked spectators.  Running a schedule on this tracker
// (instead of on a full state group) keeps every measurement fix-up an
// input-independent code identity, so the final tracked images determine
// the schedule's logical unitary on the whole code space.
StabilizerSet gate_tracker(const EncodingLayout& layout);

// Predicted logical unitary of a gate_tracker after a schedule: reduces
// the tracked images of [Z_1..Z_n, X_1..X_n] and reconstructs the
// Clifford they determine (up to global phase).
Mat predicted_logical_unitary(const EncodingLayout& layout, const StabilizerSet& set);

// --- gate catalog ----------------------------------------------------

// Named single-qubit gates: "id", "X", "Y", "Z", "H", "S", "Sdg",
// "sqrt_X", "sqrt_Xdg", "sqrt_Y", "sqrt_Ydg".  Throws on unknown names.
Mat gate_matrix_1q(const std::string& name);

// g (2^k dim) acting on `qubit` (1-based, little-endian) of n_qubits.
Mat embed_gate_1q(const Mat& g, int qubit, int n_qubits);

Mat cnot_gate(int control, int target, int n_qubits);
Mat cz_gate(int a, int b, int n_qubits);
Mat swap_gate(int a, int b, int n_qubits);

// |tr(g^dag u)| / d in [0, 1]; equals 1 iff u = phase * g.
double phase_free_match(const Mat& g, const Mat& u);

// Names `u` against the catalog of standard gates and their single-qubit
// embeddings/products (e.g. "sqrt_X on qubit 1", "cnot control 1 target
// 2", "S on qubit 1, H on qubit 2").  Returns "" when nothing matches
// within `tol` of an exact phase-free match.  Supports 1 and 2 qubits.
std::string identify_gate(const Mat& u, double tol = 1e-6);

}  // namespace mzm
