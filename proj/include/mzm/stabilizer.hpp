// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Symbolic stabilizer tracker over Majorana monomials.
//
// A state of N fermionic modes (2N Majorana sites) is tracked by N
// independent, pairwise-commuting Hermitian monomials fixed to eigenvalue
// +1.  Braids act by index substitution; parity measurements follow the
// usual stabilizer update.  Alongside the generators the tracker can carry
// "spectator" operators (logical Pauli images) through the same updates,
// which is how a braid-and-measure schedule gets identified as a logical
// gate.  Everything here is exact integer arithmetic -- this module is the
// fast oracle for the Clifford sector.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mzm/monomial.hpp"

namespace mzm {

struct MeasurementOutcome {
    bool deterministic = false;
    int outcome = +1;          // the eigenvalue actually realized
    double probability = 1.0;  // 1 when deterministic, else 1/2
};

// How Majorana sites are grouped into logical qubits.
enum class EncodingKind { Sparse, Dense };

struct EncodingLayout {
    EncodingKind kind = EncodingKind::Sparse;
    int n_qubits = 0;

    // Sparse: qubit q owns the quadruple (4q-3, 4q-2, 4q-1, 4q) with its
    // quadruple parity fixed.  Dense: qubit q is the pair (2q+1, 2q+2),
    // the pair (1, 2) is the shared ancilla, and only the global parity is
    // fixed.
    static EncodingLayout sparse(int n_qubits);
    static EncodingLayout dense(int n_qubits);

    int n_labels() const;
    int n_modes() const { return n_labels() / 2; }

    // Constraint monomials whose eigenvalue a valid encoded state fixes.
    // The commutation structure is what matters for subspace checks; the
    // fixed sign of the dense global parity depends on preparation history.
    std::vector<MajoranaMonomial> constraints() const;

    // Logical single-qubit Paulis as Majorana monomials.  For the sparse
    // encoding: Z_q = -i g_{4q-3} g_{4q-2}, X_q = -i g_{4q-2} g_{4q-1},
    // Y_q = i X_q Z_q = i g_{4q-3} g_{4q-1}.
    MajoranaMonomial logical_z(int q) const;
    MajoranaMonomial logical_x(int q) const;
};

// The tracker accepts both maximal groups (one generator per fermionic
// mode: a pure state) and partial ones.  The partial form matters for
// gate prediction: tracking a schedule over just the encoding constraints
// keeps every measurement fix-up an input-independent code identity, so
// the tracked logical images are valid as operator statements on the
// whole code space, not merely along one state's trajectory.
class StabilizerSet {
  public:
    StabilizerSet(int n_labels, std::vector<MajoranaMonomial> generators);

    // The reference state: pair parities -i g_1 g_2, -i g_3 g_4, ... all
    // +1, i.e. every mode of the pairing d_k = (g_{2k-1} + i g_{2k})/2
    // empty.
    static StabilizerSet vacuum(int n_labels);

    // Partial group holding only the layout's parity constraints (the
    // code space itself rather than a particular encoded state).
    static StabilizerSet code_frame(const EncodingLayout& layout);

    int n_labels() const { return n_labels_; }
    int n_modes() const { return n_labels_ / 2; }
    const std::vector<MajoranaMonomial>& generators() const { return gens_; }
    const std::vector<MajoranaMonomial>& tracked() const { return tracked_; }

    // Spectator operators carried through all subsequent updates.
    void track(MajoranaMonomial op);

    // Counterclockwise exchange of sites i and j; see MajoranaMonomial::
    // braided for the convention.  The inverse is the clockwise exchange.
    void apply_braid(int i, int j);
    void apply_braid_inverse(int i, int j) { apply_braid(j, i); }

    // If the parity `p` is fixed by the group, returns its forced value.
    std::optional<int> forced_outcome(const MajoranaMonomial& p) const;

    // Projects onto the `outcome` eigenspace of `p` (Hermitian, even).
    // Deterministic measurements leave the set untouched and throw
    // ForcedOutcomeMismatch if `outcome` contradicts the group.  Random
    // ones replace the lowest-index anticommuting generator.
    MeasurementOutcome measure(const MajoranaMonomial& p, int outcome);

    // True when every generator and tracked operator commutes with every
    // layout constraint.
    bool in_logical_subspace(const EncodingLayout& layout) const;

    // Line-oriented text form: "labels <2N>" then one monomial per line.
    std::string to_text() const;
    static StabilizerSet from_text(const std::string& text);

  private:
    void check_invariants() const;

    int n_labels_;
    std::vector<MajoranaMonomial> gens_;
    std::vector<MajoranaMonomial> tracked_;
};

}  // namespace mzm
