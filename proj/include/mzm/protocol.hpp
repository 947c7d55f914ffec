// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Schedule orchestration: braid-and-measure protocols evaluated as
// transition matrices between many-body basis states.
//
// Two levels of description share one schedule vocabulary:
//
//  * Ideal schedules apply instantaneous pi/4 braid rotations and parity
//    projectors to abstract Majorana labels.  Backends: the exact Fock
//    oracle and the symbolic stabilizer tracker.
//
//  * Lattice schedules evolve a time-dependent wire network and insert
//    projectors on the instantaneous near-zero modes at chosen times.
//    Backends: the Pfaffian pipeline (Gaussian states, any size) and the
//    exact oracle (<= 12 sites).
//
// Transition-matrix convention: every projector event is scaled by
// sqrt(2), so an information-preserving measurement sequence (each
// outcome having ideal branch probability 1/2) yields an isometry on the
// logical basis.  Projector strings are pulled back to the initial time
// through the single-particle propagator; each quadruple projector
// (1 +- Q)/2 doubles the number of Wick strings, so an amplitude with
// M quadruple events sums 2^M Pfaffians (pair projectors contribute the
// two-factor product d d-dagger and no doubling).

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mzm/bdg.hpp"
#include "mzm/evolution.hpp"
#include "mzm/fock.hpp"
#include "mzm/pauli.hpp"
#include "mzm/stabilizer.hpp"

namespace mzm {

enum class OutcomePolicy { ForcedEven, ForcedOdd, Sampled };

struct ProjectorSpec {
    MajoranaMonomial parity;  // even Hermitian monomial on abstract labels
    OutcomePolicy policy = OutcomePolicy::ForcedEven;
    std::string label;        // diagnostics, e.g. "pair(4,5)"

    int forced_sign() const;  // +1 / -1; throws on Sampled
};

// Encoding-swap projector pair between sparse qubits i and j: the pair
// parity on labels (4i, 4j-3) opening the swap and the quadruple parity
// on qubit i's labels closing it.
std::pair<ProjectorSpec, ProjectorSpec> generalized_projectors(
    int i, int j, OutcomePolicy policy = OutcomePolicy::ForcedEven);

// --- ideal schedules --------------------------------------------------

struct IdealOp {
    enum class Kind { Braid, Project };
    Kind kind = Kind::Braid;
    int i = 0, j = 0;        // braid labels, B = exp((pi/4) g_i g_j)
    ProjectorSpec projector;  // when kind == Project
};

struct IdealSchedule {
    int n_labels = 0;
    std::vector<IdealOp> ops;

    explicit IdealSchedule(int n_labels_) : n_labels(n_labels_) {}
    IdealSchedule& braid(int i, int j);
    IdealSchedule& project(ProjectorSpec spec);
    IdealSchedule& project_pair(int i, int j, OutcomePolicy policy = OutcomePolicy::ForcedEven);
    IdealSchedule& project_quad(int qubit, OutcomePolicy policy = OutcomePolicy::ForcedEven);
    // Opening pair projection, dense braid word, closing quad projection.
    IdealSchedule& encoding_swap(int i, int j, const std::vector<std::pair<int, int>>& dense_word,
                                 OutcomePolicy policy = OutcomePolicy::ForcedEven);
    int projector_count() const;
};

struct EventRecord {
    std::string label;
    int outcome = +1;
    bool deterministic = false;
    double probability = 0.5;  // ideal branch probability of the outcome
    double scale = 1.0;        // sqrt(2) per projector event
};

struct TransitionMatrix {
    std::vector<std::uint64_t> basis;  // mode-occupation masks
    Mat t;                             // t(row m, column n)
    std::vector<EventRecord> events;
    std::int64_t branches_per_amplitude = 1;
    // ||S^dag S - 1||_inf of the compiled one-particle propagator (lattice
    // backends; zero for the ideal runners).  Integrator health only: T's
    // own residual also contains genuine diabatic leakage.
    double propagator_residual = 0.0;

    double unitarity_residual() const;  // ||T^dag T - 1||_F
};

// Occupation mask of the sparse logical state with the given qubit bits:
// each set qubit occupies both fermionic modes of its quadruple.
std::uint64_t logical_occupation(std::uint64_t logical_bits, int n_qubits);
std::vector<std::uint64_t> logical_basis(int n_qubits);

// Exact Fock evolution of every basis column.  All projector policies
// must be resolved (no Sampled); use sample_outcomes_exact first.
TransitionMatrix run_ideal_exact(const IdealSchedule& schedule,
                                 const std::vector<std::uint64_t>& basis);

// Clifford prediction: runs the code-frame tracker through the schedule
// and reconstructs the logical unitary.  Basis masks must be sparse
// logical states of the layout.
TransitionMatrix run_ideal_stabilizer(const IdealSchedule& schedule,
                                      const EncodingLayout& layout,
                                      const std::vector<std::uint64_t>& basis);

// Born-rule sampling of the Sampled events of a schedule on a concrete
// initial state (exact backend).  Forced events keep their sign.
// Returns the schedule with every policy resolved plus the event records
// (probability = realized-outcome probability on the evolving state).
struct SampledSchedule {
    IdealSchedule schedule;
    std::vector<EventRecord> events;
};
SampledSchedule sample_outcomes_exact(const IdealSchedule& schedule, std::uint64_t initial_mask,
                                      std::uint64_t seed);

// Same, with probabilities from the stabilizer tracker on the initial
// sparse logical state.
SampledSchedule sample_outcomes_stabilizer(const IdealSchedule& schedule,
                                           const EncodingLayout& layout,
                                           std::uint64_t initial_logical_bits,
                                           std::uint64_t seed);

// --- lattice schedules ------------------------------------------------

struct TimedProjector {
    double time = 0.0;        // must fall inside [t_begin, t_end]
    ProjectorSpec spec;       // parity over zero-mode labels (1-based)
};

struct LatticeSchedule {
    explicit LatticeSchedule(WireNetwork net) : network(std::move(net)) {}

    WireNetwork network;
    double t_begin = 0.0;
    double t_end = 0.0;
    double dt = 0.05;
    // Zero-cluster threshold (relative to the largest eigenvalue); must
    // sit between the residual Majorana splitting of the parked network
    // and its bulk gap.
    double zero_factor = 1e-3;
    // Declared localization site groups, one per zero-mode Majorana
    // label; fixes the label -> physical-position dictionary.
    std::vector<std::vector<int>> majorana_sites;
    std::vector<TimedProjector> projectors;  // strictly increasing times
};

// Pfaffian (Gaussian) backend: amplitudes via Wick contractions of the
// pulled-back operator string over the common vacuum of the initial and
// evolved frames.  Basis masks address zero modes only.  `workers`
// splits independent (m, n) amplitudes across threads.
TransitionMatrix run_lattice_pfaffian(const LatticeSchedule& schedule,
                                      const std::vector<std::uint64_t>& basis, int workers = 1);

// The expensive schedule-dependent half of the Pfaffian backend --
// propagation, frame diagonalizations, event operator pull-back, and the
// common-vacuum construction -- done once, so transition matrices over
// several bases reuse one compilation.  run_lattice_pfaffian(s, b, w) is
// CompiledLattice(s).evaluate(b, w).
class CompiledLattice {
  public:
    explicit CompiledLattice(const LatticeSchedule& schedule);
    ~CompiledLattice();
    CompiledLattice(CompiledLattice&&) noexcept;
    CompiledLattice& operator=(CompiledLattice&&) noexcept;

    int zero_modes() const;
    std::int64_t branches_per_amplitude() const;
    TransitionMatrix evaluate(const std::vector<std::uint64_t>& basis, int workers = 1) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Exact many-body backend for cross-validation (<= 24 Majorana sites).
TransitionMatrix run_lattice_exact(const LatticeSchedule& schedule,
                                   const std::vector<std::uint64_t>& basis);

// --- figures of merit -------------------------------------------------

// Global-phase-invariant process overlap |tr(target^dag T)|^2 /
// (d tr(T^dag T)), clamped to [0, 1].
double gate_fidelity(const TransitionMatrix& t, const Mat& target);

// Aligns the free global phase of `t` onto `reference` at the largest
// |reference| entry and returns the maximum entrywise deviation.
double phase_aligned_deviation(const Mat& t, const Mat& reference);

}  // namespace mzm
