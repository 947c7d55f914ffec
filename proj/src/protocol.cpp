// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <thread>

#include "mzm/errors.hpp"
#include "mzm/gates.hpp"
#include "mzm/overlap.hpp"

namespace mzm {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr std::complex<double> kI{0.0, 1.0};

// Probability within this of 1 counts as a deterministic projection.
constexpr double kDeterministicTol = 1e-9;

void require_even_labels(int n_labels) {
    if (n_labels <= 0 || n_labels % 2 != 0)
        throw ConfigError("schedule needs a positive even number of Majorana labels, got " +
                          std::to_string(n_labels));
}

void require_label(int label, int n_labels, const char* what) {
    if (label < 1 || label > n_labels)
        throw ConfigError(std::string(what) + " label " + std::to_string(label) +
                          " outside 1.." + std::to_string(n_labels));
}

// Splits a projector parity into its canonical pair/quad base monomial
// and the sign relating the spec'd parity to that base.
struct ParityForm {
    std::vector<int> labels;  // 2 or 4, ascending
    int base_sign = +1;       // parity = base_sign * canonical base
};

ParityForm parity_form(const MajoranaMonomial& parity) {
    if (!parity.is_hermitian()) throw ConfigError("projector parity must be Hermitian");
    const auto& idx = parity.indices();
    MajoranaMonomial base;
    if (idx.size() == 2) {
        base = pair_parity(idx[0], idx[1]);
    } else if (idx.size() == 4) {
        base = quad_parity(idx[0], idx[1], idx[2], idx[3]);
    } else {
        throw ConfigError("projector parity must touch 2 or 4 labels, got " +
                          std::to_string(idx.size()));
    }
    const int delta = ((parity.phase_exp() - base.phase_exp()) % 4 + 4) % 4;
    if (delta != 0 && delta != 2) throw ConfigError("projector parity has a non-real prefactor");
    return {idx, delta == 0 ? +1 : -1};
}

std::string span_label(const char* kind, const std::vector<int>& labels) {
    std::ostringstream out;
    out << kind << '(';
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (k) out << ',';
        out << labels[k];
    }
    out << ')';
    return out.str();
}

int resolved_sign(const ProjectorSpec& spec) { return spec.forced_sign(); }

}  // namespace

int ProjectorSpec::forced_sign() const {
    switch (policy) {
        case OutcomePolicy::ForcedEven:
            return +1;
        case OutcomePolicy::ForcedOdd:
            return -1;
        case OutcomePolicy::Sampled:
            throw ConfigError("projector '" + label +
                              "' has a sampled outcome; resolve it with sample_outcomes first");
    }
    throw Error("unreachable outcome policy");
}

std::pair<ProjectorSpec, ProjectorSpec> generalized_projectors(int i, int j,
                                                               OutcomePolicy policy) {
    if (i < 1 || j < 1) throw ConfigError("encoding-swap qubit indices are 1-based");
    if (i == j)
        throw ConfigError("encoding swap needs two distinct qubits, got twice qubit " +
                          std::to_string(i));
    ProjectorSpec pair;
    pair.parity = pair_parity(4 * i, 4 * j - 3);
    pair.policy = policy;
    pair.label = span_label("pair", {4 * i, 4 * j - 3});
    ProjectorSpec quad;
    quad.parity = quad_parity(4 * i - 3, 4 * i - 2, 4 * i - 1, 4 * i);
    quad.policy = OutcomePolicy::ForcedEven;  // the swap closes on +1
    quad.label = span_label("quad", {4 * i - 3, 4 * i - 2, 4 * i - 1, 4 * i});
    return {pair, quad};
}

// --- ideal schedules --------------------------------------------------

IdealSchedule& IdealSchedule::braid(int i, int j) {
    require_even_labels(n_labels);
    require_label(i, n_labels, "braid");
    require_label(j, n_labels, "braid");
    if (i == j) throw ConfigError("braid needs two distinct labels");
    IdealOp op;
    op.kind = IdealOp::Kind::Braid;
    op.i = i;
    op.j = j;
    ops.push_back(std::move(op));
    return *this;
}

IdealSchedule& IdealSchedule::project(ProjectorSpec spec) {
    require_even_labels(n_labels);
    const ParityForm form = parity_form(spec.parity);
    for (int label : form.labels) require_label(label, n_labels, "projector");
    if (spec.label.empty())
        spec.label = span_label(form.labels.size() == 2 ? "pair" : "quad", form.labels);
    IdealOp op;
    op.kind = IdealOp::Kind::Project;
    op.projector = std::move(spec);
    ops.push_back(std::move(op));
    return *this;
}

IdealSchedule& IdealSchedule::project_pair(int i, int j, OutcomePolicy policy) {
    if (i == j) throw ConfigError("pair projector needs two distinct labels");
    ProjectorSpec spec;
    spec.parity = pair_parity(i, j);
    spec.policy = policy;
    return project(std::move(spec));
}

IdealSchedule& IdealSchedule::project_quad(int qubit, OutcomePolicy policy) {
    if (qubit < 1) throw ConfigError("quadruple projector qubit index is 1-based");
    ProjectorSpec spec;
    spec.parity = quad_parity(4 * qubit - 3, 4 * qubit - 2, 4 * qubit - 1, 4 * qubit);
    spec.policy = policy;
    return project(std::move(spec));
}

IdealSchedule& IdealSchedule::encoding_swap(int i, int j,
                                            const std::vector<std::pair<int, int>>& dense_word,
                                            OutcomePolicy policy) {
    auto [pair, quad] = generalized_projectors(i, j, policy);
    project(std::move(pair));
    for (const auto& [a, b] : dense_word) braid(a, b);
    project(std::move(quad));
    return *this;
}

int IdealSchedule::projector_count() const {
    int count = 0;
    for (const auto& op : ops)
        if (op.kind == IdealOp::Kind::Project) ++count;
    return count;
}

double TransitionMatrix::unitarity_residual() const {
    if (t.size() == 0) return 0.0;
    return (t.adjoint() * t - Mat::Identity(t.cols(), t.cols())).norm();
}

std::uint64_t logical_occupation(std::uint64_t logical_bits, int n_qubits) {
    if (n_qubits < 1 || n_qubits > 31) throw ConfigError("unsupported qubit count");
    if (logical_bits >> n_qubits)
        throw ConfigError("logical bits exceed the declared qubit count");
    std::uint64_t mask = 0;
    for (int q = 0; q < n_qubits; ++q)
        if ((logical_bits >> q) & 1) mask |= std::uint64_t{0b11} << (2 * q);
    return mask;
}

std::vector<std::uint64_t> logical_basis(int n_qubits) {
    std::vector<std::uint64_t> basis;
    basis.reserve(std::size_t{1} << n_qubits);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n_qubits); ++b)
        basis.push_back(logical_occupation(b, n_qubits));
    return basis;
}

TransitionMatrix run_ideal_exact(const IdealSchedule& schedule,
                                 const std::vector<std::uint64_t>& basis) {
    require_even_labels(schedule.n_labels);
    if (basis.empty()) throw ConfigError("transition basis is empty");
    FockSpace fock(schedule.n_labels);
    for (std::uint64_t mask : basis)
        if (mask >= static_cast<std::uint64_t>(fock.dim()))
            throw ConfigError("basis occupation outside the Fock space");

    const int n = static_cast<int>(basis.size());
    std::vector<Vec> cols;
    cols.reserve(n);
    for (std::uint64_t mask : basis) cols.push_back(fock.basis_state(mask));

    TransitionMatrix result;
    result.basis = basis;
    for (const auto& op : schedule.ops) {
        if (op.kind == IdealOp::Kind::Braid) {
            for (auto& v : cols) fock.apply_braid(op.i, op.j, v);
            continue;
        }
        const int sign = resolved_sign(op.projector);
        double prob_sum = 0.0;
        int live = 0;
        for (auto& v : cols) {
            const double before = v.squaredNorm();
            fock.apply_projector(op.projector.parity, sign, v);
            if (before > 1e-30) {
                prob_sum += v.squaredNorm() / before;
                ++live;
            }
        }
        EventRecord record;
        record.label = op.projector.label;
        record.outcome = sign;
        record.probability = live ? prob_sum / live : 0.0;
        record.deterministic = record.probability > 1.0 - kDeterministicTol;
        record.scale = record.deterministic ? 1.0 : kSqrt2;
        for (auto& v : cols) v *= record.scale;
        result.events.push_back(std::move(record));
    }

    result.t = Mat(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) result.t(r, c) = cols[c](basis[r]);
    return result;
}

namespace {

// Decodes a sparse-logical occupation mask back to its qubit bits.
std::uint64_t logical_bits_of_mask(std::uint64_t mask, int n_qubits) {
    std::uint64_t bits = 0;
    for (int q = 0; q < n_qubits; ++q) {
        const std::uint64_t pair = (mask >> (2 * q)) & 0b11;
        if (pair == 0b11)
            bits |= std::uint64_t{1} << q;
        else if (pair != 0)
            throw ConfigError("basis occupation is not a sparse logical state");
    }
    if (mask >> (2 * n_qubits))
        throw ConfigError("basis occupation is not a sparse logical state");
    return bits;
}

}  // namespace

TransitionMatrix run_ideal_stabilizer(const IdealSchedule& schedule,
                                      const EncodingLayout& layout,
                                      const std::vector<std::uint64_t>& basis) {
    if (layout.kind != EncodingKind::Sparse)
        throw Error("the stabilizer backend predicts gates for the sparse encoding");
    if (schedule.n_labels != layout.n_labels())
        throw ConfigError("schedule and layout disagree on the number of labels");
    if (basis.empty()) throw ConfigError("transition basis is empty");

    StabilizerSet tracker = gate_tracker(layout);
    TransitionMatrix result;
    result.basis = basis;
    for (const auto& op : schedule.ops) {
        if (op.kind == IdealOp::Kind::Braid) {
            tracker.apply_braid(op.i, op.j);
            continue;
        }
        const int sign = resolved_sign(op.projector);
        const MeasurementOutcome mo = tracker.measure(op.projector.parity, sign);
        EventRecord record;
        record.label = op.projector.label;
        record.outcome = mo.outcome;
        record.probability = mo.probability;
        record.deterministic = mo.deterministic;
        record.scale = mo.deterministic ? 1.0 : kSqrt2;
        result.events.push_back(std::move(record));
    }

    const Mat u = predicted_logical_unitary(layout, tracker);
    const int n = static_cast<int>(basis.size());
    result.t = Mat(n, n);
    for (int c = 0; c < n; ++c) {
        const std::uint64_t cb = logical_bits_of_mask(basis[c], layout.n_qubits);
        for (int r = 0; r < n; ++r) {
            const std::uint64_t rb = logical_bits_of_mask(basis[r], layout.n_qubits);
            result.t(r, c) = u(static_cast<Eigen::Index>(rb), static_cast<Eigen::Index>(cb));
        }
    }
    return result;
}

SampledSchedule sample_outcomes_exact(const IdealSchedule& schedule, std::uint64_t initial_mask,
                                      std::uint64_t seed) {
    require_even_labels(schedule.n_labels);
    FockSpace fock(schedule.n_labels);
    if (initial_mask >= static_cast<std::uint64_t>(fock.dim()))
        throw ConfigError("initial occupation outside the Fock space");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    Vec v = fock.basis_state(initial_mask);

    SampledSchedule out{IdealSchedule(schedule.n_labels), {}};
    for (const auto& op : schedule.ops) {
        if (op.kind == IdealOp::Kind::Braid) {
            fock.apply_braid(op.i, op.j, v);
            out.schedule.braid(op.i, op.j);
            continue;
        }
        int sign = 0;
        double prob = 0.0;
        if (op.projector.policy == OutcomePolicy::Sampled) {
            Vec even = v;
            fock.apply_projector(op.projector.parity, +1, even);
            const double p_even = even.squaredNorm();
            sign = uniform(rng) < p_even ? +1 : -1;
            prob = sign > 0 ? p_even : 1.0 - p_even;
        } else {
            sign = op.projector.forced_sign();
            Vec proj = v;
            fock.apply_projector(op.projector.parity, sign, proj);
            prob = proj.squaredNorm();
        }
        fock.apply_projector(op.projector.parity, sign, v);
        const double norm = v.norm();
        if (norm > 1e-15) v /= norm;

        ProjectorSpec resolved = op.projector;
        resolved.policy = sign > 0 ? OutcomePolicy::ForcedEven : OutcomePolicy::ForcedOdd;
        out.schedule.project(resolved);

        EventRecord record;
        record.label = resolved.label;
        record.outcome = sign;
        record.probability = prob;
        record.deterministic = prob > 1.0 - kDeterministicTol;
        record.scale = record.deterministic ? 1.0 : kSqrt2;
        out.events.push_back(std::move(record));
    }
    return out;
}

SampledSchedule sample_outcomes_stabilizer(const IdealSchedule& schedule,
                                           const EncodingLayout& layout,
                                           std::uint64_t initial_logical_bits,
                                           std::uint64_t seed) {
    if (layout.kind != EncodingKind::Sparse)
        throw Error("stabilizer sampling supports the sparse encoding");
    if (schedule.n_labels != layout.n_labels())
        throw ConfigError("schedule and layout disagree on the number of labels");
    if (initial_logical_bits >> layout.n_qubits)
        throw ConfigError("initial logical bits exceed the qubit count");

    std::vector<MajoranaMonomial> gens = layout.constraints();
    for (int q = 1; q <= layout.n_qubits; ++q) {
        MajoranaMonomial z = layout.logical_z(q);
        if ((initial_logical_bits >> (q - 1)) & 1) z = z.negated();
        gens.push_back(std::move(z));
    }
    StabilizerSet state(layout.n_labels(), std::move(gens));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    SampledSchedule out{IdealSchedule(schedule.n_labels), {}};
    for (const auto& op : schedule.ops) {
        if (op.kind == IdealOp::Kind::Braid) {
            state.apply_braid(op.i, op.j);
            out.schedule.braid(op.i, op.j);
            continue;
        }
        int sign;
        if (op.projector.policy == OutcomePolicy::Sampled) {
            if (auto forced = state.forced_outcome(op.projector.parity); forced.has_value())
                sign = *forced;
            else
                sign = uniform(rng) < 0.5 ? +1 : -1;
        } else {
            sign = op.projector.forced_sign();
        }
        const MeasurementOutcome mo = state.measure(op.projector.parity, sign);

        ProjectorSpec resolved = op.projector;
        resolved.policy = sign > 0 ? OutcomePolicy::ForcedEven : OutcomePolicy::ForcedOdd;
        out.schedule.project(resolved);

        EventRecord record;
        record.label = resolved.label;
        record.outcome = mo.outcome;
        record.probability = mo.probability;
        record.deterministic = mo.deterministic;
        record.scale = mo.deterministic ? 1.0 : kSqrt2;
        out.events.push_back(std::move(record));
    }
    return out;
}

// --- lattice schedules ------------------------------------------------

namespace {

// Everything the amplitude evaluation needs about one projector event:
// the event's pulled-back elementary operators over the reference frame.
struct CompiledProjector {
    bool is_quad = false;
    int sign = +1;                      // effective sign on the canonical base
    std::vector<LinearOp> pair_ops;     // [d, d^dag] in string order (pairs)
    std::vector<LinearOp> quad_ops;     // [a_a, a_b, a_c, a_d] (quads)
    std::string label;
};

// Nambu vector of the creator conjugate to annihilator column w.
Eigen::VectorXcd creator_vector(const Eigen::VectorXcd& w) {
    const Eigen::Index half = w.size() / 2;
    Eigen::VectorXcd out(w.size());
    out.head(half) = w.tail(half).conjugate();
    out.tail(half) = w.head(half).conjugate();
    return out;
}

struct LatticeCompilation {
    NambuModes modes0;
    Eigen::MatrixXcd s_tot;
    std::vector<CompiledProjector> projectors;
    double scale = 1.0;
    std::int64_t branches = 1;
    std::vector<EventRecord> events;
    double propagator_residual = 0.0;  // worst ||S^dag S - 1||_inf seen
};

double unitary_defect(const Eigen::MatrixXcd& s) {
    return (s.adjoint() * s - Eigen::MatrixXcd::Identity(s.rows(), s.cols()))
        .cwiseAbs()
        .maxCoeff();
}

void validate_lattice(const LatticeSchedule& schedule) {
    if (schedule.dt <= 0) throw ConfigError("lattice schedule needs dt > 0");
    if (schedule.t_end < schedule.t_begin)
        throw ConfigError("lattice schedule has t_end before t_begin");
    double prev = schedule.t_begin;
    for (const auto& tp : schedule.projectors) {
        if (tp.time <= prev || tp.time > schedule.t_end)
            throw ConfigError("projector times must increase strictly within the schedule span");
        prev = tp.time;
    }
}

LatticeCompilation compile_lattice(const LatticeSchedule& schedule) {
    validate_lattice(schedule);
    LatticeCompilation out;
    out.modes0 = diagonalize(schedule.network.assemble(schedule.t_begin), schedule.zero_factor,
                             schedule.majorana_sites);
    const int n_zero = out.modes0.n_zero;
    if (n_zero == 0) throw Error("lattice schedule has no zero modes to address");

    const Eigen::MatrixXcd& ref = out.modes0.modes;
    Eigen::MatrixXcd s_cum =
        Eigen::MatrixXcd::Identity(2 * schedule.network.n_sites(), 2 * schedule.network.n_sites());
    double t_prev = schedule.t_begin;
    for (const auto& tp : schedule.projectors) {
        s_cum = propagate(schedule.network, t_prev, tp.time, schedule.dt) * s_cum;
        t_prev = tp.time;
        out.propagator_residual = std::max(out.propagator_residual, unitary_defect(s_cum));

        const NambuModes frame_k = diagonalize(schedule.network.assemble(tp.time),
                                               schedule.zero_factor, schedule.majorana_sites);
        if (frame_k.n_zero != n_zero)
            throw Error("zero-mode count changed at a projection time; projections must happen "
                        "in parked configurations");

        const ParityForm form = parity_form(tp.spec.parity);
        for (int label : form.labels)
            if (label > 2 * n_zero)
                throw ConfigError("projector label " + std::to_string(label) +
                                  " outside the zero-mode register");
        CompiledProjector cp;
        cp.sign = form.base_sign * tp.spec.forced_sign();
        cp.label = tp.spec.label.empty()
                       ? span_label(form.labels.size() == 2 ? "pair" : "quad", form.labels)
                       : tp.spec.label;
        const auto pulled = [&](const Eigen::VectorXcd& w) {
            return mode_in_frame(ref, s_cum.adjoint() * w);
        };
        if (form.labels.size() == 2) {
            cp.is_quad = false;
            const Eigen::VectorXcd w_d =
                (frame_k.zero_majoranas.col(form.labels[0] - 1) -
                 kI * frame_k.zero_majoranas.col(form.labels[1] - 1)) /
                kSqrt2;
            const LinearOp d = pulled(w_d);
            if (cp.sign > 0) {
                cp.pair_ops = {d, d.adjoint()};  // d d^dag = (1 + parity)/2
            } else {
                cp.pair_ops = {d.adjoint(), d};
            }
        } else {
            cp.is_quad = true;
            out.branches *= 2;
            for (int label : form.labels)
                cp.quad_ops.push_back(pulled(frame_k.zero_majoranas.col(label - 1)));
        }
        out.projectors.push_back(std::move(cp));

        EventRecord record;
        record.label = out.projectors.back().label;
        record.outcome = tp.spec.forced_sign();
        record.probability = 0.5;  // ideal branch probability of a fresh parity
        record.deterministic = false;
        record.scale = kSqrt2;
        out.scale *= kSqrt2;
        out.events.push_back(std::move(record));
    }
    out.s_tot = propagate(schedule.network, t_prev, schedule.t_end, schedule.dt) * s_cum;
    out.propagator_residual = std::max(out.propagator_residual, unitary_defect(out.s_tot));
    return out;
}

void validate_zero_basis(const std::vector<std::uint64_t>& basis, int n_zero) {
    if (basis.empty()) throw ConfigError("transition basis is empty");
    for (std::uint64_t mask : basis)
        if (mask >> n_zero)
            throw BasisOutsideZeroSector("basis occupation " + std::to_string(mask) +
                                         " addresses modes beyond the " +
                                         std::to_string(n_zero) + " zero modes");
}

}  // namespace

struct CompiledLattice::Impl {
    LatticeCompilation comp;
    CommonVacuum cv;
    std::vector<LinearOp> bra_prefix;
    std::vector<LinearOp> bra_creators;
    int n_modes = 0;
    int n_quads = 0;
};

CompiledLattice::CompiledLattice(const LatticeSchedule& schedule)
    : impl_(std::make_unique<Impl>()) {
    impl_->comp = compile_lattice(schedule);
    const Eigen::MatrixXcd& ref = impl_->comp.modes0.modes;
    impl_->n_modes = static_cast<int>(ref.cols());

    impl_->cv = build_common_vacuum(ref, impl_->comp.s_tot.adjoint() * ref);
    for (auto it = impl_->cv.builders.rbegin(); it != impl_->cv.builders.rend(); ++it)
        impl_->bra_prefix.push_back(it->adjoint());

    // Bra-side operators: <m|U = <0_B| prod_desc (a_{S^dag w_z})^dag with
    // w_z the creator vector of reference zero mode z.
    for (int z = 0; z < impl_->comp.modes0.n_zero; ++z)
        impl_->bra_creators.push_back(
            mode_in_frame(ref, impl_->comp.s_tot.adjoint() * creator_vector(ref.col(z)))
                .adjoint());

    for (const auto& cp : impl_->comp.projectors)
        if (cp.is_quad) ++impl_->n_quads;
}

CompiledLattice::~CompiledLattice() = default;
CompiledLattice::CompiledLattice(CompiledLattice&&) noexcept = default;
CompiledLattice& CompiledLattice::operator=(CompiledLattice&&) noexcept = default;

int CompiledLattice::zero_modes() const { return impl_->comp.modes0.n_zero; }

std::int64_t CompiledLattice::branches_per_amplitude() const { return impl_->comp.branches; }

TransitionMatrix CompiledLattice::evaluate(const std::vector<std::uint64_t>& basis,
                                           int workers) const {
    const LatticeCompilation& comp = impl_->comp;
    const CommonVacuum& cv = impl_->cv;
    const std::vector<LinearOp>& bra_prefix = impl_->bra_prefix;
    const std::vector<LinearOp>& bra_creators = impl_->bra_creators;
    const int n_modes = impl_->n_modes;
    const int n_quads = impl_->n_quads;
    validate_zero_basis(basis, comp.modes0.n_zero);

    const int n = static_cast<int>(basis.size());
    TransitionMatrix result;
    result.basis = basis;
    result.events = comp.events;
    result.branches_per_amplitude = comp.branches;
    result.propagator_residual = comp.propagator_residual;
    result.t = Mat::Zero(n, n);

    const auto amplitude = [&](std::uint64_t bra_mask, std::uint64_t ket_mask) {
        std::vector<LinearOp> base;
        base.reserve(bra_prefix.size() + 2 * comp.modes0.n_zero + 6 * comp.projectors.size());
        base.insert(base.end(), bra_prefix.begin(), bra_prefix.end());
        for (int z = comp.modes0.n_zero - 1; z >= 0; --z)
            if ((bra_mask >> z) & 1) base.push_back(bra_creators[z]);

        // Contractions and the vacuum normalization both leave double
        // range on large frames, in cancelling directions; accumulate the
        // branch sum with an explicit binary exponent and fold the
        // log-space normalization in only at the end.
        std::complex<double> total = 0.0;
        long e_total = 0;
        for (std::int64_t branch = 0; branch < comp.branches; ++branch) {
            std::vector<LinearOp> ops = base;
            std::complex<double> coeff = 1.0;
            // Later events sit to the left; quad branch bits are assigned
            // little-endian in event order.
            int quad_index = n_quads;
            for (auto it = comp.projectors.rbegin(); it != comp.projectors.rend(); ++it) {
                if (!it->is_quad) {
                    ops.insert(ops.end(), it->pair_ops.begin(), it->pair_ops.end());
                    continue;
                }
                --quad_index;
                if ((branch >> quad_index) & 1) {
                    // (1 + s Q)/2 with Q = -4 a_a a_b a_c a_d.
                    coeff *= -2.0 * static_cast<double>(it->sign);
                    ops.insert(ops.end(), it->quad_ops.begin(), it->quad_ops.end());
                } else {
                    coeff *= 0.5;
                }
            }
            for (int z = 0; z < comp.modes0.n_zero; ++z)
                if ((ket_mask >> z) & 1) ops.push_back(frame_creator(n_modes, z));
            auto [p, e] = scaled_vacuum_expectation(ops);
            p *= coeff;
            if (p == 0.0) continue;
            if (total == 0.0) {
                total = p;
                e_total = e;
            } else if (e >= e_total) {
                total = total * std::exp2(static_cast<double>(e_total - e)) + p;
                e_total = e;
            } else {
                total += p * std::exp2(static_cast<double>(e - e_total));
            }
        }
        if (total == 0.0) return std::complex<double>(0.0);
        return comp.scale * total *
               std::exp2(static_cast<double>(e_total) + cv.log2_inv_sqrt_norm);
    };

    const auto worker = [&](int first, int stride) {
        for (int flat = first; flat < n * n; flat += stride)
            result.t(flat / n, flat % n) = amplitude(basis[flat / n], basis[flat % n]);
    };
    const int pool = std::max(1, std::min(workers, n * n));
    if (pool == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(pool);
        for (int k = 0; k < pool; ++k) threads.emplace_back(worker, k, pool);
        for (auto& th : threads) th.join();
    }
    return result;
}

TransitionMatrix run_lattice_pfaffian(const LatticeSchedule& schedule,
                                      const std::vector<std::uint64_t>& basis, int workers) {
    return CompiledLattice(schedule).evaluate(basis, workers);
}

TransitionMatrix run_lattice_exact(const LatticeSchedule& schedule,
                                   const std::vector<std::uint64_t>& basis) {
    validate_lattice(schedule);
    const int n_sites = schedule.network.n_sites();
    if (2 * n_sites > 24)
        throw Error("exact lattice backend is limited to 12 sites, got " +
                    std::to_string(n_sites));
    FockSpace fock(2 * n_sites);
    const NambuModes modes0 = diagonalize(schedule.network.assemble(schedule.t_begin),
                                          schedule.zero_factor, schedule.majorana_sites);
    validate_zero_basis(basis, modes0.n_zero);

    std::vector<Vec> bras;
    for (std::uint64_t mask : basis) bras.push_back(fock.frame_basis_state(modes0.modes, mask));

    const auto m_of_t = [&](double t) { return schedule.network.assemble(t); };
    const int n = static_cast<int>(basis.size());
    TransitionMatrix result;
    result.basis = basis;
    result.t = Mat(n, n);
    {   // same one-particle propagator diagnostic the pfaffian backend reports
        Eigen::MatrixXcd s =
            Eigen::MatrixXcd::Identity(2 * n_sites, 2 * n_sites);
        double t_prev = schedule.t_begin;
        for (const auto& tp : schedule.projectors) {
            s = propagate(schedule.network, t_prev, tp.time, schedule.dt) * s;
            t_prev = tp.time;
            result.propagator_residual =
                std::max(result.propagator_residual, unitary_defect(s));
        }
        s = propagate(schedule.network, t_prev, schedule.t_end, schedule.dt) * s;
        result.propagator_residual =
            std::max(result.propagator_residual, unitary_defect(s));
    }

    for (int c = 0; c < n; ++c) {
        Vec v = fock.frame_basis_state(modes0.modes, basis[c]);
        double t_prev = schedule.t_begin;
        for (const auto& tp : schedule.projectors) {
            fock.evolve(m_of_t, t_prev, tp.time, schedule.dt, v);
            t_prev = tp.time;
            const NambuModes frame_k = diagonalize(schedule.network.assemble(tp.time),
                                                   schedule.zero_factor, schedule.majorana_sites);
            if (frame_k.n_zero != modes0.n_zero)
                throw Error("zero-mode count changed at a projection time");
            const ParityForm form = parity_form(tp.spec.parity);
            const int sign = form.base_sign * tp.spec.forced_sign();
            if (form.labels.size() == 2) {
                const Eigen::VectorXcd w_d =
                    (frame_k.zero_majoranas.col(form.labels[0] - 1) -
                     kI * frame_k.zero_majoranas.col(form.labels[1] - 1)) /
                    kSqrt2;
                if (sign > 0) {
                    fock.apply_mode_dagger(w_d, v);  // d d^dag
                    fock.apply_mode(w_d, v);
                } else {
                    fock.apply_mode(w_d, v);  // d^dag d
                    fock.apply_mode_dagger(w_d, v);
                }
            } else {
                Vec qv = v;  // Q = -4 a_a a_b a_c a_d, rightmost factor first
                fock.apply_mode(frame_k.zero_majoranas.col(form.labels[3] - 1), qv);
                fock.apply_mode(frame_k.zero_majoranas.col(form.labels[2] - 1), qv);
                fock.apply_mode(frame_k.zero_majoranas.col(form.labels[1] - 1), qv);
                fock.apply_mode(frame_k.zero_majoranas.col(form.labels[0] - 1), qv);
                v = 0.5 * v + (-4.0 * 0.5 * sign) * qv;
            }
            v *= kSqrt2;
            if (c == 0) {
                EventRecord record;
                record.label = tp.spec.label.empty()
                                   ? span_label(form.labels.size() == 2 ? "pair" : "quad",
                                                form.labels)
                                   : tp.spec.label;
                record.outcome = tp.spec.forced_sign();
                record.probability = 0.5;
                record.deterministic = false;
                record.scale = kSqrt2;
                result.events.push_back(std::move(record));
                if (form.labels.size() == 4) result.branches_per_amplitude *= 2;
            }
        }
        fock.evolve(m_of_t, t_prev, schedule.t_end, schedule.dt, v);
        for (int r = 0; r < n; ++r) result.t(r, c) = bras[r].dot(v);
    }
    return result;
}

// --- figures of merit -------------------------------------------------

double gate_fidelity(const TransitionMatrix& t, const Mat& target) {
    if (t.t.rows() != target.rows() || t.t.cols() != target.cols())
        throw Error("gate_fidelity dimension mismatch");
    const double d = static_cast<double>(target.rows());
    const double gram = std::real((t.t.adjoint() * t.t).trace());
    if (gram < 1e-30) return 0.0;
    const std::complex<double> tr = (target.adjoint() * t.t).trace();
    const double f = std::norm(tr) / (d * gram);
    return std::clamp(f, 0.0, 1.0);
}

double phase_aligned_deviation(const Mat& t, const Mat& reference) {
    if (t.rows() != reference.rows() || t.cols() != reference.cols())
        throw Error("phase_aligned_deviation dimension mismatch");
    Eigen::Index rmax = 0, cmax = 0;
    reference.cwiseAbs().maxCoeff(&rmax, &cmax);
    std::complex<double> phase = 1.0;
    const std::complex<double> anchor = t(rmax, cmax);
    if (std::abs(anchor) > 1e-300) {
        const std::complex<double> ratio = reference(rmax, cmax) / anchor;
        if (std::abs(ratio) > 1e-300) phase = ratio / std::abs(ratio);
    }
    return ((t * phase) - reference).cwiseAbs().maxCoeff();
}

}  // namespace mzm
