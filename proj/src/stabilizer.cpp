// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/stabilizer.hpp"

#include <algorithm>
#include <sstream>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

// Support of a monomial as a bit vector over labels 1..n (label l -> bit
// l-1), for GF(2) linear algebra in the deterministic-outcome solver.
using Bits = std::vector<std::uint64_t>;

Bits support_bits(const MajoranaMonomial& m, int n_labels) {
    Bits b((n_labels + 63) / 64, 0);
    for (int idx : m.indices()) b[(idx - 1) / 64] |= std::uint64_t{1} << ((idx - 1) % 64);
    return b;
}

void xor_into(Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

bool get_bit(const Bits& a, int pos) { return (a[pos / 64] >> (pos % 64)) & 1; }

bool all_zero(const Bits& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t w) { return w == 0; });
}

}  // namespace

EncodingLayout EncodingLayout::sparse(int n_qubits) {
    return {EncodingKind::Sparse, n_qubits};
}

EncodingLayout EncodingLayout::dense(int n_qubits) {
    return {EncodingKind::Dense, n_qubits};
}

int EncodingLayout::n_labels() const {
    return kind == EncodingKind::Sparse ? 4 * n_qubits : 2 * (n_qubits + 1);
}

std::vector<MajoranaMonomial> EncodingLayout::constraints() const {
    std::vector<MajoranaMonomial> out;
    if (kind == EncodingKind::Sparse) {
        for (int q = 1; q <= n_qubits; ++q)
            out.push_back(quad_parity(4 * q - 3, 4 * q - 2, 4 * q - 1, 4 * q));
    } else {
        MajoranaMonomial total;
        for (int k = 1; k <= n_qubits + 1; ++k) total = total * pair_parity(2 * k - 1, 2 * k);
        out.push_back(total);
    }
    return out;
}

MajoranaMonomial EncodingLayout::logical_z(int q) const {
    if (kind == EncodingKind::Sparse) return pair_parity(4 * q - 3, 4 * q - 2);
    return pair_parity(2 * q + 1, 2 * q + 2);
}

MajoranaMonomial EncodingLayout::logical_x(int q) const {
    if (kind == EncodingKind::Sparse) return pair_parity(4 * q - 2, 4 * q - 1);
    // Dense logical X spans the ancilla pair: -i g_2 g_{2q+1} commutes with
    // the global parity and anticommutes with logical Z.
    return pair_parity(2, 2 * q + 1);
}

StabilizerSet::StabilizerSet(int n_labels, std::vector<MajoranaMonomial> generators)
    : n_labels_(n_labels), gens_(std::move(generators)) {
    check_invariants();
}

StabilizerSet StabilizerSet::vacuum(int n_labels) {
    std::vector<MajoranaMonomial> gens;
    for (int k = 1; 2 * k <= n_labels; ++k) gens.push_back(pair_parity(2 * k - 1, 2 * k));
    return StabilizerSet(n_labels, std::move(gens));
}

StabilizerSet StabilizerSet::code_frame(const EncodingLayout& layout) {
    return StabilizerSet(layout.n_labels(), layout.constraints());
}

void StabilizerSet::check_invariants() const {
    if (n_labels_ <= 0 || n_labels_ % 2) throw Error("label count must be even and positive");
    if (static_cast<int>(gens_.size()) > n_labels_ / 2)
        throw Error("more generators than fermionic modes");
    for (const auto& g : gens_) {
        if (!g.is_hermitian() || g.length() % 2)
            throw Error("generator not an even Hermitian monomial: " + g.to_string());
        if (!g.indices().empty() && g.indices().back() > n_labels_)
            throw Error("generator label out of range: " + g.to_string());
    }
    for (std::size_t a = 0; a < gens_.size(); ++a)
        for (std::size_t b = a + 1; b < gens_.size(); ++b)
            if (!gens_[a].commutes_with(gens_[b]))
                throw Error("generators do not commute: " + gens_[a].to_string() + " vs " +
                            gens_[b].to_string());
}

void StabilizerSet::track(MajoranaMonomial op) { tracked_.push_back(std::move(op)); }

void StabilizerSet::apply_braid(int i, int j) {
    if (i == j || i < 1 || j < 1 || i > n_labels_ || j > n_labels_)
        throw Error("braid labels out of range");
    for (auto& g : gens_) g = g.braided(i, j);
    for (auto& t : tracked_) t = t.braided(i, j);
}

std::optional<int> StabilizerSet::forced_outcome(const MajoranaMonomial& p) const {
    for (const auto& g : gens_)
        if (!g.commutes_with(p)) return std::nullopt;

    // p commutes with the whole group, so its value is fixed exactly when
    // its support is a GF(2) combination of generator supports (always the
    // case for a maximal group; partial groups may leave it undetermined).
    // Solve for the subset, take the product, read off the sign.
    const int n = static_cast<int>(gens_.size());
    std::vector<Bits> rows;
    std::vector<std::uint64_t> tags;  // subset bookkeeping, bit k = gens_[k]
    rows.reserve(n);
    for (int k = 0; k < n; ++k) {
        rows.push_back(support_bits(gens_[k], n_labels_));
        tags.push_back(std::uint64_t{1} << k);
    }
    Bits target = support_bits(p, n_labels_);
    std::uint64_t subset = 0;
    int next_row = 0;
    for (int col = 0; col < n_labels_ && next_row < n; ++col) {
        int pivot = -1;
        for (int r = next_row; r < n; ++r)
            if (get_bit(rows[r], col)) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[pivot], rows[next_row]);
        std::swap(tags[pivot], tags[next_row]);
        for (int r = 0; r < n; ++r)
            if (r != next_row && get_bit(rows[r], col)) {
                xor_into(rows[r], rows[next_row]);
                tags[r] ^= tags[next_row];
            }
        if (get_bit(target, col)) {
            xor_into(target, rows[next_row]);
            subset ^= tags[next_row];
        }
        ++next_row;
    }
    if (!all_zero(target))
        throw Error("parity commutes with the tracked group but is not determined by it: " +
                    p.to_string());

    MajoranaMonomial prod;
    for (int k = 0; k < n; ++k)
        if ((subset >> k) & 1) prod = prod * gens_[k];
    if (prod.indices() != p.indices()) throw Error("internal: subset product support mismatch");
    int delta = (prod.phase_exp() - p.phase_exp() + 4) % 4;
    if (delta == 0) return +1;
    if (delta == 2) return -1;
    throw Error("internal: non-real phase ratio in forced outcome");
}

MeasurementOutcome StabilizerSet::measure(const MajoranaMonomial& p, int outcome) {
    if (!p.is_hermitian() || p.length() % 2)
        throw Error("measured parity must be an even Hermitian monomial");
    if (outcome != +1 && outcome != -1) throw Error("outcome must be +1 or -1");

    std::vector<int> anti;
    for (int k = 0; k < static_cast<int>(gens_.size()); ++k)
        if (!gens_[k].commutes_with(p)) anti.push_back(k);

    if (anti.empty()) {
        int forced = *forced_outcome(p);
        if (forced != outcome)
            throw ForcedOutcomeMismatch("outcome " + std::to_string(outcome) +
                                        " contradicts stabilizer-fixed value for " + p.to_string());
        return {true, forced, 1.0};
    }

    // Random outcome: replace the lowest-index anticommuting generator g_r
    // with (outcome)*p and fold the old g_r into the other anticommuting
    // generators so they commute with the new one.
    const int r = anti.front();
    const MajoranaMonomial g_r = gens_[r];
    for (std::size_t a = 1; a < anti.size(); ++a) gens_[anti[a]] = gens_[anti[a]] * g_r;
    gens_[r] = (outcome == +1) ? p : p.negated();

    // A spectator anticommuting with p is restored to a commuting
    // representative by the same right-multiplication; that preserves its
    // action on the pre-measurement eigenspace.
    for (auto& t : tracked_)
        if (!t.commutes_with(p)) t = t * g_r;

    return {false, outcome, 0.5};
}

bool StabilizerSet::in_logical_subspace(const EncodingLayout& layout) const {
    for (const auto& c : layout.constraints()) {
        for (const auto& g : gens_)
            if (!g.commutes_with(c)) return false;
        for (const auto& t : tracked_)
            if (!t.commutes_with(c)) return false;
    }
    return true;
}

std::string StabilizerSet::to_text() const {
    std::ostringstream out;
    out << "labels " << n_labels_ << '\n';
    for (const auto& g : gens_) out << g.to_string() << '\n';
    return out.str();
}

StabilizerSet StabilizerSet::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n_labels = -1;
    std::vector<MajoranaMonomial> gens;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (n_labels < 0) {
            std::istringstream head(line);
            std::string kw;
            if (!(head >> kw >> n_labels) || kw != "labels")
                throw Error("expected 'labels <2N>' header, got '" + line + "'");
            continue;
        }
        gens.push_back(MajoranaMonomial::parse(line));
    }
    if (n_labels < 0) throw Error("missing 'labels' header");
    return StabilizerSet(n_labels, std::move(gens));
}

}  // namespace mzm
