// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/monomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mzm {

namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

// Counts inversions between distinct values (equal labels commute since
// g^2 = 1, so they contribute no sign) and returns the stably sorted list.
int sort_counting_transpositions(std::vector<int>& v) {
    // Insertion sort: fine for the short products the tracker handles.
    int inversions = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        int x = v[i];
        std::size_t j = i;
        while (j > 0 && v[j - 1] > x) {
            v[j] = v[j - 1];
            --j;
            ++inversions;
        }
        v[j] = x;
    }
    return inversions;
}

}  // namespace

MajoranaMonomial::MajoranaMonomial(int phase_exp, std::vector<int> raw)
    : phase_exp_(mod4(phase_exp)), indices_(std::move(raw)) {
    for (int idx : indices_) {
        if (idx < 1) throw std::invalid_argument("Majorana labels are 1-based positive integers");
    }
    int inv = sort_counting_transpositions(indices_);
    if (inv % 2) phase_exp_ = mod4(phase_exp_ + 2);
    // Cancel adjacent equal pairs: g_a g_a = 1, no sign.
    std::vector<int> kept;
    kept.reserve(indices_.size());
    for (int idx : indices_) {
        if (!kept.empty() && kept.back() == idx)
            kept.pop_back();
        else
            kept.push_back(idx);
    }
    indices_ = std::move(kept);
}

std::complex<double> MajoranaMonomial::phase() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_exp_];
}

bool MajoranaMonomial::is_hermitian() const {
    long m = length();
    return mod4(phase_exp_ * 2) == mod4(static_cast<int>(m * (m - 1)));  // i^{2k} == (-1)^{m(m-1)/2}
}

bool MajoranaMonomial::commutes_with(const MajoranaMonomial& other) const {
    long shared = 0;
    auto it = other.indices_.begin();
    for (int idx : indices_) {
        it = std::lower_bound(it, other.indices_.end(), idx);
        if (it != other.indices_.end() && *it == idx) ++shared, ++it;
    }
    return ((static_cast<long>(length()) * other.length() - shared) % 2) == 0;
}

MajoranaMonomial MajoranaMonomial::adjoint() const {
    long m = length();
    int k = mod4(-phase_exp_ + static_cast<int>(m * (m - 1)));  // conj phase, reversal sign
    MajoranaMonomial out = *this;
    out.phase_exp_ = k;
    return out;
}

MajoranaMonomial MajoranaMonomial::negated() const { return scaled(2); }

MajoranaMonomial MajoranaMonomial::scaled(int phase_exp_delta) const {
    MajoranaMonomial out = *this;
    out.phase_exp_ = mod4(out.phase_exp_ + phase_exp_delta);
    return out;
}

MajoranaMonomial MajoranaMonomial::braided(int i, int j) const {
    std::vector<int> mapped = indices_;
    int sign_flips = 0;
    for (int& idx : mapped) {
        if (idx == i) {
            idx = j;
            ++sign_flips;
        } else if (idx == j) {
            idx = i;
        }
    }
    return MajoranaMonomial(phase_exp_ + 2 * sign_flips, std::move(mapped));
}

MajoranaMonomial operator*(const MajoranaMonomial& a, const MajoranaMonomial& b) {
    std::vector<int> cat;
    cat.reserve(a.indices().size() + b.indices().size());
    cat.insert(cat.end(), a.indices().begin(), a.indices().end());
    cat.insert(cat.end(), b.indices().begin(), b.indices().end());
    return MajoranaMonomial(a.phase_exp() + b.phase_exp(), std::move(cat));
}

MajoranaMonomial pair_parity(int a, int b) { return MajoranaMonomial(3, {a, b}); }

MajoranaMonomial quad_parity(int a, int b, int c, int d) {
    return MajoranaMonomial(2, {a, b, c, d});
}

std::string MajoranaMonomial::to_string() const {
    static const char* tok[4] = {"+1", "+i", "-1", "-i"};
    std::string out = tok[phase_exp_];
    for (int idx : indices_) {
        out += ' ';
        out += std::to_string(idx);
    }
    return out;
}

MajoranaMonomial MajoranaMonomial::parse(const std::string& line) {
    std::istringstream in(line);
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("empty monomial line");
    int k;
    if (tok == "+1")
        k = 0;
    else if (tok == "+i")
        k = 1;
    else if (tok == "-1")
        k = 2;
    else if (tok == "-i")
        k = 3;
    else
        throw std::invalid_argument("bad phase token '" + tok + "'");
    std::vector<int> idx;
    int v;
    while (in >> v) idx.push_back(v);
    if (!in.eof()) throw std::invalid_argument("bad label in monomial line '" + line + "'");
    return MajoranaMonomial(k, std::move(idx));
}

}  // namespace mzm
