// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/fock.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

// Parity (-1)^{popcount} of the bits of b below position k.
inline double jw_sign(std::uint64_t b, int k) {
    std::uint64_t low = b & ((std::uint64_t{1} << k) - 1);
    return (std::popcount(low) & 1) ? -1.0 : 1.0;
}

}  // namespace

FockSpace::FockSpace(int n_majoranas) {
    if (n_majoranas <= 0 || n_majoranas % 2)
        throw std::invalid_argument("need a positive even Majorana count");
    if (n_majoranas > 24)
        throw std::invalid_argument("oracle capped at 24 Majorana sites (4096-dim)");
    n_modes_ = n_majoranas / 2;
}

Vec FockSpace::basis_state(std::uint64_t occupation) const {
    if (occupation >= static_cast<std::uint64_t>(dim()))
        throw std::invalid_argument("occupation out of range");
    Vec v = Vec::Zero(dim());
    v[static_cast<Eigen::Index>(occupation)] = 1.0;
    return v;
}

void FockSpace::apply_majorana(int label, Vec& v) const {
    if (label < 1 || label > n_majoranas()) throw std::invalid_argument("label out of range");
    const int k = (label - 1) / 2;           // 0-based mode
    const bool is_y = (label % 2) == 0;      // even label -> Y_k, odd -> X_k
    const std::uint64_t mask = std::uint64_t{1} << k;
    const std::complex<double> I(0, 1);
    Vec out(dim());
    for (Eigen::Index b = 0; b < dim(); ++b) {
        const std::uint64_t bu = static_cast<std::uint64_t>(b);
        const double zs = jw_sign(bu, k);
        std::complex<double> coeff(zs, 0);
        if (is_y) coeff *= (bu & mask) ? -I : I;  // Y|1> = -i|0>, Y|0> = i|1>
        out[static_cast<Eigen::Index>(bu ^ mask)] = coeff * v[b];
    }
    v.swap(out);
}

void FockSpace::apply_monomial(const MajoranaMonomial& m, Vec& v) const {
    // Rightmost factor acts first.
    for (auto it = m.indices().rbegin(); it != m.indices().rend(); ++it) apply_majorana(*it, v);
    v *= m.phase();
}

void FockSpace::apply_rotation(int i, int j, double theta, Vec& v) const {
    Vec gg = v;
    apply_majorana(j, gg);
    apply_majorana(i, gg);
    v = std::cos(theta) * v + std::sin(theta) * gg;
}

void FockSpace::apply_projector(const MajoranaMonomial& p, int sign, Vec& v) const {
    if (!p.is_hermitian() || p.length() % 2)
        throw std::invalid_argument("projector needs an even Hermitian monomial");
    Vec pv = v;
    apply_monomial(p, pv);
    v = 0.5 * (v + double(sign) * pv);
}

void FockSpace::apply_mode(const Vec& w, Vec& v) const {
    // a = w^dag Psi = sum_k conj(w_k) c_k + conj(w_{M+k}) c_k^dag.
    if (w.size() != 2 * n_modes_) throw std::invalid_argument("Nambu vector size mismatch");
    Vec out = Vec::Zero(dim());
    for (int k = 0; k < n_modes_; ++k) {
        const std::uint64_t mask = std::uint64_t{1} << k;
        const std::complex<double> ca = std::conj(w[k]);
        const std::complex<double> cc = std::conj(w[n_modes_ + k]);
        if (ca == 0.0 && cc == 0.0) continue;
        for (Eigen::Index b = 0; b < dim(); ++b) {
            if (v[b] == 0.0) continue;
            const std::uint64_t bu = static_cast<std::uint64_t>(b);
            const double zs = jw_sign(bu, k);
            if ((bu & mask) && ca != 0.0)  // c_k
                out[static_cast<Eigen::Index>(bu ^ mask)] += ca * zs * v[b];
            if (!(bu & mask) && cc != 0.0)  // c_k^dag
                out[static_cast<Eigen::Index>(bu | mask)] += cc * zs * v[b];
        }
    }
    v.swap(out);
}

void FockSpace::apply_mode_dagger(const Vec& w, Vec& v) const {
    // (w^dag Psi)^dag = (tau_x conj(w))^dag Psi.
    Vec wd(2 * n_modes_);
    wd.head(n_modes_) = w.tail(n_modes_).conjugate();
    wd.tail(n_modes_) = w.head(n_modes_).conjugate();
    apply_mode(wd, v);
}

Vec FockSpace::apply_nambu_hamiltonian(const Mat& m, const Vec& v) const {
    if (m.rows() != 2 * n_modes_ || m.cols() != 2 * n_modes_)
        throw std::invalid_argument("Nambu matrix size mismatch");
    const int M = n_modes_;
    Vec out = Vec::Zero(dim());
    // (1/2) sum_{mu nu} M_{mu nu} Psi_mu^dag Psi_nu with
    // Psi = (c_1..c_M, c_1^dag..c_M^dag): Psi_mu^dag creates for mu < M
    // and annihilates for mu >= M; Psi_nu the other way around.
    for (int mu = 0; mu < 2 * M; ++mu) {
        for (int nu = 0; nu < 2 * M; ++nu) {
            const std::complex<double> coeff = 0.5 * m(mu, nu);
            if (coeff == 0.0) continue;
            const int site2 = nu % M;
            const bool dag2 = nu >= M;  // Psi_nu creates?
            const int site1 = mu % M;
            const bool dag1 = mu < M;  // Psi_mu^dag creates?
            const std::uint64_t m2 = std::uint64_t{1} << site2;
            const std::uint64_t m1 = std::uint64_t{1} << site1;
            for (Eigen::Index b = 0; b < dim(); ++b) {
                if (v[b] == 0.0) continue;
                std::uint64_t bu = static_cast<std::uint64_t>(b);
                // Psi_nu first.
                if (dag2 ? (bu & m2) : !(bu & m2)) continue;
                double s = jw_sign(bu, site2);
                bu ^= m2;
                // then Psi_mu^dag.
                if (dag1 ? (bu & m1) : !(bu & m1)) continue;
                s *= jw_sign(bu, site1);
                bu ^= m1;
                out[static_cast<Eigen::Index>(bu)] += coeff * s * v[b];
            }
        }
    }
    return out;
}

void FockSpace::evolve(const std::function<Mat(double)>& m_of_t, double t_from, double t_to,
                       double dt, Vec& v) const {
    if (dt <= 0) throw std::invalid_argument("dt must be positive");
    const double total = t_to - t_from;
    const long n_steps = std::max(1L, std::lround(std::ceil(total / dt - 1e-12)));
    const double h = total / double(n_steps);
    for (long s = 0; s < n_steps; ++s) {
        const double t_mid = t_from + (double(s) + 0.5) * h;
        const Mat m = m_of_t(t_mid);
        // Particle-hole symmetry: tau_x M* tau_x = -M in the (c, c^dag)
        // block ordering.  A generator violating it is not a fermionic
        // quadratic Hamiltonian at all.
        {
            const int M = n_modes_;
            double resid = 0.0, scale = 1.0;
            for (int r = 0; r < 2 * M; ++r)
                for (int col = 0; col < 2 * M; ++col) {
                    const std::complex<double> phs =
                        std::conj(m((r + M) % (2 * M), (col + M) % (2 * M)));
                    resid = std::max(resid, std::abs(phs + m(r, col)));
                    scale = std::max(scale, std::abs(m(r, col)));
                }
            if (resid > 1e-10 * scale)
                throw PhsViolation("Nambu matrix breaks particle-hole symmetry");
        }
        // Crude norm bound on the lifted Hamiltonian; each Psi^dag Psi has
        // unit norm.
        const double hnorm = 0.5 * m.cwiseAbs().sum();
        const int substeps = std::max(1, int(std::ceil(std::abs(h) * hnorm / 2.0)));
        const double tau = h / double(substeps);
        for (int ss = 0; ss < substeps; ++ss) {
            Vec term = v;
            Vec acc = v;
            const std::complex<double> factor(0, -tau);
            for (int k = 1; k <= 80; ++k) {
                term = (factor / double(k)) * apply_nambu_hamiltonian(m, term);
                acc += term;
                if (term.norm() <= 1e-16 * acc.norm()) break;
                if (k == 80) throw Error("Taylor series for step exponential did not converge");
            }
            v = acc;
        }
    }
}

Vec FockSpace::frame_vacuum(const Mat& frame_columns) const {
    if (frame_columns.rows() != 2 * n_modes_ || frame_columns.cols() != n_modes_)
        throw std::invalid_argument("frame must be 2M x M (annihilator columns)");
    for (Eigen::Index ref = 0; ref < dim(); ++ref) {
        Vec v = basis_state(static_cast<std::uint64_t>(ref));
        for (int k = 0; k < n_modes_; ++k) {
            Vec w = frame_columns.col(k);
            Vec tmp = v;
            apply_mode_dagger(w, tmp);  // d_k^dag v
            apply_mode(w, tmp);         // d_k d_k^dag v
            v = tmp;
        }
        const double nrm = v.norm();
        if (nrm > 1e-6) return v / nrm;
    }
    throw Error("no reference basis state had overlap with the frame vacuum");
}

Vec FockSpace::frame_basis_state(const Mat& frame_columns, std::uint64_t occupation) const {
    Vec v = frame_vacuum(frame_columns);
    for (int k = n_modes_ - 1; k >= 0; --k)
        if ((occupation >> k) & 1) apply_mode_dagger(frame_columns.col(k), v);
    return v;
}

Mat FockSpace::dense_operator(const std::function<void(Vec&)>& apply) const {
    if (dim() > 256) throw std::invalid_argument("dense accessors limited to dim <= 256");
    Mat out(dim(), dim());
    for (Eigen::Index col = 0; col < dim(); ++col) {
        Vec v = basis_state(static_cast<std::uint64_t>(col));
        apply(v);
        out.col(col) = v;
    }
    return out;
}

Mat FockSpace::gamma(int label) const {
    return dense_operator([&](Vec& v) { apply_majorana(label, v); });
}

Mat FockSpace::monomial_matrix(const MajoranaMonomial& m) const {
    return dense_operator([&](Vec& v) { apply_monomial(m, v); });
}

Mat FockSpace::rotation(int i, int j, double theta) const {
    return dense_operator([&](Vec& v) { apply_rotation(i, j, theta, v); });
}

Mat FockSpace::projector(const MajoranaMonomial& p, int sign) const {
    return dense_operator([&](Vec& v) { apply_projector(p, sign, v); });
}

}  // namespace mzm
