// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/evolution.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <vector>

#include "mzm/errors.hpp"

namespace mzm {

namespace {

using cplx = std::complex<double>;

Eigen::VectorXcd phs_partner(const Eigen::VectorXcd& v) {
    const int m = static_cast<int>(v.size()) / 2;
    Eigen::VectorXcd out(2 * m);
    out.head(m) = v.tail(m).conjugate();
    out.tail(m) = v.head(m).conjugate();
    return out;
}

void check_nambu(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw Error("Nambu matrix must be square with even dimension");
    double scale = m.cwiseAbs().maxCoeff();
    double tol = 1e-10 * (scale > 0 ? scale : 1.0);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw PhsViolation("Nambu matrix is not Hermitian");
    const int half = static_cast<int>(m.rows()) / 2;
    Eigen::MatrixXcd mc = m.conjugate();
    Eigen::MatrixXcd swapped(m.rows(), m.cols());
    swapped.topLeftCorner(half, half) = mc.bottomRightCorner(half, half);
    swapped.topRightCorner(half, half) = mc.bottomLeftCorner(half, half);
    swapped.bottomLeftCorner(half, half) = mc.topRightCorner(half, half);
    swapped.bottomRightCorner(half, half) = mc.topLeftCorner(half, half);
    if ((swapped + m).cwiseAbs().maxCoeff() > tol)
        throw PhsViolation("Nambu matrix breaks particle-hole symmetry");
}

// Real-coefficient Gram-Schmidt step: project v off the columns of basis
// (all self-conjugate, so the true inner products are real).
Eigen::VectorXcd deflate_real(const Eigen::MatrixXcd& basis, int n_cols,
                              Eigen::VectorXcd v) {
    for (int a = 0; a < n_cols; ++a) {
        double coeff = (basis.col(a).adjoint() * v).value().real();
        v -= coeff * basis.col(a);
    }
    return v;
}

}  // namespace

Eigen::MatrixXcd NambuModes::frame() const {
    const int m2 = static_cast<int>(modes.rows());
    const int half = m2 / 2;
    Eigen::MatrixXcd w(m2, m2);
    w.leftCols(half) = modes;
    w.block(0, half, half, half) = modes.bottomRows(half).conjugate();
    w.block(half, half, half, half) = modes.topRows(half).conjugate();
    return w;
}

NambuModes diagonalize(const Eigen::MatrixXcd& m, double zero_factor,
                       const std::vector<std::vector<int>>& localize_sites) {
    check_nambu(m);
    const int half = static_cast<int>(m.rows()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    const Eigen::VectorXd& ev = es.eigenvalues();
    double scale = ev.cwiseAbs().maxCoeff();
    double zero_tol = zero_factor * (scale > 0 ? scale : 1.0);

    // Indices sorted by |eigenvalue|; the even-sized prefix below zero_tol
    // is the zero cluster (extended by one if a pair straddles the cut).
    std::vector<int> order(2 * half);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(ev[a]) < std::abs(ev[b]); });
    int cluster = 0;
    while (cluster < 2 * half && std::abs(ev[order[cluster]]) < zero_tol) ++cluster;
    if (cluster % 2 != 0) ++cluster;
    const int nz = cluster / 2;

    NambuModes out;
    out.n_zero = nz;
    out.energies.resize(half);
    out.modes.resize(2 * half, half);

    if (nz > 0) {
        // Self-conjugate basis of the cluster span, via candidates
        // v + C v and i (v - C v) with real-coefficient orthonormalization.
        Eigen::MatrixXcd phi(2 * half, 2 * nz);
        int got = 0;
        for (int k = 0; k < cluster && got < 2 * nz; ++k) {
            Eigen::VectorXcd v = es.eigenvectors().col(order[k]);
            Eigen::VectorXcd cands[2] = {v + phs_partner(v),
                                         cplx(0, 1) * (v - phs_partner(v))};
            for (auto& c : cands) {
                if (got == 2 * nz) break;
                Eigen::VectorXcd r = deflate_real(phi, got, c);
                double nrm = r.norm();
                if (nrm > 1e-6) phi.col(got++) = r / nrm;
            }
        }
        if (got != 2 * nz)
            throw Error("failed to build a self-conjugate zero-cluster basis");

        if (!localize_sites.empty()) {
            if (static_cast<int>(localize_sites.size()) != 2 * nz)
                throw Error("localization needs one site group per zero-cluster Majorana");
            // Greedy: per group pick the combination with maximal weight on
            // the group's Nambu rows, then deflate the remainder.
            Eigen::MatrixXcd pool = phi;
            int pool_n = 2 * nz;
            for (int g = 0; g < 2 * nz; ++g) {
                Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(pool_n, pool_n);
                for (int a = 0; a < pool_n; ++a)
                    for (int b = 0; b < pool_n; ++b) {
                        cplx acc = 0;
                        for (int s : localize_sites[g]) {
                            acc += std::conj(pool(s, a)) * pool(s, b);
                            acc += std::conj(pool(s + half, a)) * pool(s + half, b);
                        }
                        gram(a, b) = acc.real();
                    }
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gs(gram);
                Eigen::VectorXd top = gs.eigenvectors().col(pool_n - 1);
                Eigen::VectorXcd chosen = pool.leftCols(pool_n) * top.cast<cplx>();
                chosen.normalize();
                // A self-conjugate column is defined up to a +-1 gauge, and
                // that sign decides which parity sector every downstream
                // monomial names.  Pin it: at the largest-weight particle
                // row (lowest index on near-ties) the entry must lie in the
                // closed right half-plane, with +Im breaking Re ~ 0.
                {
                    double peak = 0.0;
                    int anchor = 0;
                    for (int r = 0; r < half; ++r) {
                        double w = std::abs(chosen(r));
                        if (w > peak * (1.0 + 1e-8)) {
                            peak = w;
                            anchor = r;
                        }
                    }
                    cplx z = chosen(anchor);
                    if (z.real() < -1e-12 * peak ||
                        (std::abs(z.real()) <= 1e-12 * peak && z.imag() < 0))
                        chosen = -chosen;
                }
                phi.col(g) = chosen;
                // rebuild the pool orthogonal to everything chosen so far
                Eigen::MatrixXcd next(2 * half, pool_n);
                int nn = 0;
                for (int a = 0; a < pool_n; ++a) {
                    Eigen::VectorXcd r = deflate_real(phi, g + 1, pool.col(a));
                    r = deflate_real(next, nn, r);
                    double nrm = r.norm();
                    if (nrm > 1e-8 && nn < pool_n - 1) next.col(nn++) = r / nrm;
                }
                if (nn != pool_n - 1 && g + 1 < 2 * nz)
                    throw Error("zero-cluster localization lost rank");
                pool = next;
                pool_n = nn;
            }
        }
        out.zero_majoranas = phi;
        // Pair (phi_2k, phi_2k+1) into the annihilator column with the -i
        // combination, so that Gamma_odd = d + d^dag and Gamma_even =
        // i(d^dag - d) -- the same convention the Majorana monomial algebra
        // uses for (g_{2m-1}, g_{2m}).
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (int k = 0; k < nz; ++k) {
            Eigen::VectorXcd psi =
                inv_sqrt2 * (phi.col(2 * k) - cplx(0, 1) * phi.col(2 * k + 1));
            out.modes.col(k) = psi;
            out.energies[k] = std::abs((psi.adjoint() * m * psi).value().real());
        }
    } else {
        out.zero_majoranas.resize(2 * half, 0);
    }

    // Bulk: positive-energy eigenvectors outside the cluster, ascending.
    std::vector<int> pos;
    for (int k = cluster; k < 2 * half; ++k)
        if (ev[order[k]] > 0) pos.push_back(order[k]);
    std::sort(pos.begin(), pos.end(), [&](int a, int b) { return ev[a] < ev[b]; });
    if (static_cast<int>(pos.size()) != half - nz)
        throw Error("positive/negative eigenvalue mismatch in Nambu spectrum");
    for (int k = 0; k < half - nz; ++k) {
        out.modes.col(nz + k) = es.eigenvectors().col(pos[k]);
        out.energies[nz + k] = ev[pos[k]];
    }
    return out;
}

Eigen::MatrixXcd propagate(const std::function<Eigen::MatrixXcd(double)>& m_of_t,
                           double t0, double t1, double dt, double unitarity_tol) {
    if (t1 < t0) throw Error("propagate needs t1 >= t0");
    if (dt <= 0) throw Error("propagate needs dt > 0");
    Eigen::MatrixXcd probe = m_of_t(t0);
    const int dim = static_cast<int>(probe.rows());
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(dim, dim);
    if (t1 == t0) return s;
    const int n_steps = static_cast<int>(std::ceil((t1 - t0) / dt - 1e-12));
    const double h = (t1 - t0) / n_steps;
    for (int k = 0; k < n_steps; ++k) {
        double tm = t0 + (k + 0.5) * h;
        Eigen::MatrixXcd m = m_of_t(tm);
        check_nambu(m);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        Eigen::VectorXcd ph(dim);
        for (int i = 0; i < dim; ++i)
            ph[i] = std::exp(cplx(0, -es.eigenvalues()[i] * h));
        s = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint() * s;
    }
    double resid = (s.adjoint() * s - Eigen::MatrixXcd::Identity(dim, dim))
                       .cwiseAbs()
                       .maxCoeff();
    if (resid > unitarity_tol)
        throw UnitarityLoss("propagator unitarity residual " + std::to_string(resid));
    return s;
}

Eigen::MatrixXcd propagate(const WireNetwork& net, double t0, double t1, double dt,
                           double unitarity_tol) {
    // Disconnected components (far-apart junction units sharing one
    // network) keep the Nambu matrix block-diagonal at every instant, so
    // each block can be exponentiated on its own: one O((2n)^3) eigensolve
    // per step becomes one per component.
    const int n = net.n_sites();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Bond& b : net.bonds()) parent[find(b.a)] = find(b.b);
    std::map<int, std::vector<int>> comps;
    for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
    if (comps.size() <= 1)
        return propagate([&](double t) { return net.assemble(t); }, t0, t1, dt,
                         unitarity_tol);

    if (t1 < t0) throw Error("propagate needs t1 >= t0");
    if (dt <= 0) throw Error("propagate needs dt > 0");
    std::vector<std::vector<int>> idx;  // Nambu rows (sites, then sites + n)
    idx.reserve(comps.size());
    for (auto& [root, sites] : comps) {
        std::vector<int> ix = sites;
        for (int s : sites) ix.push_back(s + n);
        idx.push_back(std::move(ix));
    }
    std::vector<Eigen::MatrixXcd> blocks;
    for (const auto& ix : idx) {
        const int d = static_cast<int>(ix.size());
        blocks.push_back(Eigen::MatrixXcd::Identity(d, d));
    }
    if (t1 > t0) {
        const int n_steps = static_cast<int>(std::ceil((t1 - t0) / dt - 1e-12));
        const double h = (t1 - t0) / n_steps;
        for (int k = 0; k < n_steps; ++k) {
            const Eigen::MatrixXcd m = net.assemble(t0 + (k + 0.5) * h);
            check_nambu(m);
            for (std::size_t c = 0; c < idx.size(); ++c) {
                const Eigen::MatrixXcd mc = m(idx[c], idx[c]);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(mc);
                Eigen::VectorXcd ph(mc.rows());
                for (int i = 0; i < mc.rows(); ++i)
                    ph[i] = std::exp(cplx(0, -es.eigenvalues()[i] * h));
                blocks[c] = es.eigenvectors() * ph.asDiagonal() *
                            es.eigenvectors().adjoint() * blocks[c];
            }
        }
    }
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    double resid = 0;
    for (std::size_t c = 0; c < idx.size(); ++c) {
        const int d = static_cast<int>(idx[c].size());
        resid = std::max(resid, (blocks[c].adjoint() * blocks[c] -
                                 Eigen::MatrixXcd::Identity(d, d))
                                    .cwiseAbs()
                                    .maxCoeff());
        s(idx[c], idx[c]) = blocks[c];
    }
    if (resid > unitarity_tol)
        throw UnitarityLoss("propagator unitarity residual " + std::to_string(resid));
    return s;
}

BogoliubovXY bogoliubov_xy(const Eigen::MatrixXcd& modes_a,
                           const Eigen::MatrixXcd& modes_b) {
    if (modes_a.rows() != modes_b.rows() || modes_a.cols() != modes_b.cols() ||
        modes_a.rows() != 2 * modes_a.cols())
        throw Error("bogoliubov_xy needs matching 2M x M frames");
    const int half = static_cast<int>(modes_a.cols());
    BogoliubovXY out;
    out.x = modes_a.adjoint() * modes_b;
    // A^T tau_x B: tau_x swaps the particle/hole halves of B's rows.
    Eigen::MatrixXcd tb(2 * half, half);
    tb.topRows(half) = modes_b.bottomRows(half);
    tb.bottomRows(half) = modes_b.topRows(half);
    out.y = modes_a.transpose() * tb;
    return out;
}

}  // namespace mzm
