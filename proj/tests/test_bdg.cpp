// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/bdg.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "mzm/errors.hpp"
#include "mzm/fock.hpp"

using namespace mzm;
using cplx = std::complex<double>;

namespace {

// Kitaev chain helper: n sites, uniform mu, hopping 1, pairing delta.
WireNetwork chain(int n, double mu, double delta) {
    WireNetwork net(n);
    std::vector<int> sites(n);
    for (int i = 0; i < n; ++i) sites[i] = i;
    net.add_wire(sites, 1.0, cplx(delta, 0));
    net.set_mu_all(mu);
    return net;
}

double phs_residual(const Eigen::MatrixXcd& m) {
    const int half = static_cast<int>(m.rows()) / 2;
    Eigen::MatrixXcd tx = Eigen::MatrixXcd::Zero(m.rows(), m.rows());
    tx.topRightCorner(half, half).setIdentity();
    tx.bottomLeftCorner(half, half).setIdentity();
    return (tx * m.conjugate() * tx + m).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("smoothstep profile") {
    CHECK(smoothstep(-1.0) == 0.0);
    CHECK(smoothstep(0.0) == 0.0);
    CHECK(smoothstep(1.0) == 1.0);
    CHECK(smoothstep(2.0) == 1.0);
    CHECK(smoothstep(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(smoothstep(0.25) == doctest::Approx(0.15625).epsilon(1e-15));
    for (double x = 0.05; x < 1.0; x += 0.05)
        CHECK(smoothstep(x + 0.05) > smoothstep(x));
}

TEST_CASE("two-site sweet spot has halved spectrum {-1, 0, 0, 1}") {
    WireNetwork net = chain(2, 0.0, 1.0);
    SpectrumProbe p = net.spectrum_probe(0.0);
    REQUIRE(p.eigenvalues.size() == 4);
    CHECK(p.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(p.eigenvalues[1]) < 1e-12);
    CHECK(std::abs(p.eigenvalues[2]) < 1e-12);
    CHECK(p.eigenvalues[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.near_zero_count == 2);
    CHECK(p.eps_zero == doctest::Approx(1e-6).epsilon(1e-10));
}

TEST_CASE("sweet-spot chain: one zero pair, bulk at +-1") {
    WireNetwork net = chain(4, 0.0, 1.0);
    SpectrumProbe p = net.spectrum_probe(0.0);
    REQUIRE(p.eigenvalues.size() == 8);
    CHECK(p.near_zero_count == 2);
    for (int i : {0, 1, 2}) CHECK(p.eigenvalues[i] == doctest::Approx(-1.0).epsilon(1e-12));
    for (int i : {5, 6, 7}) CHECK(p.eigenvalues[i] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("topological vs trivial zero-mode count") {
    SUBCASE("|mu| < 2t: two near-zero modes") {
        WireNetwork net = chain(20, 0.5, 1.0);
        CHECK(net.spectrum_probe(0.0).near_zero_count == 2);
    }
    SUBCASE("|mu| > 2t: none") {
        WireNetwork net = chain(20, 3.0, 1.0);
        CHECK(net.spectrum_probe(0.0).near_zero_count == 0);
    }
    SUBCASE("deep trivial limit is fully gapped") {
        WireNetwork net = chain(12, 8.0, 1.0);
        SpectrumProbe p = net.spectrum_probe(0.0);
        CHECK(p.near_zero_count == 0);
        // halved gap >= (mu - 2t)/2 = 3
        CHECK(p.eigenvalues.cwiseAbs().minCoeff() > 2.9);
    }
}

TEST_CASE("assembled matrix is Hermitian and particle-hole symmetric") {
    WireNetwork net(7);
    net.add_wire({0, 1, 2}, 1.0, cplx(0.8, 0.3));
    net.add_wire({3, 4, 5}, 0.9, cplx(0.0, -1.1));
    net.add_bond(2, 6, 0.7, cplx(0.4, 0.0));
    net.add_bond(6, 3, 0.6, cplx(-0.2, 0.5));
    net.set_mu_all(1.3);
    net.apply_disorder(77, 0.4);
    net.add_mu_ramp(6, 0.0, 2.0, 5.0);
    net.add_bond_ramp(0, 1.0, 3.0, 0.25);
    for (double t : {0.0, 0.7, 1.5, 2.4, 3.5}) {
        Eigen::MatrixXcd m = net.assemble(t);
        CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(phs_residual(m) < 1e-14);
    }
}

TEST_CASE("disorder is reproducible and off by default") {
    WireNetwork clean = chain(9, 0.3, 0.9);
    WireNetwork zero = chain(9, 0.3, 0.9);
    zero.apply_disorder(123, 0.0);
    CHECK(clean.assemble(0.0) == zero.assemble(0.0));  // bit-identical

    WireNetwork d1 = chain(9, 0.3, 0.9);
    WireNetwork d2 = chain(9, 0.3, 0.9);
    WireNetwork d3 = chain(9, 0.3, 0.9);
    d1.apply_disorder(42, 0.6);
    d2.apply_disorder(42, 0.6);
    d3.apply_disorder(43, 0.6);
    CHECK(d1.assemble(0.0) == d2.assemble(0.0));
    CHECK((d1.assemble(0.0) - d3.assemble(0.0)).cwiseAbs().maxCoeff() > 1e-3);
    for (int i = 0; i < 9; ++i) {
        double off = d1.mu_baseline(i) - 0.3;
        CHECK(std::abs(off) <= 0.3);
    }
}

TEST_CASE("mu ramps: smoothstep interpolation and sequential continuity") {
    WireNetwork net = chain(3, 0.0, 1.0);
    net.add_mu_ramp(1, 1.0, 3.0, 8.0);
    CHECK(net.mu_at(1, 0.0) == 0.0);
    CHECK(net.mu_at(1, 1.0) == 0.0);
    CHECK(net.mu_at(1, 2.0) == doctest::Approx(4.0).epsilon(1e-15));  // s(1/2) = 1/2
    CHECK(net.mu_at(1, 3.0) == 8.0);
    CHECK(net.mu_at(1, 99.0) == 8.0);
    CHECK(net.mu_at(0, 2.0) == 0.0);  // untouched site

    // second ramp starts from the first target
    net.add_mu_ramp(1, 4.0, 5.0, 2.0);
    CHECK(net.mu_at(1, 4.0) == 8.0);
    CHECK(net.mu_at(1, 4.5) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(net.mu_at(1, 5.0) == 2.0);
    CHECK(net.end_time() == 5.0);

    CHECK_THROWS_AS(net.add_mu_ramp(1, 4.5, 6.0, 0.0), ConfigError);  // overlap
    CHECK_THROWS_AS(net.add_mu_ramp(1, 7.0, 7.0, 0.0), ConfigError);  // empty span

    net.hold_until(9.0);
    CHECK(net.end_time() == 9.0);
    CHECK(net.mu_at(1, 9.0) == 2.0);
}

TEST_CASE("wall excursion restores the matrix exactly") {
    // Push a mu-wall two sites to the right and bring it back; the final
    // assembled matrix must equal the initial one bit for bit, because
    // completed smoothsteps contribute exactly (target - from).
    WireNetwork net = chain(6, 0.0, 1.0);
    for (int s : {3, 4, 5}) net.set_mu(s, 8.0);
    Eigen::MatrixXcd before = net.assemble(0.0);
    net.add_mu_ramp(3, 0.0, 1.0, 0.0);
    net.add_mu_ramp(4, 1.0, 2.0, 0.0);
    net.add_mu_ramp(4, 2.0, 3.0, 8.0);
    net.add_mu_ramp(3, 3.0, 4.0, 8.0);
    Eigen::MatrixXcd after = net.assemble(4.0);
    CHECK(before == after);
    // and mid-excursion it genuinely differed
    CHECK((net.assemble(1.5) - before).cwiseAbs().maxCoeff() > 1.0);
}

TEST_CASE("bond ramp decouples a junction") {
    WireNetwork net(5);
    net.add_wire({0, 1}, 1.0, cplx(1, 0));
    net.add_wire({2, 3, 4}, 1.0, cplx(1, 0));
    int jb = net.add_bond(1, 2, 1.0, cplx(1, 0));
    net.add_bond_ramp(jb, 0.0, 1.0, 0.0);

    // coupled at t=0: one zero pair for the single connected chain
    CHECK(net.spectrum_probe(0.0).near_zero_count == 2);
    // severed at t=1: the two sweet-spot chains hold one zero pair each
    CHECK(net.spectrum_probe(1.0).near_zero_count == 4);
    CHECK(net.bond_scale_at(jb, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("many-body lift of the assembled matrix has paired spectrum") {
    // Ground energy of H = (1/2) Psi^dag M Psi is -(1/2) sum of positive
    // eigenvalues of M, and excitations add back individual pair energies.
    WireNetwork net(3);
    net.add_wire({0, 1, 2}, 1.0, cplx(0.6, 0.2));
    net.set_mu(0, 0.4);
    net.set_mu(1, -0.3);
    net.set_mu(2, 0.9);
    Eigen::MatrixXcd m = net.assemble(0.0);

    FockSpace fock(6);  // 3 modes
    Mat h = fock.dense_operator([&](Vec& v) { v = fock.apply_nambu_hamiltonian(m, v); });
    Eigen::SelfAdjointEigenSolver<Mat> es(h);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esm(m, Eigen::EigenvaluesOnly);
    double e0 = 0;
    for (int i = 0; i < 6; ++i)
        if (esm.eigenvalues()[i] > 0) e0 -= 0.5 * esm.eigenvalues()[i];
    CHECK(es.eigenvalues()[0] == doctest::Approx(e0).epsilon(1e-10));
    // first excited state = ground + smallest positive single-particle energy
    double eps1 = esm.eigenvalues()[3];  // eigenvalues sorted, pairs +-
    CHECK(es.eigenvalues()[1] == doctest::Approx(e0 + eps1).epsilon(1e-10));
}

TEST_CASE("constructor and accessor validation") {
    CHECK_THROWS_AS(WireNetwork(0), ConfigError);
    WireNetwork net(3);
    CHECK_THROWS_AS(net.add_wire({0, 5}, 1.0, cplx(1, 0)), ConfigError);
    CHECK_THROWS_AS(net.add_bond(1, 1, 1.0, cplx(1, 0)), ConfigError);
    CHECK_THROWS_AS(net.set_mu(-1, 0.0), ConfigError);
    CHECK_THROWS_AS(net.mu_at(3, 0.0), ConfigError);
    CHECK_THROWS_AS(net.bond_scale_at(0, 0.0), ConfigError);  // no bonds yet
}
