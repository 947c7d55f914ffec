// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/bdg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mzm/errors.hpp"

namespace mzm {

double smoothstep(double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    return x * x * (3 - 2 * x);
}

WireNetwork::WireNetwork(int n_sites) : n_sites_(n_sites) {
    if (n_sites < 1) throw ConfigError("network needs at least one site");
    mu_base_ = Eigen::VectorXd::Zero(n_sites);
    mu_disorder_ = Eigen::VectorXd::Zero(n_sites);
}

int WireNetwork::add_wire(std::vector<int> sites, double hopping,
                          std::complex<double> delta) {
    if (sites.size() < 1) throw ConfigError("wire needs at least one site");
    for (int s : sites)
        if (s < 0 || s >= n_sites_) throw ConfigError("wire site out of range");
    for (std::size_t k = 0; k + 1 < sites.size(); ++k)
        add_bond(sites[k], sites[k + 1], hopping, delta);
    wires_.push_back(std::move(sites));
    return static_cast<int>(wires_.size()) - 1;
}

int WireNetwork::add_bond(int a, int b, double hopping, std::complex<double> delta) {
    if (a < 0 || a >= n_sites_ || b < 0 || b >= n_sites_ || a == b)
        throw ConfigError("bond endpoints invalid");
    bonds_.push_back(Bond{a, b, hopping, delta});
    return static_cast<int>(bonds_.size()) - 1;
}

void WireNetwork::set_mu(int site, double value) {
    if (site < 0 || site >= n_sites_) throw ConfigError("mu site out of range");
    mu_base_[site] = value;
}

void WireNetwork::set_mu_all(double value) { mu_base_.setConstant(value); }

double WireNetwork::mu_baseline(int site) const {
    if (site < 0 || site >= n_sites_) throw ConfigError("mu site out of range");
    return mu_base_[site] + mu_disorder_[site];
}

void WireNetwork::apply_disorder(std::uint64_t seed, double amplitude) {
    if (amplitude == 0) return;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5 * amplitude, 0.5 * amplitude);
    for (int i = 0; i < n_sites_; ++i) mu_disorder_[i] += u(rng);
}

double WireNetwork::ramp_increment(const Ramp& r, double t) {
    const double x = smoothstep((t - r.t0) / (r.t1 - r.t0));
    if (r.t_ref <= 0) return (r.to - r.from) * x;
    // Angle-shaped transfer: interpolate arctan(t_ref/mu) with a second
    // smoothstep pass (zero rate and curvature at the ends) and map back.
    // atan2 handles mu = 0 exactly; cot never overflows since theta stays
    // strictly inside (0, pi) for any finite mu endpoints.
    const double th0 = std::atan2(r.t_ref, r.from);
    const double th1 = std::atan2(r.t_ref, r.to);
    const double th = th0 + (th1 - th0) * smoothstep(x);
    const double mu = r.t_ref * std::cos(th) / std::sin(th);
    return mu - r.from;
}

double WireNetwork::ramp_value(const std::vector<Ramp>& ramps, double baseline,
                               double t) {
    // Sequential ramps telescope: each starts from the previous target, so
    // summing the increments reproduces the piecewise profile.
    double v = baseline;
    for (const Ramp& r : ramps) v += ramp_increment(r, t);
    return v;
}

void WireNetwork::push_ramp(std::vector<Ramp>& ramps, double baseline, double t0,
                            double t1, double target, double t_ref) {
    if (!(t1 > t0)) throw ConfigError("ramp needs t1 > t0");
    if (!ramps.empty() && t0 < ramps.back().t1 - 1e-12)
        throw ConfigError("ramps on one knob must not overlap");
    double from = ramp_value(ramps, baseline, t0);
    ramps.push_back(Ramp{t0, t1, from, target, t_ref});
    if (t1 > end_time_) end_time_ = t1;
}

void WireNetwork::add_mu_ramp(int site, double t0, double t1, double target) {
    if (site < 0 || site >= n_sites_) throw ConfigError("ramp site out of range");
    push_ramp(mu_ramps_[site], mu_base_[site], t0, t1, target, 0.0);
}

void WireNetwork::add_mu_transfer(int site, double t0, double t1, double target,
                                  double t_ref) {
    if (site < 0 || site >= n_sites_) throw ConfigError("ramp site out of range");
    if (!(t_ref > 0)) throw ConfigError("transfer ramp needs t_ref > 0");
    if (!std::isfinite(target) ||
        !std::isfinite(ramp_value(mu_ramps_[site], mu_base_[site], t0)))
        throw ConfigError("transfer ramp needs finite mu endpoints");
    push_ramp(mu_ramps_[site], mu_base_[site], t0, t1, target, t_ref);
}

void WireNetwork::add_bond_ramp(int bond, double t0, double t1, double target) {
    if (bond < 0 || bond >= static_cast<int>(bonds_.size()))
        throw ConfigError("ramp bond out of range");
    push_ramp(bond_ramps_[bond], 1.0, t0, t1, target, 0.0);
}

void WireNetwork::hold_until(double t1) {
    if (t1 > end_time_) end_time_ = t1;
}

double WireNetwork::mu_at(int site, double t) const {
    if (site < 0 || site >= n_sites_) throw ConfigError("mu site out of range");
    auto it = mu_ramps_.find(site);
    if (it == mu_ramps_.end()) return mu_base_[site] + mu_disorder_[site];
    return ramp_value(it->second, mu_base_[site], t) + mu_disorder_[site];
}

double WireNetwork::bond_scale_at(int bond, double t) const {
    if (bond < 0 || bond >= static_cast<int>(bonds_.size()))
        throw ConfigError("bond out of range");
    auto it = bond_ramps_.find(bond);
    if (it == bond_ramps_.end()) return 1.0;
    return ramp_value(it->second, 1.0, t);
}

Eigen::MatrixXcd WireNetwork::assemble(double t) const {
    using cplx = std::complex<double>;
    const int m = n_sites_;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) a(i, i) = cplx(-mu_at(i, t), 0);
    for (int k = 0; k < static_cast<int>(bonds_.size()); ++k) {
        const Bond& bd = bonds_[k];
        double s = bond_scale_at(k, t);
        a(bd.a, bd.b) += cplx(-bd.hopping * s, 0);
        a(bd.b, bd.a) += cplx(-bd.hopping * s, 0);
        b(bd.a, bd.b) += bd.delta * s;
        b(bd.b, bd.a) -= bd.delta * s;
    }
    Eigen::MatrixXcd mnambu(2 * m, 2 * m);
    mnambu.topLeftCorner(m, m) = a;
    mnambu.topRightCorner(m, m) = b;
    mnambu.bottomLeftCorner(m, m) = -b.conjugate();
    mnambu.bottomRightCorner(m, m) = -a.transpose();
    return 0.5 * mnambu;
}

SpectrumProbe WireNetwork::spectrum_probe(double t, double eps_zero_factor) const {
    Eigen::MatrixXcd m = assemble(t);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    SpectrumProbe probe;
    probe.eigenvalues = es.eigenvalues();
    double bulk = probe.eigenvalues.cwiseAbs().maxCoeff();
    probe.eps_zero = eps_zero_factor * (bulk > 0 ? bulk : 1.0);
    probe.near_zero_count = 0;
    for (int i = 0; i < probe.eigenvalues.size(); ++i)
        if (std::abs(probe.eigenvalues[i]) < probe.eps_zero) ++probe.near_zero_count;
    return probe;
}

}  // namespace mzm
