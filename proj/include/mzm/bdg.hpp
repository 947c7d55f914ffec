// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Wire networks of spinless p-wave superconducting chains with
// time-dependent, site-resolved parameters.
//
// A network is a set of path-shaped wires (consecutive sites with hopping
// and pairing on each internal bond) plus explicit extra bonds joining
// wire ends at junction sites.  Chemical potentials mu_i and bond scale
// factors can be ramped along a shared timeline with smoothstep profiles;
// ramps on the same knob must be sequential, so parameters are continuous
// in time by construction.
//
// assemble(t) returns the Nambu matrix M(t) in the (c_1..c_M,
// c_1^dag..c_M^dag) block ordering, normalized so that quasiparticle
// energies are the *halved* textbook ones: a two-site chain at the sweet
// spot t = |Delta| has spectrum {+-1, 0, 0} in units of the hopping.  With
// the matching many-body lift H = (1/2) Psi^dag M Psi (see fock.hpp),
// probe splittings and dwell phase rates agree with no hidden factors.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace mzm {

double smoothstep(double x);  // 3x^2 - 2x^3, clamped to [0, 1]

struct Bond {
    int a = 0, b = 0;                    // site ids, oriented a -> b
    double hopping = 1.0;                // t on this bond
    std::complex<double> delta{0, 0};    // pairing amplitude along a -> b
};

struct SpectrumProbe {
    Eigen::VectorXd eigenvalues;  // all 2M, ascending
    int near_zero_count = 0;      // |E| < eps_zero
    double eps_zero = 0;
};

class WireNetwork {
  public:
    explicit WireNetwork(int n_sites);

    // A path of consecutive sites; adds a bond between each neighbor pair
    // with the given hopping and pairing (same phase along the wire).
    // Returns the wire index.
    int add_wire(std::vector<int> sites, double hopping, std::complex<double> delta);

    // Extra (junction) bond.  Returns the bond index.
    int add_bond(int a, int b, double hopping, std::complex<double> delta);

    int n_sites() const { return n_sites_; }
    const std::vector<Bond>& bonds() const { return bonds_; }
    const std::vector<std::vector<int>>& wires() const { return wires_; }

    // Baseline (t = 0) chemical potentials.
    void set_mu(int site, double value);
    void set_mu_all(double value);
    double mu_baseline(int site) const;

    // Static disorder: a uniform [-W/2, W/2] offset per site, reproducible
    // from the seed, riding on top of the programmed mu profile at all
    // times -- ramps drive the programmed part only, so the offsets are
    // never "gated away".  Amplitude 0 changes nothing.
    void apply_disorder(std::uint64_t seed, double amplitude);

    // --- timeline ------------------------------------------------------
    // Ramps the site's mu from its scheduled value at t0 to `target` over
    // [t0, t1] with a smoothstep profile.  Ramps on one knob must not
    // overlap; t1 > t0.
    void add_mu_ramp(int site, double t0, double t1, double target);
    // Mu ramp shaped for moving a boundary zero mode onto or off the site.
    // The zero mode's weight on a site with potential mu rotates like the
    // angle arctan(t_ref/mu), which a mu-smoothstep sweeps almost entirely
    // in its final moments near mu = 0 -- making plain ramps violently
    // non-adiabatic there at any nominal speed.  This profile follows a
    // doubly-smoothed path in that angle instead (uniform rotation rate,
    // rate and acceleration vanishing at both ends), with t_ref the
    // hopping scale of the bond feeding the site.
    void add_mu_transfer(int site, double t0, double t1, double target,
                         double t_ref = 1.0);
    // Same for the joint (hopping, pairing) scale factor of a bond;
    // scale 1 is the constructed strength, 0 a severed bond.
    void add_bond_ramp(int bond, double t0, double t1, double target);
    // Extends the timeline without touching parameters (a dwell).
    void hold_until(double t1);

    double end_time() const { return end_time_; }
    double mu_at(int site, double t) const;
    double bond_scale_at(int bond, double t) const;

    // --- assembly ------------------------------------------------------
    Eigen::MatrixXcd assemble(double t) const;
    SpectrumProbe spectrum_probe(double t, double eps_zero_factor = 1e-6) const;

  private:
    struct Ramp {
        double t0, t1, from, to;
        double t_ref = 0;  // 0: smoothstep in mu; > 0: angle-shaped transfer
    };
    static double ramp_increment(const Ramp& r, double t);
    static double ramp_value(const std::vector<Ramp>& ramps, double baseline, double t);
    void push_ramp(std::vector<Ramp>& ramps, double baseline, double t0, double t1,
                   double target, double t_ref);

    int n_sites_;
    std::vector<Bond> bonds_;
    std::vector<std::vector<int>> wires_;
    Eigen::VectorXd mu_base_;
    Eigen::VectorXd mu_disorder_;
    std::map<int, std::vector<Ramp>> mu_ramps_;
    std::map<int, std::vector<Ramp>> bond_ramps_;
    double end_time_ = 0;
};

}  // namespace mzm
