// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// T-junction geometry builders: wire networks whose chemical-potential
// schedules transport Majorana end modes around a three-arm junction.
//
// A unit is three arms of equal length meeting at one junction site, at
// the Kitaev sweet spot (hopping = |pairing|).  Topological segments are
// carved by the mu keyboard: mu = mu_topological inside a segment,
// mu_trivial on the walls.  Moving one end of a segment one site is a
// single smoothstep mu ramp; an in-place exchange of a segment's two end
// modes is a fixed choreography of such ramps (a three-point turn through
// the spare arm), compiled here onto a WireNetwork timeline.
//
// Junction phases: a segment crossing the junction between arms a and b
// sees a pairing-phase defect phi_b - phi_a - pi (the extra pi from
// traversing arm a against its orientation), and with a common real phase
// one corner is always a pi-defect that nucleates extra junction zero
// modes.  The arms therefore carry phases (0, pi/2, pi): the arm0-arm2
// corner -- the configuration holding both mobile end modes through the
// long middle of an exchange -- is defect-free, and the brief arm1
// transits see benign pi/2 twists.

#pragma once

#include <vector>

#include "mzm/bdg.hpp"
#include "mzm/protocol.hpp"

namespace mzm {

struct TJunctionSpec {
    int arm_sites = 20;           // sites per arm
    double hopping = 1.0;         // also the pairing magnitude (sweet spot)
    double mu_topological = 0.0;  // inside segments
    double mu_trivial = 8.0;      // walls
    int static_segment = 0;       // outer sites of arm 0 held topological
    int wall = 4;                 // trivial buffer kept between segments
    double site_ramp_time = 4.0;  // duration of one site's mu ramp
    double settle_time = 4.0;     // parked hold between exchange legs
};

// One T-junction embedded at a site offset in a shared WireNetwork.  The
// mobile segment initially fills arm 1 (inner end at the junction side);
// arm 2 is the spare corridor; arm 0 optionally hosts a static segment at
// its outer end.  Construction wires the unit and sets the parked mu
// profile at t = 0.
class TJunctionUnit {
  public:
    TJunctionUnit(WireNetwork& net, int base, const TJunctionSpec& spec);

    static int site_count(const TJunctionSpec& spec) { return 3 * spec.arm_sites + 1; }

    int junction() const { return base_; }
    // k = 0 is adjacent to the junction, k = arm_sites-1 the far end.
    int arm_site(int arm, int k) const;

    // Parked end-mode sites of the two segments.
    int mobile_inner_site() const { return arm_site(1, 0); }
    int mobile_outer_site() const { return arm_site(1, spec_.arm_sites - 1); }
    int static_inner_site() const;  // throws if there is no static segment
    int static_outer_site() const;

    // Appends the mu-ramp choreography of one in-place exchange of the
    // mobile segment's end modes, starting at time t0; returns the parked
    // finish time.  The forward exchange (inner end leading through the
    // spare corridor) realizes exp(+pi/4 g_in g_out) on the parked end
    // modes, where g_in / g_out sit at the mobile inner / outer sites;
    // inverse = true emits the time-reversed choreography, which is
    // exactly the adjoint evolution.
    double compile_exchange(double t0, bool inverse = false);

  private:
    WireNetwork* net_;
    int base_;
    TJunctionSpec spec_;
};

// Single-unit schedule for one sparse qubit (static segment = modes
// gamma_1, gamma_4; mobile segment = gamma_2, gamma_3 with gamma_3 at the
// inner end).  One forward exchange braids (3,2) -> sqrt(X) on the qubit;
// inverse = true gives sqrt(X)^dag.  Localization groups are in label
// order 1..4; use basis logical_basis(1).  No projectors are scheduled.
LatticeSchedule sqrt_x_exchange_schedule(const TJunctionSpec& spec, bool inverse = false,
                                         double dt = 0.1);

// Four disconnected mobile-only units realizing two sparse qubits (8
// Majorana end modes) with the segment pairing {1,2}, {3,8}, {4,5},
// {6,7}.  The schedule projects pair(4,5) even at a parked instant, runs
// the dense CNOT braid word (1,2)(6,7)(8,3) as three concurrent
// single-unit exchanges, then projects quad(1,2,3,4) even: an
// encoding-swap CNOT with control qubit 1, target qubit 2, on basis
// logical_basis(2).
LatticeSchedule cnot_encoding_swap_schedule(const TJunctionSpec& spec, double dt = 0.1);

}  // namespace mzm
