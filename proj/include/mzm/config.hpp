// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: a single human-writable text file with sections
// [network], [disorder], [schedule], [run] describing one simulation.
// Times and energies are dimensionless in hopping units.
//
// Network kinds:
//   tjunction  three-arm unit (see lattice.hpp); hosts the sqrt_x and
//              cnot schedules
//   chain      one wire with topological segments at both ends; hosts
//              the shuttle schedule
//
// Schedule kinds:
//   sqrt_x / sqrt_x_inverse   single exchange of the mobile segment ends
//   cnot                      encoding-swap CNOT on two sparse qubits
//   shuttle                   extend the left segment by `distance` sites
//                             and retract (identity up to leakage)
//   ideal                     abstract braid/projector ops, no lattice;
//                             runs on the exact and stabilizer backends
//
// Ideal ops grammar (one `ops =` line, ';'-separated):
//   braid I J          B = exp((pi/4) g_I g_J) on Majorana labels
//   pair I J [POLICY]  pair-parity projector on labels I, J
//   quad Q [POLICY]    quadruple-parity projector on qubit Q
// with POLICY one of even | odd | sampled (default even).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzm/lattice.hpp"
#include "mzm/protocol.hpp"

namespace mzm {

enum class NetworkKind { TJunction, Chain };
enum class ScheduleKind { SqrtX, SqrtXInverse, Cnot, Shuttle, Ideal };

// Straight wire at the Kitaev sweet spot with a topological segment at
// each end, separated by a trivial wall.
struct ChainSpec {
    int sites = 8;
    double hopping = 1.0;         // also the pairing magnitude
    double pairing_phase = 0.0;
    double mu_topological = 0.0;
    double mu_trivial = 8.0;
    int left_segment = 3;         // sites [0, left)
    int right_segment = 3;        // sites [sites - right, sites)
    double site_ramp_time = 4.0;
    double settle_time = 4.0;
};

struct DisorderSpec {
    double amplitude = 0.0;  // uniform on-site mu disorder, [-a/2, a/2]
    std::uint64_t seed = 0;
};

struct RunConfig {
    NetworkKind network_kind = NetworkKind::TJunction;
    TJunctionSpec tjunction;
    ChainSpec chain;
    DisorderSpec disorder;

    ScheduleKind schedule_kind = ScheduleKind::SqrtX;
    double dt = 0.1;
    int shuttle_distance = 2;  // shuttle only
    int ideal_qubits = 1;      // ideal only: labels 1 .. 4*qubits
    std::vector<IdealOp> ideal_ops;
    bool odd_sector = false;   // basis: odd instead of even total parity

    std::string oracle = "pfaffian";  // pfaffian | exact | stabilizer
    int workers = 1;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    std::string out_dir = ".";
};

// Parses config text / file.  ConfigError messages carry "line N:"
// context for schema violations.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Logical qubits of the configured schedule (basis = logical_basis of
// this, XOR 1 on every mask in the odd sector).
int config_qubits(const RunConfig& c);
std::vector<std::uint64_t> config_basis(const RunConfig& c);

bool has_lattice(const RunConfig& c);  // false for ideal schedules

// Compiled wire-network schedule; throws ConfigError for ideal configs.
LatticeSchedule build_lattice_schedule(const RunConfig& c);

// Abstract counterpart of the configured schedule (shuttle -> no ops);
// the stabilizer tracker on it predicts the target gate.
IdealSchedule build_ideal_schedule(const RunConfig& c);

}  // namespace mzm
