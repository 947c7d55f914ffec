// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/config.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <climits>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mzm/errors.hpp"

namespace mzm {
namespace {

struct Entry {
    int line = 0;
    std::string section, key, value;
    bool used = false;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Entry> tokenize(const std::string& text) {
    std::vector<Entry> entries;
    std::istringstream in(text);
    std::string raw, section;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "network" && section != "disorder" && section != "schedule" &&
                section != "run")
                fail(no, "unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(no, "expected 'key = value'");
        if (section.empty()) fail(no, "key outside any section");
        Entry e;
        e.line = no;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        if (e.key.empty()) fail(no, "empty key");
        for (const Entry& prev : entries)
            if (prev.section == e.section && prev.key == e.key)
                fail(no, "duplicate key '" + e.key + "' in [" + e.section + "]");
        entries.push_back(std::move(e));
    }
    return entries;
}

double to_double(const Entry& e) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(e.value, &used);
    } catch (const std::exception&) {
        fail(e.line, "'" + e.key + "' needs a number, got '" + e.value + "'");
    }
    if (used != e.value.size() || !std::isfinite(v))
        fail(e.line, "'" + e.key + "' needs a finite number, got '" + e.value + "'");
    return v;
}

int to_int(const Entry& e) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(e.value, &used);
    } catch (const std::exception&) {
        fail(e.line, "'" + e.key + "' needs an integer, got '" + e.value + "'");
    }
    if (used != e.value.size() || v < INT_MIN || v > INT_MAX)
        fail(e.line, "'" + e.key + "' needs an integer, got '" + e.value + "'");
    return static_cast<int>(v);
}

std::uint64_t to_u64(const Entry& e) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(e.value, &used);
    } catch (const std::exception&) {
        fail(e.line, "'" + e.key + "' needs a non-negative integer, got '" + e.value + "'");
    }
    if (used != e.value.size())
        fail(e.line, "'" + e.key + "' needs a non-negative integer, got '" + e.value + "'");
    return v;
}

OutcomePolicy to_policy(const std::string& word, int line, const std::string& op) {
    if (word == "even") return OutcomePolicy::ForcedEven;
    if (word == "odd") return OutcomePolicy::ForcedOdd;
    if (word == "sampled") return OutcomePolicy::Sampled;
    fail(line, "'" + op + "': outcome policy must be even, odd or sampled, got '" + word + "'");
}

// One ';'-separated op list on a single config line; ops are replayed
// through IdealSchedule so every label/qubit cross-reference is checked
// here, with the offending op quoted in the error.
std::vector<IdealOp> parse_ideal_ops(const Entry& e, int qubits) {
    IdealSchedule sched(4 * qubits);
    std::istringstream list(e.value);
    std::string op;
    while (std::getline(list, op, ';')) {
        op = trim(op);
        if (op.empty()) continue;
        std::istringstream words(op);
        std::string verb, policy_word;
        words >> verb;
        try {
            if (verb == "braid") {
                int i = 0, j = 0;
                if (!(words >> i >> j)) fail(e.line, "'" + op + "': braid needs two labels");
                sched.braid(i, j);
            } else if (verb == "pair") {
                int i = 0, j = 0;
                if (!(words >> i >> j)) fail(e.line, "'" + op + "': pair needs two labels");
                OutcomePolicy pol = OutcomePolicy::ForcedEven;
                if (words >> policy_word) pol = to_policy(policy_word, e.line, op);
                sched.project_pair(i, j, pol);
            } else if (verb == "quad") {
                int q = 0;
                if (!(words >> q)) fail(e.line, "'" + op + "': quad needs a qubit index");
                if (q > qubits)
                    fail(e.line, "'" + op + "': qubit " + std::to_string(q) +
                                     " does not exist (the schedule declares " +
                                     std::to_string(qubits) + ")");
                OutcomePolicy pol = OutcomePolicy::ForcedEven;
                if (words >> policy_word) pol = to_policy(policy_word, e.line, op);
                sched.project_quad(q, pol);
            } else {
                fail(e.line, "'" + op + "': unknown op '" + verb +
                                 "' (expected braid, pair or quad)");
            }
        } catch (const ConfigError& err) {
            std::string what = err.what();
            if (what.rfind("line ", 0) == 0) throw;  // already contextualized
            fail(e.line, "'" + op + "': " + what);
        }
        std::string extra;
        if (words >> extra) fail(e.line, "'" + op + "': trailing token '" + extra + "'");
    }
    return sched.ops;
}

const Entry* find(std::vector<Entry>& entries, const std::string& section,
                  const std::string& key) {
    for (Entry& e : entries)
        if (e.section == section && e.key == key) {
            e.used = true;
            return &e;
        }
    return nullptr;
}

void parse_network(std::vector<Entry>& entries, RunConfig& c) {
    const Entry* kind = find(entries, "network", "kind");
    if (kind) {
        if (kind->value == "tjunction")
            c.network_kind = NetworkKind::TJunction;
        else if (kind->value == "chain")
            c.network_kind = NetworkKind::Chain;
        else
            fail(kind->line, "network kind must be tjunction or chain, got '" + kind->value + "'");
    }
    if (c.network_kind == NetworkKind::TJunction) {
        TJunctionSpec& s = c.tjunction;
        if (const Entry* e = find(entries, "network", "arm_sites")) s.arm_sites = to_int(*e);
        if (const Entry* e = find(entries, "network", "hopping")) s.hopping = to_double(*e);
        if (const Entry* e = find(entries, "network", "mu_topological"))
            s.mu_topological = to_double(*e);
        if (const Entry* e = find(entries, "network", "mu_trivial")) s.mu_trivial = to_double(*e);
        if (const Entry* e = find(entries, "network", "static_segment"))
            s.static_segment = to_int(*e);
        if (const Entry* e = find(entries, "network", "wall")) s.wall = to_int(*e);
        if (const Entry* e = find(entries, "network", "site_ramp_time"))
            s.site_ramp_time = to_double(*e);
        if (const Entry* e = find(entries, "network", "settle_time")) s.settle_time = to_double(*e);
    } else {
        ChainSpec& s = c.chain;
        if (const Entry* e = find(entries, "network", "sites")) s.sites = to_int(*e);
        if (const Entry* e = find(entries, "network", "hopping")) s.hopping = to_double(*e);
        if (const Entry* e = find(entries, "network", "pairing_phase"))
            s.pairing_phase = to_double(*e);
        if (const Entry* e = find(entries, "network", "mu_topological"))
            s.mu_topological = to_double(*e);
        if (const Entry* e = find(entries, "network", "mu_trivial")) s.mu_trivial = to_double(*e);
        if (const Entry* e = find(entries, "network", "left_segment")) s.left_segment = to_int(*e);
        if (const Entry* e = find(entries, "network", "right_segment"))
            s.right_segment = to_int(*e);
        if (const Entry* e = find(entries, "network", "site_ramp_time"))
            s.site_ramp_time = to_double(*e);
        if (const Entry* e = find(entries, "network", "settle_time")) s.settle_time = to_double(*e);
    }
}

void parse_disorder(std::vector<Entry>& entries, RunConfig& c) {
    if (const Entry* e = find(entries, "disorder", "amplitude")) {
        c.disorder.amplitude = to_double(*e);
        if (c.disorder.amplitude < 0) fail(e->line, "disorder amplitude must be >= 0");
    }
    if (const Entry* e = find(entries, "disorder", "seed")) c.disorder.seed = to_u64(*e);
}

void parse_schedule(std::vector<Entry>& entries, RunConfig& c) {
    const Entry* kind = find(entries, "schedule", "kind");
    if (kind) {
        if (kind->value == "sqrt_x")
            c.schedule_kind = ScheduleKind::SqrtX;
        else if (kind->value == "sqrt_x_inverse")
            c.schedule_kind = ScheduleKind::SqrtXInverse;
        else if (kind->value == "cnot")
            c.schedule_kind = ScheduleKind::Cnot;
        else if (kind->value == "shuttle")
            c.schedule_kind = ScheduleKind::Shuttle;
        else if (kind->value == "ideal")
            c.schedule_kind = ScheduleKind::Ideal;
        else
            fail(kind->line, "schedule kind must be sqrt_x, sqrt_x_inverse, cnot, shuttle "
                             "or ideal, got '" + kind->value + "'");
    }
    if (const Entry* e = find(entries, "schedule", "dt")) {
        c.dt = to_double(*e);
        if (c.dt <= 0) fail(e->line, "dt must be > 0");
    }
    if (const Entry* e = find(entries, "schedule", "sector")) {
        if (e->value == "even")
            c.odd_sector = false;
        else if (e->value == "odd")
            c.odd_sector = true;
        else
            fail(e->line, "sector must be even or odd, got '" + e->value + "'");
    }
    if (const Entry* e = find(entries, "schedule", "distance")) {
        if (c.schedule_kind != ScheduleKind::Shuttle)
            fail(e->line, "'distance' only applies to shuttle schedules");
        c.shuttle_distance = to_int(*e);
        if (c.shuttle_distance < 1) fail(e->line, "shuttle distance must be >= 1");
    }
    if (const Entry* e = find(entries, "schedule", "qubits")) {
        if (c.schedule_kind != ScheduleKind::Ideal)
            fail(e->line, "'qubits' only applies to ideal schedules");
        c.ideal_qubits = to_int(*e);
        if (c.ideal_qubits < 1 || c.ideal_qubits > 16)
            fail(e->line, "ideal qubit count must be in 1..16");
    }
    if (const Entry* e = find(entries, "schedule", "ops")) {
        if (c.schedule_kind != ScheduleKind::Ideal)
            fail(e->line, "'ops' only applies to ideal schedules");
        c.ideal_ops = parse_ideal_ops(*e, c.ideal_qubits);
    }
}

void parse_run(std::vector<Entry>& entries, RunConfig& c) {
    if (const Entry* e = find(entries, "run", "oracle")) {
        if (e->value != "pfaffian" && e->value != "exact" && e->value != "stabilizer")
            fail(e->line, "oracle must be pfaffian, exact or stabilizer, got '" + e->value + "'");
        c.oracle = e->value;
    }
    if (const Entry* e = find(entries, "run", "workers")) {
        c.workers = to_int(*e);
        if (c.workers < 1) fail(e->line, "workers must be >= 1");
    }
    if (const Entry* e = find(entries, "run", "seed")) c.seed = to_u64(*e);
    if (const Entry* e = find(entries, "run", "tol")) {
        c.tol = to_double(*e);
        if (c.tol <= 0) fail(e->line, "tol must be > 0");
    }
    if (const Entry* e = find(entries, "run", "out")) c.out_dir = e->value;
}

void validate_chain(const ChainSpec& s, int distance, bool shuttling) {
    if (s.sites < 5) throw ConfigError("chain needs at least 5 sites");
    if (s.hopping <= 0) throw ConfigError("chain hopping must be positive");
    if (s.left_segment < 2 || s.right_segment < 2)
        throw ConfigError("chain segments need at least 2 sites each");
    if (s.left_segment + s.right_segment + 1 > s.sites)
        throw ConfigError("chain segments overlap: no trivial wall remains between them");
    if (!(s.mu_trivial > s.mu_topological))
        throw ConfigError("chain needs mu_trivial > mu_topological");
    if (s.site_ramp_time <= 0 || s.settle_time < 0)
        throw ConfigError("ramp and settle times must be positive");
    if (shuttling && s.left_segment + distance + 1 > s.sites - s.right_segment)
        throw ConfigError("shuttle distance leaves no trivial wall before the right segment");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::vector<Entry> entries = tokenize(text);
    RunConfig c;
    parse_network(entries, c);
    parse_disorder(entries, c);
    parse_schedule(entries, c);
    parse_run(entries, c);
    for (const Entry& e : entries)
        if (!e.used) fail(e.line, "unknown key '" + e.key + "' in [" + e.section + "]");

    // Cross-section consistency.
    const bool tj = c.network_kind == NetworkKind::TJunction;
    switch (c.schedule_kind) {
        case ScheduleKind::SqrtX:
        case ScheduleKind::SqrtXInverse:
            if (!tj) throw ConfigError("sqrt_x schedules need a tjunction network");
            break;
        case ScheduleKind::Cnot:
            if (!tj) throw ConfigError("cnot schedules need a tjunction network");
            break;
        case ScheduleKind::Shuttle:
            if (tj) throw ConfigError("shuttle schedules need a chain network");
            validate_chain(c.chain, c.shuttle_distance, true);
            break;
        case ScheduleKind::Ideal:
            if (c.oracle == "pfaffian")
                throw ConfigError(
                    "ideal schedules have no lattice; use the exact or stabilizer oracle");
            break;
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

int config_qubits(const RunConfig& c) {
    switch (c.schedule_kind) {
        case ScheduleKind::Cnot: return 2;
        case ScheduleKind::Ideal: return c.ideal_qubits;
        default: return 1;  // sqrt_x variants and shuttle: one sparse qubit
    }
}

std::vector<std::uint64_t> config_basis(const RunConfig& c) {
    std::vector<std::uint64_t> basis = logical_basis(config_qubits(c));
    if (c.odd_sector)
        for (std::uint64_t& m : basis) m ^= 1;
    return basis;
}

bool has_lattice(const RunConfig& c) { return c.schedule_kind != ScheduleKind::Ideal; }

namespace {

// Straight-wire shuttle: settle, walk the left segment's right end out by
// `distance` sites, dwell, walk it back, settle.  An identity on the
// encoded qubit up to diabatic leakage.
LatticeSchedule shuttle_schedule(const ChainSpec& s, int distance, double dt) {
    validate_chain(s, distance, true);
    WireNetwork net(s.sites);
    std::vector<int> path(s.sites);
    std::iota(path.begin(), path.end(), 0);
    net.add_wire(path, s.hopping, s.hopping * std::polar(1.0, s.pairing_phase));
    for (int i = 0; i < s.sites; ++i) {
        const bool topo = i < s.left_segment || i >= s.sites - s.right_segment;
        net.set_mu(i, topo ? s.mu_topological : s.mu_trivial);
    }
    double t = s.settle_time;
    for (int k = 0; k < distance; ++k) {
        net.add_mu_transfer(s.left_segment + k, t, t + s.site_ramp_time, s.mu_topological,
                            s.hopping);
        t += s.site_ramp_time;
    }
    t += s.settle_time;
    for (int k = distance - 1; k >= 0; --k) {
        net.add_mu_transfer(s.left_segment + k, t, t + s.site_ramp_time, s.mu_trivial, s.hopping);
        t += s.site_ramp_time;
    }
    t += s.settle_time;
    net.hold_until(t);

    LatticeSchedule sched(std::move(net));
    sched.t_end = t;
    sched.dt = dt;
    // Mode 1 = left segment, mode 2 = right segment, outer ends first.
    sched.majorana_sites = {{0}, {s.left_segment - 1}, {s.sites - 1}, {s.sites - s.right_segment}};
    return sched;
}

}  // namespace

LatticeSchedule build_lattice_schedule(const RunConfig& c) {
    LatticeSchedule sched = [&] {
        switch (c.schedule_kind) {
            case ScheduleKind::SqrtX:
                return sqrt_x_exchange_schedule(c.tjunction, false, c.dt);
            case ScheduleKind::SqrtXInverse:
                return sqrt_x_exchange_schedule(c.tjunction, true, c.dt);
            case ScheduleKind::Cnot: return cnot_encoding_swap_schedule(c.tjunction, c.dt);
            case ScheduleKind::Shuttle:
                return shuttle_schedule(c.chain, c.shuttle_distance, c.dt);
            case ScheduleKind::Ideal:
                throw ConfigError("ideal schedules have no lattice realization");
        }
        throw Error("unreachable schedule kind");
    }();
    sched.network.apply_disorder(c.disorder.seed, c.disorder.amplitude);
    return sched;
}

IdealSchedule build_ideal_schedule(const RunConfig& c) {
    switch (c.schedule_kind) {
        case ScheduleKind::SqrtX: return IdealSchedule(4).braid(3, 2);
        case ScheduleKind::SqrtXInverse: return IdealSchedule(4).braid(2, 3);
        case ScheduleKind::Cnot:
            return IdealSchedule(8).encoding_swap(1, 2, {{1, 2}, {6, 7}, {8, 3}});
        case ScheduleKind::Shuttle: return IdealSchedule(4);  // identity
        case ScheduleKind::Ideal: {
            IdealSchedule sched(4 * c.ideal_qubits);
            sched.ops = c.ideal_ops;
            return sched;
        }
    }
    throw Error("unreachable schedule kind");
}

}  // namespace mzm
