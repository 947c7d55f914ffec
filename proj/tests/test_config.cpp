// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0

#include "mzm/config.hpp"

#include <string>

#include "doctest.h"
#include "mzm/errors.hpp"
#include "mzm/gates.hpp"
#include "mzm/protocol.hpp"

using namespace mzm;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("defaults and full key round-trip") {
    const RunConfig d = parse_config("");
    CHECK(d.network_kind == NetworkKind::TJunction);
    CHECK(d.schedule_kind == ScheduleKind::SqrtX);
    CHECK(d.oracle == "pfaffian");
    CHECK(d.dt == 0.1);
    CHECK(d.seed == 1);
    CHECK(!d.odd_sector);

    const RunConfig c = parse_config(R"(
# comment and blank lines are ignored
[network]
kind = tjunction
arm_sites = 12
hopping = 1.5
mu_topological = -0.25
mu_trivial = 9
static_segment = 3
wall = 4
site_ramp_time = 6
settle_time = 2.5

[disorder]
amplitude = 0.05
seed = 99

[schedule]
kind = sqrt_x_inverse
dt = 0.02
sector = odd

[run]
oracle = exact
workers = 3
seed = 17
tol = 1e-8
out = results/a
)");
    CHECK(c.tjunction.arm_sites == 12);
    CHECK(c.tjunction.hopping == 1.5);
    CHECK(c.tjunction.mu_topological == -0.25);
    CHECK(c.tjunction.mu_trivial == 9.0);
    CHECK(c.tjunction.static_segment == 3);
    CHECK(c.tjunction.wall == 4);
    CHECK(c.tjunction.site_ramp_time == 6.0);
    CHECK(c.tjunction.settle_time == 2.5);
    CHECK(c.disorder.amplitude == 0.05);
    CHECK(c.disorder.seed == 99);
    CHECK(c.schedule_kind == ScheduleKind::SqrtXInverse);
    CHECK(c.dt == 0.02);
    CHECK(c.odd_sector);
    CHECK(c.oracle == "exact");
    CHECK(c.workers == 3);
    CHECK(c.seed == 17);
    CHECK(c.tol == 1e-8);
    CHECK(c.out_dir == "results/a");

    const RunConfig ch = parse_config(R"(
[network]
kind = chain
sites = 11
pairing_phase = 0.7
left_segment = 2
right_segment = 4

[schedule]
kind = shuttle
distance = 3
)");
    CHECK(ch.network_kind == NetworkKind::Chain);
    CHECK(ch.chain.sites == 11);
    CHECK(ch.chain.pairing_phase == 0.7);
    CHECK(ch.chain.left_segment == 2);
    CHECK(ch.chain.right_segment == 4);
    CHECK(ch.schedule_kind == ScheduleKind::Shuttle);
    CHECK(ch.shuttle_distance == 3);
}

TEST_CASE("schema errors carry line context") {
    CHECK(contains(error_of("[nonsense]\n"), "line 1: unknown section"));
    CHECK(contains(error_of("\n[network\n"), "line 2: unterminated section header"));
    CHECK(contains(error_of("arm_sites = 3\n"), "line 1: key outside any section"));
    CHECK(contains(error_of("[network]\narm_sites 3\n"), "line 2: expected 'key = value'"));
    CHECK(contains(error_of("[network]\narm_sites = abc\n"), "line 2"));
    CHECK(contains(error_of("[network]\narm_sites = abc\n"), "integer"));
    CHECK(contains(error_of("[network]\nhopping = 1e\n"), "number"));
    CHECK(contains(error_of("[network]\nwall = 3\nwall = 4\n"), "line 3: duplicate key 'wall'"));
    CHECK(contains(error_of("[network]\nbogus = 1\n"), "unknown key 'bogus' in [network]"));
    // chain keys are unknown on a tjunction network and vice versa
    CHECK(contains(error_of("[network]\nkind = tjunction\nsites = 9\n"), "unknown key 'sites'"));
    CHECK(contains(error_of("[network]\nkind = chain\nwall = 2\n"), "unknown key 'wall'"));
    CHECK(contains(error_of("[network]\nkind = ring\n"), "tjunction or chain"));
    CHECK(contains(error_of("[schedule]\nkind = dance\n"), "schedule kind"));
    CHECK(contains(error_of("[schedule]\nsector = both\n"), "sector must be even or odd"));
    CHECK(contains(error_of("[schedule]\ndt = 0\n"), "dt must be > 0"));
    CHECK(contains(error_of("[run]\noracle = quantum\n"), "oracle must be"));
    CHECK(contains(error_of("[run]\nworkers = 0\n"), "workers must be >= 1"));
    CHECK(contains(error_of("[run]\ntol = -1\n"), "tol must be > 0"));
    CHECK(contains(error_of("[disorder]\namplitude = -0.1\n"), "amplitude"));
    // keys tied to the wrong schedule kind
    CHECK(contains(error_of("[schedule]\nkind = sqrt_x\ndistance = 2\n"),
                   "'distance' only applies to shuttle"));
    CHECK(contains(error_of("[schedule]\nkind = cnot\nqubits = 2\n"),
                   "'qubits' only applies to ideal"));
    CHECK(contains(error_of("[schedule]\nkind = sqrt_x\nops = braid 1 2\n"),
                   "'ops' only applies to ideal"));
}

TEST_CASE("ideal ops grammar") {
    const RunConfig c = parse_config(R"(
[schedule]
kind = ideal
qubits = 2
ops = braid 3 2; pair 4 5 odd; quad 1 sampled; braid 6 7

[run]
oracle = exact
)");
    REQUIRE(c.ideal_ops.size() == 4);
    CHECK(c.ideal_ops[0].kind == IdealOp::Kind::Braid);
    CHECK(c.ideal_ops[0].i == 3);
    CHECK(c.ideal_ops[0].j == 2);
    CHECK(c.ideal_ops[1].kind == IdealOp::Kind::Project);
    CHECK(c.ideal_ops[1].projector.policy == OutcomePolicy::ForcedOdd);
    CHECK(c.ideal_ops[1].projector.label == "pair(4,5)");
    CHECK(c.ideal_ops[2].projector.policy == OutcomePolicy::Sampled);
    CHECK(c.ideal_ops[2].projector.label == "quad(1,2,3,4)");
    CHECK(c.ideal_ops[3].i == 6);

    // the dangling cross-reference names the op and the declared count
    const std::string quad_err =
        error_of("[schedule]\nkind = ideal\nqubits = 2\nops = quad 3\n[run]\noracle = exact\n");
    CHECK(contains(quad_err, "line 4"));
    CHECK(contains(quad_err, "'quad 3'"));
    CHECK(contains(quad_err, "declares 2"));
    const std::string label_err =
        error_of("[schedule]\nkind = ideal\nops = braid 1 9\n[run]\noracle = exact\n");
    CHECK(contains(label_err, "'braid 1 9'"));

    CHECK(contains(error_of("[schedule]\nkind = ideal\nops = braid 2 2\n[run]\noracle = exact\n"),
                   "distinct"));
    CHECK(contains(error_of("[schedule]\nkind = ideal\nops = twist 1 2\n[run]\noracle = exact\n"),
                   "unknown op 'twist'"));
    CHECK(contains(error_of("[schedule]\nkind = ideal\nops = braid 1\n[run]\noracle = exact\n"),
                   "braid needs two labels"));
    CHECK(contains(
        error_of("[schedule]\nkind = ideal\nops = pair 1 2 maybe\n[run]\noracle = exact\n"),
        "even, odd or sampled"));
    CHECK(contains(
        error_of("[schedule]\nkind = ideal\nops = braid 1 2 3\n[run]\noracle = exact\n"),
        "trailing token '3'"));
    CHECK(contains(error_of("[schedule]\nkind = ideal\nqubits = 17\n[run]\noracle = exact\n"),
                   "1..16"));
}

TEST_CASE("cross-section consistency") {
    CHECK(contains(error_of("[network]\nkind = chain\n[schedule]\nkind = sqrt_x\n"),
                   "sqrt_x schedules need a tjunction network"));
    CHECK(contains(error_of("[network]\nkind = chain\n[schedule]\nkind = cnot\n"),
                   "cnot schedules need a tjunction network"));
    CHECK(contains(error_of("[schedule]\nkind = shuttle\n"), "shuttle schedules need a chain"));
    CHECK(contains(error_of("[schedule]\nkind = ideal\n"), "exact or stabilizer oracle"));
    // shuttle geometry: extending by 4 from a 3-site segment in 10 sites
    // leaves no wall before the right segment
    CHECK(contains(error_of("[network]\nkind = chain\nsites = 10\n[schedule]\nkind = shuttle\n"
                            "distance = 4\n[run]\noracle = exact\n"),
                   "no trivial wall"));
    CHECK(contains(error_of("[network]\nkind = chain\nsites = 6\nleft_segment = 3\n"
                            "[schedule]\nkind = shuttle\ndistance = 1\n[run]\noracle = exact\n"),
                   "segments overlap"));
}

TEST_CASE("qubit count and basis selection") {
    RunConfig c;
    c.schedule_kind = ScheduleKind::SqrtX;
    CHECK(config_qubits(c) == 1);
    CHECK(config_basis(c) == std::vector<std::uint64_t>{0b00, 0b11});
    c.odd_sector = true;
    CHECK(config_basis(c) == std::vector<std::uint64_t>{0b01, 0b10});
    c.odd_sector = false;
    c.schedule_kind = ScheduleKind::Cnot;
    CHECK(config_qubits(c) == 2);
    CHECK(config_basis(c) == std::vector<std::uint64_t>{0b0000, 0b0011, 0b1100, 0b1111});
    c.schedule_kind = ScheduleKind::Shuttle;
    CHECK(config_qubits(c) == 1);
    CHECK(has_lattice(c));
    c.schedule_kind = ScheduleKind::Ideal;
    c.ideal_qubits = 3;
    CHECK(config_qubits(c) == 3);
    CHECK(!has_lattice(c));
    CHECK_THROWS_AS(build_lattice_schedule(c), ConfigError);
}

TEST_CASE("ideal schedule construction per kind") {
    RunConfig c;
    c.schedule_kind = ScheduleKind::SqrtX;
    IdealSchedule sx = build_ideal_schedule(c);
    CHECK(sx.n_labels == 4);
    REQUIRE(sx.ops.size() == 1);
    CHECK(sx.ops[0].i == 3);
    CHECK(sx.ops[0].j == 2);

    c.schedule_kind = ScheduleKind::SqrtXInverse;
    IdealSchedule sxi = build_ideal_schedule(c);
    CHECK(sxi.ops[0].i == 2);
    CHECK(sxi.ops[0].j == 3);

    c.schedule_kind = ScheduleKind::Shuttle;
    IdealSchedule id = build_ideal_schedule(c);
    CHECK(id.n_labels == 4);
    CHECK(id.ops.empty());

    // the cnot counterpart opens with pair(4,5), braids the dense word,
    // and closes with quad(1,2,3,4); the tracker reads it as CNOT(1,2)
    c.schedule_kind = ScheduleKind::Cnot;
    IdealSchedule cx = build_ideal_schedule(c);
    CHECK(cx.n_labels == 8);
    CHECK(cx.projector_count() == 2);
    CHECK(cx.ops.front().kind == IdealOp::Kind::Project);
    CHECK(cx.ops.front().projector.label == "pair(4,5)");
    CHECK(cx.ops.back().projector.label == "quad(1,2,3,4)");
    const Mat u = run_ideal_stabilizer(cx, EncodingLayout::sparse(2), logical_basis(2)).t;
    CHECK(phase_free_match(cnot_gate(1, 2, 2), u) > 1.0 - 1e-12);
}

TEST_CASE("shuttle lattice schedule geometry") {
    RunConfig c;
    c.network_kind = NetworkKind::Chain;
    c.schedule_kind = ScheduleKind::Shuttle;
    c.chain.sites = 10;
    c.chain.left_segment = 3;
    c.chain.right_segment = 3;
    c.chain.site_ramp_time = 2.0;
    c.chain.settle_time = 1.0;
    c.shuttle_distance = 2;
    c.dt = 0.05;

    const LatticeSchedule sched = build_lattice_schedule(c);
    CHECK(sched.network.n_sites() == 10);
    CHECK(sched.dt == 0.05);
    // settle + 2 out + settle + 2 back + settle
    CHECK(sched.t_end == doctest::Approx(3 * 1.0 + 4 * 2.0));
    CHECK(sched.network.end_time() == sched.t_end);
    REQUIRE(sched.majorana_sites.size() == 4);
    CHECK(sched.majorana_sites[0] == std::vector<int>{0});
    CHECK(sched.majorana_sites[1] == std::vector<int>{2});
    CHECK(sched.majorana_sites[2] == std::vector<int>{9});
    CHECK(sched.majorana_sites[3] == std::vector<int>{7});
    CHECK(sched.projectors.empty());

    // parked profile: segments topological, wall trivial; the segment end
    // walks out to site 4 at mid-schedule and returns by the end
    CHECK(sched.network.mu_at(0, 0.0) == doctest::Approx(0.0));
    CHECK(sched.network.mu_at(2, 0.0) == doctest::Approx(0.0));
    CHECK(sched.network.mu_at(3, 0.0) == doctest::Approx(8.0));
    CHECK(sched.network.mu_at(6, 0.0) == doctest::Approx(8.0));
    CHECK(sched.network.mu_at(7, 0.0) == doctest::Approx(0.0));
    const double t_mid = 1.0 + 2 * 2.0 + 0.5;  // inside the extended dwell
    CHECK(sched.network.mu_at(3, t_mid) == doctest::Approx(0.0));
    CHECK(sched.network.mu_at(4, t_mid) == doctest::Approx(0.0));
    CHECK(sched.network.mu_at(5, t_mid) == doctest::Approx(8.0));
    CHECK(sched.network.mu_at(3, sched.t_end) == doctest::Approx(8.0));
    CHECK(sched.network.mu_at(4, sched.t_end) == doctest::Approx(8.0));
}

TEST_CASE("disorder rides on the programmed profile") {
    RunConfig c;
    c.network_kind = NetworkKind::Chain;
    c.schedule_kind = ScheduleKind::Shuttle;
    c.chain.sites = 8;
    c.chain.left_segment = 2;
    c.chain.right_segment = 2;
    c.chain.site_ramp_time = 1.0;
    c.chain.settle_time = 0.5;
    c.shuttle_distance = 1;
    c.disorder.amplitude = 0.2;
    c.disorder.seed = 5;

    const LatticeSchedule a = build_lattice_schedule(c);
    const LatticeSchedule b = build_lattice_schedule(c);
    c.disorder.seed = 6;
    const LatticeSchedule d = build_lattice_schedule(c);

    bool shifted = false, differs = false;
    for (int i = 0; i < 8; ++i) {
        const double off = a.network.mu_at(i, 0.0) - (i < 2 || i >= 6 ? 0.0 : 8.0);
        CHECK(std::abs(off) <= 0.1);  // within [-amplitude/2, amplitude/2]
        if (std::abs(off) > 1e-3) shifted = true;
        CHECK(a.network.mu_at(i, 0.0) == b.network.mu_at(i, 0.0));  // reproducible
        if (a.network.mu_at(i, 0.0) != d.network.mu_at(i, 0.0)) differs = true;
        // a full extend-retract cycle returns to the disordered profile
        CHECK(a.network.mu_at(i, a.t_end) == doctest::Approx(a.network.mu_at(i, 0.0)));
    }
    CHECK(shifted);
    CHECK(differs);
}

TEST_CASE("load_config reports unreadable files") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), ConfigError);
}
