// Copyright 2026 The mzmsim authors
// SPDX-License-Identifier: Apache-2.0
//
// mzmsim: Majorana wire-network simulator front end.
//
//   mzmsim validate CONFIG             schema + spectrum sanity check
//   mzmsim run CONFIG [flags]          simulate, write result JSON
//   mzmsim compare A.json B.json       diff two result files
//
// Exit codes: 0 success, 1 configuration/usage error, 2 numerical
// tolerance failure.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "../vendor/json.hpp"
#include "mzm/config.hpp"
#include "mzm/errors.hpp"
#include "mzm/gates.hpp"
#include "mzm/protocol.hpp"

namespace {

using json = nlohmann::ordered_json;
using mzm::RunConfig;
using mzm::ScheduleKind;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTolerance = 2;

std::string schedule_name(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::SqrtX: return "sqrt_x";
        case ScheduleKind::SqrtXInverse: return "sqrt_x_inverse";
        case ScheduleKind::Cnot: return "cnot";
        case ScheduleKind::Shuttle: return "shuttle";
        case ScheduleKind::Ideal: return "ideal";
    }
    return "?";
}

// The logical unitary the configured schedule is meant to realize,
// predicted by the stabilizer tracker on the abstract counterpart.  Only
// defined for even-sector, fully forced schedules; empty otherwise.
mzm::Mat target_unitary(const RunConfig& c, const mzm::IdealSchedule& ideal) {
    if (c.odd_sector) return {};  // odd-branch glossary is not interpreted
    for (const mzm::IdealOp& op : ideal.ops)
        if (op.kind == mzm::IdealOp::Kind::Project &&
            op.projector.policy == mzm::OutcomePolicy::Sampled)
            return {};
    const int q = mzm::config_qubits(c);
    const auto layout = mzm::EncodingLayout::sparse(q);
    return mzm::run_ideal_stabilizer(ideal, layout, mzm::logical_basis(q)).t;
}

json matrix_to_json(const mzm::Mat& t) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index col = 0; col < t.cols(); ++col)
            row.push_back({t(r, col).real(), t(r, col).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

mzm::Mat matrix_from_json(const json& rows) {
    const auto nr = static_cast<Eigen::Index>(rows.size());
    const auto nc = nr ? static_cast<Eigen::Index>(rows.at(0).size()) : 0;
    mzm::Mat t(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r)
        for (Eigen::Index col = 0; col < nc; ++col) {
            const json& z = rows.at(r).at(col);
            t(r, col) = {z.at(0).get<double>(), z.at(1).get<double>()};
        }
    return t;
}

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    return buf;
}

void write_spectra_csv(const std::string& path, const mzm::LatticeSchedule& sched) {
    std::ofstream out(path);
    if (!out) throw mzm::ConfigError("cannot write '" + path + "'");
    const double span = sched.t_end - sched.t_begin;
    const double step = std::max(sched.dt, span / 200.0);
    bool header = false;
    for (double t = sched.t_begin; t <= sched.t_end + 0.5 * step; t += step) {
        const auto probe = sched.network.spectrum_probe(std::min(t, sched.t_end));
        if (!header) {
            out << "t";
            for (Eigen::Index k = 0; k < probe.eigenvalues.size(); ++k) out << ",E" << k;
            out << "\n";
            header = true;
        }
        out << std::min(t, sched.t_end);
        for (Eigen::Index k = 0; k < probe.eigenvalues.size(); ++k)
            out << "," << probe.eigenvalues[k];
        out << "\n";
    }
}

int cmd_validate(const std::string& path) {
    const RunConfig c = mzm::load_config(path);
    if (!mzm::has_lattice(c)) {
        const mzm::IdealSchedule ideal = mzm::build_ideal_schedule(c);
        std::printf("ok, ideal schedule: %d Majorana labels, %zu ops (%d projectors)\n",
                    ideal.n_labels, ideal.ops.size(), ideal.projector_count());
        return kExitOk;
    }
    const mzm::LatticeSchedule sched = mzm::build_lattice_schedule(c);
    const auto probe = sched.network.spectrum_probe(sched.t_begin, sched.zero_factor);
    if (probe.near_zero_count == 0) {
        std::printf("warning: 0 zero modes detected at t = 0; "
                    "the parked network is not in its topological phase\n");
        return kExitOk;
    }
    std::printf("ok, %d zero modes detected\n", probe.near_zero_count);
    return kExitOk;
}

int cmd_run(RunConfig c, bool want_spectra) {
    if (!mzm::has_lattice(c) && c.oracle == "pfaffian")
        throw mzm::ConfigError(
            "ideal schedules have no lattice; use the exact or stabilizer oracle");

    const std::vector<std::uint64_t> basis = mzm::config_basis(c);
    const mzm::IdealSchedule ideal = mzm::build_ideal_schedule(c);
    const auto tick = std::chrono::steady_clock::now();

    mzm::TransitionMatrix t;
    std::string note;
    if (c.oracle == "pfaffian" || (c.oracle == "exact" && mzm::has_lattice(c))) {
        mzm::LatticeSchedule sched = mzm::build_lattice_schedule(c);
        if (c.oracle == "exact") {
            if (sched.network.n_sites() > 12)
                throw mzm::ConfigError(
                    "the exact oracle supports at most 12 lattice sites (24 Majorana "
                    "operators), got " + std::to_string(sched.network.n_sites()));
            t = mzm::run_lattice_exact(sched, basis);
        } else {
            t = mzm::run_lattice_pfaffian(sched, basis, c.workers);
        }
        if (want_spectra)
            write_spectra_csv((std::filesystem::path(c.out_dir) / "spectra.csv").string(), sched);
    } else if (c.oracle == "exact") {
        // Ideal schedule: resolve any sampled outcomes on the first basis
        // state, then evolve every basis column.
        const auto sampled = mzm::sample_outcomes_exact(ideal, basis.at(0), c.seed);
        t = mzm::run_ideal_exact(sampled.schedule, basis);
        t.events = sampled.events;
    } else {  // stabilizer
        const int q = mzm::config_qubits(c);
        if (c.odd_sector)
            throw mzm::ConfigError("the stabilizer oracle reads out the even-sector encoding");
        const auto layout = mzm::EncodingLayout::sparse(q);
        mzm::IdealSchedule resolved = ideal;
        std::vector<mzm::EventRecord> events;
        for (const mzm::IdealOp& op : ideal.ops)
            if (op.kind == mzm::IdealOp::Kind::Project &&
                op.projector.policy == mzm::OutcomePolicy::Sampled) {
                const auto sampled = mzm::sample_outcomes_stabilizer(ideal, layout, 0, c.seed);
                resolved = sampled.schedule;
                events = sampled.events;
                break;
            }
        t = mzm::run_ideal_stabilizer(resolved, layout, basis);
        if (!events.empty()) t.events = events;
        std::string name = mzm::identify_gate(t.t);
        if (t.t.rows() == 2 && !name.empty() && name != "id") name += " on qubit 1";
        note = name.empty() ? "logical unitary outside the gate catalog" : name;
        std::printf("%s\n", note.c_str());
    }
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tick).count();

    const mzm::Mat target = target_unitary(c, ideal);
    std::string target_name;
    double fidelity = -1;
    if (target.size() > 0) {
        target_name = mzm::identify_gate(target);
        fidelity = mzm::gate_fidelity(t, target);
    }

    json out;
    out["schedule"] = schedule_name(c.schedule_kind);
    out["network"] = mzm::has_lattice(c)
                         ? json(c.network_kind == mzm::NetworkKind::TJunction ? "tjunction"
                                                                              : "chain")
                         : json();
    out["oracle"] = c.oracle;
    out["seed"] = c.seed;
    out["dt"] = c.dt;
    out["sector"] = c.odd_sector ? "odd" : "even";
    out["basis"] = basis;
    out["t"] = matrix_to_json(t.t);
    json events = json::array();
    for (const mzm::EventRecord& e : t.events)
        events.push_back({{"label", e.label},
                          {"outcome", e.outcome},
                          {"deterministic", e.deterministic},
                          {"probability", e.probability},
                          {"scale", e.scale}});
    out["events"] = std::move(events);
    out["branches_per_amplitude"] = t.branches_per_amplitude;
    out["propagator_residual"] = t.propagator_residual;
    out["unitarity_residual"] = t.unitarity_residual();
    out["target"] = target_name;
    out["fidelity"] = fidelity < 0 ? json() : json(fidelity);
    out["timestamp"] = timestamp_utc();

    std::filesystem::create_directories(c.out_dir);
    const std::string result_path = (std::filesystem::path(c.out_dir) / "result.json").string();
    std::ofstream file(result_path);
    if (!file) throw mzm::ConfigError("cannot write '" + result_path + "'");
    file << out.dump(2) << "\n";

    std::printf("%s via %s oracle: %zu x %zu transition matrix", schedule_name(c.schedule_kind).c_str(),
                c.oracle.c_str(), t.basis.size(), t.basis.size());
    if (fidelity >= 0)
        std::printf(", fidelity %.6f vs %s", fidelity,
                    target_name.empty() ? "target" : target_name.c_str());
    std::printf("\n%zu events, propagator residual %.2e, wrote %s [%.1f s]\n", t.events.size(),
                t.propagator_residual, result_path.c_str(), runtime);

    if (t.propagator_residual > c.tol) {
        std::fprintf(stderr, "tolerance failure: propagator residual %.3e exceeds tol %.3e\n",
                     t.propagator_residual, c.tol);
        return kExitTolerance;
    }
    return kExitOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, double tol) {
    auto load = [](const std::string& p) {
        std::ifstream in(p);
        if (!in) throw mzm::ConfigError("cannot read '" + p + "'");
        return json::parse(in);
    };
    const json a = load(path_a);
    const json b = load(path_b);
    if (a.at("basis") != b.at("basis"))
        throw mzm::ConfigError("basis mismatch: " + a.at("basis").dump() + " vs " +
                               b.at("basis").dump());
    const mzm::Mat ta = matrix_from_json(a.at("t"));
    const mzm::Mat tb = matrix_from_json(b.at("t"));
    const double dev = mzm::phase_aligned_deviation(ta, tb);
    std::printf("max entrywise deviation %.3e (phase aligned)\n", dev);
    if (a.at("fidelity").is_number() && b.at("fidelity").is_number()) {
        const double df =
            std::abs(a.at("fidelity").get<double>() - b.at("fidelity").get<double>());
        std::printf("fidelity delta %.3e\n", df);
    }
    if (dev > tol) {
        std::fprintf(stderr, "tolerance failure: deviation %.3e exceeds tol %.3e\n", dev, tol);
        return kExitTolerance;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Majorana wire-network simulator"};
    app.require_subcommand(1);

    std::string config_path, result_a, result_b;
    std::string out_dir, oracle;
    std::uint64_t seed = 0;
    int workers = 0;
    double tol = -1;
    bool spectra = false;

    CLI::App* validate = app.add_subcommand("validate", "check a config file");
    validate->add_option("config", config_path, "config file")->required();

    CLI::App* run = app.add_subcommand("run", "simulate a config");
    run->add_option("config", config_path, "config file")->required();
    auto* opt_out = run->add_option("--out", out_dir, "output directory");
    auto* opt_seed = run->add_option("--seed", seed, "sampling seed");
    auto* opt_workers = run->add_option("--workers", workers, "worker threads");
    auto* opt_oracle =
        run->add_option("--oracle", oracle, "pfaffian | exact | stabilizer");
    auto* opt_tol = run->add_option("--tol", tol, "numerical tolerance");
    run->add_flag("--spectra", spectra, "also write spectra.csv over the schedule");

    CLI::App* compare = app.add_subcommand("compare", "diff two result files");
    compare->add_option("a", result_a, "first result JSON")->required();
    compare->add_option("b", result_b, "second result JSON")->required();
    auto* opt_ctol = compare->add_option("--tol", tol, "deviation tolerance");

    try {
        app.parse(argc, argv);
        if (validate->parsed()) return cmd_validate(config_path);
        if (run->parsed()) {
            RunConfig c = mzm::load_config(config_path);
            if (opt_out->count()) c.out_dir = out_dir;
            if (opt_seed->count()) c.seed = seed;
            if (opt_workers->count()) {
                if (workers < 1) throw mzm::ConfigError("workers must be >= 1");
                c.workers = workers;
            }
            if (opt_oracle->count()) {
                if (oracle != "pfaffian" && oracle != "exact" && oracle != "stabilizer")
                    throw mzm::ConfigError("oracle must be pfaffian, exact or stabilizer, got '" +
                                           oracle + "'");
                c.oracle = oracle;
            }
            if (opt_tol->count()) {
                if (tol <= 0) throw mzm::ConfigError("tol must be > 0");
                c.tol = tol;
            }
            return cmd_run(std::move(c), spectra);
        }
        return cmd_compare(result_a, result_b, opt_ctol->count() ? tol : 1e-6);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const mzm::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const mzm::Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitTolerance;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
