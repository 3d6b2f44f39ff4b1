#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "loopchain/errors.hpp"
#include "loopchain/householder_frame.hpp"
#include "loopchain/linalg.hpp"
#include "loopchain/matrix_io.hpp"
#include "loopchain/propagator.hpp"
#include "loopchain/recipes.hpp"
#include "loopchain/scenario.hpp"
#include "loopchain/trajectory_csv.hpp"

namespace loopchain::cli {

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct Source {
    std::string preset;
    std::string config;
    std::vector<std::string> overrides;

    Scenario load(const std::vector<std::string>& extra = {}) const {
        auto all = overrides;
        all.insert(all.end(), extra.begin(), extra.end());
        if (!preset.empty()) return preset_scenario(preset, all);
        return load_scenario_file(config, all);
    }
};

void add_source_options(CLI::App* cmd, Source& src) {
    auto* p = cmd->add_option("--preset", src.preset, "Named preset (see preset-list)");
    auto* c = cmd->add_option("--config", src.config, "Scenario INI file");
    p->excludes(c);
    c->excludes(p);
    cmd->add_option("--set", src.overrides, "Override a config key, e.g. grid.dt=0.0005")->type_name("KEY=VALUE");
    cmd->callback([cmd, p, c] {
        if (p->count() + c->count() == 0) throw CLI::RequiredError(cmd->get_name() + ": --preset or --config");
    });
}

/// The initial state expressed in the basis the scenario propagates in.
StateVector initial_in_basis(const Scenario& sc) {
    if (sc.initial.basis() == sc.basis) return sc.initial;
    const HouseholderFrame frame(sc.cfg, sc.grid);
    return StateVector(apply_reflection(frame.reflection(sc.grid.t_start()), sc.initial.amplitudes()), sc.basis);
}

struct RunOutcome {
    int code = kExitOk;
    std::string report;
    std::string error;
};

RunOutcome execute_run(const Source& src, const std::vector<std::string>& sweep_overrides, const std::string& out_path) {
    RunOutcome outcome;
    try {
        const Scenario sc = src.load(sweep_overrides);
        const auto traj = propagate(sc.cfg, initial_in_basis(sc), sc.grid, sc.basis);
        const std::string path = out_path.empty() ? sc.name + ".csv" : out_path;
        {
            std::ofstream file(path, std::ios::binary);
            if (!file) throw InvalidInput("cannot write output file '" + path + "'");
            write_trajectory_csv(file, traj, sc.cfg, sc.output_stride);
            if (!file.flush()) throw InvalidInput("error writing output file '" + path + "'");
        }

        // Populations are reported in the bare basis, as in the CSV.
        const auto s = summarize(sc.basis == Basis::Bare ? traj : transform_trajectory(traj, sc.cfg));
        std::ostringstream r;
        r << "scenario: " << sc.name << '\n';
        if (!sweep_overrides.empty()) {
            r << "overrides:";
            for (const auto& o : sweep_overrides) r << ' ' << o;
            r << '\n';
        }
        r << "basis: " << to_string(sc.basis) << '\n';
        r << "grid: t_start=" << num(sc.grid.t_start()) << " t_end=" << num(sc.grid.t_end())
          << " dt=" << num(sc.grid.step()) << " steps=" << sc.grid.steps() << '\n';
        r << "final_populations: P1=" << num(s.final_populations[0]) << " P2=" << num(s.final_populations[1])
          << " P3=" << num(s.final_populations[2]) << '\n';
        r << "norm_drift: " << num(s.norm_drift) << '\n';
        r << "spectator_population: min=" << num(s.spectator_min) << " max=" << num(s.spectator_max) << '\n';
        r << "dark_population_min: " << num(s.dark_min) << '\n';
        r << "csv: " << path << '\n';
        outcome.report = r.str();
    } catch (const AccuracyError& e) {
        outcome.code = kExitAccuracy;
        outcome.error = std::string("accuracy error: ") + e.what();
    } catch (const std::exception& e) {
        outcome.code = kExitError;
        outcome.error = std::string("error: ") + e.what();
    }
    return outcome;
}

int cmd_run(const Source& src, const std::string& out_path, const std::vector<std::string>& sweep, unsigned jobs,
            std::ostream& out, std::ostream& err) {
    if (sweep.empty()) {
        const auto outcome = execute_run(src, {}, out_path);
        out << outcome.report;
        if (!outcome.error.empty()) err << outcome.error << '\n';
        return outcome.code;
    }

    const auto combos = expand_sweep(sweep);
    std::vector<RunOutcome> outcomes(combos.size());
    std::vector<std::string> paths(combos.size());
    for (std::size_t k = 0; k < combos.size(); ++k) {
        paths[k] = indexed_path(out_path.empty() ? "sweep.csv" : out_path, k);
    }

    // Runs share no mutable state; each worker claims the next index.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < combos.size(); k = next++) outcomes[k] = execute_run(src, combos[k], paths[k]);
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(combos.size())));
    std::vector<std::thread> threads;
    for (unsigned k = 0; k < n_threads; ++k) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    int code = kExitOk;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        out << (k ? "\n" : "") << "run: " << k << '\n' << outcomes[k].report;
        if (!outcomes[k].error.empty()) err << "run " << k << ": " << outcomes[k].error << '\n';
        code = std::max(code, outcomes[k].code);
    }
    return code;
}

int cmd_check(const Source& src, const std::vector<std::string>& names, const ConditionTolerances& tol,
              std::ostream& out, std::ostream& err) {
    std::vector<ConditionId> ids;
    for (const auto& name : names) {
        const auto id = parse_condition_id(name);
        if (!id) {
            err << "error: unknown condition '" << name << "' (known:";
            for (auto known : all_conditions()) err << ' ' << to_string(known);
            err << ")\n";
            return kExitError;
        }
        ids.push_back(*id);
    }
    if (ids.empty()) ids = all_conditions();

    try {
        const Scenario sc = src.load();
        out << "scenario: " << sc.name << '\n';
        for (auto id : ids) {
            const auto report = check_condition(sc.cfg, sc.grid, id, tol);
            out << '\n' << "condition: " << to_string(id) << '\n';
            out << "verdict: "
                << (report.indeterminate ? "indeterminate" : report.satisfied ? "satisfied" : "violated") << '\n';
            out << "max_violation: " << num(report.max_violation) << '\n';
            out << "sub_grid: ";
            if (report.evaluated_points == 0) {
                out << "none";
            } else {
                out << '[' << num(report.sub_grid_start) << ", " << num(report.sub_grid_end) << ']';
            }
            out << " points=" << report.evaluated_points << '/' << report.total_points << '\n';
            for (const auto& term : report.terms) {
                out << "term: " << term.name << " | max_violation=" << num(term.max_violation)
                    << " tolerance=" << num(term.tolerance) << ' ' << term.unit << " | "
                    << (term.satisfied() ? "ok" : "violated") << '\n';
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitOk;
}

int cmd_tridiagonalize(const std::string& path, std::ostream& out, std::ostream& err) {
    try {
        const HermitianMatrix h(read_matrix_file(path));
        const auto result = tridiagonalize(h);
        out << "reflections: " << result.reflections << '\n';
        out << "off_tridiagonal: " << num(off_tridiagonal_magnitude(result.tridiagonal.matrix())) << '\n';
        out << "T:\n";
        write_matrix(out, result.tridiagonal.matrix());
        out << "Q:\n";
        write_matrix(out, result.transform.matrix());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitOk;
}

int cmd_preset_list(std::ostream& out) {
    for (const auto& name : preset_names()) out << name << ": " << preset(name).description << '\n';
    return kExitOk;
}

}  // namespace

std::vector<std::vector<std::string>> expand_sweep(const std::vector<std::string>& specs) {
    std::vector<std::vector<std::string>> combos{{}};
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("sweep '" + spec + "' is not of the form key=v1,v2,...");
        const auto key = spec.substr(0, eq);
        std::vector<std::string> values;
        std::stringstream list(spec.substr(eq + 1));
        for (std::string v; std::getline(list, v, ',');) values.push_back(v);
        if (values.empty()) throw ParseError("sweep '" + spec + "' lists no values");

        std::vector<std::vector<std::string>> next;
        for (const auto& combo : combos) {
            for (const auto& v : values) {
                next.push_back(combo);
                next.back().push_back(key + "=" + v);
            }
        }
        combos = std::move(next);
    }
    return combos;
}

std::string indexed_path(const std::string& path, std::size_t index) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash + 1);
    const auto tag = "_" + std::to_string(index);
    return has_ext ? path.substr(0, dot) + tag + path.substr(dot) : path + tag;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Three-state loop dynamics in the Householder frame"};
    app.name("loopchain");
    app.require_subcommand(1);

    Source run_src;
    std::string out_path;
    std::vector<std::string> sweep;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* run = app.add_subcommand("run", "Propagate a scenario, write the trajectory CSV and print a summary");
    add_source_options(run, run_src);
    run->add_option("--out,-o", out_path, "Trajectory CSV path (default <scenario>.csv)");
    run->add_option("--sweep", sweep, "Run once per value: key=v1,v2,... (repeat for a product)")
        ->type_name("KEY=V1,V2");
    run->add_option("--jobs,-j", jobs, "Concurrent runs for --sweep")->check(CLI::PositiveNumber);

    Source check_src;
    std::vector<std::string> conditions;
    ConditionTolerances tol;
    auto* check = app.add_subcommand("check", "Report how well a scenario satisfies the loop conditions");
    add_source_options(check, check_src);
    check->add_option("--condition", conditions, "Condition id (default: all)");
    check->add_option("--frequency-tolerance", tol.frequency, "Tolerance for frequency relations, 1/T");
    check->add_option("--phase-tolerance", tol.phase, "Tolerance for phase relations, rad");

    std::string matrix_path;
    auto* tri = app.add_subcommand("tridiagonalize", "Householder tridiagonalization of a hermitian matrix file");
    tri->add_option("file", matrix_path, "Matrix file: N, then N rows of a+bi entries")->required();

    auto* list = app.add_subcommand("preset-list", "List the built-in presets");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (run->parsed()) return cmd_run(run_src, out_path, sweep, jobs, out, err);
        if (check->parsed()) return cmd_check(check_src, conditions, tol, out, err);
        if (tri->parsed()) return cmd_tridiagonalize(matrix_path, out, err);
        if (list->parsed()) return cmd_preset_list(out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace loopchain::cli
