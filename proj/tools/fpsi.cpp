// fpsi command line: convergence, cantilever, bloodflow, run, audit.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "fpsi/config.hpp"
#include "fpsi/errors.hpp"
#include "fpsi/experiments.hpp"
#include "fpsi/io.hpp"

namespace fs = std::filesystem;
using namespace fpsi;

namespace {

std::string tag(double t) {
    std::ostringstream s;
    s << t;
    return s.str();
}

std::string mode_name(BiotFormulation f) { return f == BiotFormulation::four_field ? "fourfield" : "twofield"; }

double l2(const SparseMatrix& m, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, v.dot(m * v))); }

CsvTable error_table(const std::vector<ErrorReport>& rows) {
    CsvTable t{{"h", "dt"}, {}};
    for (auto name : ErrorReport::kNames) t.header.emplace_back(name);
    for (const auto& r : rows) {
        std::vector<double> row{r.h, r.dt};
        for (double v : r.values()) row.push_back(v);
        t.rows.push_back(row);
    }
    return t;
}

void print_row(const std::vector<double>& row) {
    for (double v : row) std::printf(" %12.4e", v);
    std::printf("\n");
}

int cmd_convergence(double lambda, const std::string& mode, const fs::path& out) {
    ConvergenceOptions opt;
    opt.lambda_p = lambda;
    opt.run.formulation = formulation_from_string(mode);
    opt.run.exec = Execution::parallel;
    std::printf("convergence: lambda_p = %g, %s\n%13s%13s%13s%13s%13s%13s%13s%13s\n", lambda, mode.c_str(), "h", "dt",
                "e_vf_H1", "e_pf_L2", "e_eng", "e_up_H1", "e_betap_L2", "e_pp_H1");
    RateTable table;
    try {
        table = convergence_study(opt, [](const ErrorReport& r) {
            print_row(error_table({r}).rows.front());
            std::fflush(stdout);
        });
    } catch (const StudyAbortedError& e) {
        write_csv(out / "rates.csv", error_table(e.partial().rows));
        throw;
    }
    CsvTable csv = error_table(table.rows);
    // Rate rows: dt = 0, h = finer mesh of the pair; the least-squares row has h = 0.
    const auto pairs = table.rates();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<double> row{table.rows[i + 1].h, 0.0};
        row.insert(row.end(), pairs[i].begin(), pairs[i].end());
        csv.rows.push_back(row);
    }
    if (table.rows.size() >= 2) {
        const auto fit = table.fitted();
        std::vector<double> row{0.0, 0.0};
        row.insert(row.end(), fit.begin(), fit.end());
        csv.rows.push_back(row);
        std::printf("fitted rates:               ");
        for (double r : fit) std::printf(" %12.3f", r);
        std::printf("\n");
    }
    write_csv(out / "rates.csv", csv);
    std::printf("wrote %s\n", (out / "rates.csv").c_str());
    return 0;
}

int cmd_cantilever(const std::string& mode, std::vector<double> times, const fs::path& out) {
    std::vector<BiotFormulation> forms;
    if (mode == "both") {
        forms = {BiotFormulation::four_field, BiotFormulation::two_field};
    } else {
        forms = {formulation_from_string(mode)};
    }
    CsvTable metrics{{"fourfield", "t", "tv", "range", "osc_index"}, {}};
    for (auto form : forms) {
        const auto snaps = run_cantilever(cantilever_scenario(), form, times);
        for (const auto& s : snaps) {
            write_profile_csv(out / ("profile_" + mode_name(form) + "_t" + tag(s.t) + ".csv"), s.metric.x, s.metric.value);
            metrics.rows.push_back({form == BiotFormulation::four_field ? 1.0 : 0.0, s.t, s.metric.tv, s.metric.range,
                                    s.metric.osc_index});
            std::printf("%-10s t = %-8g osc_index = %.4f\n", mode_name(form).c_str(), s.t, s.metric.osc_index);
        }
    }
    write_csv(out / "metrics.csv", metrics);
    return 0;
}

void write_series(const fs::path& out, const std::string& label, const Discretization& d, const BloodflowResult& r) {
    for (std::size_t k = 0; k < r.series.size(); ++k) {
        const InterfaceSeries& s = r.series[k];
        CsvTable t{{"x", "u_py", "v_fx", "p_f"}, {}};
        for (std::size_t i = 0; i < s.x.size(); ++i) t.rows.push_back({s.x[i], s.u_py[i], s.v_fx[i], s.p_f[i]});
        std::sort(t.rows.begin(), t.rows.end());
        write_csv(out / ("interface_" + label + "_t" + tag(s.t) + ".csv"), t);
        write_profile_csv(out / ("axis_" + label + "_t" + tag(s.t) + ".csv"), s.axis_x, s.axis_v_fx);
        write_state_vtk(d, r.states[k], out, label + "_t" + tag(s.t));
    }
}

int cmd_bloodflow(int which, bool reference, const fs::path& out) {
    const std::vector<double> times{0.0035, 0.007, 0.0105, 0.014};
    const Scenario sc = bloodflow_scenario(which);
    const auto disc = Discretization::build(sc);
    const BloodflowResult dec = run_bloodflow(sc, Scheme::decoupled, times, Execution::parallel);
    write_series(out, "decoupled", *disc, dec);
    for (const auto& s : dec.series) {
        std::vector<double> x = s.x, y = s.u_py;
        std::printf("decoupled  t = %-7g pulse front x = %.4f\n", s.t, pulse_front(x, y));
    }
    if (reference) {
        const BloodflowResult mono = run_bloodflow(sc, Scheme::monolithic, times, Execution::parallel);
        write_series(out, "monolithic", *disc, mono);
        const std::vector<InterfaceSeries> a(dec.series.begin(), dec.series.begin() + 3);
        const std::vector<InterfaceSeries> b(mono.series.begin(), mono.series.begin() + 3);
        std::printf("relative L2 difference of u_p,y (t <= 0.0105): %.4f\n", relative_interface_difference(a, b));
    }
    return 0;
}

int cmd_run(const fs::path& config_path) {
    const RunConfig cfg = load_config(config_path);
    const fs::path& out = cfg.output.dir;
    fs::create_directories(out);
    const CoupledSolver solver(cfg.scenario, cfg.run.formulation);
    const Discretization& d = solver.discretization();
    CsvTable history{{"n", "t", "vf_L2", "up_L2", "pp_L2"}, {}};
    auto emit = [&](const SystemState& s, bool last) {
        history.rows.push_back({double(s.n), s.t, l2(d.fluid.mass, s.v_f), l2(d.poro.mass, s.u_p), l2(d.poro.m22, s.p_p)});
        const bool vtk = last || (cfg.output.vtk_every > 0 && s.n % cfg.output.vtk_every == 0);
        if (!vtk) return;
        const std::string stem = "step" + std::to_string(s.n);
        write_state_vtk(d, s, out, stem);
        if (cfg.output.profile) {
            const auto [x, v] = bottom_profile(d, s.p_p);
            write_profile_csv(out / ("profile_" + stem + ".csv"), x, v);
        }
        if (cfg.output.interface) {
            const InterfaceSeries is = sample_interface(d, s);
            CsvTable t{{"x", "u_py", "v_fx", "p_f"}, {}};
            for (std::size_t i = 0; i < is.x.size(); ++i) t.rows.push_back({is.x[i], is.u_py[i], is.v_fx[i], is.p_f[i]});
            std::sort(t.rows.begin(), t.rows.end());
            write_csv(out / ("interface_" + stem + ".csv"), t);
        }
    };
    const int n_steps = cfg.scenario.time.n_steps;
    const SystemState last = run_scenario(solver, cfg.run, [&](const SystemState& s, const RobinTrace&) {
        emit(s, s.n == n_steps);
    });
    if (n_steps == 0) emit(last, true);
    write_csv(out / "history.csv", history);
    std::printf("%s: %d steps to t = %g, output in %s\n", cfg.scenario.name.c_str(), n_steps, last.t, out.c_str());
    if (cfg.scenario.has_exact_solution) {
        const ErrorReport e = error_norms(d, last);
        write_csv(out / "errors.csv", error_table({e}));
        for (std::size_t k = 0; k < 6; ++k) std::printf("  %-11s %.6e\n", ErrorReport::kNames[k].data(), e.values()[k]);
    }
    return 0;
}

int cmd_audit(const fs::path& config_path, int steps, unsigned seed) {
    const RunConfig cfg = load_config(config_path);
    if (cfg.run.formulation != BiotFormulation::four_field) throw InputError("the energy audit needs the four-field form");
    if (steps < 1) throw InputError("audit needs at least one step");
    const CoupledSolver solver(homogeneous(cfg.scenario));
    const Trajectory traj = homogeneous_trajectory(solver, steps, seed);
    const EnergyAudit audit = energy_audit(solver.discretization(), traj.states, traj.robin);
    CsvTable t{{"n", "fluid", "poro", "combined", "energy"}, {}};
    for (const auto& r : audit.steps) t.rows.push_back({double(r.n), r.fluid, r.poro, r.combined, r.energy});
    fs::create_directories(cfg.output.dir);
    write_csv(cfg.output.dir / "audit.csv", t);
    std::printf("%s: %d steps, max identity residual %.3e, max E_n/E_0 %.3e\n", cfg.scenario.name.c_str(), steps,
                audit.max_residual(), audit.max_energy_ratio());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoupled Stokes-Biot solver"};
    app.require_subcommand(1);

    double lambda = 1.0;
    std::string conv_mode = "fourfield";
    fs::path conv_out = "out/convergence";
    auto* conv = app.add_subcommand("convergence", "manufactured convergence study, writes rates.csv");
    conv->add_option("--lambda", lambda, "lambda_p");
    conv->add_option("--mode", conv_mode, "fourfield or twofield")->check(CLI::IsMember({"fourfield", "twofield"}));
    conv->add_option("--out", conv_out, "output directory");

    std::string cant_mode = "both";
    std::vector<double> cant_times{1e-5, 2e-5, 5e-5, 1e-4};
    fs::path cant_out = "out/cantilever";
    auto* cant = app.add_subcommand("cantilever", "pressure profiles along the bottom of the cantilever");
    cant->add_option("--mode", cant_mode, "fourfield, twofield or both")
        ->check(CLI::IsMember({"fourfield", "twofield", "both"}));
    cant->add_option("--times", cant_times, "snapshot times");
    cant->add_option("--out", cant_out, "output directory");

    int blood_case = 1;
    bool reference = false;
    fs::path blood_out = "out/bloodflow";
    auto* blood = app.add_subcommand("bloodflow", "pressure pulse in a compliant channel");
    blood->add_option("--case", blood_case, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    blood->add_flag("--reference", reference, "also run the monolithic solver");
    blood->add_option("--out", blood_out, "output directory");

    fs::path run_config;
    auto* run = app.add_subcommand("run", "scenario from a config file");
    run->add_option("config", run_config, "config file")->required();

    fs::path audit_config;
    int audit_steps = 200;
    unsigned audit_seed = 1;
    auto* audit = app.add_subcommand("audit", "energy identities along a homogeneous run");
    audit->add_option("config", audit_config, "config file")->required();
    audit->add_option("--steps", audit_steps, "number of steps");
    audit->add_option("--seed", audit_seed, "seed of the random initial state");

    if (argc <= 1) {
        std::cerr << app.help();
        return 1;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*conv) return cmd_convergence(lambda, conv_mode, conv_out);
        if (*cant) return cmd_cantilever(cant_mode, cant_times, cant_out);
        if (*blood) return cmd_bloodflow(blood_case, reference, blood_out);
        if (*run) return cmd_run(run_config);
        if (*audit) return cmd_audit(audit_config, audit_steps, audit_seed);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
