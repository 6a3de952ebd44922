#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "fpsi/config.hpp"
#include "fpsi/io.hpp"
#include "fpsi/physics/manufactured.hpp"

using namespace fpsi;
namespace fs = std::filesystem;

TEST(Config, CustomScenario) {
    const RunConfig c = parse_config(R"(
[geometry]
scenario = custom
h = 0.25
fluid_rect = 0 2 0 1
poro_rect = 0, 2, -0.5, 0
fluid_tags = interface outlet dirichlet_velocity inlet
poro_tags = dirichlet_velocity outlet interface inlet

[params]
E = 1e4
nu = 0.3
K_xx = 2e-3
K_yy = 1e-3
gravity_y = -9.81

[robin]
L1 = 10
L3 = 0.5

[time]
dt = 0.01
steps = 7
scheme = subiterate
formulation = fourfield
subiteration_tol = 1e-8

[bc]
fluid_velocity = dirichlet_velocity, inlet:y
poro_displacement = dirichlet_velocity
fluid_traction = outlet:-2.5

[output]
dir = results
vtk_every = 3
profile = yes
)");
    const Scenario& s = c.scenario;
    EXPECT_EQ(s.h, 0.25);
    EXPECT_EQ(s.fluid.rect.x1, 2.0);
    EXPECT_EQ(s.poro.rect.y0, -0.5);
    EXPECT_EQ(s.fluid.tags[0], BoundaryTag::interface);
    EXPECT_EQ(s.poro.tags[3], BoundaryTag::inlet);
    EXPECT_NEAR(s.params.mu_p, 1e4 / 2.6, 1e-9);
    EXPECT_EQ(s.params.K(0, 0), 2e-3);
    EXPECT_EQ(s.params.K(0, 1), 0.0);
    EXPECT_EQ(s.params.gravity.y(), -9.81);
    EXPECT_EQ(s.robin.L1, 10.0);
    EXPECT_EQ(s.robin.L2, 1.0);
    EXPECT_EQ(s.time.n_steps, 7);
    EXPECT_EQ(c.run.scheme, Scheme::subiterate);
    EXPECT_EQ(c.run.subiteration_tol, 1e-8);
    ASSERT_EQ(s.fluid_velocity_bc.size(), 2u);
    EXPECT_EQ(s.fluid_velocity_bc[1].components, ComponentMask::y);
    ASSERT_EQ(s.fluid_tractions.size(), 1u);
    EXPECT_EQ(s.fluid_tractions[0].value(0.3), -2.5);
    EXPECT_EQ(c.output.dir, fs::path("results"));
    EXPECT_EQ(c.output.vtk_every, 3);
    EXPECT_TRUE(c.output.profile);
    EXPECT_FALSE(c.output.interface);
}

TEST(Config, CatalogBaseWithOverrides) {
    const RunConfig m = parse_config("[geometry]\nscenario = manufactured\nh = 0.25\n[params]\nlambda_p = 1e6\nmu_f = 2\n");
    EXPECT_EQ(m.scenario.params.lambda_p, 1e6);
    EXPECT_EQ(m.scenario.time.n_steps, 16);
    EXPECT_TRUE(m.scenario.has_exact_solution);
    // the forcing follows the overridden viscosity
    PhysicalParams p = m.scenario.params;
    EXPECT_EQ(m.scenario.forcing.f_f(0.1, Vec2(0.3, 0.4)), forcing(p, 0.1, Vec2(0.3, 0.4)).f_f);

    const RunConfig b = parse_config("[geometry]\nscenario = bloodflow\ncase = 3\n[time]\nfinal_time = 0.001\n");
    EXPECT_EQ(b.scenario.robin.L1, 1e4);
    EXPECT_EQ(b.scenario.time.n_steps, 20);

    const RunConfig c = parse_config("[geometry]\nscenario = cantilever\n[time]\nformulation = twofield\n");
    EXPECT_EQ(c.run.formulation, BiotFormulation::two_field);
    EXPECT_EQ(c.scenario.time.n_steps, 10);
}

TEST(Config, RejectsBadInput) {
    const char* bad[] = {
        "[params]\nviscosity = 1\n",
        "[solver]\nx = 1\n",
        "[geometry]\nscenario = cantilever\nh = abc\n",
        "[geometry]\nscenario = cantilever\n[params]\nE = 1\n",
        "[geometry]\nscenario = cantilever\n[params]\nE = 1e5\nnu = 0.3\nmu_p = 3\n",
        "[geometry]\nscenario = cantilever\n[params]\nK = 1\nK_xx = 2\n",
        "[geometry]\nscenario = cantilever\n[time]\nsteps = 3\nfinal_time = 1\n",
        "[geometry]\nscenario = cantilever\n[time]\nscheme = explicit\n",
        "[geometry]\nscenario = cantilever\n[bc]\nfluid_velocity = wall\n",
        "[geometry]\nscenario = cantilever\n[bc]\nfluid_traction = inlet\n",
        "[geometry]\nscenario = cantilever\n[output]\nprofile = maybe\n",
        "[geometry]\nscenario = custom\nh = 0.1\n",
        "[geometry]\nscenario = cantilever\ncase = 2\n",
        "[geometry]\nscenario = cantilever\n[params]\nalpha = 2\n",
        "[geometry]\nscenario = cantilever\n[time]\nsubiteration_max = 0\n",
        "[geometry]\nscenario = cantilever\nfluid_tags = interface external external\n",
        "[geometry]\nscenario = cantilever\nscenario = bloodflow\n",
        "[geometry\n",
    };
    for (const char* text : bad) EXPECT_THROW(parse_config(text), InputError) << text;
    EXPECT_THROW(load_config("/nonexistent/fpsi.ini"), InputError);
}

TEST(Config, KeyListCoversSections) {
    const auto keys = config_keys();
    for (const char* k : {"geometry.h", "params.lambda_p", "robin.L3", "time.scheme", "bc.poro_traction", "output.vtk_every"})
        EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
}

namespace {

fs::path work_dir() {
    const fs::path d = fs::temp_directory_path() / "fpsi_test_cli";
    fs::create_directories(d);
    return d;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FPSI_CLI) + " " + args + " > " + (work_dir() / "log.txt").string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli(""), 1);
    EXPECT_EQ(run_cli("convergence --frobnicate"), 1);
    EXPECT_EQ(run_cli("bloodflow --case 4"), 1);
    EXPECT_EQ(run_cli("run " + write_file("bad.ini", "[params]\nfoo = 1\n").string()), 1);
    EXPECT_EQ(run_cli("run /nonexistent.ini"), 1);

    const fs::path out = work_dir() / "run_out";
    fs::remove_all(out);
    const fs::path ok = write_file("ok.ini", "[geometry]\nscenario = manufactured\nh = 0.5\n[time]\nfinal_time = 0.5\n"
                                             "[output]\ndir = " + out.string() + "\nvtk_every = 1\ninterface = true\n");
    EXPECT_EQ(run_cli("run " + ok.string()), 0);
    const CsvTable history = read_csv(out / "history.csv");
    EXPECT_EQ(history.rows.size(), 2u);
    EXPECT_TRUE(fs::exists(out / "step2_poro.vtk"));
    EXPECT_TRUE(fs::exists(out / "interface_step1.csv"));
    EXPECT_TRUE(fs::exists(out / "errors.csv"));

    // sub-iteration budget exhausted: solver failure
    const fs::path stuck = write_file("stuck.ini", "[geometry]\nscenario = manufactured\nh = 0.5\n[time]\nfinal_time = 0.25\n"
                                                   "scheme = subiterate\nsubiteration_tol = 1e-15\nsubiteration_max = 1\n"
                                                   "[output]\ndir = " + out.string() + "\n");
    EXPECT_EQ(run_cli("run " + stuck.string()), 2);

    const fs::path audit = write_file("audit.ini", "[geometry]\nscenario = manufactured\nh = 0.5\n[output]\ndir = " +
                                                       out.string() + "\n");
    EXPECT_EQ(run_cli("audit " + audit.string() + " --steps 3"), 0);
    EXPECT_EQ(read_csv(out / "audit.csv").rows.size(), 3u);
}
