#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "fpsi/io.hpp"

using namespace fpsi;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "fpsi_test_io";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Csv, RoundTripIsBitExact) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CsvTable t{{"a", "b", "c"}, {}};
    t.rows.push_back({1.0 / 3.0, -2.0 / 7.0, 1e-300});
    t.rows.push_back({std::numeric_limits<double>::max(), std::numeric_limits<double>::denorm_min(), -0.0});
    for (int i = 0; i < 100; ++i) t.rows.push_back({u(rng), std::exp(30 * u(rng)), u(rng) * 1e-12});
    write_csv(scratch("t.csv"), t);
    const CsvTable r = read_csv(scratch("t.csv"));
    EXPECT_EQ(r.header, t.header);
    ASSERT_EQ(r.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.rows[i][k], t.rows[i][k]);
}

TEST(Csv, ProfileAndErrors) {
    write_profile_csv(scratch("p.csv"), {0.0, 0.5}, {1.0 / 7.0, 2.0 / 9.0}, "arclength");
    const CsvTable r = read_csv(scratch("p.csv"));
    EXPECT_EQ(r.header, (std::vector<std::string>{"arclength", "value"}));
    EXPECT_EQ(r.rows[1][1], 2.0 / 9.0);
    EXPECT_THROW(write_profile_csv(scratch("q.csv"), {0.0}, {}), InputError);
    std::ofstream(scratch("bad.csv")) << "x,y\n1,abc\n";
    EXPECT_THROW(read_csv(scratch("bad.csv")), InputError);
    std::ofstream(scratch("ragged.csv")) << "x,y\n1\n";
    EXPECT_THROW(read_csv(scratch("ragged.csv")), InputError);
    EXPECT_THROW(read_csv(scratch("missing.csv")), InputError);
}

TEST(Vtk, RoundTripAndP1Midpoints) {
    const auto mesh = std::make_shared<Mesh2D>(build_rect_mesh(Rect{0, 1, 0, 1}, 0.5, {}));
    const FeSpace P2(mesh, ElementKind::P2_scalar), P1(mesh, ElementKind::P1_scalar), V(mesh, ElementKind::P2_vector);
    const Eigen::VectorXd s = P2.interpolate([](const Vec2& x) { return x.x() / 3.0 + x.y() * x.y(); });
    const Eigen::VectorXd q = P1.interpolate([](const Vec2& x) { return 2.0 * x.x() - x.y() / 7.0; });
    const Eigen::VectorXd v = V.interpolate([](const Vec2& x) { return Vec2(x.y() / 3.0, -x.x()); });
    VtkWriter w(P2);
    w.add_scalar("s", P2, s);
    w.add_scalar("q", P1, q);
    w.add_vector("v", V, v);
    w.write(scratch("a.vtk"), "test");
    const VtkData r = read_vtk(scratch("a.vtk"));
    const VtkData& d = w.data();
    ASSERT_EQ(r.points.size(), d.points.size());
    for (std::size_t i = 0; i < d.points.size(); ++i) EXPECT_EQ(r.points[i], d.points[i]);
    EXPECT_EQ(r.cells, d.cells);
    EXPECT_EQ(r.scalars, d.scalars);
    EXPECT_EQ(r.vectors.at("v"), d.vectors.at("v"));
    // a linear P1 field is reproduced at the midpoints
    for (int i = 0; i < P2.scalar_dof_count(); ++i) {
        const Vec2& x = P2.node_coord(i);
        EXPECT_NEAR(d.scalars.at("q")[static_cast<std::size_t>(i)], 2.0 * x.x() - x.y() / 7.0, 1e-15);
    }
    EXPECT_THROW(w.add_scalar("bad", V, v), InputError);
    EXPECT_THROW(w.add_scalar("short", P2, q), InputError);
    EXPECT_THROW(VtkWriter{P1}, InputError);

    std::ofstream(scratch("junk.vtk")) << "not vtk\n";
    EXPECT_THROW(read_vtk(scratch("junk.vtk")), InputError);
}

TEST(Vtk, StateFilesPerDomain) {
    const CoupledSolver solver(manufactured_scenario(1.0, 0.5));
    auto [s, r] = solver.initialize();
    const fs::path dir = scratch("state");
    write_state_vtk(solver.discretization(), s, dir, "s0");
    const VtkData f = read_vtk(dir / "s0_fluid.vtk"), p = read_vtk(dir / "s0_poro.vtk");
    EXPECT_TRUE(f.vectors.count("v_f") && f.scalars.count("p_f"));
    EXPECT_TRUE(p.vectors.count("u_p") && p.vectors.count("v_p") && p.scalars.count("p_p") && p.scalars.count("beta_p"));
    EXPECT_EQ(static_cast<int>(p.points.size()), solver.discretization().pp.scalar_dof_count());
}
