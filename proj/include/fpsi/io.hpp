#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fpsi/coupling.hpp"

namespace fpsi {

/// Numeric table with a header row. Values are written with 17 significant
/// digits, so a write/read cycle is exact.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

void write_profile_csv(const std::filesystem::path& path, const std::vector<double>& x, const std::vector<double>& value,
                       const std::string& x_name = "x");

/// Point data of a legacy ASCII VTK file on the P2 node set of a mesh.
struct VtkData {
    std::vector<Vec2> points;
    std::vector<std::array<int, 6>> cells;  // quadratic triangles
    std::map<std::string, std::vector<double>> scalars;
    std::map<std::string, std::vector<Vec2>> vectors;
};

/// Fields given on `space` (P2 scalar or vector) or on a P1 space of the same mesh
/// (interpolated linearly to the midpoints).
class VtkWriter {
public:
    explicit VtkWriter(const FeSpace& p2_scalar);
    void add_scalar(const std::string& name, const FeSpace& space, const Eigen::VectorXd& coeffs);
    void add_vector(const std::string& name, const FeSpace& space, const Eigen::VectorXd& coeffs);
    const VtkData& data() const { return data_; }
    void write(const std::filesystem::path& path, const std::string& title = "fpsi") const;

private:
    const FeSpace& space_;
    VtkData data_;
};

VtkData read_vtk(const std::filesystem::path& path);

/// <stem>_fluid.vtk and <stem>_poro.vtk in `dir`.
void write_state_vtk(const Discretization& d, const SystemState& s, const std::filesystem::path& dir,
                     const std::string& stem);

}  // namespace fpsi
