#include "fpsi/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

constexpr int kDigits = 17;
constexpr int kVtkQuadraticTriangle = 22;

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << std::setprecision(kDigits);
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    return in;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\r')) --e;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e) throw InputError(path.string() + ": bad number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw InputError("CSV row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw InputError(path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    t.header = split(line, ',');
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::vector<double> row;
        for (const auto& cell : split(line, ',')) row.push_back(parse_double(cell, path));
        if (row.size() != t.header.size()) throw InputError(path.string() + ": row width differs from header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_profile_csv(const std::filesystem::path& path, const std::vector<double>& x, const std::vector<double>& value,
                       const std::string& x_name) {
    if (x.size() != value.size()) throw InputError("profile coordinates and values differ in length");
    CsvTable t{{x_name, "value"}, {}};
    for (std::size_t i = 0; i < x.size(); ++i) t.rows.push_back({x[i], value[i]});
    write_csv(path, t);
}

VtkWriter::VtkWriter(const FeSpace& p2) : space_(p2) {
    if (p2.kind() != ElementKind::P2_scalar) throw InputError("VTK output lives on a P2 scalar node set");
    for (int i = 0; i < p2.scalar_dof_count(); ++i) data_.points.push_back(p2.node_coord(i));
    for (int t = 0; t < p2.mesh().triangle_count(); ++t) data_.cells.push_back(p2.cell_nodes(t));
}

namespace {

std::vector<double> to_p2_nodes(const FeSpace& target, const FeSpace& space, const Eigen::VectorXd& c, int component) {
    if (&space.mesh() != &target.mesh())
        throw InputError("VTK field lives on another mesh");
    if (c.size() != space.dof_count()) throw InputError("VTK field has the wrong length");
    const int n = target.scalar_dof_count();
    std::vector<double> out(static_cast<std::size_t>(n));
    if (space.degree() == 2) {
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = c[space.dof(i, component)];
        return out;
    }
    const Mesh2D& m = target.mesh();
    const int nv = m.vertex_count();
    for (int i = 0; i < nv; ++i) out[static_cast<std::size_t>(i)] = c[i];
    for (int e = 0; e < m.edge_count(); ++e) {
        const auto& v = m.edges[static_cast<std::size_t>(e)].v;
        out[static_cast<std::size_t>(nv + e)] = 0.5 * (c[v[0]] + c[v[1]]);
    }
    return out;
}

}  // namespace

void VtkWriter::add_scalar(const std::string& name, const FeSpace& space, const Eigen::VectorXd& coeffs) {
    if (space.is_vector()) throw InputError("scalar VTK field from a vector space");
    data_.scalars[name] = to_p2_nodes(space_, space, coeffs, 0);
}

void VtkWriter::add_vector(const std::string& name, const FeSpace& space, const Eigen::VectorXd& coeffs) {
    if (!space.is_vector()) throw InputError("vector VTK field from a scalar space");
    const auto x = to_p2_nodes(space_, space, coeffs, 0);
    const auto y = to_p2_nodes(space_, space, coeffs, 1);
    auto& out = data_.vectors[name];
    out.clear();
    for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(x[i], y[i]);
}

void VtkWriter::write(const std::filesystem::path& path, const std::string& title) const {
    std::ofstream out = open_out(path);
    const std::size_t np = data_.points.size(), nc = data_.cells.size();
    out << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << np << " double\n";
    for (const auto& p : data_.points) out << p.x() << ' ' << p.y() << " 0\n";
    out << "CELLS " << nc << ' ' << 7 * nc << '\n';
    for (const auto& c : data_.cells) {
        out << 6;
        for (int k : c) out << ' ' << k;
        out << '\n';
    }
    out << "CELL_TYPES " << nc << '\n';
    for (std::size_t i = 0; i < nc; ++i) out << kVtkQuadraticTriangle << '\n';
    out << "POINT_DATA " << np << '\n';
    for (const auto& [name, v] : data_.scalars) {
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (double x : v) out << x << '\n';
    }
    for (const auto& [name, v] : data_.vectors) {
        out << "VECTORS " << name << " double\n";
        for (const auto& x : v) out << x.x() << ' ' << x.y() << " 0\n";
    }
}

void write_state_vtk(const Discretization& d, const SystemState& s, const std::filesystem::path& dir,
                     const std::string& stem) {
    const FeSpace fluid_nodes(d.mesh_f, ElementKind::P2_scalar);
    VtkWriter fluid(fluid_nodes);
    fluid.add_vector("v_f", d.vf, s.v_f);
    fluid.add_scalar("p_f", d.qf, s.p_f);
    fluid.write(dir / (stem + "_fluid.vtk"), "fluid t=" + std::to_string(s.t));

    VtkWriter poro(d.pp);
    poro.add_vector("v_p", d.vp, s.v_p);
    poro.add_vector("u_p", d.vp, s.u_p);
    poro.add_scalar("p_p", d.pp, s.p_p);
    if (s.beta_p.size() == d.bp.dof_count()) poro.add_scalar("beta_p", d.bp, s.beta_p);
    poro.write(dir / (stem + "_poro.vtk"), "poroelastic t=" + std::to_string(s.t));
}

VtkData read_vtk(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("# vtk DataFile", 0) != 0) throw InputError(path.string() + ": not a legacy VTK file");
    std::getline(in, line);  // title
    std::string word;
    in >> word;
    if (word != "ASCII") throw InputError(path.string() + ": only ASCII VTK is supported");
    VtkData d;
    auto number = [&]() {
        std::string s;
        if (!(in >> s)) throw InputError(path.string() + ": truncated file");
        return parse_double(s, path);
    };
    std::size_t np = 0;
    while (in >> word) {
        if (word == "DATASET") {
            in >> word;
            if (word != "UNSTRUCTURED_GRID") throw InputError(path.string() + ": unsupported dataset " + word);
        } else if (word == "POINTS") {
            in >> np >> word;
            d.points.resize(np);
            for (auto& p : d.points) {
                p.x() = number();
                p.y() = number();
                number();
            }
        } else if (word == "CELLS") {
            std::size_t nc = 0, total = 0;
            in >> nc >> total;
            d.cells.resize(nc);
            for (auto& c : d.cells) {
                int k = 0;
                in >> k;
                if (k != 6) throw InputError(path.string() + ": expected six-node cells");
                for (int& v : c) in >> v;
            }
        } else if (word == "CELL_TYPES") {
            std::size_t nc = 0;
            in >> nc;
            for (std::size_t i = 0; i < nc; ++i) in >> word;
        } else if (word == "POINT_DATA") {
            in >> np;
        } else if (word == "SCALARS") {
            std::string name, type;
            int ncomp = 1;
            in >> name >> type >> ncomp;
            in >> word >> word;  // LOOKUP_TABLE default
            auto& v = d.scalars[name];
            v.resize(np);
            for (double& x : v) x = number();
        } else if (word == "VECTORS") {
            std::string name, type;
            in >> name >> type;
            auto& v = d.vectors[name];
            v.resize(np);
            for (auto& x : v) {
                x.x() = number();
                x.y() = number();
                number();
            }
        } else {
            throw InputError(path.string() + ": unexpected keyword " + word);
        }
        if (!in) throw InputError(path.string() + ": malformed VTK");
    }
    return d;
}

}  // namespace fpsi
