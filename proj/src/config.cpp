#include "fpsi/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fpsi/errors.hpp"

namespace fpsi {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::vector<std::string>, std::less<>>& schema() {
    static const std::map<std::string, std::vector<std::string>, std::less<>> keys{
        {"geometry", {"scenario", "case", "h", "fluid_rect", "poro_rect", "fluid_tags", "poro_tags"}},
        {"params",
         {"rho_f", "mu_f", "rho_p", "mu_p", "lambda_p", "alpha", "c0", "K", "K_xx", "K_yy", "K_xy", "gamma",
          "gravity_x", "gravity_y", "spring", "E", "nu"}},
        {"robin", {"L1", "L2", "L3"}},
        {"time", {"dt", "steps", "final_time", "scheme", "formulation", "subiteration_tol", "subiteration_max"}},
        {"bc", {"fluid_velocity", "poro_displacement", "poro_pressure", "fluid_traction", "poro_traction"}},
        {"output", {"dir", "vtk_every", "profile", "interface"}},
    };
    return keys;
}

/// One section with lookups that remember which key was asked for.
class Section {
public:
    Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

    std::optional<std::string> text(const std::string& key) const {
        if (!tree_) return std::nullopt;
        const auto v = tree_->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return boost::trim_copy(*v);
    }

    std::optional<double> number(const std::string& key) const {
        const auto s = text(key);
        if (!s) return std::nullopt;
        return parse(key, *s);
    }

    std::optional<int> integer(const std::string& key) const {
        const auto s = text(key);
        if (!s) return std::nullopt;
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
        if (ec != std::errc() || ptr != s->data() + s->size()) fail(key, "expects an integer, got '" + *s + "'");
        return v;
    }

    std::optional<bool> flag(const std::string& key) const {
        const auto s = text(key);
        if (!s) return std::nullopt;
        const std::string v = boost::to_lower_copy(*s);
        if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
        if (v == "false" || v == "no" || v == "off" || v == "0") return false;
        fail(key, "expects true or false, got '" + *s + "'");
    }

    double parse(const std::string& key, const std::string& s) const {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "expects a number, got '" + s + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw InputError("[" + name_ + "] " + key + " " + what);
    }

private:
    std::string name_;
    const pt::ptree* tree_;
};

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    boost::split(out, s, boost::is_any_of(", \t"), boost::token_compress_on);
    std::erase_if(out, [](const std::string& t) { return t.empty(); });
    return out;
}

Rect parse_rect(const Section& sec, const std::string& key, const std::string& s) {
    const auto t = tokens(s);
    if (t.size() != 4) sec.fail(key, "expects four numbers x0 x1 y0 y1");
    const Rect r{sec.parse(key, t[0]), sec.parse(key, t[1]), sec.parse(key, t[2]), sec.parse(key, t[3])};
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) sec.fail(key, "is an empty rectangle");
    return r;
}

std::array<BoundaryTag, 4> parse_tags(const Section& sec, const std::string& key, const std::string& s) {
    const auto t = tokens(s);
    if (t.size() != 4) sec.fail(key, "expects four tags: bottom right top left");
    std::array<BoundaryTag, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = boundary_tag_from_string(t[i]);
    return out;
}

ComponentMask parse_mask(const Section& sec, const std::string& key, const std::string& s) {
    if (s == "all" || s == "xy") return ComponentMask::all;
    if (s == "x") return ComponentMask::x;
    if (s == "y") return ComponentMask::y;
    sec.fail(key, "has an unknown component mask '" + s + "'");
}

/// "tag[:mask], tag[:mask]"
std::vector<DirichletSpec> parse_dirichlet(const Section& sec, const std::string& key, const std::string& s) {
    std::vector<DirichletSpec> out;
    for (const auto& item : tokens(s)) {
        if (item == "none") continue;
        const auto colon = item.find(':');
        DirichletSpec d{boundary_tag_from_string(item.substr(0, colon)), ComponentMask::all};
        if (colon != std::string::npos) d.components = parse_mask(sec, key, item.substr(colon + 1));
        out.push_back(d);
    }
    return out;
}

/// "tag:value, tag:value", constant in time.
std::vector<NormalTraction> parse_traction(const Section& sec, const std::string& key, const std::string& s) {
    std::vector<NormalTraction> out;
    for (const auto& item : tokens(s)) {
        if (item == "none") continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) sec.fail(key, "expects tag:value items");
        const double v = sec.parse(key, item.substr(colon + 1));
        out.push_back(NormalTraction{boundary_tag_from_string(item.substr(0, colon)), [v](double) { return v; }});
    }
    return out;
}

void check_keys(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) throw InputError("unknown config section [" + section + "]");
        if (!body.data().empty() && body.empty()) throw InputError("config key '" + section + "' outside a section");
        for (const auto& [key, value] : body) {
            (void)value;
            if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
                throw InputError("unknown config key [" + section + "] " + key);
        }
    }
}

void apply_params(const Section& sec, PhysicalParams& p) {
    auto set = [&](const char* key, double& field) {
        if (const auto v = sec.number(key)) field = *v;
    };
    set("rho_f", p.rho_f);
    set("mu_f", p.mu_f);
    set("rho_p", p.rho_p);
    set("alpha", p.alpha);
    set("c0", p.c0);
    set("gamma", p.gamma);
    set("spring", p.spring);
    set("gravity_x", p.gravity.x());
    set("gravity_y", p.gravity.y());

    const auto E = sec.number("E"), nu = sec.number("nu");
    const bool lame = sec.text("mu_p") || sec.text("lambda_p");
    if (E.has_value() != nu.has_value()) sec.fail(E ? "E" : "nu", "needs both E and nu");
    if (E && lame) sec.fail("E", "conflicts with mu_p / lambda_p");
    if (E) {
        if (!(*E > 0.0) || !(*nu > -1.0 && *nu < 0.5)) sec.fail("E", "needs E > 0 and -1 < nu < 0.5");
        const LameParams l = lame_from_young(*E, *nu);
        p.mu_p = l.mu;
        p.lambda_p = l.lambda;
    }
    set("mu_p", p.mu_p);
    set("lambda_p", p.lambda_p);

    const bool tensor = sec.text("K_xx") || sec.text("K_yy") || sec.text("K_xy");
    if (const auto k = sec.number("K")) {
        if (tensor) sec.fail("K", "conflicts with K_xx / K_yy / K_xy");
        p.K = *k * Mat2::Identity();
    } else if (tensor) {
        const double kxx = sec.number("K_xx").value_or(p.K(0, 0));
        const double kyy = sec.number("K_yy").value_or(p.K(1, 1));
        const double kxy = sec.number("K_xy").value_or(p.K(0, 1));
        p.K << kxx, kxy, kxy, kyy;
    }
}

}  // namespace

BiotFormulation formulation_from_string(std::string_view name) {
    if (name == "fourfield" || name == "four_field") return BiotFormulation::four_field;
    if (name == "twofield" || name == "two_field") return BiotFormulation::two_field;
    throw InputError("unknown formulation '" + std::string(name) + "' (fourfield, twofield)");
}

Scheme scheme_from_string(std::string_view name) {
    if (name == "decoupled") return Scheme::decoupled;
    if (name == "monolithic") return Scheme::monolithic;
    if (name == "subiterate") return Scheme::subiterate;
    throw InputError("unknown scheme '" + std::string(name) + "' (decoupled, monolithic, subiterate)");
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& [section, keys] : schema())
        for (const auto& k : keys) out.push_back(section + "." + k);
    return out;
}

RunConfig parse_config(std::string_view text) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    check_keys(tree);
    auto section = [&](const char* name) {
        const auto child = tree.get_child_optional(name);
        return Section(name, child ? &*child : nullptr);
    };
    const Section geo = section("geometry"), prm = section("params"), rob = section("robin"), tim = section("time"),
                  bc = section("bc"), out = section("output");

    RunConfig cfg;
    cfg.run.exec = Execution::parallel;
    Scenario& s = cfg.scenario;

    const std::string kind = geo.text("scenario").value_or("custom");
    const auto h = geo.number("h");
    const auto which = geo.integer("case");
    if (which && kind != "bloodflow") geo.fail("case", "applies to the bloodflow scenario only");
    if (kind == "manufactured") {
        PhysicalParams p;
        apply_params(prm, p);
        s = manufactured_scenario(p, h.value_or(1.0 / 8.0));
    } else {
        if (kind == "cantilever") {
            s = cantilever_scenario();
        } else if (kind == "bloodflow") {
            s = bloodflow_scenario(which.value_or(1));
        } else if (kind == "custom") {
            for (const char* key : {"fluid_rect", "poro_rect", "fluid_tags", "poro_tags"})
                if (!geo.text(key)) geo.fail(key, "is required for a custom scenario");
            s.fluid_velocity_bc = {{BoundaryTag::dirichlet_velocity, ComponentMask::all}};
            s.poro_displacement_bc = {{BoundaryTag::dirichlet_velocity, ComponentMask::all}};
        } else {
            geo.fail("scenario", "must be manufactured, cantilever, bloodflow or custom");
        }
        apply_params(prm, s.params);
        if (h) s.h = *h;
    }

    if (const auto r = geo.text("fluid_rect")) s.fluid.rect = parse_rect(geo, "fluid_rect", *r);
    if (const auto r = geo.text("poro_rect")) s.poro.rect = parse_rect(geo, "poro_rect", *r);
    if (const auto t = geo.text("fluid_tags")) s.fluid.tags = parse_tags(geo, "fluid_tags", *t);
    if (const auto t = geo.text("poro_tags")) s.poro.tags = parse_tags(geo, "poro_tags", *t);

    if (const auto v = rob.number("L1")) s.robin.L1 = *v;
    if (const auto v = rob.number("L2")) s.robin.L2 = *v;
    if (const auto v = rob.number("L3")) s.robin.L3 = *v;

    const auto dt = tim.number("dt");
    const auto steps = tim.integer("steps");
    const auto final_time = tim.number("final_time");
    if (steps && final_time) tim.fail("steps", "conflicts with final_time");
    const double step = dt.value_or(s.time.dt);
    if (steps) {
        s.time = TimeGrid{step, *steps};
    } else if (final_time || dt) {
        s.time = TimeGrid::covering(final_time.value_or(s.time.final_time()), step);
    }
    if (const auto v = tim.text("scheme")) cfg.run.scheme = scheme_from_string(*v);
    if (const auto v = tim.text("formulation")) cfg.run.formulation = formulation_from_string(*v);
    if (const auto v = tim.number("subiteration_tol")) cfg.run.subiteration_tol = *v;
    if (const auto v = tim.integer("subiteration_max")) cfg.run.subiteration_max = *v;
    if (!(cfg.run.subiteration_tol > 0.0)) tim.fail("subiteration_tol", "must be positive");
    if (cfg.run.subiteration_max < 1) tim.fail("subiteration_max", "must be at least 1");

    if (const auto v = bc.text("fluid_velocity")) s.fluid_velocity_bc = parse_dirichlet(bc, "fluid_velocity", *v);
    if (const auto v = bc.text("poro_displacement"))
        s.poro_displacement_bc = parse_dirichlet(bc, "poro_displacement", *v);
    if (const auto v = bc.text("poro_pressure")) s.poro_pressure_bc = parse_dirichlet(bc, "poro_pressure", *v);
    if (const auto v = bc.text("fluid_traction")) s.fluid_tractions = parse_traction(bc, "fluid_traction", *v);
    if (const auto v = bc.text("poro_traction")) s.poro_tractions = parse_traction(bc, "poro_traction", *v);

    if (const auto v = out.text("dir")) {
        if (v->empty()) out.fail("dir", "must not be empty");
        cfg.output.dir = *v;
    }
    if (const auto v = out.integer("vtk_every")) {
        if (*v < 0) out.fail("vtk_every", "must be nonnegative");
        cfg.output.vtk_every = *v;
    }
    if (const auto v = out.flag("profile")) cfg.output.profile = *v;
    if (const auto v = out.flag("interface")) cfg.output.interface = *v;

    s.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace fpsi
