#include "epml/solver/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace epml {

using nlohmann::json;

void ScenarioConfig::validate() const {
    if (raster) {
        // geometry and materials come from the raster file
        if (pml_y) throw ConfigError("config: raster mode supports x-PML only");
        if (interface_curve) {
            throw ConfigError("config: raster mode has no interface curve");
        }
        if (!(time.t_final > 0.0)) throw ConfigError("config: t_final must be > 0");
        if (!(time.output_dt > 0.0)) {
            throw ConfigError("config: output_dt must be > 0");
        }
        return;
    }
    if (!(x_max > x_min)) throw ConfigError("config: x_max must exceed x_min");
    if (nx < 12) throw ConfigError("config: nx must be >= 12");
    if (layers.empty()) throw ConfigError("config: at least one layer");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        if (!(l.y_max > l.y_min)) throw ConfigError("config: layer y-extent");
        if (l.n < 12) throw ConfigError("config: layer n must be >= 12");
        if (!l.material) {
            throw ConfigError("config: layer needs a material (or raster mode)");
        }
        if (i + 1 < layers.size() &&
            std::abs(layers[i + 1].y_max - l.y_min) > 1e-12 * (l.y_max - l.y_min)) {
            throw ConfigError("config: layers must stack contiguously, top first");
        }
    }
    const bool px = left == BoundaryKind::Periodic;
    if (px != (right == BoundaryKind::Periodic)) {
        throw ConfigError("config: periodic x requires both left and right");
    }
    const bool py = top == BoundaryKind::Periodic;
    if (py != (bottom == BoundaryKind::Periodic)) {
        throw ConfigError("config: periodic y requires both top and bottom");
    }
    if (py && layers.size() != 1) {
        throw ConfigError("config: periodic y only for a single layer");
    }
    if (px && pml_x) throw ConfigError("config: PML in a periodic direction");
    if (py && pml_y) throw ConfigError("config: PML in a periodic direction");
    if (interface_curve && layers.size() < 2) {
        throw ConfigError("config: interface_curve needs two layers");
    }
    if (interface_curve && pml_y) {
        throw ConfigError("config: curved interface with y-PML not supported");
    }
    if (!(time.t_final > 0.0)) throw ConfigError("config: t_final must be > 0");
    if (!(time.output_dt > 0.0)) throw ConfigError("config: output_dt must be > 0");
    if (!(time.cfl > 0.0)) throw ConfigError("config: cfl must be > 0");
}

namespace {

BoundaryKind parse_kind(const std::string& s) {
    if (s == "characteristic") return BoundaryKind::Characteristic;
    if (s == "traction-free") return BoundaryKind::TractionFree;
    if (s == "periodic") return BoundaryKind::Periodic;
    throw ConfigError("config: unknown boundary kind '" + s + "'");
}

std::string kind_name(BoundaryKind k) {
    switch (k) {
        case BoundaryKind::Characteristic: return "characteristic";
        case BoundaryKind::TractionFree: return "traction-free";
        case BoundaryKind::Periodic: return "periodic";
    }
    return "?";
}

MaterialParams parse_material(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "isotropic") {
        return MaterialParams::isotropic(j.at("rho").get<double>(),
                                         j.at("mu").get<double>(),
                                         j.at("lambda").get<double>());
    }
    if (type == "orthotropic") {
        return MaterialParams::orthotropic(
            j.at("rho").get<double>(), j.at("c11").get<double>(),
            j.at("c22").get<double>(), j.at("c33").get<double>(),
            j.at("c12").get<double>());
    }
    throw ConfigError("config: unknown material type '" + type + "'");
}

json material_to_json(const MaterialParams& m) {
    if (m.is_isotropic()) {
        return json{{"type", "isotropic"},
                    {"rho", m.rho()},
                    {"mu", m.mu()},
                    {"lambda", m.lambda()}};
    }
    return json{{"type", "orthotropic"}, {"rho", m.rho()}, {"c11", m.c11()},
                {"c22", m.c22()},        {"c33", m.c33()}, {"c12", m.c12()}};
}

PmlDirectionSpec parse_pml(const json& j) {
    PmlDirectionSpec p;
    for (const auto& side : j.at("sides")) {
        const std::string s = side.get<std::string>();
        if (s == "left" || s == "bottom") p.low_side = true;
        else if (s == "right" || s == "top") p.high_side = true;
        else throw ConfigError("config: unknown PML side '" + s + "'");
    }
    p.width_fraction = j.value("width_fraction", 0.0);
    p.width = j.value("width", 0.0);
    if (p.width_fraction <= 0.0 && p.width <= 0.0) {
        throw ConfigError("config: PML needs width or width_fraction");
    }
    p.ref = j.value("ref", 1e-4);
    p.sigma0_override = j.value("sigma0", -1.0);
    return p;
}

json pml_to_json(const PmlDirectionSpec& p, bool is_x) {
    json sides = json::array();
    if (p.low_side) sides.push_back(is_x ? "left" : "bottom");
    if (p.high_side) sides.push_back(is_x ? "right" : "top");
    json j{{"sides", sides}, {"ref", p.ref}};
    if (p.width_fraction > 0.0) j["width_fraction"] = p.width_fraction;
    if (p.width > 0.0) j["width"] = p.width;
    if (p.sigma0_override >= 0.0) j["sigma0"] = p.sigma0_override;
    return j;
}

}  // namespace

ScenarioConfig load_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    try {
        ScenarioConfig cfg;
        cfg.name = j.value("name", std::string("run"));
        const auto& jx = j.at("x");
        cfg.x_min = jx.at("min").get<double>();
        cfg.x_max = jx.at("max").get<double>();
        cfg.nx = jx.at("n").get<int>();
        for (const auto& jl : j.at("layers")) {
            LayerSpec l;
            l.y_min = jl.at("y_min").get<double>();
            l.y_max = jl.at("y_max").get<double>();
            l.n = jl.at("n").get<int>();
            if (jl.contains("material")) l.material = parse_material(jl["material"]);
            cfg.layers.push_back(l);
        }
        if (j.contains("boundaries")) {
            const auto& jb = j["boundaries"];
            cfg.left = parse_kind(jb.value("left", "characteristic"));
            cfg.right = parse_kind(jb.value("right", "characteristic"));
            cfg.top = parse_kind(jb.value("top", "characteristic"));
            cfg.bottom = parse_kind(jb.value("bottom", "characteristic"));
        }
        if (j.contains("pml")) {
            if (j["pml"].contains("x")) cfg.pml_x = parse_pml(j["pml"]["x"]);
            if (j["pml"].contains("y")) cfg.pml_y = parse_pml(j["pml"]["y"]);
        }
        cfg.alpha_ratio = j.value("alpha_ratio", 0.05);
        cfg.alpha_override = j.value("alpha", -1.0);
        if (j.contains("initial") && j["initial"].value("type", "zero") == "gaussian") {
            GaussianInitSpec g;
            g.center = {j["initial"].at("center")[0].get<double>(),
                        j["initial"].at("center")[1].get<double>()};
            g.width_coefficient = j["initial"].value("width", 20.0);
            g.amplitude = j["initial"].value("amplitude", 1.0);
            cfg.gaussian_init = g;
        }
        if (j.contains("source")) {
            MomentSourceSpec s;
            const auto& js = j["source"];
            s.m0 = js.value("m0", 1000.0);
            s.t0 = js.value("t0", 0.215);
            s.tau = js.value("tau", 0.15);
            s.s_factor = js.value("s_factor", 0.5);
            for (const auto& loc : js.at("locations")) {
                s.locations.push_back({loc[0].get<double>(), loc[1].get<double>()});
            }
            cfg.moment_source = s;
        }
        if (j.contains("interface_curve")) {
            InterfaceCurveSpec c;
            const auto& jc = j["interface_curve"];
            c.amplitude = jc.at("amplitude").get<double>();
            c.center = jc.at("center").get<double>();
            c.width = jc.at("width").get<double>();
            cfg.interface_curve = c;
        }
        if (j.contains("raster")) {
            RasterSpec r;
            r.path = j["raster"].at("path").get<std::string>();
            r.stride = j["raster"].value("stride", 1);
            if (j["raster"].contains("split_row") && !j["raster"]["split_row"].is_null()) {
                r.split_row = j["raster"]["split_row"].get<int>();
            }
            cfg.raster = r;
        }
        if (j.contains("sat")) {
            cfg.sat.tau0 = j["sat"].value("tau0", 1.0);
            cfg.sat.gamma0 = j["sat"].value("gamma0", 0.5);
        }
        if (j.contains("dissipation")) {
            cfg.dissipation.epsilon = j["dissipation"].value("epsilon", 0.05);
            cfg.grid_dissipation.epsilon =
                j["dissipation"].value("grid_epsilon", 0.004);
        }
        const auto& jt = j.at("time");
        cfg.time.t_final = jt.at("t_final").get<double>();
        cfg.time.cfl = jt.value("cfl", 0.25);
        cfg.time.dt_override = jt.value("dt", -1.0);
        cfg.time.output_dt = jt.value("output_dt", 0.1);
        if (j.contains("snapshots")) {
            for (const auto& t : j["snapshots"]) {
                cfg.snapshot_times.push_back(t.get<double>());
            }
        }
        cfg.strict_geometric_check = j.value("strict_geometric_check", true);
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config_json(ss.str());
}

std::string config_to_json(const ScenarioConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["x"] = {{"min", cfg.x_min}, {"max", cfg.x_max}, {"n", cfg.nx}};
    j["layers"] = json::array();
    for (const auto& l : cfg.layers) {
        json jl{{"y_min", l.y_min}, {"y_max", l.y_max}, {"n", l.n}};
        if (l.material) jl["material"] = material_to_json(*l.material);
        j["layers"].push_back(jl);
    }
    j["boundaries"] = {{"left", kind_name(cfg.left)},
                       {"right", kind_name(cfg.right)},
                       {"top", kind_name(cfg.top)},
                       {"bottom", kind_name(cfg.bottom)}};
    if (cfg.pml_x || cfg.pml_y) {
        j["pml"] = json::object();
        if (cfg.pml_x) j["pml"]["x"] = pml_to_json(*cfg.pml_x, true);
        if (cfg.pml_y) j["pml"]["y"] = pml_to_json(*cfg.pml_y, false);
    }
    j["alpha_ratio"] = cfg.alpha_ratio;
    if (cfg.alpha_override >= 0.0) j["alpha"] = cfg.alpha_override;
    if (cfg.gaussian_init) {
        j["initial"] = {{"type", "gaussian"},
                        {"center", {cfg.gaussian_init->center[0],
                                    cfg.gaussian_init->center[1]}},
                        {"width", cfg.gaussian_init->width_coefficient},
                        {"amplitude", cfg.gaussian_init->amplitude}};
    }
    if (cfg.moment_source) {
        json locs = json::array();
        for (const auto& l : cfg.moment_source->locations) {
            locs.push_back({l[0], l[1]});
        }
        j["source"] = {{"m0", cfg.moment_source->m0},
                       {"t0", cfg.moment_source->t0},
                       {"tau", cfg.moment_source->tau},
                       {"s_factor", cfg.moment_source->s_factor},
                       {"locations", locs}};
    }
    if (cfg.interface_curve) {
        j["interface_curve"] = {{"amplitude", cfg.interface_curve->amplitude},
                                {"center", cfg.interface_curve->center},
                                {"width", cfg.interface_curve->width}};
    }
    if (cfg.raster) {
        j["raster"] = {{"path", cfg.raster->path}, {"stride", cfg.raster->stride}};
        if (cfg.raster->split_row) j["raster"]["split_row"] = *cfg.raster->split_row;
    }
    j["sat"] = {{"tau0", cfg.sat.tau0}, {"gamma0", cfg.sat.gamma0}};
    j["dissipation"] = {{"epsilon", cfg.dissipation.epsilon},
                        {"grid_epsilon", cfg.grid_dissipation.epsilon}};
    j["time"] = {{"t_final", cfg.time.t_final},
                 {"cfl", cfg.time.cfl},
                 {"output_dt", cfg.time.output_dt}};
    if (cfg.time.dt_override > 0.0) j["time"]["dt"] = cfg.time.dt_override;
    if (!cfg.snapshot_times.empty()) j["snapshots"] = cfg.snapshot_times;
    j["strict_geometric_check"] = cfg.strict_geometric_check;
    return j.dump(2);
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    const std::string s = config_to_json(cfg);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace epml
