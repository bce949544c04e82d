#include "run_config.hpp"

#include <fstream>

#include <json.hpp>

#include "cwlm/errors.hpp"

namespace cwlm::cli {

using nlohmann::json;

namespace {

BlochVector parse_vec(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + " must be [x,y,z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Axis parse_axis(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    throw ConfigError("axis must be one of x, y, z");
}

void parse_matrix(const json& j, std::array<std::array<double, 2>, 2>& out, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
        !j[1].is_array() || j[1].size() != 2)
        throw ConfigError(std::string(what) + " must be a 2x2 array");
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) out[i][k] = j[i][k].get<double>();
}

PostSpec parse_post(const json& j, const char* what) {
    PostSpec p;
    if (!j.is_object()) throw ConfigError(std::string(what) + " must be an object");
    p.mode = j.value("mode", std::string("pure"));
    if (p.mode != "none" && p.mode != "pure" && p.mode != "faulty")
        throw ConfigError(std::string(what) + ".mode must be none, pure, or faulty");
    if (j.contains("state")) p.state = parse_vec(j.at("state"), "post.state");
    if (j.contains("state2")) p.state2 = parse_vec(j.at("state2"), "post.state2");
    p.p_e = j.value("p_e", 0.0);
    p.frame_correction = j.value("frame_correction", false);
    return p;
}

} // namespace

PostSelection PostSpec::build(const HamiltonianParams& h, double T) const {
    PostSelection post = [&] {
        if (mode == "none") return PostSelection::none();
        if (mode == "pure") return PostSelection::pure(state);
        return PostSelection::faulty(state, state2, p_e);
    }();
    if (frame_correction && mode != "none") post = frame_rotate(post, h, T);
    return post;
}

ChiGrid RunConfig::grid_for(double T) const {
    ChiGrid g = auto_grid(setup, T, grid_n);
    if (chi_max) {
        g.chi_max1 = (*chi_max)[0];
        g.chi_max2 = (*chi_max)[1];
        g.validate();
    }
    return g;
}

RunConfig parse_run_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");

    RunConfig cfg;
    try {
        if (j.contains("scenario")) {
            cfg.setup = scenario(scenario_tag_from_string(j.at("scenario").get<std::string>()));
        } else if (!j.contains("setup")) {
            throw ConfigError("config needs either \"scenario\" or \"setup\"");
        }
        if (j.contains("setup")) {
            const json& s = j.at("setup");
            if (s.contains("kind")) {
                const std::string kind = s.at("kind").get<std::string>();
                if (kind == "ideal")
                    cfg.setup.kind = EquationKind::Ideal;
                else if (kind == "experimental")
                    cfg.setup.kind = EquationKind::Experimental;
                else
                    throw ConfigError("setup.kind must be ideal or experimental");
            }
            if (s.contains("correlators")) {
                const json& c = s.at("correlators");
                if (c.contains("s_qq")) parse_matrix(c.at("s_qq"), cfg.setup.correlators.s_qq, "s_qq");
                if (c.contains("s_qv")) parse_matrix(c.at("s_qv"), cfg.setup.correlators.s_qv, "s_qv");
                if (c.contains("s_vv")) parse_matrix(c.at("s_vv"), cfg.setup.correlators.s_vv, "s_vv");
                if (c.contains("a_vq")) parse_matrix(c.at("a_vq"), cfg.setup.correlators.a_vq, "a_vq");
                if (c.contains("a_qv")) parse_matrix(c.at("a_qv"), cfg.setup.correlators.a_qv, "a_qv");
            }
            if (s.contains("hamiltonian")) {
                const json& h = s.at("hamiltonian");
                cfg.setup.hamiltonian.omega_x = h.value("omega_x", cfg.setup.hamiltonian.omega_x);
                cfg.setup.hamiltonian.omega_y = h.value("omega_y", cfg.setup.hamiltonian.omega_y);
                cfg.setup.hamiltonian.delta = h.value("delta", cfg.setup.hamiltonian.delta);
            }
            if (s.contains("rates")) {
                const json& r = s.at("rates");
                cfg.setup.rates.gamma_d = r.value("gamma_d", cfg.setup.rates.gamma_d);
                cfg.setup.rates.gamma_up = r.value("gamma_up", cfg.setup.rates.gamma_up);
                cfg.setup.rates.gamma_down = r.value("gamma_down", cfg.setup.rates.gamma_down);
            }
            if (s.contains("axes")) {
                const json& a = s.at("axes");
                if (!a.is_array() || a.size() != 2) throw ConfigError("setup.axes must list two axes");
                cfg.setup.axes = {parse_axis(a[0].get<std::string>()),
                                  parse_axis(a[1].get<std::string>())};
            }
            if (s.contains("name")) cfg.setup.name = s.at("name").get<std::string>();
        }

        if (j.contains("prep")) cfg.prep = parse_vec(j.at("prep"), "prep");
        if (j.contains("post")) cfg.post = parse_post(j.at("post"), "post");
        cfg.post_plus.state = {0, 0, 1};
        if (j.contains("post_plus")) cfg.post_plus = parse_post(j.at("post_plus"), "post_plus");
        if (j.contains("post_minus")) cfg.post_minus = parse_post(j.at("post_minus"), "post_minus");

        if (!j.contains("times") || !j.at("times").is_array() || j.at("times").empty())
            throw ConfigError("config needs a non-empty \"times\" array");
        for (const auto& t : j.at("times")) {
            const double T = t.get<double>();
            if (T <= 0.0) throw ConfigError("every T must be positive");
            cfg.times.push_back(T);
        }

        if (j.contains("grid")) {
            const json& g = j.at("grid");
            cfg.grid_n = g.value("n", 512);
            if (g.contains("chi_max")) {
                const json& c = g.at("chi_max");
                if (!c.is_array() || c.size() != 2)
                    throw ConfigError("grid.chi_max must be [chi_max1, chi_max2]");
                cfg.chi_max = {{c[0].get<double>(), c[1].get<double>()}};
            }
        }

        if (j.contains("products")) {
            const json& p = j.at("products");
            cfg.products.joint = p.value("joint", true);
            cfg.products.marginals = p.value("marginals", false);
            cfg.products.moments = p.value("moments", false);
            cfg.products.difference = p.value("difference", false);
            if (p.contains("slices")) {
                SliceRequest s;
                const json& sj = p.at("slices");
                s.cond_axis = sj.value("cond_axis", 1);
                if (s.cond_axis != 1 && s.cond_axis != 2)
                    throw ConfigError("slices.cond_axis must be 1 or 2");
                if (sj.contains("values")) {
                    s.values.clear();
                    for (const auto& v : sj.at("values")) s.values.push_back(v.get<double>());
                }
                cfg.products.slices = s;
            }
            if (p.contains("shifts")) {
                ShiftRequest s;
                const json& sj = p.at("shifts");
                if (sj.contains("axes")) {
                    s.weight_axes.clear();
                    for (const auto& a : sj.at("axes"))
                        s.weight_axes.push_back(parse_axis(a.get<std::string>()));
                }
                s.quasi2d = sj.value("quasi2d", false);
                s.convolve = sj.value("convolve", false);
                s.n = sj.value("n", 1024);
                s.s_max = sj.value("s_max", 2.0);
                s.xi = sj.value("xi", 1e-3);
                const std::string kernel = sj.value("kernel", std::string("gaussian"));
                if (kernel == "gaussian")
                    s.kernel = RegKernel::Gaussian;
                else if (kernel == "lorentzian")
                    s.kernel = RegKernel::Lorentzian;
                else
                    throw ConfigError("shifts.kernel must be gaussian or lorentzian");
                cfg.products.shifts = s;
            }
        }
        if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config schema error: ") + e.what());
    }

    cfg.setup.correlators.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_run_config(text);
}

} // namespace cwlm::cli
