#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "csv.hpp"
#include "cwlm/detector.hpp"
#include "cwlm/errors.hpp"
#include "cwlm/liouvillian.hpp"
#include "cwlm/shifts.hpp"
#include "svg.hpp"

namespace cwlm::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string t_tag(double T) { return "T" + format_value(T); }

json report_row(const InequalityReport& r) {
    return json{{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"pass", r.pass}};
}

json moments_json(const JointMoments& m) {
    return json{{"mean", {m.mean[0], m.mean[1]}},
                {"covariance",
                 {{m.covariance[0][0], m.covariance[0][1]},
                  {m.covariance[1][0], m.covariance[1][1]}}},
                {"skewness", {m.skewness[0], m.skewness[1]}}};
}

void write_meta(const fs::path& path, const RunConfig& cfg, const JointDistribution& jd) {
    json j{{"scenario", jd.meta.scenario},
           {"equation", to_string(jd.meta.kind)},
           {"T", jd.meta.T},
           {"prep", {cfg.prep.x, cfg.prep.y, cfg.prep.z}},
           {"post", jd.meta.post},
           {"mass", jd.mass},
           {"post_probability", jd.post_probability},
           {"n", {jd.o1.size(), jd.o2.size()}},
           {"d_o", {jd.d_o1, jd.d_o2}},
           {"max_imag_residual", jd.max_imag_residual}};
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

std::string slice_stem(int cond_axis_1based, double y) {
    const char* free_name = cond_axis_1based == 1 ? "o2" : "o1";
    const char* cond_name = cond_axis_1based == 1 ? "o1" : "o2";
    return std::string("slice_") + free_name + "_given_" + cond_name + "_" + format_value(y);
}

/// Least-squares slope through the origin of certainty vs output, restricted
/// to defined entries within two standard deviations of the reference slice.
struct CertaintyFit {
    double beta = std::nan("");
    double residual = std::nan("");
};

CertaintyFit fit_certainty_slope(const Distribution1d& axis_ref,
                                 const std::vector<double>& certainty) {
    const Moments1d m = moments(axis_ref);
    const double window = 2.0 * std::sqrt(m.variance);
    double sxy = 0.0, sxx = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < axis_ref.o.size(); ++k) {
        const double o = axis_ref.o[k];
        if (!std::isfinite(certainty[k]) || std::abs(o - m.mean) > window) continue;
        sxy += certainty[k] * o;
        sxx += o * o;
        ++count;
    }
    CertaintyFit fit;
    if (count < 3 || sxx == 0.0) return fit;
    fit.beta = sxy / sxx;
    double ss = 0.0;
    for (std::size_t k = 0; k < axis_ref.o.size(); ++k) {
        const double o = axis_ref.o[k];
        if (!std::isfinite(certainty[k]) || std::abs(o - m.mean) > window) continue;
        const double r = certainty[k] - fit.beta * o;
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / count);
    return fit;
}

} // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    ValidityReport rep;
    try {
        rep = validate_correlators(cfg.setup.correlators);
    } catch (const ConfigError& e) {
        out << "invalid configuration: " << e.what() << "\n";
        return 2;
    }
    out << std::left << std::setw(22) << "check" << std::right << std::setw(16) << "lhs"
        << std::setw(16) << "rhs"
        << "  verdict\n";
    for (const auto& row : rep.rows) {
        out << std::left << std::setw(22) << row.name << std::right << std::setw(16)
            << format_value(row.lhs) << std::setw(16) << format_value(row.rhs) << "  "
            << (row.pass ? "pass" : "FAIL") << "\n";
    }
    out << (rep.pass ? "all checks passed" : "validity violation") << "\n";
    return rep.pass ? 0 : 2;
}

namespace {

struct RunRecord {
    double T = 0.0;
    std::string status = "ok";
    std::string error;
};

/// Everything one measurement duration produces.
void simulate_one_T(const RunConfig& cfg, const Options& opt, const fs::path& dir, double T,
                    json& products) {
    const DensityMatrix rho_i = bloch_to_density(cfg.prep);
    const ChiGrid grid = cfg.grid_for(T);
    const PostSelection post = cfg.post.build(cfg.setup.hamiltonian, T);
    const JointDistribution jd = joint_distribution(cfg.setup, rho_i, post, T, grid);
    const std::string tag = t_tag(T);

    if (cfg.products.joint) {
        write_joint_csv(dir / ("joint_" + tag + ".csv"), jd);
        write_meta(dir / ("joint_" + tag + ".meta.json"), cfg, jd);
        products.push_back("joint_" + tag + ".csv");
        if (opt.plots)
            write_heatmap_svg(dir / ("joint_" + tag + ".svg"), jd.o1, jd.o2, jd.values,
                              "P(o1, o2), T = " + format_value(T));
    }
    if (cfg.products.marginals) {
        const Distribution1d m1 = marginal(jd, 0);
        const Distribution1d m2 = marginal(jd, 1);
        write_series_csv(dir / ("marginal_o1_" + tag + ".csv"), m1.o, m1.p, "o", "p");
        write_series_csv(dir / ("marginal_o2_" + tag + ".csv"), m2.o, m2.p, "o", "p");
        products.push_back("marginal_o1_" + tag + ".csv");
        products.push_back("marginal_o2_" + tag + ".csv");
        if (opt.plots)
            write_lines_svg(dir / ("marginals_" + tag + ".svg"),
                            {{"P(o1)", m1.o, m1.p}, {"P(o2)", m2.o, m2.p}},
                            "marginals, T = " + format_value(T));
    }
    if (cfg.products.moments) {
        std::ofstream mo(dir / ("moments_" + tag + ".json"));
        mo << moments_json(moments(jd)).dump(2) << "\n";
        products.push_back("moments_" + tag + ".json");
    }
    if (cfg.products.slices) {
        const SliceRequest& req = *cfg.products.slices;
        std::vector<LineSeries> lines;
        for (double y : req.values) {
            const ConditionalSlice s = conditional_slice(jd, req.cond_axis - 1, y);
            const std::string stem = slice_stem(req.cond_axis, y) + "_" + tag;
            write_series_csv(dir / (stem + ".csv"), s.dist.o, s.dist.p, "o", "p");
            products.push_back(stem + ".csv");
            lines.push_back({"y = " + format_value(y), s.dist.o, s.dist.p});
        }
        if (opt.plots && !lines.empty())
            write_lines_svg(dir / ("slices_" + tag + ".svg"), lines,
                            "conditional slices, T = " + format_value(T));
    }
    if (cfg.products.difference) {
        const PostSelection plus = cfg.post_plus.build(cfg.setup.hamiltonian, T);
        const PostSelection minus = cfg.post_minus.build(cfg.setup.hamiltonian, T);
        const JointDistribution jp = joint_distribution(cfg.setup, rho_i, plus, T, grid);
        const JointDistribution jm = joint_distribution(cfg.setup, rho_i, minus, T, grid);
        const DifferenceGrid dg = difference_and_certainty(jp, jm);
        write_grid_csv(dir / ("difference_" + tag + ".csv"), jp.o1, jp.o2, dg.difference, "d");
        write_grid_csv(dir / ("certainty_" + tag + ".csv"), jp.o1, jp.o2, dg.certainty, "c");
        products.push_back("difference_" + tag + ".csv");
        products.push_back("certainty_" + tag + ".csv");
        if (opt.plots) {
            write_heatmap_svg(dir / ("difference_" + tag + ".svg"), jp.o1, jp.o2, dg.difference,
                              "P+ - P-, T = " + format_value(T), true);
            write_heatmap_svg(dir / ("certainty_" + tag + ".svg"), jp.o1, jp.o2, dg.certainty,
                              "certainty, T = " + format_value(T), true);
        }
        if (cfg.products.slices) {
            const SliceRequest& req = *cfg.products.slices;
            for (double y : req.values) {
                const ConditionalSlice sp = conditional_slice(jp, req.cond_axis - 1, y);
                const ConditionalSlice sm = conditional_slice(jm, req.cond_axis - 1, y);
                const DifferenceGrid dc = difference_and_certainty(sp.dist, sm.dist);
                const std::string stem = "certainty_" + slice_stem(req.cond_axis, y) + "_" + tag;
                write_series_csv(dir / (stem + ".csv"), sp.dist.o, dc.certainty, "o", "c");
                products.push_back(stem + ".csv");
            }
        }
    }
    if (cfg.products.shifts && cfg.products.shifts->convolve) {
        const ShiftRequest& req = *cfg.products.shifts;
        PolarizationPair pp{cfg.prep, cfg.post.build(cfg.setup.hamiltonian, 0.0).polarization()};
        const ShiftMeasure sm = shift_quasi_2d(pp, {req.n, req.s_max}, req.xi, req.kernel);
        const DerivedDetectorQuantities d = cfg.setup.derived();
        const ShiftConvolution conv = convolve_with_gaussian(sm, std::sqrt(d.sigma2(0, T)),
                                                             std::sqrt(d.sigma2(1, T)));
        std::vector<double> s_axis(static_cast<std::size_t>(req.n));
        for (int k = 0; k < req.n; ++k) s_axis[k] = sm.s(k);
        write_grid_csv(dir / ("shift_convolution_" + tag + ".csv"), s_axis, s_axis, conv.values,
                       "p");
        products.push_back("shift_convolution_" + tag + ".csv");
    }
}

/// T-independent shift products (delta weights, regularized 2D measure).
void emit_shift_products(const RunConfig& cfg, const Options& opt, const fs::path& dir,
                         json& products) {
    if (!cfg.products.shifts) return;
    const ShiftRequest& req = *cfg.products.shifts;
    const PolarizationPair pp{cfg.prep,
                              cfg.post.build(cfg.setup.hamiltonian, 0.0).polarization()};
    for (Axis axis : req.weight_axes) {
        const ShiftWeights w = shift_weights_1d(pp, axis);
        const std::string name = std::string("shift_weights_") + to_string(axis) + ".csv";
        write_series_csv(dir / name, {-1.0, 0.0, 1.0}, {w.w_minus, w.w_zero, w.w_plus}, "s", "w");
        products.push_back(name);
    }
    if (req.quasi2d) {
        const ShiftMeasure sm = shift_quasi_2d(pp, {req.n, req.s_max}, req.xi, req.kernel);
        std::vector<double> s_axis(static_cast<std::size_t>(req.n));
        for (int k = 0; k < req.n; ++k) s_axis[k] = sm.s(k);
        write_grid_csv(dir / "shift_quasi2d.csv", s_axis, s_axis, sm.values, "c");
        products.push_back("shift_quasi2d.csv");
        if (opt.plots)
            write_heatmap_svg(dir / "shift_quasi2d.svg", s_axis, s_axis, sm.values,
                              "shift quasi-distribution", true);
    }
}

int run_batch(const RunConfig& cfg, const Options& opt, std::ostream& out, bool sweep_summary) {
    const ValidityReport validity = validate_correlators(cfg.setup.correlators);
    if (!validity.pass && !opt.force) {
        out << "detector validity violation (use --force to simulate anyway)\n";
        for (const auto& row : validity.rows)
            if (!row.pass)
                out << "  " << row.name << ": lhs = " << format_value(row.lhs)
                    << " < rhs = " << format_value(row.rhs) << "\n";
        return 2;
    }

    const fs::path dir = opt.out_override.value_or(cfg.out_dir);
    fs::create_directories(dir);

    json products = json::array();
    std::vector<RunRecord> records;
    CsvTable summary;
    summary.header = {"T",      "mass",    "post_prob", "mean_o1", "mean_o2",
                      "var_o1", "var_o2",  "cov_o1o2",  "skew_o1", "skew_o2",
                      "cert_beta", "cert_beta_residual"};

    try {
        emit_shift_products(cfg, opt, dir, products);
    } catch (const Error& e) {
        out << "shift products failed: " << e.what() << "\n";
    }

    std::size_t failures = 0;
    for (double T : cfg.times) {
        RunRecord rec;
        rec.T = T;
        try {
            simulate_one_T(cfg, opt, dir, T, products);
            if (sweep_summary) {
                const DensityMatrix rho_i = bloch_to_density(cfg.prep);
                const ChiGrid grid = cfg.grid_for(T);
                const JointDistribution jd = joint_distribution(
                    cfg.setup, rho_i, cfg.post.build(cfg.setup.hamiltonian, T), T, grid);
                const JointMoments m = moments(jd);

                const int cond_axis =
                    cfg.products.slices ? cfg.products.slices->cond_axis : 1;
                const double y = cfg.products.slices && !cfg.products.slices->values.empty()
                                     ? cfg.products.slices->values.front()
                                     : 0.0;
                const JointDistribution jp = joint_distribution(
                    cfg.setup, rho_i, cfg.post_plus.build(cfg.setup.hamiltonian, T), T, grid);
                const JointDistribution jm = joint_distribution(
                    cfg.setup, rho_i, cfg.post_minus.build(cfg.setup.hamiltonian, T), T, grid);
                const ConditionalSlice sp = conditional_slice(jp, cond_axis - 1, y);
                const ConditionalSlice sm = conditional_slice(jm, cond_axis - 1, y);
                const DifferenceGrid dc = difference_and_certainty(sp.dist, sm.dist);
                const CertaintyFit fit = fit_certainty_slope(sp.dist, dc.certainty);

                summary.rows.push_back({T, jd.mass, jd.post_probability, m.mean[0], m.mean[1],
                                        m.covariance[0][0], m.covariance[1][1],
                                        m.covariance[0][1], m.skewness[0], m.skewness[1],
                                        fit.beta, fit.residual});
            }
        } catch (const Error& e) {
            rec.status = "error";
            rec.error = e.what();
            ++failures;
            out << "T = " << format_value(T) << ": " << e.what() << "\n";
        }
        records.push_back(rec);
    }

    if (sweep_summary) {
        std::ofstream s(dir / "summary.csv");
        s << serialize_table(summary);
    }

    json summary_json{{"scenario", cfg.setup.name},
                      {"validation_pass", validity.pass},
                      {"products", products}};
    summary_json["runs"] = json::array();
    for (const auto& rec : records) {
        json r{{"T", rec.T}, {"status", rec.status}};
        if (!rec.error.empty()) r["error"] = rec.error;
        summary_json["runs"].push_back(r);
    }
    {
        std::ofstream s(dir / "run_summary.json");
        s << summary_json.dump(2) << "\n";
    }

    out << "wrote " << products.size() << " products to " << dir.string() << "\n";
    if (failures == cfg.times.size() && !cfg.times.empty()) return 3;
    return 0;
}

} // namespace

int cmd_simulate(const RunConfig& cfg, const Options& opt, std::ostream& out) {
    return run_batch(cfg, opt, out, false);
}

int cmd_sweep(const RunConfig& cfg, const Options& opt, std::ostream& out) {
    return run_batch(cfg, opt, out, true);
}

} // namespace cwlm::cli
