#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cwlm/distribution.hpp"
#include "cwlm/qubit.hpp"
#include "cwlm/scenario.hpp"
#include "cwlm/shifts.hpp"

namespace cwlm::cli {

struct PostSpec {
    std::string mode = "pure";  // none | pure | faulty
    BlochVector state{0, 0, -1};
    BlochVector state2{0, 0, 1};
    double p_e = 0.0;
    bool frame_correction = false;

    /// Materialize for a given measurement duration (frame correction rotates
    /// the projector by exp(-i H T)).
    PostSelection build(const HamiltonianParams& h, double T) const;
};

struct SliceRequest {
    int cond_axis = 1;  // 1-based output index the slice conditions on
    std::vector<double> values{0.0};
};

struct ShiftRequest {
    std::vector<Axis> weight_axes{Axis::X};
    bool quasi2d = false;
    bool convolve = false;
    int n = 1024;
    double s_max = 2.0;
    double xi = 1e-3;
    RegKernel kernel = RegKernel::Gaussian;
};

struct Products {
    bool joint = true;
    bool marginals = false;
    bool moments = false;
    std::optional<SliceRequest> slices;
    bool difference = false;  // difference + certainty of P(+) vs P(-)
    std::optional<ShiftRequest> shifts;
};

struct RunConfig {
    ScenarioConfig setup;
    BlochVector prep{0, 0, 1};
    PostSpec post;
    PostSpec post_plus;   // defaults to pure Z+
    PostSpec post_minus;  // defaults to pure Z-
    std::vector<double> times;
    int grid_n = 512;
    std::optional<std::array<double, 2>> chi_max;
    Products products;
    std::filesystem::path out_dir = "out";

    ChiGrid grid_for(double T) const;
};

/// Parses and validates a JSON run configuration. Throws ConfigError on
/// schema violations and propagates json parse errors wrapped in ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& text);

} // namespace cwlm::cli
