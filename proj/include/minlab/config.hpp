#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "minlab/blowup.hpp"

namespace minlab::config {

/** Parsed and cross-validated experiment description. */
struct ExperimentConfig {
    // [system]
    std::string kind;  // rotation | denjoy | odometer-suspension |
                       // denjoy-suspension | skew | klein
    double alpha = 0.0;
    std::vector<double> seeds{0.0};
    double gap_scale = 0.0;  // 0 requests the auto scale (total gap 1/2)
    int gap_depth = 64;
    int word_depth = 8;
    double t = 0.0;  // suspension time step; 0 requests the golden default
    std::vector<std::pair<int, double>> roof;

    // [blowup] (optional section)
    bool has_blowup = false;
    blowup::Mode mode = blowup::Mode::BackwardOnly;
    int n = 4;
    blowup::FiberKind fiber = blowup::FiberKind::IntervalU;
    double weight_base = 0.5;
    int tower_level = 2;
    int tower_depth = 3;

    // [probes]
    std::vector<std::string> probes;
    long long orbit_n = 256;
    long long density_n = 10000;
    double density_eps = 1e-3;
    int fibers_k = 16;
    long long almost11_samples = 10000;
    double slope_x = 0.0;
    double slope_u = 0.0;
    long long equivariance_samples = 100000;
    int tiling_radius = 2;
    bool tiling_swap = false;
    int product_k1 = 1;
    int product_k2 = 2;
    long long product_n = 1000000;
    double product_alpha = 0.6180339887498949;
    double product_x0 = 0.0, product_y0 = 0.0;
    double product_target_x = 0.0, product_target_y = 0.25;

    // [output]
    std::string out_dir = "out";
    bool fmt_csv = true, fmt_json = true, fmt_svg = true;
    std::uint64_t seed = 0;

    std::string echo;  // raw config text, reproduced in the bundle
};

const std::vector<std::pair<std::string, std::string>>& probe_catalog();

ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace minlab::config
