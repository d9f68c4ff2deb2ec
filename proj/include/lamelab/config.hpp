#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lamelab {

/**
 * key=value experiment configuration. Blank lines and lines starting with '#' are
 * ignored; list values are comma separated. Unknown keys are rejected.
 */
struct ExperimentConfig {
    int d = 3;
    int n = 32;
    double L = 8.0;
    double mu = 1.0;
    double lambda = 0.0;

    std::string potential = "zero";
    std::vector<double> potential_params;
    std::string field = "gaussian_bump";  // catalog name, or "random"
    std::vector<double> field_params{1.0, 1.0};
    double sigma = 1.0;  // width of the manufactured bumps used by identities

    double k_re = 4.0;
    double k_im = 1.0;
    double k_re_min = 0.5, k_re_max = 8.0;
    double k_im_min = -4.0, k_im_max = 4.0;
    int k_re_points = 10, k_im_points = 10;
    double eta = 0.0;

    double tol = 1e-11;
    double residual_tol = 1e-8;
    int max_iter = 4000;

    std::uint64_t seed = 1;
    int threads = 1;

    double C_margin = 0.0;  // 0 selects 2 * C_hat
    double regularity_s = 1.0;
    int trials = 50;

    int n_eigs = 6;
    double shift_re = 0.0, shift_im = 0.0;
    double drift_tol = 1e-2;
    double drift_floor = 1e-3;
    double localization_min = 0.5;
    int dense_limit = 6000;

    /// Every key with its resolved value, sorted, one "key=value" per line.
    std::string echo() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
/// Checks ranges that do not need a grid (grid and catalog checks happen when used).
void validate_config(const ExperimentConfig& cfg);

}  // namespace lamelab
