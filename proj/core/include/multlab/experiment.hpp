#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "multlab/families.hpp"
#include "multlab/field_ops.hpp"
#include "multlab/fit.hpp"
#include "multlab/norms.hpp"

namespace multlab {

// What a scan measures for each N: the input f, the output T_sigma f, the
// symbol itself (through its dyadic pieces), or the convolution kernel.
enum class ScanTarget { f, Tf, sigma, kernel };

std::string to_string(ScanTarget t);
ScanTarget scan_target_from_string(const std::string& s);

struct NormRequest {
    NormKind kind = NormKind::Lp;
    double p = 2.0;
    double q = 2.0;
    double r = 4.0;
    double s = 1.0;

    nlohmann::json to_json() const;
    static NormRequest from_json(const nlohmann::json& j);
};

struct ScanConfig {
    std::string family = "rademacher";  // bump_pair, rademacher, dirichlet
    int dim = 1;
    ScanTarget target = ScanTarget::f;
    std::vector<int> N_values{16, 32, 64, 128, 256};
    std::vector<NormRequest> norms{NormRequest{}};
    std::uint64_t seed = 0;
    // Sign tables averaged per N for the Rademacher symbol.
    int trials = 1;
    std::optional<double> tolerance;
    std::optional<double> predicted_slope;
    std::optional<std::size_t> grid_m;
    std::optional<double> grid_l;
    KRange k_range{-2, 2};
    Point direction{1.0, 0.0};

    void validate() const;
    nlohmann::json to_json() const;
    static ScanConfig from_json(const nlohmann::json& j);
};

struct ScanRow {
    std::string family;
    nlohmann::json params;
    std::string norm_kind;
    int N = 0;
    double value = 0.0;
    std::uint64_t seed = 0;
    std::size_t grid_M = 0;
    double grid_L = 0.0;
};

struct ScalingReport {
    FamilySpec family;  // spec at the largest N
    NormKind norm = NormKind::Lp;
    nlohmann::json norm_params;
    std::vector<int> N_values;
    std::vector<double> measured;
    std::vector<int> dropped_N;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool reliable = true;
    double predicted_slope = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    std::vector<ScalingReport> reports;

    bool all_pass() const;
    // family,params,norm_kind,N,value,seed,grid_M,grid_L
    std::string csv() const;
    nlohmann::json to_json() const;
};

// Growth exponent in N the theory gives for this measurement.
double predicted_slope(const ScanConfig& config, const NormRequest& norm);

ScanResult run_scan(const ScanConfig& config);

struct RegionConfig {
    int dim = 1;
    std::vector<double> inv_p{0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> s{0.05, 0.15, 0.25, 0.35, 0.45};
    std::vector<int> N_values{16, 32, 64, 128};
    int trials = 16;
    std::uint64_t seed = 0;
    // Net exponent above this marks a cell outside.
    double tolerance = 0.05;
    // Cells with | |1/p - 1/2| - s/n | within this band are indeterminate.
    double boundary_band = 0.1;
    // Sobolev exponent of the symbol norm; unset means r = 2n/s per cell.
    std::optional<double> r;
    KRange k_range{-2, 2};

    void validate() const;
    nlohmann::json to_json() const;
    static RegionConfig from_json(const nlohmann::json& j);
};

enum class CellClass { inside, outside, indeterminate, skipped };
std::string to_string(CellClass c);

struct RegionCell {
    double inv_p = 0.0;
    double s = 0.0;
    double r = 0.0;
    // Growth exponent of the mean ||T f_N||_p at min(p, p').
    double t_slope = 0.0;
    // Growth exponent of the Hormander norm of the symbol.
    double h_slope = 0.0;
    double net = 0.0;
    // |1/p - 1/2| - s/n
    double predicted_gap = 0.0;
    CellClass cls = CellClass::indeterminate;
    std::string reason;
};

struct RegionMap {
    RegionConfig config;
    std::vector<RegionCell> cells;  // inv_p major, s minor

    std::string csv() const;
    nlohmann::json to_json() const;
};

RegionMap run_region(const RegionConfig& config);

} // namespace multlab
