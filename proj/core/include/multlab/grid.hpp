#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace multlab {

using cplx = std::complex<double>;

// Coordinates of a sample. In one dimension the second entry is zero, so
// radial functions can use std::hypot(p[0], p[1]) uniformly.
using Point = std::array<double, 2>;

inline double radius(const Point& p) { return std::hypot(p[0], p[1]); }

enum class Domain { space, frequency };

std::string to_string(Domain d);
Domain domain_from_string(const std::string& s);
inline Domain dual(Domain d) { return d == Domain::space ? Domain::frequency : Domain::space; }

// Uniform periodic grid on [-L/2, L/2)^dim with M points per axis.
// Space samples sit at x_m = (m - M/2) h with h = L/M, frequency samples at
// xi_k = (k - M/2) / L. Storage is row-major with axis 0 slowest.
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(int dim, std::size_t points, double length);

    int dim() const { return dim_; }
    std::size_t points() const { return points_; }
    double length() const { return length_; }
    double box_halfwidth() const { return 0.5 * length_; }
    double spacing() const { return length_ / static_cast<double>(points_); }
    double frequency_spacing() const { return 1.0 / length_; }
    double nyquist() const { return static_cast<double>(points_) / (2.0 * length_); }
    std::size_t size() const;

    // Step between samples along one axis of the given domain.
    double step(Domain d) const { return d == Domain::space ? spacing() : frequency_spacing(); }
    double cell_measure(Domain d) const;
    // Coordinate of index i (0..M-1) along one axis.
    double coordinate(Domain d, std::size_t i) const {
        return (static_cast<double>(i) - 0.5 * static_cast<double>(points_)) * step(d);
    }
    Point point(Domain d, std::size_t flat) const;

    bool operator==(const GridSpec& o) const {
        return dim_ == o.dim_ && points_ == o.points_ && length_ == o.length_;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

    nlohmann::json to_json() const;
    static GridSpec from_json(const nlohmann::json& j);

private:
    int dim_ = 1;
    std::size_t points_ = 8;
    double length_ = 1.0;
};

// Grid used when the caller does not pick one.
GridSpec default_grid(int dim);

bool is_power_of_two(std::size_t m);
std::size_t next_power_of_two(std::size_t m);

class SampledField {
public:
    SampledField() = default;
    SampledField(GridSpec grid, Domain domain);
    SampledField(GridSpec grid, Domain domain, std::vector<cplx> values);

    template <class F>
    static SampledField from_function(const GridSpec& grid, Domain domain, F&& f) {
        SampledField out(grid, domain);
        for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] = f(grid.point(domain, i));
        return out;
    }

    const GridSpec& grid() const { return grid_; }
    Domain domain() const { return domain_; }
    std::size_t size() const { return values_.size(); }
    double cell_measure() const { return grid_.cell_measure(domain_); }
    Point point(std::size_t i) const { return grid_.point(domain_, i); }

    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }
    std::vector<cplx>& storage() { return values_; }
    const std::vector<cplx>& storage() const { return values_; }

    cplx& operator[](std::size_t i) { return values_[i]; }
    const cplx& operator[](std::size_t i) const { return values_[i]; }

    SampledField retagged(Domain d) const;

private:
    GridSpec grid_;
    Domain domain_ = Domain::space;
    std::vector<cplx> values_;
};

void require_same_grid(const SampledField& a, const SampledField& b, const char* where);
void require_domain(const SampledField& a, Domain d, const char* where);

} // namespace multlab
