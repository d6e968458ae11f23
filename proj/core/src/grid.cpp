#include "multlab/grid.hpp"

#include <cmath>

#include "multlab/errors.hpp"

namespace multlab {

std::string to_string(Domain d) { return d == Domain::space ? "space" : "frequency"; }

Domain domain_from_string(const std::string& s) {
    if (s == "space") return Domain::space;
    if (s == "frequency") return Domain::frequency;
    throw ParameterError("unknown domain tag '" + s + "'");
}

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::size_t next_power_of_two(std::size_t m) {
    std::size_t p = 1;
    while (p < m) p <<= 1;
    return p;
}

GridSpec::GridSpec(int dim, std::size_t points, double length)
    : dim_(dim), points_(points), length_(length) {
    if (dim != 1 && dim != 2) throw ParameterError("grid dimension must be 1 or 2");
    if (points < 8 || !is_power_of_two(points))
        throw ParameterError("grid points per axis must be a power of two >= 8, got " + std::to_string(points));
    if (!(length > 0.0) || !std::isfinite(length)) throw ParameterError("grid length must be positive and finite");
}

std::size_t GridSpec::size() const { return dim_ == 1 ? points_ : points_ * points_; }

double GridSpec::cell_measure(Domain d) const { return std::pow(step(d), dim_); }

Point GridSpec::point(Domain d, std::size_t flat) const {
    if (dim_ == 1) return {coordinate(d, flat), 0.0};
    return {coordinate(d, flat / points_), coordinate(d, flat % points_)};
}

nlohmann::json GridSpec::to_json() const {
    return {{"dim", dim_}, {"M", points_}, {"L", length_}};
}

GridSpec GridSpec::from_json(const nlohmann::json& j) {
    return GridSpec(j.at("dim").get<int>(), j.at("M").get<std::size_t>(), j.at("L").get<double>());
}

GridSpec default_grid(int dim) {
    if (dim == 1) return GridSpec(1, 4096, 64.0);
    if (dim == 2) return GridSpec(2, 512, 32.0);
    throw ParameterError("grid dimension must be 1 or 2");
}

SampledField::SampledField(GridSpec grid, Domain domain)
    : grid_(grid), domain_(domain), values_(grid.size(), cplx(0.0, 0.0)) {}

SampledField::SampledField(GridSpec grid, Domain domain, std::vector<cplx> values)
    : grid_(grid), domain_(domain), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ContractError("sample count " + std::to_string(values_.size()) + " does not match grid size " +
                            std::to_string(grid_.size()));
}

SampledField SampledField::retagged(Domain d) const {
    SampledField out = *this;
    out.domain_ = d;
    return out;
}

void require_same_grid(const SampledField& a, const SampledField& b, const char* where) {
    if (a.grid() != b.grid()) throw ContractError(std::string(where) + ": grid mismatch");
    if (a.domain() != b.domain()) throw ContractError(std::string(where) + ": domain tag mismatch");
}

void require_domain(const SampledField& a, Domain d, const char* where) {
    if (a.domain() != d)
        throw ContractError(std::string(where) + ": expected " + to_string(d) + " field, got " + to_string(a.domain()));
}

} // namespace multlab
