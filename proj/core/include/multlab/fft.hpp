#pragma once

#include <functional>

#include "multlab/grid.hpp"

namespace multlab {

// F(xi) = h^d sum_x f(x) exp(-2 pi i x.xi), sampled on the frequency grid.
SampledField dft_forward(const SampledField& f);

// f(x) = L^-d sum_xi F(xi) exp(2 pi i x.xi). Inverse of dft_forward.
SampledField dft_inverse(const SampledField& F);

// Forward transform for space fields, inverse for frequency fields.
SampledField to_dual(const SampledField& f);

// Multiplies the dual representation of f by m(point) and transforms back.
// The result keeps the domain tag of f.
SampledField dual_multiply(const SampledField& f, const std::function<cplx(const Point&)>& m);

// Same as dual_multiply, with the dual already computed.
SampledField dual_multiply_from(const SampledField& dual_of_f, Domain target,
                                const std::function<cplx(const Point&)>& m);

// Trigonometric interpolation of f onto a grid with factor times as many
// points per axis over the same box. Exact for band-limited samples.
SampledField upsample(const SampledField& f, std::size_t factor);

namespace detail {
// Unnormalised in-place DFT in natural FFT order, sign -1 forward.
void fft_inplace(std::span<cplx> data, int dim, std::size_t points, int sign);
}

} // namespace multlab
