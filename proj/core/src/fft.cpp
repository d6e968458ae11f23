#include "multlab/fft.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

#include "multlab/errors.hpp"

namespace multlab {

namespace {

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is. Plans are created once per shape and kept for the process.
class PlanCache {
public:
    fftw_plan get(int dim, std::size_t points, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(dim, points, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::size_t total = dim == 1 ? points : points * points;
        auto* buf = fftw_alloc_complex(total);
        fftw_plan plan;
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        if (dim == 1)
            plan = fftw_plan_dft_1d(static_cast<int>(points), buf, buf, sign, flags);
        else
            plan = fftw_plan_dft_2d(static_cast<int>(points), static_cast<int>(points), buf, buf, sign, flags);
        fftw_free(buf);
        if (!plan) throw Error("FFTW failed to create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

// Rotation by M/2 along every axis; maps signed order to FFT order and back.
void half_shift(std::span<cplx> data, int dim, std::size_t m) {
    std::size_t half = m / 2;
    if (dim == 1) {
        std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(half), data.end());
        return;
    }
    for (std::size_t r = 0; r < m; ++r) {
        auto row = data.subspan(r * m, m);
        std::rotate(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(half), row.end());
    }
    std::rotate(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(half * m), data.end());
}

SampledField transform(const SampledField& in, int sign, Domain out_domain) {
    const GridSpec& g = in.grid();
    std::vector<cplx> data(in.values().begin(), in.values().end());
    half_shift(data, g.dim(), g.points());
    detail::fft_inplace(data, g.dim(), g.points(), sign);
    half_shift(data, g.dim(), g.points());
    double factor = in.cell_measure();
    for (auto& v : data) v *= factor;
    return SampledField(g, out_domain, std::move(data));
}

} // namespace

void detail::fft_inplace(std::span<cplx> data, int dim, std::size_t points, int sign) {
    fftw_plan plan = cache().get(dim, points, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

SampledField dft_forward(const SampledField& f) {
    require_domain(f, Domain::space, "dft_forward");
    return transform(f, -1, Domain::frequency);
}

SampledField dft_inverse(const SampledField& F) {
    require_domain(F, Domain::frequency, "dft_inverse");
    return transform(F, +1, Domain::space);
}

SampledField to_dual(const SampledField& f) {
    return f.domain() == Domain::space ? dft_forward(f) : dft_inverse(f);
}

SampledField dual_multiply_from(const SampledField& dual_of_f, Domain target,
                                const std::function<cplx(const Point&)>& m) {
    if (dual_of_f.domain() == target) throw ContractError("dual_multiply_from: dual field has the target domain tag");
    SampledField d = dual_of_f;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= m(d.point(i));
    return to_dual(d);
}

SampledField dual_multiply(const SampledField& f, const std::function<cplx(const Point&)>& m) {
    return dual_multiply_from(to_dual(f), f.domain(), m);
}

SampledField upsample(const SampledField& f, std::size_t factor) {
    if (factor == 0 || !is_power_of_two(factor)) throw ParameterError("upsample factor must be a power of two");
    if (factor == 1) return f;
    const GridSpec& g = f.grid();
    const std::size_t m = g.points(), mf = m * factor;
    // The dual step must not change, so a frequency grid widens its length.
    double fine_length = f.domain() == Domain::space ? g.length() : g.length() * static_cast<double>(factor);
    GridSpec fine(g.dim(), mf, fine_length);
    SampledField d = to_dual(f);
    // The coarse dual samples sit in the middle of the wider dual box. The
    // Nyquist row is split evenly between both ends.
    SampledField dfine(fine, d.domain());
    const std::size_t off = (mf - m) / 2;
    auto weight = [&](std::size_t i) { return i == 0 ? 0.5 : 1.0; };
    if (g.dim() == 1) {
        for (std::size_t i = 0; i < m; ++i) {
            dfine[off + i] += weight(i) * d[i];
            if (i == 0) dfine[off + m] += 0.5 * d[0];
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                cplx v = d[i * m + j];
                double wi = weight(i), wj = weight(j);
                std::size_t is[2] = {off + i, off + m};
                std::size_t js[2] = {off + j, off + m};
                int ni = i == 0 ? 2 : 1, nj = j == 0 ? 2 : 1;
                for (int a = 0; a < ni; ++a)
                    for (int b = 0; b < nj; ++b) dfine[is[a] * mf + js[b]] += wi * wj * v;
            }
        }
    }
    return to_dual(dfine);
}

} // namespace multlab
