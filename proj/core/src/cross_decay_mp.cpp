#include <algorithm>
#include <cmath>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "frame_formulas.hpp"
#include "multlab/errors.hpp"
#include "multlab/fft.hpp"
#include "multlab/frames.hpp"

namespace multlab::detail {

namespace bmp = boost::multiprecision;

// About 425 bits. Ratios down to 2^-380 stay well above the rounding floor
// of a 2^19-point transform.
using mpreal = bmp::number<bmp::mpfr_float_backend<128, bmp::allocate_stack>, bmp::et_off>;

namespace {

struct mpc {
    mpreal re, im;
};

class MpFft {
public:
    explicit MpFft(std::size_t m) : m_(m), roots_(m / 2) {
        const mpreal tau = 2 * boost::math::constants::pi<mpreal>();
        // Exact sin/cos on a coarse lattice, one multiplication in between.
        const std::size_t block = 256;
        std::vector<mpc> fine(std::min(block, m / 2));
        for (std::size_t i = 0; i < fine.size(); ++i) {
            mpreal a = tau * i / m;
            fine[i] = {cos(a), -sin(a)};
        }
        for (std::size_t b = 0; b < m / 2; b += block) {
            mpreal a = tau * b / m;
            mpc base{cos(a), -sin(a)};
            for (std::size_t i = 0; i < block && b + i < m / 2; ++i) {
                const mpc& f = fine[i];
                roots_[b + i] = {base.re * f.re - base.im * f.im, base.re * f.im + base.im * f.re};
            }
        }
    }

    // Unnormalised DFT in FFT order; sign -1 uses exp(-2 pi i k m / M).
    void run(std::vector<mpc>& a, int sign) const {
        const std::size_t n = m_;
        for (std::size_t i = 1, j = 0; i < n; ++i) {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        mpreal tre, tim;
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t half = len / 2, stride = n / len;
            for (std::size_t i = 0; i < n; i += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    const mpc& w = roots_[k * stride];
                    const mpreal& wi = w.im;
                    mpc& u = a[i + k];
                    mpc& v = a[i + k + half];
                    if (sign < 0) {
                        tre = w.re * v.re - wi * v.im;
                        tim = w.re * v.im + wi * v.re;
                    } else {
                        tre = w.re * v.re + wi * v.im;
                        tim = w.re * v.im - wi * v.re;
                    }
                    v.re = u.re - tre;
                    v.im = u.im - tim;
                    u.re += tre;
                    u.im += tim;
                }
            }
        }
    }

private:
    std::size_t m_;
    std::vector<mpc> roots_;
};

// Transform between the two domains in signed order with the grid
// normalisation used by dft_forward and dft_inverse.
void transform(std::vector<mpc>& a, const MpFft& fft, int sign, const mpreal& factor) {
    const std::size_t half = a.size() / 2;
    std::rotate(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
    fft.run(a, sign);
    std::rotate(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
    for (auto& v : a) {
        v.re *= factor;
        v.im *= factor;
    }
}

} // namespace

DecayProfile decay_profile_extended(const SampledField& g, int j, std::span<const int> l_values, double q,
                                    const FramePair& frame) {
    if (g.grid().dim() != 1) throw ParameterError("cross_lp_decay: the extended path is one-dimensional");
    const int order = frame.order();
    const GridSpec& gr = g.grid();
    const std::size_t m = gr.points();
    const Domain own = g.domain(), other = dual(own);
    const int to_other = own == Domain::space ? -1 : +1;
    const mpreal len(gr.length());
    const mpreal own_step = own == Domain::space ? mpreal(len / m) : mpreal(1 / len);
    const mpreal other_step = other == Domain::space ? mpreal(len / m) : mpreal(1 / len);
    auto coord = [&](std::size_t i, const mpreal& step) {
        return mpreal((static_cast<long>(i) - static_cast<long>(m / 2)) * step);
    };

    const double gnorm = lp_value(g, q);
    if (gnorm == 0.0) throw ParameterError("cross_lp_decay: g is zero");

    // Block j of g. Windows have exact zeros outside their support, so the
    // double rounding in gd stays inside band j.
    SampledField gd = to_dual(g);
    std::vector<mpc> a(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (gd[i] == 0.0) continue;
        mpreal w = formulas::widened_block(j, mpreal(abs(coord(i, other_step))), order);
        if (w == 0) continue;
        a[i] = {w * gd[i].real(), w * gd[i].imag()};
    }
    MpFft fft(m);
    transform(a, fft, -to_other, other_step);

    // Multiply by psi_hat in the domain of g, then move to the dual side.
    for (std::size_t i = 0; i < m; ++i) {
        mpreal r = abs(coord(i, own_step));
        if (r <= FramePair::psi_inner || r >= FramePair::psi_outer) {
            a[i] = {mpreal(0), mpreal(0)};
            continue;
        }
        mpreal p = formulas::psi_hat(r, order);
        a[i].re *= p;
        a[i].im *= p;
    }
    transform(a, fft, to_other, own_step);

    DecayProfile out;
    for (int l : l_values) {
        std::vector<mpreal> w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = formulas::widened_block(l, mpreal(abs(coord(i, other_step))), order);
        mpreal norm;
        if (q == 2.0) {
            // Plancherel on the grid.
            mpreal sum = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (w[i] != 0) sum += w[i] * w[i] * (a[i].re * a[i].re + a[i].im * a[i].im);
            norm = sqrt(sum * other_step);
        } else {
            std::vector<mpc> b(m);
            for (std::size_t i = 0; i < m; ++i)
                if (w[i] != 0) b[i] = {w[i] * a[i].re, w[i] * a[i].im};
            transform(b, fft, -to_other, other_step);
            mpreal sum = 0;
            const mpreal qq(q);
            for (std::size_t i = 0; i < m; ++i) {
                mpreal mod = sqrt(b[i].re * b[i].re + b[i].im * b[i].im);
                if (mod != 0) sum += pow(mod, qq);
            }
            norm = pow(mpreal(sum * own_step), mpreal(1 / qq));
        }
        double l2 = norm == 0 ? -infinity : static_cast<double>(log2(norm)) - std::log2(gnorm);
        out.l_values.push_back(l);
        out.log2_ratio.push_back(l2);
        out.ratio.push_back(std::exp2(l2));
    }
    return out;
}

} // namespace multlab::detail
