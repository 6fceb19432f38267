#pragma once

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <vector>

// Internal transform machinery shared by grid.cpp and gowers.cpp.

namespace gg::detail {

using cplx = std::complex<double>;

// Twiddle layout: for len = 2,4,...,n the entries at offsets len/2..len-1
// hold e(-2*pi*i*k/len) for k = 0..len/2-1.
inline std::vector<cplx> make_twiddles(size_t n) {
    std::vector<cplx> tw(n, cplx(0.0, 0.0));
    for (size_t len = 2; len <= n; len <<= 1)
        for (size_t k = 0; k < len / 2; ++k) {
            const double ang =
                -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
            tw[len / 2 + k] = cplx(std::cos(ang), std::sin(ang));
        }
    return tw;
}

inline void fft_pow2(cplx* a, size_t n, const cplx* tw, bool inverse) {
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const cplx* w = tw + len / 2;
        for (size_t i = 0; i < n; i += len) {
            cplx* lo = a + i;
            cplx* hi = a + i + len / 2;
            if (inverse) {
                for (size_t k = 0; k < len / 2; ++k) {
                    const cplx t = hi[k] * std::conj(w[k]);
                    hi[k] = lo[k] - t;
                    lo[k] += t;
                }
            } else {
                for (size_t k = 0; k < len / 2; ++k) {
                    const cplx t = hi[k] * w[k];
                    hi[k] = lo[k] - t;
                    lo[k] += t;
                }
            }
        }
    }
    if (inverse) {
        const double s = 1.0 / static_cast<double>(n);
        for (size_t i = 0; i < n; ++i) a[i] *= s;
    }
}

// Length-L DFT plan: Bluestein chirp-z with exact integer phase indices
// (j^2 mod 2L), direct evaluation below L = 32. No global state; callers
// pass a workspace of workspace_size() entries so hot loops stay
// allocation-free.
class Dft1D {
public:
    explicit Dft1D(long long L) : L_(L), direct_(L < 32) {
        if (L < 1) throw std::invalid_argument("Dft1D: length must be positive");
        if (direct_) {
            tw_.resize(static_cast<size_t>(L_));
            for (long long t = 0; t < L_; ++t) {
                const double ang = -2.0 * std::numbers::pi * static_cast<double>(t) /
                                   static_cast<double>(L_);
                tw_[static_cast<size_t>(t)] = cplx(std::cos(ang), std::sin(ang));
            }
            return;
        }
        M_ = 1;
        while (M_ < static_cast<size_t>(2 * L_ - 1)) M_ <<= 1;
        twm_ = make_twiddles(M_);
        chirp_.resize(static_cast<size_t>(L_));
        for (long long j = 0; j < L_; ++j) {
            const long long e = (j * j) % (2 * L_);
            const double ang =
                -std::numbers::pi * static_cast<double>(e) / static_cast<double>(L_);
            chirp_[static_cast<size_t>(j)] = cplx(std::cos(ang), std::sin(ang));
        }
        bhat_fwd_ = chirp_spectrum(false);
        bhat_inv_ = chirp_spectrum(true);
    }

    long long length() const { return L_; }
    size_t workspace_size() const { return direct_ ? static_cast<size_t>(L_) : M_; }

    // forward uses e(-jk/L), inverse e(+jk/L); no scaling either way
    void apply(cplx* data, bool inverse, cplx* ws) const {
        if (direct_) {
            for (long long k = 0; k < L_; ++k) {
                cplx acc(0.0, 0.0);
                for (long long j = 0; j < L_; ++j) {
                    const cplx w = tw_[static_cast<size_t>((j * k) % L_)];
                    acc += data[j] * (inverse ? std::conj(w) : w);
                }
                ws[k] = acc;
            }
            std::memcpy(data, ws, sizeof(cplx) * static_cast<size_t>(L_));
            return;
        }
        for (long long j = 0; j < L_; ++j) {
            const cplx c = inverse ? std::conj(chirp_[static_cast<size_t>(j)])
                                   : chirp_[static_cast<size_t>(j)];
            ws[j] = data[j] * c;
        }
        std::fill(ws + L_, ws + M_, cplx(0.0, 0.0));
        fft_pow2(ws, M_, twm_.data(), false);
        const auto& bhat = inverse ? bhat_inv_ : bhat_fwd_;
        for (size_t k = 0; k < M_; ++k) ws[k] *= bhat[k];
        fft_pow2(ws, M_, twm_.data(), true);
        for (long long k = 0; k < L_; ++k) {
            const cplx c = inverse ? std::conj(chirp_[static_cast<size_t>(k)])
                                   : chirp_[static_cast<size_t>(k)];
            data[k] = ws[static_cast<size_t>(k)] * c;
        }
    }

private:
    std::vector<cplx> chirp_spectrum(bool inverse) const {
        std::vector<cplx> b(M_, cplx(0.0, 0.0));
        for (long long j = 0; j < L_; ++j) {
            const cplx c = inverse ? chirp_[static_cast<size_t>(j)]
                                   : std::conj(chirp_[static_cast<size_t>(j)]);
            b[static_cast<size_t>(j)] = c;
            if (j > 0) b[M_ - static_cast<size_t>(j)] = c;
        }
        fft_pow2(b.data(), M_, twm_.data(), false);
        return b;
    }

    long long L_;
    bool direct_;
    size_t M_ = 0;
    std::vector<cplx> tw_;
    std::vector<cplx> twm_;
    std::vector<cplx> chirp_;
    std::vector<cplx> bhat_fwd_, bhat_inv_;
};

}  // namespace gg::detail
