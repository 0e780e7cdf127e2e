#pragma once

#include <complex>
#include <vector>

#include "rotalg/errors.hpp"

namespace rotalg {

// iterative radix-2 complex FFT; sign = -1 forward, +1 backward (unnormalized)
inline void fft_inplace(std::vector<std::complex<double>>& a, int sign) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) fail(errc::bad_input, "fft size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * M_PI / (double)len;
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (size_t k = 0; k < len / 2; ++k) {
                auto u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// 2D transform on an M x M row-major grid
inline void fft2_inplace(std::vector<std::complex<double>>& a, int M, int sign) {
    std::vector<std::complex<double>> tmp(M);
    for (int r = 0; r < M; ++r) {
        tmp.assign(a.begin() + (size_t)r * M, a.begin() + (size_t)(r + 1) * M);
        fft_inplace(tmp, sign);
        std::copy(tmp.begin(), tmp.end(), a.begin() + (size_t)r * M);
    }
    for (int c = 0; c < M; ++c) {
        for (int r = 0; r < M; ++r) tmp[r] = a[(size_t)r * M + c];
        fft_inplace(tmp, sign);
        for (int r = 0; r < M; ++r) a[(size_t)r * M + c] = tmp[r];
    }
}

} // namespace rotalg
