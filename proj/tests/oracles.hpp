#pragma once

// Brute-force reference implementations, independent of the library's FFT
// paths. Everything here is O(N^2)..O(N^4) and only meant for small N.

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "stf/grid.hpp"
#include "stf/signal.hpp"

namespace oracle {

using stf::CGrid;
using stf::cplx;

inline cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
    const int n = static_cast<int>(x.size());
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (int t = 0; t < n; ++t) {
            acc += x[static_cast<std::size_t>(t)] * unit(sign * stf::two_pi * k * t / n);
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

// WD[n, m] = sum over centered k of x[n+k] x*[n-k] e^{-j2pi mk/N}.
inline CGrid dense_wigner(const stf::Signal& x) {
    const int n = x.size();
    CGrid wd(n, n);
    for (int row = 0; row < n; ++row) {
        for (int m = 0; m < n; ++m) {
            cplx acc = 0.0;
            for (int k = -n / 2; k < n / 2; ++k) {
                const cplx a = x.samples[static_cast<std::size_t>(stf::wrap_index(row + k, n))];
                const cplx b = x.samples[static_cast<std::size_t>(stf::wrap_index(row - k, n))];
                acc += a * std::conj(b) * unit(-stf::two_pi * m * k / n);
            }
            wd.at(row, m) = acc;
        }
    }
    return wd;
}

// A[theta, k] with origin-centered storage on both axes.
inline CGrid dense_ambiguity(const stf::Signal& x) {
    const int n = x.size();
    CGrid a(n, n);
    for (int ti = 0; ti < n; ++ti) {
        const int theta = stf::centered_bin(ti, n);
        for (int ki = 0; ki < n; ++ki) {
            const int k = stf::centered_bin(ki, n);
            cplx acc = 0.0;
            for (int t = 0; t < n; ++t) {
                const cplx u = x.samples[static_cast<std::size_t>(stf::wrap_index(t + k, n))];
                const cplx v = x.samples[static_cast<std::size_t>(stf::wrap_index(t - k, n))];
                acc += u * std::conj(v) * unit(-stf::two_pi * theta * t / n);
            }
            a.at(ti, ki) = acc;
        }
    }
    return a;
}

// One row of the partial 2D Fourier matrix (the Kronecker product of the
// doppler-side DFT and the conjugate lag-side DFT, unitary scaling) applied
// to the vectorized TF plane.
inline cplx dense_forward_row(const CGrid& sigma, int row_idx, int col_idx) {
    const int n = sigma.rows;
    const int theta = stf::centered_bin(row_idx, n);
    const int k = stf::centered_bin(col_idx, n);
    cplx acc = 0.0;
    for (int t = 0; t < n; ++t) {
        for (int m = 0; m < n; ++m) {
            acc += sigma.at(t, m) * unit(stf::two_pi * (-theta * t + k * m) / static_cast<double>(n));
        }
    }
    return acc / static_cast<double>(n);
}

inline std::vector<cplx> dense_forward(const CGrid& sigma,
                                       const std::vector<std::pair<int, int>>& idx) {
    std::vector<cplx> out;
    out.reserve(idx.size());
    for (const auto& [r, c] : idx) out.push_back(dense_forward_row(sigma, r, c));
    return out;
}

inline CGrid dense_adjoint(const std::vector<cplx>& v, const std::vector<std::pair<int, int>>& idx,
                           int n) {
    CGrid out(n, n);
    for (int t = 0; t < n; ++t) {
        for (int m = 0; m < n; ++m) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < idx.size(); ++i) {
                const int theta = stf::centered_bin(idx[i].first, n);
                const int k = stf::centered_bin(idx[i].second, n);
                acc += v[i] * unit(stf::two_pi * (theta * t - k * m) / static_cast<double>(n));
            }
            out.at(t, m) = acc / static_cast<double>(n);
        }
    }
    return out;
}

inline double max_abs_diff(const CGrid& a, const CGrid& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

inline CGrid random_grid(int n, unsigned seed, double scale = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    CGrid g(n, n);
    for (cplx& z : g.data) z = cplx(d(rng), d(rng)) * scale;
    return g;
}

inline stf::Signal random_signal(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    stf::Signal x;
    x.samples.resize(static_cast<std::size_t>(n));
    for (cplx& z : x.samples) z = cplx(d(rng), d(rng));
    return x;
}

// Random signal with the Nyquist bin removed: the natural domain of the
// complex-lag evaluator, which zeroes that bin by contract.
inline stf::Signal random_bandlimited(int n, unsigned seed) {
    stf::Signal x = random_signal(n, seed);
    auto spec = dft(x.samples, -1);
    spec[static_cast<std::size_t>(n / 2)] = 0.0;
    const auto back = dft(spec, +1);
    for (int i = 0; i < n; ++i) x.samples[static_cast<std::size_t>(i)] = back[static_cast<std::size_t>(i)] / static_cast<double>(n);
    return x;
}

}  // namespace oracle
