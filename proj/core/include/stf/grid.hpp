#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace stf {

using cplx = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Row-major 2D array. The owning types document their axis conventions
// (time x frequency for distributions, doppler x lag for ambiguity planes).
template <typename T>
struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int r, int c, T fill = T{})
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}

    T& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    const T& at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::size_t size() const { return data.size(); }
};

using CGrid = Grid<cplx>;
using RGrid = Grid<double>;

inline int wrap_index(int i, int n) {
    int r = i % n;
    return r < 0 ? r + n : r;
}

// Origin-centered storage: index i holds centered bin i - n/2, so bin 0
// (the origin) lives at index n/2.
inline int centered_bin(int index, int n) { return index - n / 2; }
inline int storage_index(int bin, int n) { return bin + n / 2; }

// Wrap a centered bin difference into [-n/2, n/2).
inline int wrap_centered(int bin, int n) {
    return wrap_index(bin + n / 2, n) - n / 2;
}

inline double wrap_phase(double a) {
    double r = std::remainder(a, two_pi);
    return r <= -two_pi / 2 ? r + two_pi : r;
}

inline bool all_finite(const CGrid& g) {
    for (const cplx& z : g.data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

inline double max_abs(const CGrid& g) {
    double m = 0.0;
    for (const cplx& z : g.data) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace stf
