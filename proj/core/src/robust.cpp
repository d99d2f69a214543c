#include "stf/robust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stf {

namespace {

void check_policy(const TrimPolicy& p) {
    if (p.discard_low < 0.0 || p.discard_low >= 1.0 || p.discard_high < 0.0 || p.discard_high >= 1.0 ||
        p.discard_low + p.discard_high >= 1.0) {
        throw std::invalid_argument("trim fractions must satisfy P, Q >= 0 and P + Q < 1");
    }
    if (p.guard_radius < 0) throw std::invalid_argument("guard radius must be nonnegative");
}

bool guarded(const TrimPolicy& p, int row, int col, int n) {
    if (!p.guard_origin) return false;
    return std::abs(row - n / 2) <= p.guard_radius && std::abs(col - n / 2) <= p.guard_radius;
}

}  // namespace

AmbiguityMatrix lstat_denoise(const AmbiguityMatrix& a, const TrimPolicy& policy) {
    check_policy(policy);
    const int n = a.n();
    const std::size_t cells = a.values.size();
    AmbiguityMatrix out = a;

    const std::size_t k_low = static_cast<std::size_t>(std::lround(policy.discard_low * cells));
    const std::size_t k_high = static_cast<std::size_t>(std::lround(policy.discard_high * cells));
    if (k_low == 0 && k_high == 0) return out;

    std::vector<std::size_t> order(cells);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double mx = std::abs(out.values.data[x]);
        const double my = std::abs(out.values.data[y]);
        return mx != my ? mx < my : x < y;
    });

    for (std::size_t i = 0; i < k_low && i < cells; ++i) {
        const std::size_t cell = order[i];
        if (guarded(policy, static_cast<int>(cell) / n, static_cast<int>(cell) % n, n)) continue;
        out.values.data[cell] = cplx(0.0, 0.0);
    }
    for (std::size_t i = 0; i < k_high && i < cells; ++i) {
        const std::size_t cell = order[cells - 1 - i];
        if (guarded(policy, static_cast<int>(cell) / n, static_cast<int>(cell) % n, n)) continue;
        out.values.data[cell] = cplx(0.0, 0.0);
    }
    return out;
}

cplx robust_initial_transform(const AmbiguityMatrix& a, const TrimPolicy& policy, int time_idx,
                              int freq_idx) {
    check_policy(policy);
    const int n = a.n();
    const std::size_t cells = a.values.size();

    std::vector<double> re(cells);
    std::vector<double> im(cells);
    std::size_t i = 0;
    for (int r = 0; r < n; ++r) {
        const double th = centered_bin(r, n);
        for (int c = 0; c < n; ++c, ++i) {
            const double ta = centered_bin(c, n);
            const double ang = two_pi * (th * time_idx - ta * freq_idx) / n;
            const cplx z = a.values.at(r, c) * cplx(std::cos(ang), std::sin(ang));
            re[i] = z.real();
            im[i] = z.imag();
        }
    }

    const std::size_t k_low = static_cast<std::size_t>(std::lround(policy.discard_low * cells));
    const std::size_t k_high = static_cast<std::size_t>(std::lround(policy.discard_high * cells));
    if (k_low == 0 && k_high == 0 && !policy.literal_bounds) {
        const double sr = std::accumulate(re.begin(), re.end(), 0.0);
        const double si = std::accumulate(im.begin(), im.end(), 0.0);
        return {sr, si};
    }

    std::sort(re.begin(), re.end());
    std::sort(im.begin(), im.end());

    std::size_t lo = k_low;
    std::size_t hi = cells - std::min(k_high, cells);  // one past the kept range
    if (policy.literal_bounds) {
        lo = std::min(k_low, cells - 1);
        hi = std::min(k_high + 1, cells);
        if (hi <= lo) hi = lo + 1;
    }
    const std::size_t kept = hi - lo;
    const double scale = static_cast<double>(cells) / static_cast<double>(kept);

    const double sr = std::accumulate(re.begin() + static_cast<std::ptrdiff_t>(lo),
                                      re.begin() + static_cast<std::ptrdiff_t>(hi), 0.0);
    const double si = std::accumulate(im.begin() + static_cast<std::ptrdiff_t>(lo),
                                      im.begin() + static_cast<std::ptrdiff_t>(hi), 0.0);
    return cplx(sr, si) * scale;
}

CGrid robust_initial_tf(const AmbiguityMatrix& a, const TrimPolicy& policy) {
    const int n = a.n();
    CGrid g(n, n);
    const double s = 1.0 / static_cast<double>(n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) g.at(r, c) = robust_initial_transform(a, policy, r, c) * s;
    }
    return g;
}

}  // namespace stf
