#include "stf/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace stf {

namespace {

// FFTW plan creation is not thread safe; execution on private buffers is.
// Plans and their staging buffers live in thread-local caches, creation is
// serialized by a global mutex.
std::mutex g_planner_mutex;

struct PlanEntry {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    int n = 0;

    PlanEntry() = default;
    PlanEntry(const PlanEntry&) = delete;
    PlanEntry& operator=(const PlanEntry&) = delete;
    PlanEntry(PlanEntry&& o) noexcept { *this = std::move(o); }
    PlanEntry& operator=(PlanEntry&& o) noexcept {
        std::swap(fwd, o.fwd);
        std::swap(bwd, o.bwd);
        std::swap(buf, o.buf);
        std::swap(n, o.n);
        return *this;
    }
    ~PlanEntry() {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }
};

PlanEntry& plan_for(int n) {
    thread_local std::unordered_map<int, PlanEntry> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    PlanEntry e;
    e.n = n;
    {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        e.buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(n)));
        e.fwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        e.bwd = fftw_plan_dft_1d(n, e.buf, e.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!e.fwd || !e.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, std::move(e)).first->second;
}

}  // namespace

void fft(std::span<cplx> data, FftDir dir) {
    const int n = static_cast<int>(data.size());
    if (n == 0) return;
    PlanEntry& p = plan_for(n);
    auto* buf = reinterpret_cast<cplx*>(p.buf);
    std::copy(data.begin(), data.end(), buf);
    fftw_execute(dir == FftDir::Forward ? p.fwd : p.bwd);
    std::copy(buf, buf + n, data.begin());
}

void fft_rows(CGrid& g, FftDir dir) {
    for (int r = 0; r < g.rows; ++r) {
        fft(std::span<cplx>(&g.at(r, 0), static_cast<std::size_t>(g.cols)), dir);
    }
}

void fft_cols(CGrid& g, FftDir dir) {
    std::vector<cplx> col(static_cast<std::size_t>(g.rows));
    for (int c = 0; c < g.cols; ++c) {
        for (int r = 0; r < g.rows; ++r) col[static_cast<std::size_t>(r)] = g.at(r, c);
        fft(col, dir);
        for (int r = 0; r < g.rows; ++r) g.at(r, c) = col[static_cast<std::size_t>(r)];
    }
}

void shift_origin_to_front(std::span<cplx> v) {
    const auto n = v.size();
    std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2), v.end());
}

void shift_origin_to_center(std::span<cplx> v) {
    const auto n = v.size();
    std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n - n / 2), v.end());
}

void shift_rows_to_front(CGrid& g) {
    const auto pivot = static_cast<std::size_t>(g.rows / 2) * g.cols;
    std::rotate(g.data.begin(), g.data.begin() + static_cast<std::ptrdiff_t>(pivot), g.data.end());
}

void shift_rows_to_center(CGrid& g) {
    const auto pivot = static_cast<std::size_t>(g.rows - g.rows / 2) * g.cols;
    std::rotate(g.data.begin(), g.data.begin() + static_cast<std::ptrdiff_t>(pivot), g.data.end());
}

void shift_cols_to_front(CGrid& g) {
    for (int r = 0; r < g.rows; ++r) {
        shift_origin_to_front(std::span<cplx>(&g.at(r, 0), static_cast<std::size_t>(g.cols)));
    }
}

void shift_cols_to_center(CGrid& g) {
    for (int r = 0; r < g.rows; ++r) {
        shift_origin_to_center(std::span<cplx>(&g.at(r, 0), static_cast<std::size_t>(g.cols)));
    }
}

}  // namespace stf
