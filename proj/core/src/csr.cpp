#include "stf/csr.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "stf/errors.hpp"
#include "stf/fft.hpp"

namespace stf {

std::vector<std::pair<int, int>> Mask::cells() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(side) * side);
    for (int r = row_lo; r < row_lo + side; ++r) {
        for (int c = col_lo; c < col_lo + side; ++c) out.emplace_back(r, c);
    }
    return out;
}

Mask build_mask(int n, int side) {
    if (n < 1) throw std::invalid_argument("build_mask: grid size must be positive");
    if (side < 1 || side > n) throw std::invalid_argument("build_mask: side must be in [1, N]");
    Mask m;
    m.grid_n = n;
    m.side = side;
    m.row_lo = n / 2 - (side - 1) / 2;
    m.col_lo = m.row_lo;
    if (m.row_lo < 0 || m.row_lo + side > n) {
        m.row_lo = std::clamp(m.row_lo, 0, n - side);
        m.col_lo = m.row_lo;
    }
    return m;
}

MeasurementSet select_measurements(const AmbiguityMatrix& a, const Mask& mask, double fraction,
                                   std::uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0) {
        throw std::invalid_argument("select_measurements: fraction must be in (0, 1]");
    }
    if (mask.grid_n != a.n()) throw std::invalid_argument("select_measurements: mask grid mismatch");

    std::vector<std::pair<int, int>> pool = mask.cells();
    const std::size_t total = pool.size();
    const std::size_t want = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(total)));
    const std::size_t count = std::min(std::max<std::size_t>(want, 1), total);

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, total - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());  // canonical order; the draw fixed the subset

    MeasurementSet meas;
    meas.grid_n = a.n();
    meas.seed = seed;
    meas.fraction = fraction;
    meas.entries.reserve(count);
    for (const auto& [r, c] : pool) meas.entries.push_back({r, c, a.values.at(r, c)});
    return meas;
}

MeasurementSet full_measurements(const AmbiguityMatrix& a) {
    MeasurementSet meas;
    meas.grid_n = a.n();
    meas.fraction = 1.0;
    meas.entries.reserve(a.values.size());
    for (int r = 0; r < a.n(); ++r) {
        for (int c = 0; c < a.n(); ++c) meas.entries.push_back({r, c, a.values.at(r, c)});
    }
    return meas;
}

namespace {

// Unitary TF -> ambiguity transform of the full grid (centered storage).
CGrid forward_full(const CGrid& sigma) {
    CGrid g = sigma;
    const int n = g.rows;
    fft_cols(g, FftDir::Forward);
    fft_rows(g, FftDir::Backward);
    shift_rows_to_center(g);
    shift_cols_to_center(g);
    const double s = 1.0 / static_cast<double>(n);
    for (cplx& z : g.data) z *= s;
    return g;
}

CGrid adjoint_full(CGrid g) {
    const int n = g.rows;
    shift_rows_to_front(g);
    shift_cols_to_front(g);
    fft_cols(g, FftDir::Backward);
    fft_rows(g, FftDir::Forward);
    const double s = 1.0 / static_cast<double>(n);
    for (cplx& z : g.data) z *= s;
    return g;
}

void check_idx(const std::vector<std::pair<int, int>>& idx, int n) {
    for (const auto& [r, c] : idx) {
        if (r < 0 || r >= n || c < 0 || c >= n) {
            throw std::invalid_argument("measurement index outside the grid");
        }
    }
}

double lasso_objective(const CGrid& sigma, const std::vector<cplx>& res, double lambda) {
    double l1 = 0.0;
    for (const cplx& z : sigma.data) l1 += std::abs(z);
    double fit = 0.0;
    for (const cplx& z : res) fit += std::norm(z);
    return lambda * l1 + 0.5 * fit;
}

}  // namespace

std::vector<cplx> forward_op(const CGrid& sigma, const std::vector<std::pair<int, int>>& idx) {
    if (sigma.rows != sigma.cols) throw std::invalid_argument("forward_op: square grid required");
    check_idx(idx, sigma.rows);
    const CGrid amb = forward_full(sigma);
    std::vector<cplx> out;
    out.reserve(idx.size());
    for (const auto& [r, c] : idx) out.push_back(amb.at(r, c));
    return out;
}

std::vector<cplx> forward_op(const TFMatrix& sigma, const std::vector<std::pair<int, int>>& idx) {
    return forward_op(sigma.values, idx);
}

CGrid adjoint_op(const std::vector<cplx>& v, const std::vector<std::pair<int, int>>& idx, int n) {
    if (v.size() != idx.size()) throw std::invalid_argument("adjoint_op: value/index length mismatch");
    check_idx(idx, n);
    CGrid g(n, n);
    for (std::size_t i = 0; i < idx.size(); ++i) g.at(idx[i].first, idx[i].second) += v[i];
    return adjoint_full(std::move(g));
}

cplx soft_threshold(cplx z, double t) {
    const double mag = std::abs(z);
    if (mag <= t) return cplx(0.0, 0.0);
    return z * ((mag - t) / mag);
}

std::pair<TFMatrix, SolverReport> ista_solve(const MeasurementSet& meas, const SolverConfig& cfg,
                                             const CGrid* initial, std::vector<double> freq_axis) {
    if (meas.entries.empty()) throw std::invalid_argument("ista_solve: empty measurement set");
    if (!(cfg.step > 0.0) || cfg.step > 1.0) throw std::invalid_argument("ista_solve: step must be in (0, 1]");
    if (!(cfg.lambda_rel > 0.0) || cfg.lambda_rel > 1.0) {
        throw std::invalid_argument("ista_solve: lambda_rel must be in (0, 1]");
    }
    const int n = meas.grid_n;

    std::vector<std::pair<int, int>> idx;
    std::vector<cplx> v;
    idx.reserve(meas.entries.size());
    v.reserve(meas.entries.size());
    for (const MeasEntry& e : meas.entries) {
        idx.emplace_back(e.row, e.col);
        v.push_back(e.value);
    }

    const CGrid backproj = adjoint_op(v, idx, n);
    const double lambda = cfg.lambda_rel * max_abs(backproj);
    CGrid sigma = initial ? *initial : backproj;
    if (initial && (initial->rows != n || initial->cols != n)) {
        throw std::invalid_argument("ista_solve: initial grid size mismatch");
    }

    auto residual = [&](const CGrid& s) {
        std::vector<cplx> r = forward_op(s, idx);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= v[i];
        return r;
    };

    SolverReport report;
    std::vector<cplx> res = residual(sigma);
    double obj = lasso_objective(sigma, res, lambda);
    if (!std::isfinite(obj)) throw numeric_error("ista_solve: non-finite objective");
    report.objective_trace.push_back(obj);

    double step = cfg.step;
    for (int it = 0; it < cfg.max_iters; ++it) {
        const CGrid grad = adjoint_op(res, idx, n);

        CGrid next(n, n);
        std::vector<cplx> next_res;
        double next_obj = obj;
        bool accepted = false;
        for (int half = 0; half < 60; ++half) {
            for (std::size_t i = 0; i < sigma.data.size(); ++i) {
                next.data[i] = soft_threshold(sigma.data[i] - step * grad.data[i], step * lambda);
            }
            next_res = residual(next);
            next_obj = lasso_objective(next, next_res, lambda);
            if (!std::isfinite(next_obj)) throw numeric_error("ista_solve: non-finite objective");
            if (next_obj <= obj) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            report.converged = true;
            break;
        }

        const double drop = obj - next_obj;
        sigma = std::move(next);
        res = std::move(next_res);
        obj = next_obj;
        report.objective_trace.push_back(obj);
        report.iterations = it + 1;
        if (drop <= cfg.rel_tol * std::max(std::abs(obj), 1e-300)) {
            report.converged = true;
            break;
        }
    }
    report.final_objective = obj;

    if (cfg.debias) {
        // Least-squares refit on the recovered support, warm-started from the
        // shrunk iterate; removes the soft-threshold bias. Only well-posed
        // refits run: past half the measurement count the normal equations
        // are (near) singular and the refit would fit noise.
        std::vector<std::uint8_t> support(sigma.data.size());
        std::size_t support_size = 0;
        for (std::size_t i = 0; i < sigma.data.size(); ++i) {
            support[i] = sigma.data[i] != cplx(0.0, 0.0) ? 1 : 0;
            support_size += support[i];
        }
        if (support_size > 0 && support_size <= idx.size() / 2) {
            auto mask_to_support = [&](CGrid& g) {
                for (std::size_t i = 0; i < g.data.size(); ++i) {
                    if (!support[i]) g.data[i] = cplx(0.0, 0.0);
                }
            };
            auto normal_apply = [&](const CGrid& x) {
                CGrid y = adjoint_op(forward_op(x, idx), idx, n);
                mask_to_support(y);
                return y;
            };
            auto dot = [](const CGrid& a, const CGrid& b) {
                cplx s(0.0, 0.0);
                for (std::size_t i = 0; i < a.data.size(); ++i) s += std::conj(a.data[i]) * b.data[i];
                return s;
            };

            CGrid rhs = adjoint_op(v, idx, n);
            mask_to_support(rhs);
            CGrid r = rhs;
            const CGrid an = normal_apply(sigma);
            for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] -= an.data[i];
            CGrid p = r;
            double rr = dot(r, r).real();
            const double rr0 = rr;
            for (int it = 0; it < 100 && rr > 1e-24 * std::max(rr0, 1.0); ++it) {
                const CGrid ap = normal_apply(p);
                const double pap = dot(p, ap).real();
                if (!(pap > 0.0)) break;
                const double alpha = rr / pap;
                for (std::size_t i = 0; i < sigma.data.size(); ++i) {
                    sigma.data[i] += alpha * p.data[i];
                    r.data[i] -= alpha * ap.data[i];
                }
                const double rr_new = dot(r, r).real();
                const double beta = rr_new / rr;
                rr = rr_new;
                for (std::size_t i = 0; i < p.data.size(); ++i) p.data[i] = r.data[i] + beta * p.data[i];
            }
        }
    }

    TFMatrix tf;
    tf.kind = TFKind::Sparse;
    tf.values = std::move(sigma);
    tf.time_axis = default_time_axis(n);
    tf.freq_axis = freq_axis.empty() ? quadrature_freq_axis(n) : std::move(freq_axis);
    return {std::move(tf), std::move(report)};
}

}  // namespace stf
