#include "stf/ctd.hpp"

#include <cmath>
#include <stdexcept>

#include "stf/errors.hpp"
#include "stf/fft.hpp"

namespace stf {

namespace {

bool is_zero_signal(const Signal& x) {
    for (const cplx& z : x.samples) {
        if (z != cplx(0.0, 0.0)) return false;
    }
    return true;
}

void check_order(int order) {
    if (order != 2 && order != 4) throw std::invalid_argument("moment order must be 2 or 4");
}

// Fractional real-lag product x(n + k/order) conj(x(n - k/order)) for each
// centered lag column.
CGrid fractional_lag_product(const Signal& x, int order) {
    const int n = x.size();
    CGrid r(n, n);
    for (int col = 0; col < n; ++col) {
        const double q = static_cast<double>(centered_bin(col, n)) / order;
        const Signal xp = eval_complex_lag(x, +q, 0.0);
        const Signal xm = eval_complex_lag(x, -q, 0.0);
        for (int row = 0; row < n; ++row) {
            r.at(row, col) = xp.samples[static_cast<std::size_t>(row)] *
                             std::conj(xm.samples[static_cast<std::size_t>(row)]);
        }
    }
    return r;
}

// Complex-lag factor x(n + jk/4)^{-j} x(n - jk/4)^{+j}; flags cells whose
// bases sit near the Log branch cut.
CGrid complex_lag_factor(const Signal& x, std::vector<std::uint8_t>* flags) {
    const int n = x.size();
    const cplx minus_j(0.0, -1.0);
    const cplx plus_j(0.0, 1.0);
    CGrid c(n, n);
    for (int col = 0; col < n; ++col) {
        const double q = static_cast<double>(centered_bin(col, n)) / 4.0;
        const Signal xjp = eval_complex_lag(x, 0.0, +q);
        const Signal xjm = eval_complex_lag(x, 0.0, -q);
        for (int row = 0; row < n; ++row) {
            const cplx b3 = xjp.samples[static_cast<std::size_t>(row)];
            const cplx b4 = xjm.samples[static_cast<std::size_t>(row)];
            if (flags) {
                (*flags)[static_cast<std::size_t>(row) * n + col] =
                    near_branch_cut(b3) || near_branch_cut(b4) ? 1 : 0;
            }
            c.at(row, col) = complex_power(b3, minus_j) * complex_power(b4, plus_j);
        }
    }
    return c;
}

AmbiguityMatrix doppler_transform(CGrid g, AmbKind kind) {
    fft_cols(g, FftDir::Forward);  // time -> doppler
    shift_rows_to_center(g);
    AmbiguityMatrix a;
    a.kind = kind;
    a.values = std::move(g);
    return a;
}

std::vector<double> ctd_freq_axis(int order, int n) {
    return order == 2 ? bilinear_freq_axis(n) : quadrature_freq_axis(n);
}

}  // namespace

double MomentMatrix::flag_density() const {
    if (branch_flags.empty()) return 0.0;
    std::size_t c = 0;
    for (std::uint8_t f : branch_flags) c += f;
    return static_cast<double>(c) / static_cast<double>(branch_flags.size());
}

CTDWindow ctd_window(CTDWindowFamily family, int width, int n) {
    if (family == CTDWindowFamily::Delta) width = 1;
    const bool full = (width == n && family == CTDWindowFamily::Rect);
    if (!full && (width < 1 || width > n || width % 2 == 0)) {
        throw std::invalid_argument("ctd window width must be odd (or the full grid for rect)");
    }
    CTDWindow w;
    w.family = family;
    w.width = width;
    w.values.assign(static_cast<std::size_t>(n), 0.0);
    if (full) {
        std::fill(w.values.begin(), w.values.end(), 1.0);
        return w;
    }
    const int half = (width - 1) / 2;
    std::vector<double> taper;
    switch (family) {
        case CTDWindowFamily::Delta: taper = {1.0}; break;
        case CTDWindowFamily::Rect: taper = rect_window(width); break;
        case CTDWindowFamily::Hann: taper = hann_window(width); break;
    }
    for (int e = -half; e <= half; ++e) {
        w.values[static_cast<std::size_t>(storage_index(e, n))] = taper[static_cast<std::size_t>(e + half)];
    }
    return w;
}

CTDWindow full_width_window(int n) { return ctd_window(CTDWindowFamily::Rect, n, n); }

MomentMatrix moment(const Signal& x, int order) {
    check_order(order);
    validate(x);
    const int n = x.size();

    MomentMatrix m;
    m.order = order;
    m.branch_flags.assign(static_cast<std::size_t>(n) * n, 0);
    if (order == 2) {
        m.values = lag_product(x);
        return m;
    }
    m.values = fractional_lag_product(x, 4);
    const CGrid c = complex_lag_factor(x, &m.branch_flags);
    for (std::size_t i = 0; i < m.values.size(); ++i) m.values.data[i] *= c.data[i];
    return m;
}

TFMatrix ctd_from_moment(const MomentMatrix& m) {
    CGrid g = m.values;
    const int n = g.rows;
    shift_cols_to_front(g);
    fft_rows(g, FftDir::Forward);  // lag -> frequency

    TFMatrix tf;
    tf.kind = TFKind::CTD4;
    tf.values = std::move(g);
    tf.time_axis = default_time_axis(n);
    tf.freq_axis = ctd_freq_axis(m.order, n);
    return tf;
}

TFMatrix ctd_direct(const Signal& x, int order) {
    check_order(order);
    validate(x);
    if (is_zero_signal(x)) {
        TFMatrix tf;
        tf.kind = TFKind::CTD4;
        tf.values = CGrid(x.size(), x.size());
        tf.time_axis = default_time_axis(x.size());
        tf.freq_axis = ctd_freq_axis(order, x.size());
        return tf;
    }
    return ctd_from_moment(moment(x, order));
}

AmbiguityMatrix ambiguity_real(const Signal& x, int order) {
    check_order(order);
    validate(x);
    if (order == 2) {
        AmbiguityMatrix a = ambiguity(x);
        a.kind = AmbKind::RealTime;
        return a;
    }
    return doppler_transform(fractional_lag_product(x, order), AmbKind::RealTime);
}

AmbiguityMatrix ambiguity_complex(const Signal& x, int order, bool literal_imag_part) {
    if (order != 4) throw std::invalid_argument("complex-time ambiguity requires order 4");
    validate(x);
    const int n = x.size();
    if (is_zero_signal(x)) {
        AmbiguityMatrix a;
        a.kind = AmbKind::ComplexTime;
        a.values = CGrid(n, n);
        return a;
    }
    if (literal_imag_part) {
        const MomentMatrix m = moment(x, 4);
        CGrid g(n, n);
        for (std::size_t i = 0; i < g.size(); ++i) g.data[i] = cplx(m.values.data[i].imag(), 0.0);
        return doppler_transform(std::move(g), AmbKind::ComplexTime);
    }
    return doppler_transform(complex_lag_factor(x, nullptr), AmbKind::ComplexTime);
}

AmbiguityMatrix moment_ambiguity(const Signal& x, int order) {
    check_order(order);
    validate(x);
    if (is_zero_signal(x)) {
        AmbiguityMatrix a;
        a.kind = AmbKind::Plain;
        a.values = CGrid(x.size(), x.size());
        return a;
    }
    return doppler_transform(CGrid(moment(x, order).values), AmbKind::Plain);
}

AmbiguityMatrix kernel_filter(const AmbiguityMatrix& a, const Kernel& k) {
    const int n = a.n();
    if (k.values.rows != n || k.values.cols != n) {
        throw std::invalid_argument("kernel_filter: grid size mismatch");
    }
    AmbiguityMatrix out = a;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) out.values.at(r, c) *= k.values.at(r, c);
    }
    return out;
}

AmbiguityMatrix combine_ambiguity(const AmbiguityMatrix& ar, const AmbiguityMatrix& act,
                                  const CTDWindow& w) {
    const int n = ar.n();
    if (act.n() != n) throw std::invalid_argument("combine_ambiguity: grid size mismatch");
    if (ar.kind != AmbKind::RealTime || act.kind != AmbKind::ComplexTime) {
        throw std::invalid_argument("combine_ambiguity: expects (REAL_TIME, COMPLEX_TIME) inputs");
    }
    if (static_cast<int>(w.values.size()) != n) {
        throw std::invalid_argument("combine_ambiguity: window grid mismatch");
    }

    // wt[s] = sum_eps W[eps] e^{j2pi eps s/N} over the principal lag window.
    std::vector<cplx> wt(static_cast<std::size_t>(n), cplx(0.0, 0.0));
    const bool exact_delta = (w.family == CTDWindowFamily::Rect && w.width == n);
    if (exact_delta) {
        wt[static_cast<std::size_t>(n / 2)] = static_cast<double>(n);
    } else {
        for (int si = 0; si < n; ++si) {
            const double s = centered_bin(si, n);
            cplx acc(0.0, 0.0);
            for (int ei = 0; ei < n; ++ei) {
                const double wv = w.values[static_cast<std::size_t>(ei)];
                if (wv == 0.0) continue;
                const double ang = two_pi * static_cast<double>(centered_bin(ei, n)) * s / n;
                acc += wv * cplx(std::cos(ang), std::sin(ang));
            }
            wt[static_cast<std::size_t>(si)] = acc;
        }
    }

    // Doppler spectra of every lag column; the theta convolution becomes a
    // pointwise product there.
    CGrid fr = ar.values;
    shift_rows_to_front(fr);
    fft_cols(fr, FftDir::Forward);
    CGrid fc = act.values;
    shift_rows_to_front(fc);
    fft_cols(fc, FftDir::Forward);

    CGrid out(n, n);
    std::vector<cplx> acc(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int tau = centered_bin(j, n);
        std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
        for (int j1 = 0; j1 < n; ++j1) {
            const int tau1 = centered_bin(j1, n);
            const int s = tau - 2 * tau1;
            if (s < -n / 2 || s >= n - n / 2) continue;
            const cplx wval = wt[static_cast<std::size_t>(storage_index(s, n))];
            if (wval == cplx(0.0, 0.0)) continue;
            const int j2 = storage_index(wrap_centered(tau - tau1, n), n);
            for (int v = 0; v < n; ++v) {
                acc[static_cast<std::size_t>(v)] += wval * fr.at(v, j1) * fc.at(v, j2);
            }
        }
        for (int v = 0; v < n; ++v) out.at(v, j) = acc[static_cast<std::size_t>(v)];
    }

    fft_cols(out, FftDir::Backward);
    shift_rows_to_center(out);
    const double s = 1.0 / (static_cast<double>(n) * n);  // conv IDFT and the overall 1/N
    for (cplx& z : out.data) z *= s;

    AmbiguityMatrix res;
    res.kind = AmbKind::Combined;
    res.values = std::move(out);
    return res;
}

TFMatrix ctd_from_ambiguity(const AmbiguityMatrix& a, double imag_tol) {
    const int n = a.n();
    std::vector<double> axis =
        a.kind == AmbKind::Combined ? combined_freq_axis(n) : quadrature_freq_axis(n);
    return take_real_tf(tf_from_ambiguity(a), TFKind::CTD4, std::move(axis), imag_tol,
                        "ctd_from_ambiguity");
}

}  // namespace stf
