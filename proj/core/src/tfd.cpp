#include "stf/tfd.hpp"

#include <cmath>
#include <stdexcept>

#include "stf/errors.hpp"
#include "stf/fft.hpp"

namespace stf {

const char* to_string(TFKind k) {
    switch (k) {
        case TFKind::Spec: return "SPEC";
        case TFKind::WD: return "WD";
        case TFKind::Cohen: return "COHEN";
        case TFKind::CTD4: return "CTD4";
        case TFKind::Sparse: return "SPARSE";
    }
    return "?";
}

const char* to_string(AmbKind k) {
    switch (k) {
        case AmbKind::RealTime: return "REAL_TIME";
        case AmbKind::ComplexTime: return "COMPLEX_TIME";
        case AmbKind::Combined: return "COMBINED";
        case AmbKind::Plain: return "PLAIN";
    }
    return "?";
}

std::vector<double> hann_window(int len) {
    if (len < 1 || len % 2 == 0) throw std::invalid_argument("window length must be odd and positive");
    std::vector<double> w(static_cast<std::size_t>(len));
    if (len == 1) {
        w[0] = 1.0;
        return w;
    }
    for (int i = 0; i < len; ++i) {
        w[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(two_pi * i / (len - 1)));
    }
    return w;
}

std::vector<double> rect_window(int len) {
    if (len < 1 || len % 2 == 0) throw std::invalid_argument("window length must be odd and positive");
    return std::vector<double>(static_cast<std::size_t>(len), 1.0);
}

std::vector<double> default_time_axis(int n) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i);
    return t;
}

std::vector<double> bilinear_freq_axis(int n) {
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) f[static_cast<std::size_t>(m)] = static_cast<double>(m) / (2.0 * n);
    return f;
}

std::vector<double> quadrature_freq_axis(int n) {
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) f[static_cast<std::size_t>(m)] = static_cast<double>(m) / n;
    return f;
}

std::vector<double> combined_freq_axis(int n) {
    std::vector<double> f(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        f[static_cast<std::size_t>(m)] = std::fmod(2.0 * static_cast<double>(m) / n, 1.0);
    }
    return f;
}

CGrid lag_product(const Signal& x) {
    validate(x);
    const int n = x.size();
    CGrid p(n, n);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const int k = centered_bin(col, n);
            const cplx a = x.samples[static_cast<std::size_t>(wrap_index(row + k, n))];
            const cplx b = x.samples[static_cast<std::size_t>(wrap_index(row - k, n))];
            p.at(row, col) = a * std::conj(b);
        }
    }
    return p;
}

TFMatrix spectrogram(const Signal& x, const std::vector<double>& window) {
    validate(x);
    const int n = x.size();
    const int len = static_cast<int>(window.size());
    if (len % 2 == 0 || len < 1) throw std::invalid_argument("spectrogram window length must be odd");
    if (len > n) throw std::invalid_argument("spectrogram window longer than signal");

    const int half = (len - 1) / 2;
    TFMatrix tf;
    tf.kind = TFKind::Spec;
    tf.values = CGrid(n, n);
    tf.time_axis = default_time_axis(n);
    tf.freq_axis = quadrature_freq_axis(n);

    std::vector<cplx> frame(static_cast<std::size_t>(n));
    for (int row = 0; row < n; ++row) {
        std::fill(frame.begin(), frame.end(), cplx(0.0, 0.0));
        for (int k = -half; k <= half; ++k) {
            frame[static_cast<std::size_t>(wrap_index(k, n))] =
                x.samples[static_cast<std::size_t>(wrap_index(row + k, n))] *
                window[static_cast<std::size_t>(k + half)];
        }
        fft(frame, FftDir::Forward);
        for (int m = 0; m < n; ++m) {
            const double mag = std::abs(frame[static_cast<std::size_t>(m)]);
            tf.values.at(row, m) = mag * mag;
        }
    }
    return tf;
}

TFMatrix wigner(const Signal& x) {
    CGrid p = lag_product(x);
    const int n = p.rows;
    shift_cols_to_front(p);     // centered lag -> DFT order
    fft_rows(p, FftDir::Forward);

    TFMatrix tf;
    tf.kind = TFKind::WD;
    tf.values = std::move(p);
    tf.time_axis = default_time_axis(n);
    tf.freq_axis = bilinear_freq_axis(n);
    return tf;
}

AmbiguityMatrix ambiguity(const Signal& x) {
    CGrid p = lag_product(x);
    fft_cols(p, FftDir::Forward);  // time -> doppler
    shift_rows_to_center(p);

    AmbiguityMatrix a;
    a.kind = AmbKind::Plain;
    a.values = std::move(p);
    return a;
}

Kernel gaussian_kernel(int n, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("gaussian kernel delta must be positive");
    Kernel k;
    k.family = KernelFamily::Gaussian;
    k.delta = delta;
    k.values = RGrid(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double th = centered_bin(r, n);
            const double ta = centered_bin(c, n);
            k.values.at(r, c) = std::exp(-(ta * ta + th * th) / (delta * delta));
        }
    }
    return k;
}

Kernel ones_kernel(int n) {
    Kernel k;
    k.family = KernelFamily::None;
    k.delta = 0.0;
    k.values = RGrid(n, n, 1.0);
    return k;
}

namespace {

// Inverse of ambiguity_from_tf: TF[n, m] = (1/N) sum A e^{+j theta n} e^{-j km}.
CGrid inverse_2d(CGrid g) {
    const int n = g.rows;
    shift_rows_to_front(g);
    shift_cols_to_front(g);
    fft_cols(g, FftDir::Backward);  // doppler -> time
    fft_rows(g, FftDir::Forward);   // lag -> frequency
    const double s = 1.0 / static_cast<double>(n);
    for (cplx& z : g.data) z *= s;
    return g;
}

}  // namespace

TFMatrix take_real_tf(CGrid g, TFKind kind, std::vector<double> freq_axis, double imag_tol,
                      const char* context) {
    double mx = 0.0;
    double mi = 0.0;
    for (const cplx& z : g.data) {
        mx = std::max(mx, std::abs(z));
        mi = std::max(mi, std::abs(z.imag()));
    }
    if (mi > imag_tol * mx) {
        throw numeric_error(std::string(context) + ": imaginary residue above discard threshold");
    }
    for (cplx& z : g.data) z = cplx(z.real(), 0.0);

    TFMatrix tf;
    tf.kind = kind;
    tf.time_axis = default_time_axis(g.rows);
    tf.freq_axis = std::move(freq_axis);
    tf.values = std::move(g);
    return tf;
}

TFMatrix cohen(const Signal& x, const Kernel& k, double imag_tol) {
    AmbiguityMatrix a = ambiguity(x);
    const int n = a.n();
    if (k.values.rows != n || k.values.cols != n) {
        throw std::invalid_argument("cohen: kernel grid does not match signal length");
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) a.values.at(r, c) *= k.values.at(r, c);
    }
    return take_real_tf(inverse_2d(std::move(a.values)), TFKind::Cohen, bilinear_freq_axis(n),
                        imag_tol, "cohen");
}

AmbiguityMatrix ambiguity_from_tf(const TFMatrix& tf, AmbKind kind) {
    CGrid g = tf.values;
    const int n = g.rows;
    fft_cols(g, FftDir::Forward);   // time -> doppler
    fft_rows(g, FftDir::Backward);  // frequency -> lag
    shift_rows_to_center(g);
    shift_cols_to_center(g);
    const double s = 1.0 / static_cast<double>(n);
    for (cplx& z : g.data) z *= s;

    AmbiguityMatrix a;
    a.kind = kind;
    a.values = std::move(g);
    return a;
}

CGrid tf_from_ambiguity(const AmbiguityMatrix& a) {
    return inverse_2d(a.values);
}

}  // namespace stf
