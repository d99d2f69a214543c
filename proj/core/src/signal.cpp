#include "stf/signal.hpp"

#include <cmath>
#include <stdexcept>

#include "stf/errors.hpp"
#include "stf/fft.hpp"

namespace stf {

void validate(const Signal& x) {
    const int n = x.size();
    if (n < 8) throw std::invalid_argument("signal length must be at least 8");
    if (n % 2 != 0) throw std::invalid_argument("signal length must be even");
    for (const cplx& z : x.samples) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("signal contains non-finite samples");
        }
    }
    if (!(x.sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");
}

double phase_value(const PhaseComponent& c, double t) {
    double phi = 0.0;
    for (const PhaseTerm& term : c.terms) {
        phi += term.kind == PhaseTermKind::Cosine ? term.amp * std::cos(term.rate * t)
                                                  : term.amp * term.rate * t;
    }
    return phi;
}

double phase_derivative(const PhaseComponent& c, double t) {
    double dphi = 0.0;
    for (const PhaseTerm& term : c.terms) {
        dphi += term.kind == PhaseTermKind::Cosine ? -term.amp * term.rate * std::sin(term.rate * t)
                                                   : term.amp * term.rate;
    }
    return dphi;
}

double natural_sample_rate(const PhaseSpec& spec, int n) {
    const double span = spec.t_end - spec.t_start;
    if (!(span > 0.0)) throw std::invalid_argument("phase spec has empty time interval");
    return static_cast<double>(n) / span;
}

Signal gen_fm_signal(const PhaseSpec& spec, int n, double sample_rate) {
    if (n < 8 || n % 2 != 0) throw std::invalid_argument("signal length must be even and >= 8");
    if (spec.components.empty()) throw std::invalid_argument("phase spec has no components");
    for (const PhaseComponent& c : spec.components) {
        if (c.terms.empty()) throw std::invalid_argument("phase component has no terms");
        for (const PhaseTerm& term : c.terms) {
            if (!std::isfinite(term.amp) || !std::isfinite(term.rate)) {
                throw std::invalid_argument("phase term coefficients must be finite");
            }
        }
    }
    if (!(sample_rate > 0.0)) throw std::invalid_argument("sample rate must be positive");

    Signal x;
    x.sample_rate = sample_rate;
    x.samples.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = spec.t_start + static_cast<double>(i) / sample_rate;
        cplx acc = 0.0;
        for (const PhaseComponent& c : spec.components) {
            const double phi = phase_value(c, t);
            acc += cplx(std::cos(phi), std::sin(phi));
        }
        x.samples[static_cast<std::size_t>(i)] = acc;
    }
    return x;
}

PhaseSpec two_component_radar_spec() {
    PhaseSpec spec;
    spec.t_start = -1.0;
    spec.t_end = 1.0;
    const double pi = two_pi / 2.0;
    PhaseComponent c1;
    c1.terms = {{1.0, PhaseTermKind::Cosine, pi},
                {0.5, PhaseTermKind::Cosine, 4.0 * pi},
                {2.25, PhaseTermKind::Linear, pi}};
    PhaseComponent c2;
    c2.terms = {{0.5, PhaseTermKind::Cosine, pi},
                {0.5, PhaseTermKind::Cosine, 3.0 * pi},
                {0.5, PhaseTermKind::Cosine, 4.0 * pi},
                {-4.0, PhaseTermKind::Linear, pi}};
    spec.components = {c1, c2};
    return spec;
}

PhaseSpec sinusoidal_fm_spec() {
    PhaseSpec spec;
    spec.t_start = -1.0;
    spec.t_end = 1.0;
    const double pi = two_pi / 2.0;
    PhaseComponent c;
    c.terms = {{4.0, PhaseTermKind::Cosine, pi},
               {2.0 / 3.0, PhaseTermKind::Cosine, 3.0 * pi},
               {2.0 / 3.0, PhaseTermKind::Cosine, 5.0 * pi}};
    spec.components = {c};
    return spec;
}

PhaseSpec tone_spec(double freq_cycles_per_sample, double sample_rate) {
    PhaseSpec spec;
    spec.t_start = 0.0;
    spec.t_end = 1.0;  // span is irrelevant for a pure tone; callers pass sample_rate explicitly
    PhaseComponent c;
    c.terms = {{1.0, PhaseTermKind::Linear, two_pi * freq_cycles_per_sample * sample_rate}};
    spec.components = {c};
    return spec;
}

cplx complex_power(cplx z, cplx p) {
    if (z == cplx(0.0, 0.0)) throw std::domain_error("complex_power: zero base");
    return std::exp(p * std::log(z));  // std::log is the principal branch
}

bool near_branch_cut(cplx z, double tol) {
    const double pi = two_pi / 2.0;
    return std::abs(std::arg(z)) > pi - tol;
}

Signal eval_complex_lag(const Signal& x, double a, double b) {
    validate(x);
    const int n = x.size();
    if (std::abs(b) > static_cast<double>(n) / 4.0) {
        throw std::domain_error("imaginary lag exceeds N/4 guard");
    }

    std::vector<cplx> spec(x.samples);
    fft(spec, FftDir::Forward);

    for (int m = 0; m < n; ++m) {
        const int l = m < n / 2 ? m : m - n;  // signed frequency index
        if (l == -n / 2) {
            spec[static_cast<std::size_t>(m)] = 0.0;
            continue;
        }
        const double w = two_pi * static_cast<double>(l) / static_cast<double>(n);
        const cplx weight = std::exp(cplx(-w * b, w * a));
        spec[static_cast<std::size_t>(m)] *= weight;
    }
    for (const cplx& z : spec) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw numeric_error("eval_complex_lag: weighted spectrum not finite");
        }
    }

    fft(spec, FftDir::Backward);
    Signal y;
    y.sample_rate = x.sample_rate;
    y.samples.resize(static_cast<std::size_t>(n));
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int i = 0; i < n; ++i) y.samples[static_cast<std::size_t>(i)] = spec[static_cast<std::size_t>(i)] * inv_n;
    return y;
}

}  // namespace stf
