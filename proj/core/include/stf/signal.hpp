#pragma once

#include <vector>

#include "stf/grid.hpp"

namespace stf {

// Uniformly sampled complex signal, treated everywhere as one period of an
// N-periodic sequence (circular boundary), so all transform dualities are
// exact on the grid.
struct Signal {
    std::vector<cplx> samples;
    double sample_rate = 1.0;  // samples per unit time

    int size() const { return static_cast<int>(samples.size()); }
};

// Throws std::invalid_argument unless N >= 8, N even and all samples finite.
void validate(const Signal& x);

enum class PhaseTermKind { Cosine, Linear };

// One additive term of a component phase, in radians:
//   Cosine: amp * cos(rate * t)
//   Linear: amp * rate * t
struct PhaseTerm {
    double amp = 0.0;
    PhaseTermKind kind = PhaseTermKind::Cosine;
    double rate = 0.0;  // radians per unit time
};

struct PhaseComponent {
    std::vector<PhaseTerm> terms;
};

// Multicomponent FM phase law over the time interval [t_start, t_end).
struct PhaseSpec {
    std::vector<PhaseComponent> components;
    double t_start = -1.0;
    double t_end = 1.0;
};

double phase_value(const PhaseComponent& c, double t);
double phase_derivative(const PhaseComponent& c, double t);  // radians per unit time

// Sample rate that makes n samples span exactly [t_start, t_end).
double natural_sample_rate(const PhaseSpec& spec, int n);

// x[n] = sum_c exp(j phi_c(t_n)), t_n = t_start + n / sample_rate.
// Unit amplitude per component; phases are evaluated exactly.
Signal gen_fm_signal(const PhaseSpec& spec, int n, double sample_rate);

// The two-component fast-FM benchmark signal,
//   x(t) = e^{j(2cos(pi t) + cos(4pi t) + 4.5pi t)/2}
//        + e^{j(cos(pi t) + cos(3pi t) + cos(4pi t) - 8pi t)/2},  t in [-1, 1).
PhaseSpec two_component_radar_spec();

// The monocomponent sinusoidally modulated signal,
//   x(t) = e^{j(4cos(pi t) + (2/3)cos(3pi t) + (2/3)cos(5pi t))}.
PhaseSpec sinusoidal_fm_spec();

// Single pure tone at freq cycles/sample (rate in the sampled domain).
PhaseSpec tone_spec(double freq_cycles_per_sample, double sample_rate = 1.0);

// z^p through the principal branch: exp(p Log z), Im(Log z) in (-pi, pi].
// Throws std::domain_error for z == 0.
cplx complex_power(cplx z, cplx p);

// True when arg(z) lies within `tol` of the Log branch cut at +-pi.
bool near_branch_cut(cplx z, double tol = 1e-3);

// Signal evaluated at complex time n + a + jb for every n, computed in the
// frequency domain:
//   y = IDFT{ X[l] e^{j w_l a} e^{-w_l b} },  w_l = 2pi l/N, l in [-N/2, N/2)
// with the Nyquist bin l = -N/2 zeroed before weighting. Requires
// |b| <= N/4 (std::domain_error beyond); throws numeric_error if the
// weighted spectrum is not finite.
Signal eval_complex_lag(const Signal& x, double a, double b);

}  // namespace stf
