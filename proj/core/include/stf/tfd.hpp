#pragma once

#include <string>
#include <vector>

#include "stf/signal.hpp"

namespace stf {

enum class TFKind { Spec, WD, Cohen, CTD4, Sparse };
enum class AmbKind { RealTime, ComplexTime, Combined, Plain };
enum class KernelFamily { Gaussian, None };

const char* to_string(TFKind k);
const char* to_string(AmbKind k);

// N x N time-frequency grid; rows index time n, columns index frequency m.
// freq_axis holds the normalized frequency (cycles/sample) of each column;
// the bin scale differs per distribution (1/(2N) for bilinear grids, 1/N
// for quadrature-lag grids) so consumers never hard-code it.
struct TFMatrix {
    CGrid values;
    std::vector<double> time_axis;
    std::vector<double> freq_axis;
    TFKind kind = TFKind::WD;

    int n() const { return values.rows; }
};

// N x N ambiguity plane; rows index doppler theta, columns index lag tau,
// both origin-centered (bin 0 is stored at index N/2).
struct AmbiguityMatrix {
    CGrid values;
    AmbKind kind = AmbKind::Plain;

    int n() const { return values.rows; }
    cplx origin() const { return values.at(values.rows / 2, values.cols / 2); }
};

// Real nonnegative weighting aligned with AmbiguityMatrix indexing.
struct Kernel {
    RGrid values;
    KernelFamily family = KernelFamily::Gaussian;
    double delta = 0.0;
};

std::vector<double> hann_window(int len);  // unit peak, odd length
std::vector<double> rect_window(int len);

std::vector<double> default_time_axis(int n);
std::vector<double> bilinear_freq_axis(int n);   // m / (2N)
std::vector<double> quadrature_freq_axis(int n); // m / N
std::vector<double> combined_freq_axis(int n);   // (2m / N) mod 1

// Shared bilinear product p[n, k] = x[(n+k) mod N] conj(x[(n-k) mod N]),
// rows index time n, columns index centered lag k. Both wigner and
// ambiguity transform this one grid along different axes.
CGrid lag_product(const Signal& x);

// SPEC[n, m] = |sum_k x[(n+k) mod N] w[k] e^{-j2pi mk/N}|^2 with k centered
// on the window. Real, nonnegative; a tone at f0 peaks at bin round(f0 N).
TFMatrix spectrogram(const Signal& x, const std::vector<double>& window);

// WD[n, m] = sum_{k=-N/2}^{N/2-1} p[n, k] e^{-j2pi mk/N}. A tone at f0
// cycles/sample peaks at bin (2 f0 N) mod N with peak value N.
TFMatrix wigner(const Signal& x);

// A[theta, k] = sum_n p[n, k] e^{-j2pi theta n/N}, origin-centered storage.
// The origin cell equals the signal energy.
AmbiguityMatrix ambiguity(const Signal& x);

// K[theta, tau] = exp(-(tau^2 + theta^2)/delta^2) over centered integer bins.
Kernel gaussian_kernel(int n, double delta);
Kernel ones_kernel(int n);

// Inverse 2D transform of K*A back to the TF plane with e^{+j theta t - j omega tau}
// signs; with an all-ones kernel this reproduces the Wigner distribution.
// The imaginary residue must stay below imag_tol * max|CD| (numeric_error
// otherwise) and is discarded.
TFMatrix cohen(const Signal& x, const Kernel& k, double imag_tol = 1e-6);

// Unitary TF plane -> ambiguity plane map,
//   A[theta, k] = (1/N) sum_{n,m} TF[n, m] e^{-j2pi theta n/N} e^{+j2pi km/N},
// and its exact inverse (complex output, no residue guard).
AmbiguityMatrix ambiguity_from_tf(const TFMatrix& tf, AmbKind kind = AmbKind::Plain);
CGrid tf_from_ambiguity(const AmbiguityMatrix& a);

// Discard the imaginary part of a complex TF grid after checking it stays
// below imag_tol * max magnitude (numeric_error otherwise).
TFMatrix take_real_tf(CGrid g, TFKind kind, std::vector<double> freq_axis, double imag_tol,
                      const char* context);

}  // namespace stf
