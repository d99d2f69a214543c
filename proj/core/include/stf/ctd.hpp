#pragma once

#include <cstdint>
#include <vector>

#include "stf/tfd.hpp"

namespace stf {

// Complex-time moment grid; rows index time n, columns index centered lag k.
// The order-4 moment evaluates the signal at the four quarter-lag points
// +-k/4 and +-jk/4:
//   R4[n, k] = x(n + k/4) conj(x(n - k/4))
//              * x(n + jk/4)^{-j} * x(n - jk/4)^{+j}
// which cancels the third phase derivative so the residual spread starts at
// the fifth. The order-2 moment is the plain bilinear product x[n+k]x*[n-k].
// branch_flags marks cells where a complex power was evaluated within 1e-3
// of the Log branch cut.
struct MomentMatrix {
    CGrid values;
    int order = 4;
    std::vector<std::uint8_t> branch_flags;

    double flag_density() const;
};

enum class CTDWindowFamily { Delta, Rect, Hann };

// Doppler-smoothing window over centered epsilon bins, unit peak. Width must
// be odd, or equal to the grid size n for the full-plane window whose
// inverse transform is an exact discrete delta.
struct CTDWindow {
    std::vector<double> values;  // length n, centered storage
    CTDWindowFamily family = CTDWindowFamily::Rect;
    int width = 0;
};

CTDWindow ctd_window(CTDWindowFamily family, int width, int n);
CTDWindow full_width_window(int n);

MomentMatrix moment(const Signal& x, int order);

// Per-time DFT of the moment over lag. A tone at f0 cycles/sample peaks at
// bin round(f0 N) for order 4; freq_axis records the mapping.
TFMatrix ctd_direct(const Signal& x, int order);
TFMatrix ctd_from_moment(const MomentMatrix& m);

// A_r[theta, k] = DFT over n of x(n + k/order) conj(x(n - k/order)).
// For order 2 the evaluation offsets are the integer lags, so this equals
// the plain ambiguity function.
AmbiguityMatrix ambiguity_real(const Signal& x, int order);

// A_ct[theta, k] = DFT over n of the complex-lag factor
//   x(n + jk/4)^{-j} x(n - jk/4)^{+j}.
// literal_imag_part switches to the degenerate reading that transforms
// Im(R4) instead; kept for comparison only.
AmbiguityMatrix ambiguity_complex(const Signal& x, int order, bool literal_imag_part = false);

// DFT over n of the full moment: the ambiguity plane whose inverse 2D
// transform is ctd_direct. This is the plane the sparse-reconstruction
// pipeline draws measurements from.
AmbiguityMatrix moment_ambiguity(const Signal& x, int order);

// Elementwise kernel weighting; kind preserved.
AmbiguityMatrix kernel_filter(const AmbiguityMatrix& a, const Kernel& k);

// Doppler-convolution combination of the real-time and complex-time
// ambiguity planes:
//   A[theta, tau] = (1/N) sum_{tau1} wt[tau - 2 tau1]
//                        * sum_{theta1} ar[theta1, tau1] act[theta-theta1, tau-tau1]
// where wt is the inverse transform of the epsilon window, evaluated over
// the principal lag window [-N/2, N/2). With the full-width window wt is an
// exact delta and the sum collapses to
//   A[theta, tau] = sum_{theta1} ar[theta1, tau/2] act[theta-theta1, tau/2]
// on even tau, zero on odd tau.
AmbiguityMatrix combine_ambiguity(const AmbiguityMatrix& ar, const AmbiguityMatrix& act,
                                  const CTDWindow& w);

// Inverse 2D transform (e^{+j theta t - j omega tau}) back to the TF plane;
// real part taken under the same residue guard as cohen. Exact inverse of
// ambiguity_from_tf.
TFMatrix ctd_from_ambiguity(const AmbiguityMatrix& a, double imag_tol = 1e-6);

}  // namespace stf
