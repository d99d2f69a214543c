#pragma once

#include "stf/tfd.hpp"

namespace stf {

// L-statistics trim fractions. discard_low / discard_high are the fractions
// of cells removed from the low / high end of the ranking. The origin guard
// protects the auto-term peak (Chebyshev radius in bins) from the high-end
// trim. literal_bounds reproduces the "sum ranks P..Q" reading of the
// trimmed sum; kept for comparison only.
struct TrimPolicy {
    double discard_low = 0.0;
    double discard_high = 0.0;
    bool guard_origin = true;
    int guard_radius = 2;
    bool literal_bounds = false;
};

// Magnitude-ranked trimming of an ambiguity plane: the top round(Q N^2) and
// bottom round(P N^2) ranked cells are zeroed, skipping guarded cells
// without replacement. Ties rank by cell index.
AmbiguityMatrix lstat_denoise(const AmbiguityMatrix& a, const TrimPolicy& policy);

// Trimmed transform coefficient at TF cell (time_idx, freq_idx): modulates
// the plane by the inverse-transform kernel, sorts real and imaginary parts
// independently, discards the P/Q fractions at the ends of each sequence and
// rescales the kept sum by N^2/kept. With P = Q = 0 this equals the plain
// inverse-2D coefficient times N.
cplx robust_initial_transform(const AmbiguityMatrix& a, const TrimPolicy& policy, int time_idx,
                              int freq_idx);

// Full-plane trimmed transform, scaled by 1/N to match adjoint_op's
// normalization so it can seed the sparse solver.
CGrid robust_initial_tf(const AmbiguityMatrix& a, const TrimPolicy& policy);

}  // namespace stf
