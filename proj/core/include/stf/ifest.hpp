#pragma once

#include <vector>

#include "stf/signal.hpp"
#include "stf/tfd.hpp"

namespace stf {

// Per-time frequency-bin estimates for one tracked component. Where the
// tracker loses lock the previous estimate is carried forward and the column
// is marked untracked.
struct IFTrack {
    std::vector<int> bins;
    std::vector<std::uint8_t> tracked;
    int component = 0;
};

// Analytic per-component instantaneous frequency, cycles/sample.
struct IFTruth {
    std::vector<std::vector<double>> freq;
};

// Peak separation / lock-loss radii; zero selects the defaults
// ceil(Nf/(8K)) and Nf/8.
struct TrackingParams {
    int min_separation = 0;
    int lock_radius = 0;
};

// Per column, the K largest separated local maxima of |tf|, associated
// across columns by nearest-neighbor continuity (circular bin distance,
// ties to the lower bin). Throws tracking_error when fewer than K separated
// peaks exist at the first column.
std::vector<IFTrack> estimate_if(const TFMatrix& tf, int k, const TrackingParams& params = {});

struct MSEResult {
    std::vector<double> mse;  // per component, squared bins of the source grid
    bool failed = false;      // some component lost lock on > 25% of the interior
    int interior_begin = 0;
    int interior_end = 0;  // one past
};

// A reconstruction counts as failed outright when any component exceeds
// this many squared bins of IF error.
inline constexpr double failed_mse_threshold = 500.0;

IFTruth if_truth(const PhaseSpec& spec, int n, double sample_rate);

// Mean squared circular bin error over the interior columns (10% trimmed at
// each edge), with truth components matched to tracks by the minimal-MSE
// assignment. Truth frequencies are converted to bins through the source
// freq_axis.
MSEResult mse_if(const std::vector<IFTrack>& tracks, const IFTruth& truth, const TFMatrix& source);

bool classify_failed(const MSEResult& r);

}  // namespace stf
