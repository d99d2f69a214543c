#include "stf/ifest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stf/errors.hpp"

namespace stf {

namespace {

int circ_dist(int a, int b, int n) {
    const int d = std::abs(wrap_index(a - b, n));
    return std::min(d, n - d);
}

double circ_diff(double a, double b, int n) {
    double d = std::fmod(a - b, static_cast<double>(n));
    if (d < -n / 2.0) d += n;
    if (d >= n / 2.0) d -= n;
    return d;
}

// Local maxima of one magnitude column on the circular frequency axis,
// strongest first; ties resolve to the lower bin.
std::vector<int> column_peaks(const std::vector<double>& mag) {
    const int n = static_cast<int>(mag.size());
    std::vector<int> peaks;
    for (int m = 0; m < n; ++m) {
        const double v = mag[static_cast<std::size_t>(m)];
        if (v <= 0.0) continue;
        const double l = mag[static_cast<std::size_t>(wrap_index(m - 1, n))];
        const double r = mag[static_cast<std::size_t>(wrap_index(m + 1, n))];
        if (v >= l && v >= r) peaks.push_back(m);
    }
    std::sort(peaks.begin(), peaks.end(), [&](int a, int b) {
        const double va = mag[static_cast<std::size_t>(a)];
        const double vb = mag[static_cast<std::size_t>(b)];
        return va != vb ? va > vb : a < b;
    });
    return peaks;
}

std::vector<int> separated_peaks(const std::vector<double>& mag, int k, int sep) {
    const int n = static_cast<int>(mag.size());
    std::vector<int> chosen;
    for (int p : column_peaks(mag)) {
        bool ok = true;
        for (int c : chosen) {
            if (circ_dist(p, c, n) < sep) {
                ok = false;
                break;
            }
        }
        if (ok) {
            chosen.push_back(p);
            if (static_cast<int>(chosen.size()) == k) break;
        }
    }
    return chosen;
}

}  // namespace

std::vector<IFTrack> estimate_if(const TFMatrix& tf, int k, const TrackingParams& params) {
    if (k < 1) throw std::invalid_argument("estimate_if: component count must be positive");
    const int nt = tf.values.rows;
    const int nf = tf.values.cols;
    if (!all_finite(tf.values)) throw std::invalid_argument("estimate_if: non-finite matrix");

    const int sep = params.min_separation > 0
                        ? params.min_separation
                        : static_cast<int>(std::ceil(static_cast<double>(nf) / (8.0 * k)));
    const int lock = params.lock_radius > 0 ? params.lock_radius : nf / 8;

    std::vector<double> mag(static_cast<std::size_t>(nf));
    auto column_mag = [&](int col) {
        for (int m = 0; m < nf; ++m) mag[static_cast<std::size_t>(m)] = std::abs(tf.values.at(col, m));
    };

    // Initialization: the first column offering k separated peaks. Earlier
    // columns inherit the initial estimates and are marked untracked.
    int init_col = -1;
    std::vector<int> first;
    for (int col = 0; col < nt; ++col) {
        column_mag(col);
        first = separated_peaks(mag, k, sep);
        if (static_cast<int>(first.size()) == k) {
            init_col = col;
            break;
        }
    }
    if (init_col < 0) {
        throw tracking_error("estimate_if: fewer separated peaks than requested components");
    }
    std::sort(first.begin(), first.end());

    std::vector<IFTrack> tracks(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        tracks[static_cast<std::size_t>(c)].component = c;
        tracks[static_cast<std::size_t>(c)].bins.assign(static_cast<std::size_t>(nt),
                                                        first[static_cast<std::size_t>(c)]);
        tracks[static_cast<std::size_t>(c)].tracked.assign(static_cast<std::size_t>(nt), 1);
        for (int col = 0; col < init_col; ++col) {
            tracks[static_cast<std::size_t>(c)].tracked[static_cast<std::size_t>(col)] = 0;
        }
    }

    for (int col = init_col + 1; col < nt; ++col) {
        column_mag(col);
        std::vector<int> peaks = separated_peaks(mag, k, sep);
        std::vector<std::uint8_t> taken(peaks.size(), 0);
        for (int c = 0; c < k; ++c) {
            IFTrack& tr = tracks[static_cast<std::size_t>(c)];
            const int prev = tr.bins[static_cast<std::size_t>(col - 1)];
            int best = -1;
            int best_d = lock + 1;
            for (std::size_t p = 0; p < peaks.size(); ++p) {
                if (taken[p]) continue;
                const int d = circ_dist(peaks[p], prev, nf);
                if (d < best_d || (d == best_d && best >= 0 && peaks[p] < peaks[static_cast<std::size_t>(best)])) {
                    best = static_cast<int>(p);
                    best_d = d;
                }
            }
            if (best >= 0 && best_d <= lock) {
                taken[static_cast<std::size_t>(best)] = 1;
                tr.bins[static_cast<std::size_t>(col)] = peaks[static_cast<std::size_t>(best)];
            } else {
                tr.bins[static_cast<std::size_t>(col)] = prev;  // carried forward
                tr.tracked[static_cast<std::size_t>(col)] = 0;
            }
        }
    }
    return tracks;
}

IFTruth if_truth(const PhaseSpec& spec, int n, double sample_rate) {
    IFTruth truth;
    truth.freq.resize(spec.components.size());
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
        truth.freq[c].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double t = spec.t_start + static_cast<double>(i) / sample_rate;
            truth.freq[c][static_cast<std::size_t>(i)] =
                phase_derivative(spec.components[c], t) / two_pi / sample_rate;
        }
    }
    return truth;
}

MSEResult mse_if(const std::vector<IFTrack>& tracks, const IFTruth& truth, const TFMatrix& source) {
    const int k = static_cast<int>(tracks.size());
    if (k == 0 || truth.freq.size() != static_cast<std::size_t>(k)) {
        throw std::invalid_argument("mse_if: component count mismatch");
    }
    const int nt = static_cast<int>(tracks[0].bins.size());
    for (const auto& comp : truth.freq) {
        if (static_cast<int>(comp.size()) != nt) throw std::invalid_argument("mse_if: length mismatch");
    }
    const int nf = source.values.cols;
    if (source.freq_axis.size() < 2) throw std::invalid_argument("mse_if: missing frequency axis");
    const double binw = source.freq_axis[1] - source.freq_axis[0];

    const int edge = static_cast<int>(std::ceil(nt / 10.0));
    const int lo = edge;
    const int hi = nt - edge;
    if (hi <= lo) throw std::invalid_argument("mse_if: no interior columns");

    // Truth in source bins, wrapped onto [0, Nf).
    std::vector<std::vector<double>> tbin(truth.freq.size());
    for (std::size_t c = 0; c < truth.freq.size(); ++c) {
        tbin[c].resize(static_cast<std::size_t>(nt));
        for (int i = 0; i < nt; ++i) {
            double b = std::fmod(truth.freq[c][static_cast<std::size_t>(i)] / binw, static_cast<double>(nf));
            if (b < 0) b += nf;
            tbin[c][static_cast<std::size_t>(i)] = b;
        }
    }

    auto pair_mse = [&](int track_i, int truth_i) {
        double acc = 0.0;
        for (int i = lo; i < hi; ++i) {
            const double d = circ_diff(static_cast<double>(tracks[static_cast<std::size_t>(track_i)]
                                                               .bins[static_cast<std::size_t>(i)]),
                                       tbin[static_cast<std::size_t>(truth_i)][static_cast<std::size_t>(i)],
                                       nf);
            acc += d * d;
        }
        return acc / static_cast<double>(hi - lo);
    };

    // Minimal-MSE assignment over component permutations (K is small).
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best_perm = perm;
    double best_total = -1.0;
    do {
        double total = 0.0;
        for (int c = 0; c < k; ++c) total += pair_mse(c, perm[static_cast<std::size_t>(c)]);
        if (best_total < 0.0 || total < best_total) {
            best_total = total;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    MSEResult res;
    res.interior_begin = lo;
    res.interior_end = hi;
    res.mse.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        res.mse[static_cast<std::size_t>(c)] = pair_mse(c, best_perm[static_cast<std::size_t>(c)]);
    }
    for (const IFTrack& tr : tracks) {
        int untracked = 0;
        for (int i = lo; i < hi; ++i) untracked += tr.tracked[static_cast<std::size_t>(i)] ? 0 : 1;
        if (untracked * 4 > hi - lo) res.failed = true;
    }
    return res;
}

bool classify_failed(const MSEResult& r) {
    if (r.failed) return true;
    for (double m : r.mse) {
        if (m > failed_mse_threshold) return true;
    }
    return false;
}

}  // namespace stf
