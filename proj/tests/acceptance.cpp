// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances and thresholds are pinned here, not read from
// configuration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stf/csr.hpp"
#include "stf/ctd.hpp"
#include "stf/errors.hpp"
#include "stf/experiment.hpp"
#include "stf/ifest.hpp"
#include "stf/io.hpp"
#include "stf/noise.hpp"
#include "stf/robust.hpp"

using namespace stf;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    std::string name;
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---- criterion 1: oracle equivalence at small N --------------------------

void criterion_oracles(Criterion& c) {
    for (int n : {8, 16}) {
        const CGrid sigma = oracle::random_grid(n, 200 + static_cast<unsigned>(n));
        const auto idx = build_mask(n, 5).cells();
        const auto got = forward_op(sigma, idx);
        const auto want = oracle::dense_forward(sigma, idx);
        double worst = 0.0;
        for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
        c.require(worst < 1e-10, "forward vs dense at N=" + std::to_string(n) + " diff " + fmt(worst));

        std::mt19937 rng(300 + static_cast<unsigned>(n));
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        std::vector<cplx> v(idx.size());
        for (cplx& e : v) e = cplx(d(rng), d(rng));
        const double adiff = oracle::max_abs_diff(adjoint_op(v, idx, n), oracle::dense_adjoint(v, idx, n));
        c.require(adiff < 1e-10, "adjoint vs dense at N=" + std::to_string(n) + " diff " + fmt(adiff));
    }

    const Signal x = oracle::random_signal(16, 210);
    const double wdiff = oracle::max_abs_diff(wigner(x).values, oracle::dense_wigner(x));
    c.require(wdiff < 1e-8, "wigner vs dense diff " + fmt(wdiff));
    const double adiff = oracle::max_abs_diff(ambiguity(x).values, oracle::dense_ambiguity(x));
    c.require(adiff < 1e-8, "ambiguity vs dense diff " + fmt(adiff));
}

// ---- criterion 2: transform dualities at N = 64 ---------------------------

void criterion_dualities(Criterion& c) {
    const int n = 64;
    const PhaseSpec spec = two_component_radar_spec();
    const Signal x = gen_fm_signal(spec, n, natural_sample_rate(spec, n));

    const double amb_dual = oracle::max_abs_diff(ambiguity(x).values, ambiguity_from_tf(wigner(x)).values);
    c.require(amb_dual < 1e-8, "ambiguity <-> wigner duality diff " + fmt(amb_dual));

    const Signal mono = gen_fm_signal(sinusoidal_fm_spec(), n, natural_sample_rate(sinusoidal_fm_spec(), n));
    const TFMatrix direct = ctd_direct(mono, 4);
    const TFMatrix back = ctd_from_ambiguity(ambiguity_from_tf(direct), 1e-3);
    double rt = 0.0;
    for (std::size_t i = 0; i < back.values.data.size(); ++i) {
        rt = std::max(rt, std::abs(back.values.data[i].real() - direct.values.data[i].real()));
    }
    c.require(rt < 1e-8, "ctd_from_ambiguity round trip diff " + fmt(rt));

    double cohen_diff = 0.0;
    const TFMatrix cd = cohen(x, ones_kernel(n));
    const TFMatrix wd = wigner(x);
    for (std::size_t i = 0; i < cd.values.data.size(); ++i) {
        cohen_diff = std::max(cohen_diff, std::abs(cd.values.data[i].real() - wd.values.data[i].real()));
    }
    c.require(cohen_diff < 1e-8, "cohen(all-ones) vs wigner diff " + fmt(cohen_diff));

    const double m2 = oracle::max_abs_diff(ctd_from_moment(moment(x, 2)).values, wd.values);
    c.require(m2 < 1e-8, "order-2 moment transform vs wigner diff " + fmt(m2));
}

// ---- criterion 3: solver contracts ----------------------------------------

void criterion_solver(Criterion& c) {
    const int n = 8;
    std::mt19937 rng(400);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::uniform_int_distribution<int> cell(0, n - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::set<std::pair<int, int>> seen;
        while (static_cast<int>(seen.size()) < 5 + trial % 20) seen.insert({cell(rng), cell(rng)});
        const std::vector<std::pair<int, int>> idx(seen.begin(), seen.end());
        const CGrid sigma = oracle::random_grid(n, 500 + static_cast<unsigned>(trial));
        std::vector<cplx> v(idx.size());
        for (cplx& e : v) e = cplx(d(rng), d(rng));
        const auto fs = forward_op(sigma, idx);
        const CGrid av = adjoint_op(v, idx, n);
        cplx lhs = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) lhs += std::conj(fs[i]) * v[i];
        for (std::size_t i = 0; i < sigma.data.size(); ++i) rhs += std::conj(sigma.data[i]) * av.data[i];
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    c.require(worst < 1e-10, "adjoint identity worst rel err " + fmt(worst));

    // 3-sparse exact recovery at N = 32 from 20% measurements.
    const int ns = 32;
    CGrid truth(ns, ns);
    truth.at(5, 20) = cplx(1.3, 0.4);
    truth.at(17, 9) = cplx(-0.9, 0.8);
    truth.at(26, 28) = cplx(0.6, -1.1);
    TFMatrix truth_tf;
    truth_tf.values = truth;
    truth_tf.time_axis = default_time_axis(ns);
    truth_tf.freq_axis = quadrature_freq_axis(ns);
    const AmbiguityMatrix plane = ambiguity_from_tf(truth_tf);
    const MeasurementSet meas = select_measurements(plane, build_mask(ns, ns), 0.2, 11);
    auto [rec, report] = ista_solve(meas, SolverConfig{});

    const double peak = max_abs(rec.values);
    std::set<std::pair<int, int>> support;
    for (int r = 0; r < ns; ++r) {
        for (int col = 0; col < ns; ++col) {
            if (std::abs(rec.values.at(r, col)) > 1e-3 * peak) support.insert({r, col});
        }
    }
    const std::set<std::pair<int, int>> want = {{5, 20}, {17, 9}, {26, 28}};
    c.require(support == want, "3-sparse support mismatch (" + std::to_string(support.size()) + " cells)");
    double coef = 0.0;
    for (const auto& [r, col] : want) {
        coef = std::max(coef, std::abs(rec.values.at(r, col) - truth.at(r, col)) / std::abs(truth.at(r, col)));
    }
    c.require(coef < 1e-3, "3-sparse coefficient rel err " + fmt(coef));

    bool monotone = true;
    for (std::size_t i = 1; i < report.objective_trace.size(); ++i) {
        monotone = monotone && report.objective_trace[i] <= report.objective_trace[i - 1];
    }
    for (unsigned seed : {70u, 71u, 72u}) {
        AmbiguityMatrix p2;
        p2.values = oracle::random_grid(16, seed);
        const MeasurementSet m2 = select_measurements(p2, build_mask(16, 9), 0.6, seed);
        auto [tf2, rep2] = ista_solve(m2, SolverConfig{});
        for (std::size_t i = 1; i < rep2.objective_trace.size(); ++i) {
            monotone = monotone && rep2.objective_trace[i] <= rep2.objective_trace[i - 1];
        }
    }
    c.require(monotone, "objective trace increased");
}

// ---- criteria 4 and 7: the N = 90 benchmark -------------------------------

struct BenchResults {
    std::map<std::string, std::vector<double>> mse;  // per component medians
    std::map<std::string, bool> failed;
    double wd_c1 = 0.0;
    std::vector<double> wd_mse;
    std::vector<double> ctd_mse;
};

BenchResults run_benchmark() {
    BenchResults out;
    const int n = 90;
    const PhaseSpec spec = two_component_radar_spec();
    const double fs = natural_sample_rate(spec, n);
    const Signal x = gen_fm_signal(spec, n, fs);
    const IFTruth truth = if_truth(spec, n, fs);

    auto eval_tf = [&](const TFMatrix& tf) {
        MSEResult r;
        try {
            r = mse_if(estimate_if(tf, 2), truth, tf);
        } catch (const tracking_error&) {
            r.failed = true;
            r.mse = {failed_mse_threshold * 4, failed_mse_threshold * 4};
        }
        return r;
    };

    const TFMatrix wd = wigner(x);
    const MSEResult wd_res = eval_tf(wd);
    out.mse["wd"] = wd_res.mse;
    out.failed["wd"] = classify_failed(wd_res);
    out.wd_c1 = wd_res.mse[0];
    out.wd_mse = wd_res.mse;

    for (double delta : {120.0, 80.0, 20.0}) {
        const MSEResult r = eval_tf(cohen(x, gaussian_kernel(n, delta)));
        const std::string name = "cohen" + std::to_string(static_cast<int>(delta));
        out.mse[name] = r.mse;
        out.failed[name] = classify_failed(r);
    }

    const TFMatrix ctd = ctd_direct(x, 4);
    const MSEResult ctd_res = eval_tf(ctd);
    out.ctd_mse = ctd_res.mse;

    const AmbiguityMatrix amb = ambiguity_from_tf(ctd, AmbKind::Plain);
    struct Cfg {
        int side;
        double fraction;
    };
    for (const Cfg cfg : {Cfg{7, 1.0}, Cfg{10, 1.0}, Cfg{25, 0.4}, Cfg{25, 0.6}}) {
        const std::vector<std::uint64_t> seeds =
            cfg.fraction >= 1.0 ? std::vector<std::uint64_t>{0} : std::vector<std::uint64_t>{0, 1, 2, 3, 4};
        std::vector<double> c1, c2;
        int failures = 0;
        for (std::uint64_t seed : seeds) {
            const MeasurementSet meas =
                select_measurements(amb, build_mask(n, cfg.side), cfg.fraction, seed);
            auto [tf, rep] = ista_solve(meas, SolverConfig{}, nullptr, quadrature_freq_axis(n));
            const MSEResult r = eval_tf(tf);
            c1.push_back(r.mse[0]);
            c2.push_back(r.mse[1]);
            failures += classify_failed(r) ? 1 : 0;
        }
        const std::string name = "cs" + std::to_string(cfg.side) + "_" +
                                 std::to_string(static_cast<int>(std::lround(cfg.fraction * 100)));
        out.mse[name] = {median(c1), median(c2)};
        out.failed[name] = failures * 2 >= static_cast<int>(seeds.size());
    }
    return out;
}

void criterion_table1(Criterion& c, const BenchResults& b) {
    const auto& best = b.mse.at("cs25_60");
    c.require(best[0] < 50.0 && best[1] < 50.0,
              "25x25@60% mse " + fmt(best[0]) + "/" + fmt(best[1]) + " not below 50");
    c.require(b.wd_c1 >= 10.0 * best[0],
              "wd comp1 " + fmt(b.wd_c1) + " not 10x above " + fmt(best[0]));
    for (const std::string name : {"cohen120", "cohen80", "cohen20"}) {
        const auto& m = b.mse.at(name);
        c.require(m[0] > best[0] && m[1] > best[1], name + " not above the 25x25@60% row");
    }
    c.require(b.failed.at("cs7_100"), "7x7 mask not classified failed");
    c.require(b.failed.at("cs10_100"), "10x10 mask not classified failed");
    const auto& f40 = b.mse.at("cs25_40");
    c.require(best[0] <= f40[0] && best[1] <= f40[1],
              "60% medians " + fmt(best[0]) + "/" + fmt(best[1]) + " not <= 40% medians " + fmt(f40[0]) +
                  "/" + fmt(f40[1]));
}

void criterion_concentration(Criterion& c, const BenchResults& b) {
    // Residual-slope test: the third-derivative term cancels, leaving a
    // fifth-power lag dependence of the moment phase error.
    const int n = 64;
    PhaseSpec spec;
    spec.t_start = -1.0;
    spec.t_end = 1.0;
    spec.components = {PhaseComponent{{{2.0, PhaseTermKind::Cosine, two_pi}}}};
    const double fs = natural_sample_rate(spec, n);
    const MomentMatrix m = moment(gen_fm_signal(spec, n, fs), 4);
    const int row = 40;
    const double dphi = phase_derivative(spec.components[0], spec.t_start + row / fs) / fs;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::vector<double> lags = {4.0, 8.0, 16.0};
    for (double tau : lags) {
        const double res =
            std::abs(wrap_phase(std::arg(m.values.at(row, storage_index(static_cast<int>(tau), n))) - dphi * tau));
        sx += std::log(tau);
        sy += std::log(res);
        sxx += std::log(tau) * std::log(tau);
        sxy += std::log(tau) * std::log(res);
    }
    const double k = static_cast<double>(lags.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    c.require(slope >= 4.5, "phase-residual lag exponent " + fmt(slope) + " < 4.5");

    c.require(b.ctd_mse[0] < b.wd_mse[0] && b.ctd_mse[1] < b.wd_mse[1],
              "ctd4 mse " + fmt(b.ctd_mse[0]) + "/" + fmt(b.ctd_mse[1]) + " not below wd " +
                  fmt(b.wd_mse[0]) + "/" + fmt(b.wd_mse[1]));
}

// ---- criterion 5: impulsive-noise robustness -------------------------------

void criterion_robustness(Criterion& c) {
    const int n = 128;
    const PhaseSpec spec = sinusoidal_fm_spec();
    const double fs = natural_sample_rate(spec, n);
    const Signal x = gen_fm_signal(spec, n, fs);
    const AmbiguityMatrix clean = ambiguity_from_tf(ctd_direct(x, 4), AmbKind::Plain);
    const Mask mask = build_mask(n, 25);

    // Seed picked once so that some impulses land inside the mask.
    const ImpulseNoiseSpec noise{10, 5.0, 7};
    const AmbiguityMatrix noisy = add_impulse_noise(clean, noise);
    bool any_in_mask = false;
    for (int r = 0; r < n; ++r) {
        for (int col = 0; col < n; ++col) {
            if (clean.values.at(r, col) != noisy.values.at(r, col) && mask.contains(r, col)) {
                any_in_mask = true;
            }
        }
    }
    c.require(any_in_mask, "chosen noise seed leaves the mask untouched");

    TrimPolicy trim;
    trim.discard_high = 0.005;
    const AmbiguityMatrix denoised = lstat_denoise(noisy, trim);

    auto track_of = [&](const AmbiguityMatrix& a) {
        const MeasurementSet meas = select_measurements(a, mask, 0.5, 3);
        auto [tf, rep] = ista_solve(meas, SolverConfig{}, nullptr, quadrature_freq_axis(n));
        return estimate_if(tf, 1)[0];
    };
    const IFTrack ref = track_of(clean);
    const IFTrack with_trim = track_of(denoised);
    const IFTrack without_trim = track_of(noisy);

    const int edge = static_cast<int>(std::ceil(n / 10.0));
    auto agreement = [&](const IFTrack& t) {
        int ok = 0;
        for (int i = edge; i < n - edge; ++i) {
            const int d = std::abs(wrap_index(t.bins[static_cast<std::size_t>(i)] -
                                                  ref.bins[static_cast<std::size_t>(i)],
                                              n));
            if (std::min(d, n - d) <= 1) ++ok;
        }
        return static_cast<double>(ok) / (n - 2 * edge);
    };
    const double with_pct = agreement(with_trim);
    const double without_pct = agreement(without_trim);
    c.require(with_pct >= 0.95, "trimmed pipeline agreement " + fmt(with_pct) + " < 0.95");
    c.require(without_pct < 0.95, "untrimmed pipeline agreement " + fmt(without_pct) + " not violated");
}

// ---- criterion 6: mask percentages -----------------------------------------

void criterion_mask(Criterion& c) {
    AmbiguityMatrix a;
    a.values = oracle::random_grid(90, 600);
    const Mask mask = build_mask(90, 25);
    c.require(mask.cells().size() == 625, "mask cell count");
    const double pct = 625.0 / 8100.0;
    c.require(std::abs(pct - 0.077) < 0.0005, "mask fraction " + fmt(pct));
    const std::size_t half = select_measurements(a, mask, 0.5, 0).entries.size();
    c.require(half >= 312 && half <= 313, "half fraction count " + std::to_string(half));
    const std::size_t m40 = select_measurements(a, mask, 0.4, 0).entries.size();
    c.require(m40 == 250, "40% fraction count " + std::to_string(m40));
}

// ---- criterion 8: determinism ----------------------------------------------

void criterion_determinism(Criterion& c) {
    const fs::path base = fs::temp_directory_path();
    const std::string dir1 = (base / "stf_acc_det1").string();
    const std::string dir2 = (base / "stf_acc_det2").string();
    fs::remove_all(dir1);
    fs::remove_all(dir2);

    ExperimentConfig cfg;
    cfg.id = ExperimentId::Example2;
    cfg.n = 64;
    cfg.solver.max_iters = 300;
    cfg.output_dir = dir1;
    run_experiment(cfg);
    cfg.output_dir = dir2;
    run_experiment(cfg);

    auto slurp = [](const std::string& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    };
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(dir1)) {
        if (entry.path().extension() != ".csv") continue;
        const std::string name = entry.path().filename().string();
        if (slurp(dir1 + "/" + name) != slurp(dir2 + "/" + name)) {
            c.require(false, "mismatch in " + name);
        }
        ++compared;
    }
    c.require(compared > 3, "too few csv artifacts compared");
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    std::vector<Criterion> results;
    BenchResults bench;

    struct Entry {
        std::string name;
        std::function<void(Criterion&)> run;
    };
    const std::vector<Entry> entries = {
        {"1 oracle equivalence (dense Kronecker / double-loop, N<=16)", criterion_oracles},
        {"2 transform dualities at N=64", criterion_dualities},
        {"3 solver contracts (adjoint, monotonicity, 3-sparse recovery)", criterion_solver},
        {"4 benchmark ordering (masks, fractions, failure classification)",
         [&](Criterion& c) { criterion_table1(c, bench); }},
        {"5 impulsive-noise robustness with L-statistics trimming", criterion_robustness},
        {"6 mask percentages (625 / 312+-1 / 250 cells)", criterion_mask},
        {"7 concentration (lag exponent >= 4.5, ctd4 below wd)",
         [&](Criterion& c) { criterion_concentration(c, bench); }},
        {"8 determinism (byte-identical experiment reruns)", criterion_determinism},
    };

    const auto bench_start = clock::now();
    bench = run_benchmark();
    const double bench_secs = std::chrono::duration<double>(clock::now() - bench_start).count();

    int failures = 0;
    for (const Entry& e : entries) {
        Criterion c;
        c.name = e.name;
        const auto start = clock::now();
        try {
            e.run(c);
        } catch (const std::exception& ex) {
            c.require(false, std::string("exception: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(clock::now() - start).count();
        std::printf("[%s] criterion %s (%.1fs)%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), secs,
                    c.detail.empty() ? "" : " -- ", c.detail.c_str());
        failures += c.passed ? 0 : 1;
    }
    std::printf("benchmark precompute: %.1fs\n", bench_secs);
    std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures, entries.size());
    return failures == 0 ? 0 : 1;
}
