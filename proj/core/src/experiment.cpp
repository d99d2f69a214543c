#include "stf/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "stf/ctd.hpp"
#include "stf/errors.hpp"
#include "stf/io.hpp"

namespace stf {

namespace {

namespace fs = std::filesystem;

ExperimentId from_name_impl(const std::string& name) {
    if (name == "example1") return ExperimentId::Example1;
    if (name == "example2") return ExperimentId::Example2;
    if (name == "table1") return ExperimentId::Table1;
    if (name == "fig6") return ExperimentId::Fig6;
    if (name == "custom") return ExperimentId::Custom;
    throw std::invalid_argument("unknown experiment: " + name);
}

struct Manifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& k, const std::string& v) { entries.emplace_back(k, v); }
    void add(const std::string& k, double v) { entries.emplace_back(k, format_double(v)); }
    void add(const std::string& k, int v) { entries.emplace_back(k, std::to_string(v)); }
    void add(const std::string& k, std::uint64_t v) { entries.emplace_back(k, std::to_string(v)); }

    void write(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw io_error("cannot open for writing: " + path);
        for (const auto& [k, v] : entries) f << k << "=" << v << "\n";
        if (!f) throw io_error("write failed: " + path);
    }
};

struct Runner {
    const ExperimentConfig& cfg;
    std::string dir;
    Manifest manifest;
    bool complex_dumps;

    explicit Runner(const ExperimentConfig& c) : cfg(c), dir(c.output_dir), complex_dumps(c.complex_dumps) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw io_error("cannot create output directory: " + dir);
    }

    std::string path(const std::string& name) const { return dir + "/" + name; }

    void dump_matrix(const CGrid& g, const std::string& kind, const std::string& stem, bool pgm = true) {
        export_matrix_csv(g, kind, path(stem + ".csv"), complex_dumps);
        manifest.add("artifact", stem + ".csv");
        if (pgm) {
            export_matrix_pgm(g, path(stem + ".pgm"));
            manifest.add("artifact", stem + ".pgm");
        }
    }

    void dump_tf(const TFMatrix& tf, const std::string& stem) { dump_matrix(tf.values, to_string(tf.kind), stem); }
    void dump_amb(const AmbiguityMatrix& a, const std::string& stem) {
        export_matrix_csv(a.values, to_string(a.kind), path(stem + ".csv"), true);
        manifest.add("artifact", stem + ".csv");
        export_matrix_pgm(a.values, path(stem + ".pgm"));
        manifest.add("artifact", stem + ".pgm");
    }

    void dump_tracks(const std::vector<IFTrack>& tracks, const std::vector<std::vector<double>>& truth_bins,
                     const std::string& stem) {
        std::ofstream f(path(stem + ".csv"));
        if (!f) throw io_error("cannot open for writing: " + path(stem + ".csv"));
        f << "# time";
        for (std::size_t c = 0; c < tracks.size(); ++c) f << ",comp" << c << "_bin,comp" << c << "_tracked";
        for (std::size_t c = 0; c < truth_bins.size(); ++c) f << ",truth" << c << "_bin";
        f << "\n";
        const std::size_t nt = tracks.empty() ? 0 : tracks[0].bins.size();
        for (std::size_t i = 0; i < nt; ++i) {
            f << i;
            for (const IFTrack& tr : tracks) f << "," << tr.bins[i] << "," << static_cast<int>(tr.tracked[i]);
            for (const auto& tb : truth_bins) f << "," << format_double(tb[i]);
            f << "\n";
        }
        if (!f) throw io_error("write failed: " + path(stem + ".csv"));
        manifest.add("artifact", stem + ".csv");
    }
};

std::vector<std::vector<double>> truth_bins_for(const IFTruth& truth, const TFMatrix& src) {
    const int nf = src.values.cols;
    const double binw = src.freq_axis[1] - src.freq_axis[0];
    std::vector<std::vector<double>> out(truth.freq.size());
    for (std::size_t c = 0; c < truth.freq.size(); ++c) {
        out[c].resize(truth.freq[c].size());
        for (std::size_t i = 0; i < truth.freq[c].size(); ++i) {
            double b = std::fmod(truth.freq[c][i] / binw, static_cast<double>(nf));
            if (b < 0) b += nf;
            out[c][i] = b;
        }
    }
    return out;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct SummaryRow {
    std::string name;
    std::vector<double> mse;
    bool failed = false;
};

void write_summary(const std::vector<SummaryRow>& rows, int comps, const std::string& p, Manifest& m,
                   const std::string& rel) {
    std::ofstream f(p);
    if (!f) throw io_error("cannot open for writing: " + p);
    f << "# name";
    for (int c = 0; c < comps; ++c) f << ",comp" << (c + 1) << "_mse";
    f << ",failed\n";
    for (const SummaryRow& r : rows) {
        f << r.name;
        for (int c = 0; c < comps; ++c) {
            f << ",";
            if (c < static_cast<int>(r.mse.size())) f << format_double(r.mse[static_cast<std::size_t>(c)]);
        }
        f << "," << (r.failed ? 1 : 0) << "\n";
    }
    if (!f) throw io_error("write failed: " + p);
    m.add("artifact", rel);
}

int agreement_within(const IFTrack& a, const IFTrack& b, int nf, int lo, int hi, int radius) {
    int ok = 0;
    for (int i = lo; i < hi; ++i) {
        const int d = std::abs(wrap_index(a.bins[static_cast<std::size_t>(i)] -
                                              b.bins[static_cast<std::size_t>(i)],
                                          nf));
        if (std::min(d, nf - d) <= radius) ++ok;
    }
    return ok;
}

std::string pct_name(double fraction) {
    return std::to_string(static_cast<int>(std::lround(fraction * 100)));
}

void add_solver_report(Manifest& m, const std::string& name, const SolverReport& rep) {
    m.add("solver." + name + ".iterations", rep.iterations);
    m.add("solver." + name + ".final_objective", rep.final_objective);
    m.add("solver." + name + ".converged", rep.converged ? 1 : 0);
}

void add_common_config(Manifest& m, const ExperimentConfig& cfg, int n) {
    m.add("experiment", to_string(cfg.id));
    m.add("n", n);
    m.add("mask_side", cfg.mask_side);
    m.add("fraction", cfg.fraction);
    m.add("delta", cfg.delta);
    m.add("window", cfg.window);
    m.add("trim_low", cfg.trim.discard_low);
    m.add("trim_high", cfg.trim.discard_high);
    m.add("guard_origin", cfg.trim.guard_origin ? 1 : 0);
    m.add("guard_radius", cfg.trim.guard_radius);
    m.add("lambda_rel", cfg.solver.lambda_rel);
    m.add("step", cfg.solver.step);
    m.add("max_iters", cfg.solver.max_iters);
    m.add("rel_tol", cfg.solver.rel_tol);
    m.add("debias", cfg.solver.debias ? 1 : 0);
    std::string seeds;
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
        if (i) seeds += ",";
        seeds += std::to_string(cfg.seeds[i]);
    }
    m.add("seeds", seeds);
    m.add("noise_count", cfg.noise_count);
    m.add("noise_scale", cfg.noise_scale);
    m.add("noise_seed", cfg.noise_seed);
}

// Benchmark rows shared by example1 / table1 / fig6.
struct Eq31Bench {
    Signal x;
    IFTruth truth;
    AmbiguityMatrix amb;   // moment ambiguity, order 4
    double flag_density = 0.0;
    int n = 0;
};

Eq31Bench make_eq31_bench(int n) {
    Eq31Bench b;
    b.n = n;
    const PhaseSpec spec = two_component_radar_spec();
    const double fs = natural_sample_rate(spec, n);
    b.x = gen_fm_signal(spec, n, fs);
    b.truth = if_truth(spec, n, fs);
    const MomentMatrix m = moment(b.x, 4);
    b.flag_density = m.flag_density();
    b.amb = ambiguity_from_tf(ctd_from_moment(m), AmbKind::Plain);
    return b;
}

struct CsRun {
    TFMatrix tf;
    SolverReport report;
    std::vector<IFTrack> tracks;
    MSEResult mse;
};

CsRun run_cs(const Eq31Bench& b, int side, double fraction, std::uint64_t seed, const SolverConfig& solver,
             int comps) {
    CsRun run;
    const Mask mask = build_mask(b.n, side);
    const MeasurementSet meas = select_measurements(b.amb, mask, fraction, seed);
    auto [tf, rep] = ista_solve(meas, solver, nullptr, quadrature_freq_axis(b.n));
    run.tf = std::move(tf);
    run.report = std::move(rep);
    try {
        run.tracks = estimate_if(run.tf, comps);
        run.mse = mse_if(run.tracks, b.truth, run.tf);
    } catch (const tracking_error&) {
        run.mse.failed = true;
        run.mse.mse.assign(static_cast<std::size_t>(comps), failed_mse_threshold * 4);
    }
    return run;
}

int run_example1(const ExperimentConfig& cfg) {
    const int n = cfg.n > 0 ? cfg.n : 90;
    const int comps = cfg.components > 0 ? cfg.components : 2;
    Runner r(cfg);
    add_common_config(r.manifest, cfg, n);
    Eq31Bench b = make_eq31_bench(n);
    r.manifest.add("branch_flag_density", b.flag_density);

    save_signal_text(b.x, r.path("signal.csv"));
    r.manifest.add("artifact", "signal.csv");
    r.dump_amb(b.amb, "amb_ctd4");
    r.dump_amb(ambiguity(b.x), "amb_plain");

    std::vector<SummaryRow> rows;
    auto eval_tf = [&](const TFMatrix& tf, const std::string& name) {
        r.dump_tf(tf, name);
        std::vector<IFTrack> tracks = estimate_if(tf, comps);
        MSEResult res = mse_if(tracks, b.truth, tf);
        r.dump_tracks(tracks, truth_bins_for(b.truth, tf), "tracks_" + name);
        rows.push_back({name, res.mse, classify_failed(res)});
    };

    eval_tf(wigner(b.x), "wd");
    for (double d : {120.0, 80.0, 20.0}) {
        eval_tf(cohen(b.x, gaussian_kernel(n, d)), "cohen_d" + std::to_string(static_cast<int>(d)));
    }
    eval_tf(ctd_direct(b.x, 4), "ctd4");

    for (double f : {0.4, 0.5, 0.6}) {
        std::vector<std::vector<double>> per_comp(static_cast<std::size_t>(comps));
        bool failed = false;
        for (std::uint64_t seed : cfg.seeds) {
            CsRun run = run_cs(b, cfg.mask_side, f, seed, cfg.solver, comps);
            const std::string stem =
                "sparse_s" + std::to_string(cfg.mask_side) + "_f" + pct_name(f) + "_seed" + std::to_string(seed);
            r.dump_tf(run.tf, stem);
            if (!run.tracks.empty()) {
                r.dump_tracks(run.tracks, truth_bins_for(b.truth, run.tf), "tracks_" + stem);
            }
            add_solver_report(r.manifest, stem, run.report);
            for (int c = 0; c < comps; ++c) per_comp[static_cast<std::size_t>(c)].push_back(run.mse.mse[static_cast<std::size_t>(c)]);
            failed = failed || classify_failed(run.mse);
        }
        SummaryRow row;
        row.name = "ctd4_cs_s" + std::to_string(cfg.mask_side) + "_f" + pct_name(f);
        for (auto& v : per_comp) row.mse.push_back(median(v));
        row.failed = failed;
        rows.push_back(row);
    }

    write_summary(rows, comps, r.path("mse_summary.csv"), r.manifest, "mse_summary.csv");
    r.manifest.write(r.path("manifest.txt"));
    return 0;
}

int run_table1_like(const ExperimentConfig& cfg, bool fig6_subset) {
    const int n = cfg.n > 0 ? cfg.n : 90;
    const int comps = cfg.components > 0 ? cfg.components : 2;
    Runner r(cfg);
    add_common_config(r.manifest, cfg, n);
    Eq31Bench b = make_eq31_bench(n);
    r.manifest.add("branch_flag_density", b.flag_density);

    save_signal_text(b.x, r.path("signal.csv"));
    r.manifest.add("artifact", "signal.csv");
    r.dump_amb(b.amb, "amb_ctd4");

    std::vector<SummaryRow> rows;
    if (!fig6_subset) {
        auto eval_tf = [&](const TFMatrix& tf, const std::string& name) {
            r.dump_tf(tf, name);
            std::vector<IFTrack> tracks = estimate_if(tf, comps);
            MSEResult res = mse_if(tracks, b.truth, tf);
            r.dump_tracks(tracks, truth_bins_for(b.truth, tf), "tracks_" + name);
            rows.push_back({name, res.mse, classify_failed(res)});
        };
        eval_tf(wigner(b.x), "wd");
        for (double d : {120.0, 80.0, 20.0}) {
            eval_tf(cohen(b.x, gaussian_kernel(n, d)), "cohen_d" + std::to_string(static_cast<int>(d)));
        }
        eval_tf(ctd_direct(b.x, 4), "ctd4");
    }

    struct CsConfig {
        int side;
        double fraction;
    };
    const std::vector<CsConfig> cs_rows = fig6_subset
                                              ? std::vector<CsConfig>{{7, 1.0}, {10, 1.0}, {15, 0.7}, {20, 0.6}}
                                              : std::vector<CsConfig>{{7, 1.0},  {10, 1.0}, {15, 0.7}, {20, 0.6},
                                                                      {25, 0.4}, {25, 0.5}, {25, 0.6}};
    for (const CsConfig& cc : cs_rows) {
        // fraction = 1 draws every mask cell: one deterministic run.
        const std::vector<std::uint64_t> seeds =
            cc.fraction >= 1.0 ? std::vector<std::uint64_t>{cfg.seeds.front()} : cfg.seeds;
        std::vector<std::vector<double>> per_comp(static_cast<std::size_t>(comps));
        int failures = 0;
        for (std::uint64_t seed : seeds) {
            CsRun run = run_cs(b, cc.side, cc.fraction, seed, cfg.solver, comps);
            const std::string stem = "sparse_s" + std::to_string(cc.side) + "_f" + pct_name(cc.fraction) +
                                     "_seed" + std::to_string(seed);
            r.dump_tf(run.tf, stem);
            if (!run.tracks.empty()) {
                r.dump_tracks(run.tracks, truth_bins_for(b.truth, run.tf), "tracks_" + stem);
            }
            add_solver_report(r.manifest, stem, run.report);
            for (int c = 0; c < comps; ++c) {
                per_comp[static_cast<std::size_t>(c)].push_back(run.mse.mse[static_cast<std::size_t>(c)]);
            }
            failures += classify_failed(run.mse) ? 1 : 0;
        }
        SummaryRow row;
        row.name = "ctd4_cs_s" + std::to_string(cc.side) + "_f" + pct_name(cc.fraction);
        for (auto& v : per_comp) row.mse.push_back(median(v));
        row.failed = failures * 2 >= static_cast<int>(seeds.size());
        rows.push_back(row);
    }

    write_summary(rows, comps, r.path("mse_summary.csv"), r.manifest, "mse_summary.csv");
    r.manifest.write(r.path("manifest.txt"));
    return 0;
}

int run_example2(const ExperimentConfig& cfg) {
    const int n = cfg.n > 0 ? cfg.n : 128;
    Runner r(cfg);
    add_common_config(r.manifest, cfg, n);

    const PhaseSpec spec = sinusoidal_fm_spec();
    const double fs = natural_sample_rate(spec, n);
    const Signal x = gen_fm_signal(spec, n, fs);
    const IFTruth truth = if_truth(spec, n, fs);
    const MomentMatrix m = moment(x, 4);
    r.manifest.add("branch_flag_density", m.flag_density());
    AmbiguityMatrix amb = ambiguity_from_tf(ctd_from_moment(m), AmbKind::Plain);

    save_signal_text(x, r.path("signal.csv"));
    r.manifest.add("artifact", "signal.csv");

    const bool noise_on = cfg.noise_count > 0;
    AmbiguityMatrix amb_noisy =
        noise_on ? add_impulse_noise(amb, {cfg.noise_count, cfg.noise_scale, cfg.noise_seed}) : amb;
    AmbiguityMatrix amb_denoised = noise_on && cfg.trim.discard_high > 0.0
                                       ? lstat_denoise(amb_noisy, cfg.trim)
                                       : amb_noisy;

    r.dump_amb(amb, "amb_clean");
    r.dump_amb(amb_noisy, "amb_noisy");
    r.dump_amb(amb_denoised, "amb_denoised");

    const Mask mask = build_mask(n, cfg.mask_side);
    const std::uint64_t seed = cfg.seeds.front();
    std::vector<SummaryRow> rows;
    struct Variant {
        std::string name;
        const AmbiguityMatrix* amb;
    };
    std::vector<std::vector<IFTrack>> all_tracks;
    std::vector<MSEResult> all_res;
    int nf = n;
    int lo = 0, hi = 0;
    for (const Variant& var : std::vector<Variant>{{"clean", &amb}, {"noisy", &amb_noisy}, {"denoised", &amb_denoised}}) {
        const MeasurementSet meas = select_measurements(*var.amb, mask, cfg.fraction, seed);
        auto [tf, rep] = ista_solve(meas, cfg.solver, nullptr, quadrature_freq_axis(n));
        add_solver_report(r.manifest, var.name, rep);
        r.dump_tf(tf, "tf_" + var.name);
        std::vector<IFTrack> tracks = estimate_if(tf, 1);
        MSEResult res = mse_if(tracks, truth, tf);
        r.dump_tracks(tracks, truth_bins_for(truth, tf), "tracks_" + var.name);
        rows.push_back({var.name, res.mse, classify_failed(res)});
        all_tracks.push_back(std::move(tracks));
        all_res.push_back(res);
        nf = tf.values.cols;
        lo = res.interior_begin;
        hi = res.interior_end;
    }

    const int interior = hi - lo;
    const int agree_noisy = agreement_within(all_tracks[1][0], all_tracks[0][0], nf, lo, hi, 1);
    const int agree_denoised = agreement_within(all_tracks[2][0], all_tracks[0][0], nf, lo, hi, 1);
    r.manifest.add("interior_columns", interior);
    r.manifest.add("agree_noisy_within_1bin", agree_noisy);
    r.manifest.add("agree_denoised_within_1bin", agree_denoised);

    write_summary(rows, 1, r.path("mse_summary.csv"), r.manifest, "mse_summary.csv");
    r.manifest.write(r.path("manifest.txt"));
    return 0;
}

int run_custom(const ExperimentConfig& cfg) {
    if (cfg.input_path.empty()) throw std::invalid_argument("custom experiment requires an input signal");
    Runner r(cfg);
    LoadedSignal loaded = load_signal(cfg.input_path);
    validate(loaded.signal);
    const Signal& x = loaded.signal;
    const int n = x.size();
    const int comps = cfg.components > 0 ? cfg.components : 1;
    add_common_config(r.manifest, cfg, n);
    r.manifest.add("input", cfg.input_path);
    r.manifest.add("analytic_converted", loaded.converted_to_analytic ? 1 : 0);

    const MomentMatrix m = moment(x, 4);
    r.manifest.add("branch_flag_density", m.flag_density());
    TFMatrix ctd = ctd_from_moment(m);
    r.dump_tf(wigner(x), "wd");
    r.dump_tf(ctd, "ctd4");
    std::vector<IFTrack> tracks = estimate_if(ctd, comps);
    r.dump_tracks(tracks, {}, "tracks_ctd4");

    if (cfg.mask_side > 0) {
        AmbiguityMatrix amb = ambiguity_from_tf(ctd, AmbKind::Plain);
        r.dump_amb(amb, "amb_ctd4");
        const MeasurementSet meas =
            select_measurements(amb, build_mask(n, cfg.mask_side), cfg.fraction, cfg.seeds.front());
        auto [tf, rep] = ista_solve(meas, cfg.solver, nullptr, quadrature_freq_axis(n));
        add_solver_report(r.manifest, "sparse", rep);
        r.dump_tf(tf, "sparse");
        std::vector<IFTrack> sparse_tracks = estimate_if(tf, comps);
        r.dump_tracks(sparse_tracks, {}, "tracks_sparse");
    }

    r.manifest.write(r.path("manifest.txt"));
    return 0;
}

}  // namespace

ExperimentId experiment_from_name(const std::string& name) { return from_name_impl(name); }

const char* to_string(ExperimentId id) {
    switch (id) {
        case ExperimentId::Example1: return "example1";
        case ExperimentId::Example2: return "example2";
        case ExperimentId::Table1: return "table1";
        case ExperimentId::Fig6: return "fig6";
        case ExperimentId::Custom: return "custom";
    }
    return "?";
}

int run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.id) {
        case ExperimentId::Example1: return run_example1(cfg);
        case ExperimentId::Example2: return run_example2(cfg);
        case ExperimentId::Table1: return run_table1_like(cfg, false);
        case ExperimentId::Fig6: return run_table1_like(cfg, true);
        case ExperimentId::Custom: return run_custom(cfg);
    }
    throw std::invalid_argument("unknown experiment id");
}

}  // namespace stf
