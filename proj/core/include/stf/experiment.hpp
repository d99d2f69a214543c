#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stf/csr.hpp"
#include "stf/ifest.hpp"
#include "stf/noise.hpp"
#include "stf/robust.hpp"

namespace stf {

enum class ExperimentId { Example1, Example2, Table1, Fig6, Custom };

ExperimentId experiment_from_name(const std::string& name);
const char* to_string(ExperimentId id);

// One flag per knob; every experiment ignores the knobs it does not use.
// Zeros mean "per-experiment default" where noted.
struct ExperimentConfig {
    ExperimentId id = ExperimentId::Example1;
    int n = 0;           // grid size; 0 -> 90 (example1/table1/fig6) or 128 (example2)
    int mask_side = 25;
    double fraction = 0.5;
    double delta = 120.0;          // gaussian kernel parameter for the Cohen rows
    std::string window = "rect";   // epsilon window family for the combined path
    TrimPolicy trim{0.0, 0.005, true, 2, false};
    SolverConfig solver;
    std::vector<std::uint64_t> seeds = {0};
    int components = 0;  // tracked components; 0 -> per-experiment default
    int noise_count = 10;
    double noise_scale = 5.0;
    std::uint64_t noise_seed = 7;
    std::string input_path;  // custom only
    std::string output_dir = "out";
    bool complex_dumps = false;
};

// Runs the experiment, writes all artifacts plus a key=value manifest under
// cfg.output_dir, and returns 0. Reruns with identical configuration are
// byte-identical. Module errors propagate as exceptions.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace stf
