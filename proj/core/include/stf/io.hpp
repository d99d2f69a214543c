#pragma once

#include <string>

#include "stf/signal.hpp"
#include "stf/tfd.hpp"

namespace stf {

// Matrix CSV: one header line `# rows=<R> cols=<C> kind=<kind>` (with
// ` complex=1` appended for full complex dumps), then comma-separated rows.
// Magnitude files hold |v| per cell; complex files hold re,im pairs.
void export_matrix_csv(const CGrid& m, const std::string& kind, const std::string& path,
                       bool complex_values = false);

// 8-bit binary PGM of cell magnitudes, linearly scaled min -> 0, max -> 255.
// A flat matrix maps to all zeros.
void export_matrix_pgm(const CGrid& m, const std::string& path);

struct LoadedMatrix {
    CGrid values;
    std::string kind;
    bool complex_values = false;
};

LoadedMatrix load_matrix_csv(const std::string& path);

// Signal files. Text: one sample per line, `re,im` (or a single real column,
// which marks the file real-valued), optional `# sample_rate=<float>` header.
// Binary (.bin/.raw/.f64): little-endian float64 interleaved re/im pairs.
struct LoadedSignal {
    Signal signal;
    bool converted_to_analytic = false;
};

// Real-valued text files are converted to analytic form by zeroing the
// negative-frequency bins; the flag records the conversion for manifests.
LoadedSignal load_signal(const std::string& path);

void save_signal_text(const Signal& x, const std::string& path);
void save_signal_binary(const Signal& x, const std::string& path);

// Locale-independent full-precision formatting shared by all writers.
std::string format_double(double v);

}  // namespace stf
