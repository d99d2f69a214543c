#include "stf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "stf/errors.hpp"
#include "stf/fft.hpp"

namespace stf {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw io_error("cannot open for writing: " + path);
    return f;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool parse_double(const std::string& s, double& out) {
    const char* p = s.c_str();
    char* end = nullptr;
    out = std::strtod(p, &end);
    if (end == p) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

}  // namespace

void export_matrix_csv(const CGrid& m, const std::string& kind, const std::string& path,
                       bool complex_values) {
    std::ofstream f = open_out(path);
    f << "# rows=" << m.rows << " cols=" << m.cols << " kind=" << kind;
    if (complex_values) f << " complex=1";
    f << "\n";
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            if (c) f << ",";
            const cplx z = m.at(r, c);
            if (complex_values) {
                f << format_double(z.real()) << "," << format_double(z.imag());
            } else {
                f << format_double(std::abs(z));
            }
        }
        f << "\n";
    }
    if (!f) throw io_error("write failed: " + path);
}

void export_matrix_pgm(const CGrid& m, const std::string& path) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const cplx& z : m.data) {
        const double v = std::abs(z);
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double range = hi - lo;

    std::ofstream f = open_out(path, true);
    f << "P5\n" << m.cols << " " << m.rows << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(m.cols));
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            const double v = std::abs(m.at(r, c));
            const long px = range > 0.0 ? std::lround((v - lo) / range * 255.0) : 0;
            row[static_cast<std::size_t>(c)] = static_cast<unsigned char>(std::clamp(px, 0L, 255L));
        }
        f.write(reinterpret_cast<const char*>(row.data()), m.cols);
    }
    if (!f) throw io_error("write failed: " + path);
}

LoadedMatrix load_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open: " + path);

    std::string header;
    if (!std::getline(f, header) || header.empty() || header[0] != '#') {
        throw format_error("matrix csv: missing header line", 1);
    }
    LoadedMatrix out;
    int rows = -1, cols = -1;
    std::istringstream hs(header.substr(1));
    std::string tok;
    while (hs >> tok) {
        if (tok.rfind("rows=", 0) == 0) rows = std::atoi(tok.c_str() + 5);
        else if (tok.rfind("cols=", 0) == 0) cols = std::atoi(tok.c_str() + 5);
        else if (tok.rfind("kind=", 0) == 0) out.kind = tok.substr(5);
        else if (tok == "complex=1") out.complex_values = true;
    }
    if (rows <= 0 || cols <= 0) throw format_error("matrix csv: bad dimensions in header", 1);

    out.values = CGrid(rows, cols);
    std::string line;
    for (int r = 0; r < rows; ++r) {
        if (!std::getline(f, line)) throw format_error("matrix csv: truncated file", static_cast<std::size_t>(r + 2));
        std::istringstream ls(line);
        std::string cell;
        const int per_row = out.complex_values ? 2 * cols : cols;
        std::vector<double> vals;
        vals.reserve(static_cast<std::size_t>(per_row));
        while (std::getline(ls, cell, ',')) {
            double v = 0.0;
            if (!parse_double(cell, v)) {
                throw format_error("matrix csv: bad number '" + cell + "'", static_cast<std::size_t>(r + 2));
            }
            vals.push_back(v);
        }
        if (static_cast<int>(vals.size()) != per_row) {
            throw format_error("matrix csv: wrong column count", static_cast<std::size_t>(r + 2));
        }
        for (int c = 0; c < cols; ++c) {
            out.values.at(r, c) = out.complex_values ? cplx(vals[static_cast<std::size_t>(2 * c)],
                                                            vals[static_cast<std::size_t>(2 * c + 1)])
                                                     : cplx(vals[static_cast<std::size_t>(c)], 0.0);
        }
    }
    return out;
}

namespace {

LoadedSignal load_signal_text(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw io_error("cannot open: " + path);

    LoadedSignal out;
    out.signal.sample_rate = 1.0;
    bool any_complex = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("sample_rate=");
            if (pos != std::string::npos) {
                double rate = 0.0;
                if (!parse_double(line.substr(pos + 12), rate) || !(rate > 0.0)) {
                    throw format_error("signal file: bad sample_rate header", lineno);
                }
                out.signal.sample_rate = rate;
            }
            continue;
        }
        const auto comma = line.find(',');
        double re = 0.0, im = 0.0;
        if (comma == std::string::npos) {
            if (!parse_double(line, re)) {
                throw format_error("signal file: bad sample '" + line + "'", lineno);
            }
        } else {
            any_complex = true;
            if (!parse_double(line.substr(0, comma), re) || !parse_double(line.substr(comma + 1), im)) {
                throw format_error("signal file: bad sample '" + line + "'", lineno);
            }
        }
        out.signal.samples.emplace_back(re, im);
    }
    if (out.signal.samples.empty()) throw format_error("signal file: no samples", 0);

    if (!any_complex) {
        // Real-valued recording: zero the negative-frequency bins.
        const int n = out.signal.size();
        if (n >= 8 && n % 2 == 0) {
            std::vector<cplx> spec(out.signal.samples);
            fft(spec, FftDir::Forward);
            for (int m = n / 2 + 1; m < n; ++m) spec[static_cast<std::size_t>(m)] = 0.0;
            fft(spec, FftDir::Backward);
            for (int i = 0; i < n; ++i) {
                out.signal.samples[static_cast<std::size_t>(i)] = spec[static_cast<std::size_t>(i)] / static_cast<double>(n);
            }
            out.converted_to_analytic = true;
        }
    }
    return out;
}

LoadedSignal load_signal_binary(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open: " + path);
    f.seekg(0, std::ios::end);
    const std::streamoff bytes = f.tellg();
    f.seekg(0, std::ios::beg);
    if (bytes <= 0 || bytes % 16 != 0) {
        throw format_error("binary signal file size is not a whole number of re/im float64 pairs", 0);
    }
    const std::size_t count = static_cast<std::size_t>(bytes) / 16;
    LoadedSignal out;
    out.signal.samples.resize(count);
    std::vector<double> raw(count * 2);
    f.read(reinterpret_cast<char*>(raw.data()), bytes);
    if (!f) throw io_error("read failed: " + path);
    for (std::size_t i = 0; i < count; ++i) out.signal.samples[i] = cplx(raw[2 * i], raw[2 * i + 1]);
    return out;
}

}  // namespace

LoadedSignal load_signal(const std::string& path) {
    if (ends_with(path, ".bin") || ends_with(path, ".raw") || ends_with(path, ".f64")) {
        return load_signal_binary(path);
    }
    return load_signal_text(path);
}

void save_signal_text(const Signal& x, const std::string& path) {
    std::ofstream f = open_out(path);
    f << "# sample_rate=" << format_double(x.sample_rate) << "\n";
    for (const cplx& z : x.samples) {
        f << format_double(z.real()) << "," << format_double(z.imag()) << "\n";
    }
    if (!f) throw io_error("write failed: " + path);
}

void save_signal_binary(const Signal& x, const std::string& path) {
    std::ofstream f = open_out(path, true);
    std::vector<double> raw;
    raw.reserve(x.samples.size() * 2);
    for (const cplx& z : x.samples) {
        raw.push_back(z.real());
        raw.push_back(z.imag());
    }
    f.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(double)));
    if (!f) throw io_error("write failed: " + path);
}

}  // namespace stf
