#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stf {

// A computation left its numeric contract: non-finite spectrum after
// weighting, imaginary residue above the discard threshold, diverged
// objective.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A signal or matrix file could not be parsed. Carries the 1-based line
// number when the failure is attributable to a specific line (0 otherwise).
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Peak tracker could not initialize or follow the requested components.
class tracking_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stf
