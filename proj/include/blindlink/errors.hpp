#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace blindlink {

// Field and linear algebra.

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in prime field") {}
};

struct FieldMismatch : std::invalid_argument {
    FieldMismatch() : std::invalid_argument("operands belong to different prime fields") {}
};

struct InvalidEvaluationPoints : std::invalid_argument {
    explicit InvalidEvaluationPoints(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("matrix is singular over the prime field") {}
};

struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Coding and leakage analysis.

struct ArityError : std::invalid_argument {
    explicit ArityError(const std::string& what) : std::invalid_argument(what) {}
};

struct InsufficientObservations : std::runtime_error {
    std::size_t missing;
    explicit InsufficientObservations(std::size_t missing_channels)
        : std::runtime_error("codeword is missing " + std::to_string(missing_channels) +
                             " symbol(s); decoding needs all of them"),
          missing(missing_channels) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct EncodingError : std::runtime_error {
    explicit EncodingError(const std::string& what) : std::runtime_error(what) {}
};

// Antenna geometry and propagation.

struct BelowCutoff : std::domain_error {
    explicit BelowCutoff(const std::string& what) : std::domain_error(what) {}
};

struct BadGeometry : std::invalid_argument {
    explicit BadGeometry(const std::string& what) : std::invalid_argument(what) {}
};

struct OutOfRange : std::domain_error {
    explicit OutOfRange(const std::string& what) : std::domain_error(what) {}
};

// Planning and link simulation.

namespace detail {
inline std::string channel_list(const std::vector<std::size_t>& channels) {
    std::string s;
    for (std::size_t c : channels) {
        if (!s.empty()) s += ",";
        s += std::to_string(c);
    }
    return s;
}
}  // namespace detail

struct PolicyInfeasible : std::runtime_error {
    std::vector<std::size_t> channels;
    explicit PolicyInfeasible(std::vector<std::size_t> bad_channels)
        : std::runtime_error("power policy infeasible for channel(s) " +
                             detail::channel_list(bad_channels)),
          channels(std::move(bad_channels)) {}
};

struct BobBlind : std::runtime_error {
    std::vector<std::size_t> channels;
    explicit BobBlind(std::vector<std::size_t> blind_channels)
        : std::runtime_error("intended receiver is blind on channel(s) " +
                             detail::channel_list(blind_channels)),
          channels(std::move(blind_channels)) {}
};

// Configuration.

struct ConfigError : std::runtime_error {
    int line;  // 1-based line in the config text, 0 if not tied to a line
    ConfigError(int line_number, const std::string& what)
        : std::runtime_error(line_number > 0
                                 ? "config line " + std::to_string(line_number) + ": " + what
                                 : "config: " + what),
          line(line_number) {}
};

}  // namespace blindlink
