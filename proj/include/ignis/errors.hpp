#ifndef IGNIS_ERRORS_HPP
#define IGNIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ignis {

/// Invalid user-facing configuration (grid sizes, boundary layout, input file).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thermodynamically invalid state (non-positive density/temperature, bad Y).
class StateError : public std::runtime_error {
public:
    explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure inside a kernel or a time step (NaN/Inf, folded grid).
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// A time step that produced an invalid state; carries stage and location.
class StepFailure : public NumericsError {
public:
    StepFailure(const std::string& what, int stage, int i, int j)
        : NumericsError(what), stage(stage), i(i), j(j) {}
    int stage;
    int i;
    int j;
};

/// Malformed or mismatched on-disk artifact (snapshot, ledger, CSV).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// API misuse detected at runtime (bad field name, arity, time mismatch).
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ignis

#endif
