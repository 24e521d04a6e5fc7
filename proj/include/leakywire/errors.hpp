#pragma once

#include <stdexcept>
#include <string>

namespace leakywire {

// Failure classes, mirrored by the CLI exit codes.
enum class ErrorClass { config, geometry, regime, solver, io };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string message)
        : std::runtime_error(std::move(message)), cls_(cls) {}

    ErrorClass error_class() const noexcept { return cls_; }

    int exit_code() const noexcept {
        switch (cls_) {
        case ErrorClass::config: return 2;
        case ErrorClass::geometry: return 3;
        case ErrorClass::regime: return 4;
        case ErrorClass::solver: return 5;
        case ErrorClass::io: return 6;
        }
        return 1;
    }

private:
    ErrorClass cls_;
};

struct ConfigError : Error {
    explicit ConfigError(std::string m) : Error(ErrorClass::config, std::move(m)) {}
};
struct GeometryError : Error {
    explicit GeometryError(std::string m) : Error(ErrorClass::geometry, std::move(m)) {}
};
// Strong-coupling / solvability conditions violated (coupling too weak for the
// requested tube radius, Robin weight nonpositive, ...).
struct RegimeError : Error {
    explicit RegimeError(std::string m) : Error(ErrorClass::regime, std::move(m)) {}
};
struct SolverError : Error {
    explicit SolverError(std::string m) : Error(ErrorClass::solver, std::move(m)) {}
};
struct IoError : Error {
    explicit IoError(std::string m) : Error(ErrorClass::io, std::move(m)) {}
};

} // namespace leakywire
