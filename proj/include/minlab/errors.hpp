#pragma once

#include <stdexcept>
#include <string>

namespace minlab {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyInputError : Error {
    explicit EmptyInputError(const std::string& msg) : Error(msg) {}
};

// Gap schedule rejected (mass >= 1, nonpositive length, bad tail).
struct ScheduleError : Error {
    explicit ScheduleError(const std::string& msg) : Error(msg) {}
};

// Rotation number fails a rationality/irrationality requirement.
struct RotationNumberError : Error {
    explicit RotationNumberError(const std::string& msg) : Error(msg) {}
};

// Seeds coincide or share an orbit.
struct SeedError : Error {
    explicit SeedError(const std::string& msg) : Error(msg) {}
};

// Operation ran past the stored schedule depth. Carries the certified bound
// on the total mass that lies beyond the stored range.
struct TruncationError : Error {
    TruncationError(const std::string& msg, double tail_bound)
        : Error(msg), tail_bound(tail_bound) {}
    double tail_bound;
};

// Word depth or tower depth cannot absorb the request.
struct DepthError : Error {
    explicit DepthError(const std::string& msg) : Error(msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct BranchError : Error {
    explicit BranchError(const std::string& msg) : Error(msg) {}
};

// Roof fails the half-rotation antisymmetry needed for the quotient map.
struct EquivarianceError : Error {
    explicit EquivarianceError(const std::string& msg) : Error(msg) {}
};

// A point that must be treated as a fiber was passed as a regular point.
struct ChartSingularityError : Error {
    explicit ChartSingularityError(const std::string& msg) : Error(msg) {}
};

struct UndefinedDirectionError : Error {
    explicit UndefinedDirectionError(const std::string& msg) : Error(msg) {}
};

struct ModeError : Error {
    explicit ModeError(const std::string& msg) : Error(msg) {}
};

// Orbit of the blown seed collides with itself.
struct AperiodicityError : Error {
    explicit AperiodicityError(const std::string& msg) : Error(msg) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& msg) : Error(msg) {}
};

// A lattice map that the product model says cannot exist.
struct RigidityFailureError : Error {
    explicit RigidityFailureError(const std::string& msg) : Error(msg) {}
};

struct DegenerateTargetError : Error {
    explicit DegenerateTargetError(const std::string& msg) : Error(msg) {}
};

// Config file problems; line = 0 when no single line is responsible.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg, int line = 0)
        : Error(msg), line(line) {}
    int line;
};

}  // namespace minlab
