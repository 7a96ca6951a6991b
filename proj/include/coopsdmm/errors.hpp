#pragma once

#include <stdexcept>
#include <string>

namespace coopsdmm {

// Base for every error this library throws on contract violations.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& what = "operands belong to different prime fields")
        : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what = "matrix dimensions do not conform")
        : Error(what) {}
};

struct IndivisibleDimension : Error {
    explicit IndivisibleDimension(const std::string& what = "partition count does not divide the dimension")
        : Error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what = "zero has no multiplicative inverse")
        : Error(what) {}
};

struct DuplicatePoints : Error {
    explicit DuplicatePoints(const std::string& what = "evaluation points must be pairwise distinct")
        : Error(what) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what = "matrix is singular") : Error(what) {}
};

struct FieldTooSmall : Error {
    explicit FieldTooSmall(const std::string& what = "field is too small for the requested point count")
        : Error(what) {}
};

struct PointSearchExhausted : Error {
    explicit PointSearchExhausted(const std::string& what = "no decodable evaluation point set found")
        : Error(what) {}
};

struct InsufficientResponders : Error {
    explicit InsufficientResponders(const std::string& what = "fewer responders than the recovery threshold")
        : Error(what) {}
};

struct TopologyViolation : Error {
    explicit TopologyViolation(const std::string& what = "cooperation group spans several graph components")
        : Error(what) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what = "exhaustive enumeration budget exceeded")
        : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace coopsdmm
