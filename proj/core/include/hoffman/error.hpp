#pragma once

#include <stdexcept>
#include <string>

namespace hoffman {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: non-finite entries, inconsistent dimensions, bad index sets.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

/// A matrix that must have full (row) rank does not.
class RankError : public Error {
public:
    explicit RankError(const std::string& what) : Error(what) {}
};

/// Problem size exceeds the desk-scale limit of the enumeration algorithms.
class ScaleError : public Error {
public:
    explicit ScaleError(const std::string& what) : Error(what) {}
};

/// Operation is undefined for the given object (e.g. dual of a non-conic box).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// No exact algorithm exists for the requested norm combination.
class UnsupportedNormError : public Error {
public:
    explicit UnsupportedNormError(const std::string& what) : Error(what) {}
};

/// No exact algorithm exists for the requested cone structure.
class UnsupportedStructureError : public Error {
public:
    explicit UnsupportedStructureError(const std::string& what) : Error(what) {}
};

/// Simplex stalled or exceeded its pivot budget.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(what) {}
};

/// A feasibility precondition failed (empty solution set, b outside the domain).
class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what) : Error(what) {}
};

/// The sampler could not draw admissible points within its rejection budget.
class SamplingError : public Error {
public:
    explicit SamplingError(const std::string& what) : Error(what) {}
};

/// An internal consistency check failed; indicates a bug.
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& what) : Error(what) {}
};

}  // namespace hoffman
