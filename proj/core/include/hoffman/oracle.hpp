#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hoffman/linalg.hpp"
#include "hoffman/mapping.hpp"

/// Definition-level estimators that never call the exact algorithms.
namespace hoffman::oracle {

struct SamplerConfig {
    int trials = 2000;
    std::uint64_t seed = 1;
    double b_scale = 1.0;
    double x_scale = 1.0;
    int rejection_cap = 1000;  ///< allowed number of trials whose b could not be used
    unsigned threads = 0;
};

struct DistanceResult {
    bool feasible = false;
    double value = 0.0;
    Vector nearest;
};

/// dist(x, P(b)) in the x-norm; infeasible when b is outside dom.
DistanceResult distance_to_solution_set(const mapping::SolutionMap& m, std::span<const double> x,
                                        std::span<const double> b);

/// dist(Ax - b, S) in the b-norm.
double violation(const mapping::SolutionMap& m, std::span<const double> x, std::span<const double> b);

struct Candidate {
    std::string label;
    Vector b;
    Vector x;
};

/// Known witnesses for the two worked examples, matched on the exact matrix pattern.
std::vector<Candidate> known_witnesses(const mapping::SolutionMap& m);

struct LowerBound {
    double value = 0.0;
    Vector b;
    Vector x;
    double distance = 0.0;
    double violation = 0.0;
    std::string source;  ///< "sample" or the label of an injected witness
    int evaluated = 0;
    int skipped = 0;
    std::vector<double> trajectory;  ///< running max after the injected pairs and each trial
};

/// Largest ratio dist(x, P(b)) / dist(Ax - b, S) over injected and sampled pairs.
LowerBound hoffman_lower_bound(const mapping::SolutionMap& m, const SamplerConfig& cfg = {});

/// max over unit u in dom (grid on the circle for m = 2, random directions otherwise)
/// of min{||x|| : x in R, Ax - u in S}.  Lower bound on the norm of a sublinear map.
double norm_lower_bound_grid(const mapping::SolutionMap& m, int resolution, std::uint64_t seed = 1);

struct Replay {
    bool feasible = false;
    double distance = 0.0;
    double violation = 0.0;
    double ratio = 0.0;
};

/// Evaluates the defining ratio at a single pair.
Replay replay(const mapping::SolutionMap& m, std::span<const double> b, std::span<const double> x);

}  // namespace hoffman::oracle
