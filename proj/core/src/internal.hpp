#pragma once

#include "hoffman/constants.hpp"
#include "hoffman/lp.hpp"
#include "hoffman/mapping.hpp"

namespace hoffman::detail {

/// min{||x|| : x in R, A x - u in S} in the map's x-norm.
lp::MinNormResult inner_min(const mapping::SolutionMap& m, std::span<const double> u);

/// Tangent index with every orthant slot of R and S active (the graph itself).
mapping::TangentIndex full_index(const mapping::SolutionMap& m);

HoffmanReport slater_max_route(const mapping::SolutionMap& m, const ComputeOptions& opts);
HoffmanReport geometric_route(const mapping::SolutionMap& m, const ComputeOptions& opts);
HoffmanReport cap_route(const mapping::SolutionMap& m, const ComputeOptions& opts);
HoffmanReport box_route(const mapping::SolutionMap& m, const ComputeOptions& opts);
HoffmanReport chi_route(const mapping::SolutionMap& m, const ComputeOptions& opts);

bool geometric_applicable(const mapping::SolutionMap& m);
bool cap_applicable(const mapping::SolutionMap& m);
bool chi_applicable(const mapping::SolutionMap& m);

}  // namespace hoffman::detail
