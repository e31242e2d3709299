#pragma once

#include <vector>

#include "hoffman/linalg.hpp"

namespace hoffman::rays {

/// Generators of {u : ineq u >= 0, eq u = 0}: the cone equals
/// cone(rays) + span(lineality columns).  Rays are unit vectors.
struct ConeGenerators {
    std::vector<Vector> rays;
    DenseMatrix lineality;  ///< dim x l, orthonormal columns
};

/// Double-description method on the pointed part of the cone.
ConeGenerators cone_generators(const DenseMatrix& ineq, const DenseMatrix& eq, std::size_t dim);

/// Extreme rays of a pointed cone {u : f u >= 0} with rank(f) = f.cols().
std::vector<Vector> extreme_rays_pointed(const DenseMatrix& f);

}  // namespace hoffman::rays
