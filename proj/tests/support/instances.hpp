#pragma once

#include <cmath>
#include <random>

#include "hoffman/cones.hpp"
#include "hoffman/linalg.hpp"
#include "hoffman/mapping.hpp"

namespace hoffman::gen {

inline DenseMatrix primal_example(double theta) {
    return DenseMatrix{{0, 0, std::cos(theta), -std::cos(theta)}, {1, -1, -std::sin(theta), -std::sin(theta)}};
}

inline DenseMatrix dual_example(double theta) { return DenseMatrix{{std::sin(theta), 0, 1}, {1, 1, 0}}; }

inline mapping::SolutionMap pa_map(const DenseMatrix& a, mapping::NormPair norms) {
    return mapping::SolutionMap(a, cones::SignedOrthant::nonneg(a.cols()), cones::ZeroSet{a.rows()}, norms);
}

/// Entries drawn from N(0,1) and rounded to three decimals.
inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    std::normal_distribution<double> g;
    DenseMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = std::round(1000 * g(rng)) / 1000;
    return a;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline cones::ConeRepr random_subspace(std::mt19937_64& rng, std::size_t dim, std::size_t k) {
    if (k == 0) return cones::ZeroSet{dim};
    if (k >= dim) return cones::FullSpace{dim};
    return cones::Subspace::spanned_by(random_matrix(rng, dim, k), dim);
}

inline cones::ConeRepr random_orthant(std::mt19937_64& rng, std::size_t dim, bool allow_zero) {
    cones::SignedOrthant o;
    const std::size_t kinds = allow_zero ? 3 : 2;
    for (std::size_t i = 0; i < dim; ++i) {
        switch (pick(rng, 0, kinds)) {
            case 0: o.signs.push_back(cones::Sign::Nonneg); break;
            case 1: o.signs.push_back(cones::Sign::Nonpos); break;
            case 2: o.signs.push_back(cones::Sign::Free); break;
            default: o.signs.push_back(cones::Sign::Zero); break;
        }
    }
    return o;
}

/// R or S for a random conic instance: orthants of mixed sign, subspaces, {0} or the full space.
inline cones::ConeRepr random_cone(std::mt19937_64& rng, std::size_t dim) {
    switch (pick(rng, 0, 5)) {
        case 0: return cones::SignedOrthant::nonneg(dim);
        case 1: return cones::SignedOrthant::nonpos(dim);
        case 2: return random_orthant(rng, dim, true);
        case 3: return random_subspace(rng, dim, pick(rng, 1, dim));
        case 4: return cones::ZeroSet{dim};
        default: return random_orthant(rng, dim, false);
    }
}

inline NormTag random_polyhedral(std::mt19937_64& rng) { return pick(rng, 0, 1) ? NormTag::L1 : NormTag::LInf; }

inline mapping::SolutionMap random_conic_map(std::mt19937_64& rng, std::size_t max_m = 3, std::size_t max_n = 6) {
    const std::size_t m = pick(rng, 1, max_m), n = pick(rng, 1, max_n);
    return mapping::SolutionMap(random_matrix(rng, m, n), random_cone(rng, n), random_cone(rng, m),
                                {random_polyhedral(rng), random_polyhedral(rng)});
}

/// Full row rank m x n matrix (resampled until it is).
inline DenseMatrix random_full_row_rank(std::mt19937_64& rng, std::size_t m, std::size_t n) {
    for (;;) {
        DenseMatrix a = random_matrix(rng, m, n);
        if (linalg::rank_tol(a) == static_cast<int>(m) && linalg::sigma_min(a) > 1e-3) return a;
    }
}

}  // namespace hoffman::gen
