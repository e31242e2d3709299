#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hoffman/cones.hpp"
#include "hoffman/linalg.hpp"
#include "hoffman/mapping.hpp"

namespace hoffman {

enum class Method {
    subspace_norm,
    maximal_slater_max,
    box_signature,
    chi_basis,
    geometric_inradius,
    cap_maximization,
};

std::string_view to_string(Method m) noexcept;

/// Exact value of a Hoffman constant or of a tangent norm, with a certificate.
struct HoffmanReport {
    double value = 0.0;
    bool infinite = false;
    Method method = Method::maximal_slater_max;
    mapping::TangentIndex attaining_index;
    IndexSet basis;            ///< attaining column basis (chi and cap routes)
    std::vector<int> signature;  ///< attaining +/-1 signature (box routes)
    Vector direction_u;        ///< unit b-direction attaining the tangent norm
    Vector direction_v;        ///< min-norm preimage of direction_u
    Vector witness_b;          ///< replayable pair: dist(x, P(b)) / dist(Ax-b, S) = value
    Vector witness_x;
    double tol = 1e-9;
    std::string diagnostic;
};

struct ComputeOptions {
    double tol = 1e-9;
    unsigned threads = 0;  ///< 0 = available parallelism
};

enum class Route { automatic, subspace, slater_max, geometric, cap, chi };

/// Parses "auto", "subspace", "slater-max", "geometric", "cap", "chi".
Route parse_route(std::string_view s);

/// ||Phi|| = max over unit u in dom of min{||x|| : x in R, Ax - u in S} for a
/// sublinear map with a polyhedral b-norm; the inner norm may be any of l1, l2, linf.
HoffmanReport norm_of_sublinear(const mapping::SolutionMap& m, const ComputeOptions& opts = {});

/// H(m) by the route selected from structure and norms (or forced by `route`).
HoffmanReport hoffman_constant(const mapping::SolutionMap& m, const ComputeOptions& opts = {},
                               Route route = Route::automatic);

/// H(P_A) for b in l2, x in l1, R = R^n_+, S = {0}, as the reciprocal inradius
/// of conv{0, columns} over the maximal Slater sets.
HoffmanReport hoffman_PA_geometric(const DenseMatrix& a, const ComputeOptions& opts = {});

/// Tangent norm ||Phi_T|| for b in l2, x in l1, R_T a signed orthant and S a
/// subspace, by the inradius of the image of the l1 ball.
HoffmanReport geometric_tangent_norm(const mapping::SolutionMap& tangent_map);

struct CapMax {
    double value = 0.0;
    Vector x;
};

/// max ||x||_p over {x >= 0, ||B x||_2 <= 1}, p in {L1, L2}.
CapMax max_norm_over_cap(const DenseMatrix& b, NormTag p);

/// H(P_A*) with the y-space in l2 and the c-space in the dual of p:
/// max over nonsingular m-column bases I of max_norm_over_cap(A_I, p).
HoffmanReport hoffman_PA_star(const DenseMatrix& a, NormTag p, const ComputeOptions& opts = {});

/// chi(A) = max over nonsingular m-column bases of 1 / sigma_min(A_I).
HoffmanReport chi(const DenseMatrix& a, const ComputeOptions& opts = {});
/// chi of the row-orthonormalized matrix.
HoffmanReport chibar(const DenseMatrix& a, const ComputeOptions& opts = {});

/// H(P_{A, box, L}) by the vertex tangent family of the box.
HoffmanReport hoffman_box(const DenseMatrix& a, const cones::Box& box, const cones::ConeRepr& l,
                          mapping::NormPair norms, const ComputeOptions& opts = {});

struct ChiLowerBound {
    double value = 0.0;
    int skipped = 0;  ///< trials whose A D A^T was numerically singular
    Vector best_d;
};

/// max over sampled positive diagonal D of ||(A D A^T)^{-1} A D||_2; the first trial uses D = I.
ChiLowerBound chi_lower_bound_random(const DenseMatrix& a, int trials, std::uint64_t seed);

/// Certificate (b, x) for the map m from a tangent index t and unit direction u
/// of the tangent map: replaying it through the definition gives ||Phi_T(u)||-min.
void attach_witness(const mapping::SolutionMap& m, HoffmanReport& report);

// ---- verifiers ---------------------------------------------------------------

enum class CheckStatus { pass, fail, unknown };
std::string_view to_string(CheckStatus s) noexcept;

struct DualityReport {
    std::string side;  ///< "primal", "dual" or "neither"
    double lhs = 0.0;  ///< H(P_{A,R,S})
    double rhs = 0.0;  ///< H(P_{A^T,S*,-R*}) in dual norms
    bool lhs_exact = false;
    bool rhs_exact = false;
    double slack = 0.0;  ///< larger side minus smaller side as asserted
    CheckStatus status = CheckStatus::unknown;
    std::optional<HoffmanReport> lhs_report;
    std::optional<HoffmanReport> rhs_report;
};

DualityReport verify_duality(const mapping::SolutionMap& m, const ComputeOptions& opts = {}, int oracle_trials = 2000,
                             std::uint64_t seed = 1);

struct BoxDualityReport {
    double lhs = 0.0;  ///< H(P_{A, box, L})
    double rhs = 0.0;  ///< H(P_{A^T, L-perp, -box}) in dual norms
    bool lhs_exact = false;
    bool rhs_exact = false;
    double gap = 0.0;
    CheckStatus status = CheckStatus::unknown;
    std::optional<HoffmanReport> lhs_report;
    std::optional<HoffmanReport> rhs_report;
};

BoxDualityReport verify_box_duality(const DenseMatrix& a, const cones::Box& box, const cones::ConeRepr& l,
                                    mapping::NormPair norms, const ComputeOptions& opts = {}, double tol = 1e-6,
                                    int oracle_trials = 2000, std::uint64_t seed = 1);

struct NamedCheck {
    std::string name;
    CheckStatus status = CheckStatus::unknown;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
};

struct ChiIdentityReport {
    double chi = 0.0;
    double chibar = 0.0;
    double dual_box = 0.0;        ///< H(P_{A^T, R^m, -box}) in l2
    double dual_box_kernel = 0.0;  ///< H(P_{I_n, ker(A)-perp, -box}) in l2
    double primal_box_oracle = 0.0;
    double primal_kernel_oracle = 0.0;
    std::vector<NamedCheck> checks;
    CheckStatus status = CheckStatus::unknown;
};

ChiIdentityReport verify_chi_identity(const DenseMatrix& a, const ComputeOptions& opts = {}, double tol = 1e-7,
                                      int oracle_trials = 2000, std::uint64_t seed = 1);

struct MonotonicityReport {
    double value = 0.0;
    std::vector<std::pair<mapping::TangentIndex, double>> tangent_values;
    double worst_excess = 0.0;  ///< max over T of H(Phi_T) - H(Phi)
    CheckStatus status = CheckStatus::unknown;
};

/// Checks H(Phi_T) <= H(Phi) + tol on up to `samples` tangent indices
/// (all of them when there are at most `samples`).
MonotonicityReport tangent_monotonicity_check(const mapping::SolutionMap& m, int samples,
                                              const ComputeOptions& opts = {}, double tol = 1e-7,
                                              std::uint64_t seed = 1);

}  // namespace hoffman
