#include <algorithm>
#include <cmath>
#include <random>

#include "hoffman/constants.hpp"
#include "hoffman/error.hpp"
#include "hoffman/oracle.hpp"

namespace hoffman {

using cones::ConeRepr;
using mapping::SolutionMap;

std::string_view to_string(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

struct Side {
    double value = 0.0;
    bool exact = false;
    std::optional<HoffmanReport> report;
};

Side evaluate(const SolutionMap& m, const ComputeOptions& opts, int trials, std::uint64_t seed,
              Route route = Route::automatic) {
    Side s;
    try {
        HoffmanReport r = hoffman_constant(m, opts, route);
        s.value = r.infinite ? lp::kInf : r.value;
        s.exact = true;
        s.report = std::move(r);
        return s;
    } catch (const UnsupportedNormError&) {
    } catch (const UnsupportedStructureError&) {
    }
    oracle::SamplerConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.threads = opts.threads;
    s.value = oracle::hoffman_lower_bound(m, cfg).value;
    return s;
}

// Status of the claim small <= big + tol when either side may be only a lower bound.
CheckStatus check_le(const Side& small, const Side& big, double tol) {
    const bool holds = small.value <= big.value + tol || (std::isinf(small.value) && std::isinf(big.value));
    if (small.exact && big.exact) return holds ? CheckStatus::pass : CheckStatus::fail;
    if (holds) return small.exact ? CheckStatus::pass : CheckStatus::unknown;
    return big.exact ? CheckStatus::fail : CheckStatus::unknown;
}

CheckStatus combine(CheckStatus a, CheckStatus b) {
    if (a == CheckStatus::fail || b == CheckStatus::fail) return CheckStatus::fail;
    if (a == CheckStatus::unknown || b == CheckStatus::unknown) return CheckStatus::unknown;
    return CheckStatus::pass;
}

ConeRepr orthogonal_complement(const ConeRepr& l, std::size_t dim) {
    if (l.as<cones::ZeroSet>()) return cones::FullSpace{dim};
    if (l.as<cones::FullSpace>()) return cones::ZeroSet{dim};
    if (const auto* s = l.as<cones::Subspace>()) {
        const DenseMatrix c = linalg::orthonormal_complement(s->basis);
        if (c.cols() == 0) return cones::ZeroSet{dim};
        if (c.cols() == dim) return cones::FullSpace{dim};
        return cones::Subspace{c};
    }
    throw UnsupportedStructureError("box duality needs L to be a subspace");
}

cones::Box negated(const cones::Box& b) {
    cones::Box out;
    for (std::size_t i = 0; i < b.lower.size(); ++i) {
        out.lower.push_back(-b.upper[i]);
        out.upper.push_back(-b.lower[i]);
    }
    return out;
}

}  // namespace

DualityReport verify_duality(const SolutionMap& m, const ComputeOptions& opts, int oracle_trials,
                             std::uint64_t seed) {
    if (!m.is_sublinear()) throw UnsupportedStructureError("verify_duality needs conic R and S; use the box check");
    const bool primal = mapping::primal_slater(m).holds;
    const bool dual = mapping::dual_slater(m).holds;
    const Side lhs = evaluate(m, opts, oracle_trials, seed);
    const Side rhs = evaluate(mapping::adjoint(m), opts, oracle_trials, seed);
    DualityReport out;
    out.side = primal ? "primal" : dual ? "dual" : "neither";
    out.lhs = lhs.value;
    out.rhs = rhs.value;
    out.lhs_exact = lhs.exact;
    out.rhs_exact = rhs.exact;
    out.lhs_report = lhs.report;
    out.rhs_report = rhs.report;
    if (primal) {
        out.slack = rhs.value - lhs.value;
        out.status = check_le(lhs, rhs, 1e-7);
    }
    if (dual) {
        const CheckStatus st = check_le(rhs, lhs, 1e-7);
        out.status = primal ? combine(out.status, st) : st;
        out.slack = primal ? -std::abs(rhs.value - lhs.value) : lhs.value - rhs.value;
    }
    if (std::isnan(out.slack)) out.slack = 0.0;
    return out;
}

BoxDualityReport verify_box_duality(const DenseMatrix& a, const cones::Box& box, const ConeRepr& l,
                                    mapping::NormPair norms, const ComputeOptions& opts, double tol,
                                    int oracle_trials, std::uint64_t seed) {
    const SolutionMap primal(a, box, l, norms);
    const SolutionMap dual(a.transpose(), orthogonal_complement(l, a.rows()), negated(box), norms.dualized());
    const Side lhs = evaluate(primal, opts, oracle_trials, seed);
    const Side rhs = evaluate(dual, opts, oracle_trials, seed);
    BoxDualityReport out;
    out.lhs = lhs.value;
    out.rhs = rhs.value;
    out.lhs_exact = lhs.exact;
    out.rhs_exact = rhs.exact;
    out.lhs_report = lhs.report;
    out.rhs_report = rhs.report;
    out.gap = std::abs(lhs.value - rhs.value);
    if (std::isnan(out.gap)) out.gap = 0.0;
    out.status = combine(check_le(lhs, rhs, tol), check_le(rhs, lhs, tol));
    if (lhs.exact && rhs.exact) out.status = out.gap <= tol ? CheckStatus::pass : CheckStatus::fail;
    return out;
}

ChiIdentityReport verify_chi_identity(const DenseMatrix& a, const ComputeOptions& opts, double tol,
                                      int oracle_trials, std::uint64_t seed) {
    const std::size_t m = a.rows(), n = a.cols();
    ChiIdentityReport out;
    out.chi = chi(a, opts).value;
    out.chibar = chibar(a, opts).value;
    const cones::Box box{Vector(n, -1.0), Vector(n, 1.0)};
    const mapping::NormPair euclid{NormTag::L2, NormTag::L2};

    // Dual sides through the signature decomposition of the box.
    const SolutionMap dual_box(a.transpose(), cones::FullSpace{m}, negated(box), euclid);
    out.dual_box = hoffman_constant(dual_box, opts, Route::slater_max).value;
    const ConeRepr row_space = cones::Subspace::spanned_by(a.transpose(), n);
    const SolutionMap dual_kernel(DenseMatrix::identity(n), row_space, negated(box), euclid);
    out.dual_box_kernel = hoffman_constant(dual_kernel, opts, Route::slater_max).value;

    // Primal sides have no exact Euclidean route; the oracle bounds them from below.
    oracle::SamplerConfig cfg;
    cfg.trials = oracle_trials;
    cfg.seed = seed;
    cfg.threads = opts.threads;
    out.primal_box_oracle = oracle::hoffman_lower_bound(SolutionMap(a, box, cones::ZeroSet{m}, euclid), cfg).value;
    const ConeRepr kernel = orthogonal_complement(row_space, n);
    out.primal_kernel_oracle =
        oracle::hoffman_lower_bound(SolutionMap(DenseMatrix::identity(n), box, kernel, euclid), cfg).value;

    auto equal = [&](std::string name, double x, double y) {
        const double gap = std::abs(x - y);
        out.checks.push_back({std::move(name), gap <= tol ? CheckStatus::pass : CheckStatus::fail, x, y, -gap});
    };
    auto below = [&](std::string name, double lb, double exact) {
        out.checks.push_back({std::move(name), lb <= exact + 1e-6 ? CheckStatus::pass : CheckStatus::fail, lb, exact,
                              exact - lb});
    };
    equal("chi = H(dual box)", out.chi, out.dual_box);
    equal("chibar = H(dual box over row space)", out.chibar, out.dual_box_kernel);
    below("oracle H(primal box) <= chi", out.primal_box_oracle, out.chi);
    below("oracle H(primal box over kernel) <= chibar", out.primal_kernel_oracle, out.chibar);
    out.status = CheckStatus::pass;
    for (const auto& c : out.checks) out.status = combine(out.status, c.status);
    return out;
}

MonotonicityReport tangent_monotonicity_check(const SolutionMap& m, int samples, const ComputeOptions& opts,
                                              double tol, std::uint64_t seed) {
    if (samples < 1) throw InputError("tangent_monotonicity_check: samples must be positive");
    MonotonicityReport out;
    const HoffmanReport whole = hoffman_constant(m, opts);
    out.value = whole.infinite ? lp::kInf : whole.value;
    auto indices = mapping::all_tangent_indices(m);
    if (indices.size() > static_cast<std::size_t>(samples)) {
        std::mt19937_64 rng(seed);
        std::shuffle(indices.begin(), indices.end(), rng);
        indices.resize(static_cast<std::size_t>(samples));
        std::sort(indices.begin(), indices.end(), mapping::canonical_less);
    }
    out.status = CheckStatus::pass;
    out.worst_excess = -lp::kInf;
    for (const auto& t : indices) {
        const HoffmanReport r = hoffman_constant(mapping::restrict_to_tangent(m, t), opts);
        const double v = r.infinite ? lp::kInf : r.value;
        out.tangent_values.emplace_back(t, v);
        const double excess = (std::isinf(v) && std::isinf(out.value)) ? 0.0 : v - out.value;
        out.worst_excess = std::max(out.worst_excess, excess);
        if (excess > tol) out.status = CheckStatus::fail;
    }
    if (indices.empty()) out.worst_excess = 0.0;
    return out;
}

}  // namespace hoffman
