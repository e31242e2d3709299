#include "hoffman/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hoffman/cones.hpp"
#include "hoffman/error.hpp"
#include "hoffman/lp.hpp"
#include "parallel.hpp"

namespace hoffman::oracle {

using mapping::SolutionMap;

namespace {

void append_shifted(lp::HPolytope& out, const lp::HPolytope& set, const DenseMatrix& map,
                    std::span<const double> offset) {
    // Rows of {d : map d + offset in set}.
    auto add = [&](const DenseMatrix& rows, const Vector& rhs, bool eq) {
        for (std::size_t i = 0; i < rows.rows(); ++i) {
            const Vector row = linalg::multiply_transpose(map, rows.row(i));
            const double r = rhs[i] - linalg::dot(rows.row(i), offset);
            eq ? out.add_eq(row, r) : out.add_ineq(row, r);
        }
    };
    add(set.ineq_matrix, set.ineq_rhs, false);
    add(set.eq_matrix, set.eq_rhs, true);
}

Vector residual(const SolutionMap& m, std::span<const double> x, std::span<const double> b) {
    Vector r = linalg::multiply(m.a(), x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

bool matrix_is(const DenseMatrix& a, const DenseMatrix& pattern) {
    if (a.rows() != pattern.rows() || a.cols() != pattern.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!near(a(i, j), pattern(i, j))) return false;
    return true;
}

bool orthant_is(const cones::ConeRepr& c, cones::Sign sign, std::size_t n) {
    if (c.as<cones::Box>()) return false;
    const auto o = cones::as_signed_orthant(c);
    if (!o || o->signs.size() != n) return false;
    for (auto s : o->signs)
        if (s != sign) return false;
    return true;
}

Vector normal_vector(std::mt19937_64& rng, std::size_t n, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    Vector v(n);
    for (double& x : v) x = g(rng);
    return v;
}

Vector sparse_vector(std::mt19937_64& rng, std::size_t n, double scale) {
    std::uniform_int_distribution<int> pick(-1, 1);
    Vector v(n);
    for (double& x : v) x = scale * pick(rng);
    return v;
}

}  // namespace

DistanceResult distance_to_solution_set(const SolutionMap& m, std::span<const double> x,
                                        std::span<const double> b) {
    if (x.size() != m.n() || b.size() != m.m()) throw InputError("distance_to_solution_set: dimension mismatch");
    lp::HPolytope shifted(m.n());
    append_shifted(shifted, cones::describe(m.r()), DenseMatrix::identity(m.n()), x);
    append_shifted(shifted, cones::describe(m.s()), m.a(), residual(m, x, b));
    const auto r = lp::min_norm_any(m.norms().x, shifted);
    DistanceResult out;
    if (r.status != lp::LpStatus::optimal) return out;
    out.feasible = true;
    out.value = r.value;
    out.nearest.assign(x.begin(), x.end());
    for (std::size_t i = 0; i < out.nearest.size(); ++i) out.nearest[i] += r.point[i];
    return out;
}

double violation(const SolutionMap& m, std::span<const double> x, std::span<const double> b) {
    if (x.size() != m.n() || b.size() != m.m()) throw InputError("violation: dimension mismatch");
    return cones::distance(m.s(), residual(m, x, b), m.norms().b);
}

Replay replay(const SolutionMap& m, std::span<const double> b, std::span<const double> x) {
    Replay out;
    const auto d = distance_to_solution_set(m, x, b);
    if (!d.feasible) return out;
    out.feasible = true;
    out.distance = d.value;
    out.violation = violation(m, x, b);
    if (out.violation > 0) out.ratio = out.distance / out.violation;
    return out;
}

std::vector<Candidate> known_witnesses(const SolutionMap& m) {
    std::vector<Candidate> out;
    const DenseMatrix& a = m.a();
    // A = [[sin t, 0, 1], [1, 1, 0]] with R = R^3_+, S = {0}: b = (0, 1), x = (1, 0, 0).
    if (a.rows() == 2 && a.cols() == 3 && a(0, 0) > 0 && a(0, 0) < 0.5 &&
        matrix_is(a, DenseMatrix{{a(0, 0), 0, 1}, {1, 1, 0}}) && orthant_is(m.r(), cones::Sign::Nonneg, 3) &&
        orthant_is(m.s(), cones::Sign::Zero, 2))
        out.push_back({"dual-example", {0.0, 1.0}, {1.0, 0.0, 0.0}});
    // A^T of [[0, 0, cos t, -cos t], [1, -1, -sin t, -sin t]] with R = R^2, S = -R^4_+:
    // c = (1/sin t, 0, -1, -1), v = 0.
    if (a.rows() == 4 && a.cols() == 2 && a(2, 1) < 0 && a(2, 1) > -0.5 && a(2, 0) > 0) {
        const double c = a(2, 0), s = -a(2, 1);
        if (near(c * c + s * s, 1.0) && matrix_is(a, DenseMatrix{{0, 1}, {0, -1}, {c, -s}, {-c, -s}}) &&
            orthant_is(m.r(), cones::Sign::Free, 2) && orthant_is(m.s(), cones::Sign::Nonpos, 4))
            out.push_back({"primal-example-adjoint", {1.0 / s, 0.0, -1.0, -1.0}, {0.0, 0.0}});
    }
    return out;
}

LowerBound hoffman_lower_bound(const SolutionMap& m, const SamplerConfig& cfg) {
    if (cfg.trials < 1) throw InputError("oracle: trials must be at least 1");
    if (!(cfg.b_scale > 0) || !(cfg.x_scale > 0)) throw InputError("oracle: scales must be positive");
    const std::size_t n = m.n(), mm = m.m();
    LowerBound out;

    struct Sample {
        bool used = false;
        bool rejected = false;
        double ratio = 0.0, dist = 0.0, viol = 0.0;
        Vector b, x;
    };
    auto evaluate = [&](Vector b, Vector x) {
        Sample s;
        const double v = violation(m, x, b);
        // Below this floor Ax - b is dominated by cancellation and the ratio is noise.
        const double scale = std::max({1.0, linalg::norm_inf(b), linalg::norm_inf(linalg::multiply(m.a(), x))});
        if (!(v > 1e-6 * scale)) return s;
        const auto d = distance_to_solution_set(m, x, b);
        if (!d.feasible) {
            s.rejected = true;
            return s;
        }
        s.used = true;
        s.dist = d.value;
        s.viol = v;
        s.ratio = d.value / v;
        s.b = std::move(b);
        s.x = std::move(x);
        return s;
    };
    auto take = [&](Sample& s, const std::string& source) {
        if (s.rejected) ++out.skipped;
        if (!s.used) return;
        ++out.evaluated;
        if (s.ratio > out.value) {
            out.value = s.ratio;
            out.distance = s.dist;
            out.violation = s.viol;
            out.b = std::move(s.b);
            out.x = std::move(s.x);
            out.source = source;
        }
    };

    for (const auto& c : known_witnesses(m)) {
        Sample s = evaluate(c.b, c.x);
        take(s, c.label);
        out.trajectory.push_back(out.value);
    }

    std::vector<Sample> samples(static_cast<std::size_t>(cfg.trials));
    detail::parallel_for(samples.size(), cfg.threads, [&](std::size_t t) {
        std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(t)};
        std::mt19937_64 rng(seq);
        Vector r, s, x;
        switch (t % 3) {
            case 0: {
                r = cones::project(m.r(), normal_vector(rng, n, cfg.x_scale));
                s = cones::project(m.s(), normal_vector(rng, mm, cfg.b_scale));
                std::uniform_real_distribution<double> box(-cfg.x_scale, cfg.x_scale);
                x.resize(n);
                for (double& v : x) v = box(rng);
                x = cones::project(m.r(), x);
                break;
            }
            case 1: {
                r = cones::project(m.r(), normal_vector(rng, n, cfg.x_scale));
                s = cones::project(m.s(), normal_vector(rng, mm, cfg.b_scale));
                std::uniform_real_distribution<double> logeps(std::log(1e-6), 0.0);
                const double eps = cfg.x_scale * std::exp(logeps(rng));
                x = cones::project(m.r(), linalg::axpy(eps, normal_vector(rng, n, 1.0), r));
                break;
            }
            default:
                r = cones::project(m.r(), sparse_vector(rng, n, cfg.x_scale));
                s = cones::project(m.s(), sparse_vector(rng, mm, cfg.b_scale));
                x = cones::project(m.r(), sparse_vector(rng, n, cfg.x_scale));
                break;
        }
        Vector b = linalg::multiply(m.a(), r);
        for (std::size_t i = 0; i < mm; ++i) b[i] -= s[i];
        samples[t] = evaluate(std::move(b), std::move(x));
    });
    for (auto& s : samples) {
        take(s, "sample");
        out.trajectory.push_back(out.value);
    }
    if (out.skipped > cfg.rejection_cap)
        throw SamplingError("oracle: " + std::to_string(out.skipped) +
                            " sampled right-hand sides had no solution, above the rejection cap");
    return out;
}

double norm_lower_bound_grid(const SolutionMap& m, int resolution, std::uint64_t seed) {
    if (resolution < 1) throw InputError("norm_lower_bound_grid: resolution must be positive");
    const std::size_t mm = m.m(), n = m.n();
    std::vector<Vector> dirs;
    if (mm == 2) {
        for (int k = 0; k < resolution; ++k) {
            const double phi = 2 * std::numbers::pi * k / resolution;
            dirs.push_back({std::cos(phi), std::sin(phi)});
        }
    }
    std::mt19937_64 rng(seed);
    const int random_count = mm == 2 ? std::min(resolution, 200) : resolution;
    for (int k = 0; k < random_count; ++k) {
        // Image points A r - s lie in dom when R and S are cones.
        const Vector r = cones::project(m.r(), normal_vector(rng, n, 1.0));
        const Vector s = cones::project(m.s(), normal_vector(rng, mm, 1.0));
        Vector u = linalg::multiply(m.a(), r);
        for (std::size_t i = 0; i < mm; ++i) u[i] -= s[i];
        dirs.push_back(std::move(u));
    }
    const Vector zero(n, 0.0);
    double best = 0.0;
    for (auto& u : dirs) {
        const double nu = norm(m.norms().b, u);
        if (!(nu > 1e-12)) continue;
        for (double& v : u) v /= nu;
        const auto d = distance_to_solution_set(m, zero, u);
        if (d.feasible) best = std::max(best, d.value);
    }
    return best;
}

}  // namespace hoffman::oracle
