#include "lieinv/verify.hpp"

#include <algorithm>
#include <cmath>

namespace lieinv {

Expr apply_field(const VectorField& vf, const Expr& e) {
    std::size_t dim = vf.components.size();
    for (std::size_t v : e.variables()) {
        if (v > dim)
            throw std::invalid_argument("apply_field: expression variable exceeds field dimension");
    }
    Expr acc = Expr::integer(0);
    for (std::size_t j = 1; j <= dim; ++j) {
        const LinearForm& comp = vf.components[j - 1];
        if (comp.is_zero()) continue;
        acc = Expr::add(std::move(acc), Expr::mul(comp.to_expr(), differentiate(e, j)));
    }
    return acc;
}

namespace {

using Cplx = std::complex<double>;

std::vector<Expr> avoid_list(const Expr& e, std::size_t dim) { return singular_subexpressions(e, dim); }

}  // namespace

AnnihilationReport check_invariant(const StructureConstants& sc, const Expr& e,
                                   const std::map<std::string, std::complex<double>>& params,
                                   int n_points, double tol, std::uint64_t seed) {
    AnnihilationReport report;
    report.expr_id = e.to_string();
    report.tolerance = tol;
    const std::size_t n = sc.dim();
    report.residuals.assign(n, 0.0);

    std::vector<VectorField> fields = vector_fields(sc);
    std::vector<Expr> applied(n);
    for (std::size_t i = 0; i < n; ++i) applied[i] = apply_field(fields[i], e);
    std::vector<Expr> avoid = avoid_list(e, n);

    Rng rng(seed);
    int used = 0;
    int attempts = 0;
    try {
        while (used < n_points && attempts < 20 * n_points) {
            ++attempts;
            Assignment a = sample_point(n, avoid, params, rng);
            try {
                std::vector<Cplx> grad = gradient(e, a);
                double gnorm = 0.0;
                for (const auto& g : grad) gnorm += std::norm(g);
                gnorm = std::sqrt(gnorm);
                double scale = 1.0 + gnorm;
                std::vector<double> point_residuals(n);
                for (std::size_t i = 0; i < n; ++i) {
                    Cplx r = evaluate(applied[i], a) / scale;
                    point_residuals[i] = std::max(std::abs(r.real()), std::abs(r.imag()));
                }
                for (std::size_t i = 0; i < n; ++i)
                    report.residuals[i] = std::max(report.residuals[i], point_residuals[i]);
                ++used;
            } catch (const EvalError&) {
                // point was numerically unusable (overflow, hidden pole); resample
            }
        }
    } catch (const SamplingError& ex) {
        report.error = ex.what();
    }
    report.points_used = used;
    if (used == 0 && report.error.empty())
        report.error = "no usable sample point found (expression singular almost everywhere)";
    bool below = true;
    for (double r : report.residuals) below = below && r < tol;
    report.pass = report.error.empty() && used > 0 && below;
    return report;
}

namespace {

/// Rank of a complex matrix by Gaussian elimination with full pivoting;
/// pivots count while |pivot| > tol * |first pivot|.
std::size_t numeric_rank(std::vector<std::vector<Cplx>> m, double tol) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    double first_pivot = -1.0;
    std::size_t r0 = 0;
    std::vector<bool> used_col(cols, false);
    while (r0 < rows) {
        double best = 0.0;
        std::size_t br = r0, bc = 0;
        for (std::size_t r = r0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                if (used_col[c]) continue;
                double v = std::abs(m[r][c]);
                if (v > best) {
                    best = v;
                    br = r;
                    bc = c;
                }
            }
        }
        if (first_pivot < 0.0) first_pivot = best;
        if (best <= 0.0 || (first_pivot > 0.0 && best <= tol * first_pivot)) break;
        std::swap(m[r0], m[br]);
        used_col[bc] = true;
        for (std::size_t r = r0 + 1; r < rows; ++r) {
            Cplx f = m[r][bc] / m[r0][bc];
            for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[r0][c];
        }
        ++rank;
        ++r0;
    }
    return rank;
}

}  // namespace

IndependenceReport check_independence(const std::vector<Expr>& exprs,
                                      const std::map<std::string, std::complex<double>>& params,
                                      std::size_t dim, std::size_t expected_rank, int n_points,
                                      double tol, std::uint64_t seed) {
    IndependenceReport report;
    report.expected = expected_rank;
    if (exprs.empty()) {
        report.modal_rank = 0;
        report.pass = expected_rank == 0;
        return report;
    }

    std::vector<Expr> avoid;
    for (const auto& e : exprs) {
        auto part = avoid_list(e, dim);
        avoid.insert(avoid.end(), part.begin(), part.end());
    }

    Rng rng(seed);
    int used = 0, attempts = 0;
    try {
        while (used < n_points && attempts < 20 * n_points) {
            ++attempts;
            Assignment a = sample_point(dim, avoid, params, rng);
            try {
                std::vector<std::vector<Cplx>> jac;
                jac.reserve(exprs.size());
                for (const auto& e : exprs) {
                    std::vector<Cplx> row = gradient(e, a);
                    double norm = 0.0;
                    for (const auto& g : row) norm += std::norm(g);
                    norm = std::sqrt(norm);
                    if (norm > 0.0)
                        for (auto& g : row) g /= norm;
                    jac.push_back(std::move(row));
                }
                report.ranks.push_back(numeric_rank(std::move(jac), tol));
                ++used;
            } catch (const EvalError&) {
                // resample
            }
        }
    } catch (const SamplingError& ex) {
        report.error = ex.what();
    }
    if (report.ranks.empty()) {
        if (report.error.empty()) report.error = "no usable sample point for the Jacobian";
        return report;
    }
    std::map<std::size_t, int> freq;
    for (std::size_t r : report.ranks) ++freq[r];
    std::size_t mode = 0;
    int best = -1;
    for (const auto& [r, count] : freq) {
        if (count > best) {
            best = count;
            mode = r;
        }
    }
    report.modal_rank = mode;
    report.pass = report.error.empty() && mode == expected_rank;
    return report;
}

FundamentalSetReport verify_fundamental_set(const StructureConstants& sc,
                                            const std::vector<Expr>& exprs,
                                            const std::map<std::string, std::complex<double>>& params,
                                            const VerifyConfig& config) {
    FundamentalSetReport report;
    report.rank_certificate = invariant_count_certificate(sc, config.rank_trials, config.seed);
    report.invariant_count = sc.dim() - report.rank_certificate.rank;

    bool all_pass = true;
    for (std::size_t idx = 0; idx < exprs.size(); ++idx) {
        std::uint64_t expr_seed = Rng::derive(config.seed, "invariant:" + std::to_string(idx));
        report.annihilation.push_back(
            check_invariant(sc, exprs[idx], params, config.n_points, config.tol, expr_seed));
        all_pass = all_pass && report.annihilation.back().pass;
    }

    report.independence = check_independence(exprs, params, sc.dim(), exprs.size(), config.n_points,
                                             config.tol, Rng::derive(config.seed, "independence"));

    report.pass = all_pass && report.independence.pass && exprs.size() == report.invariant_count;
    return report;
}

}  // namespace lieinv
