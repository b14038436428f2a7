#pragma once

#include <map>
#include <string>
#include <vector>

#include "lieinv/coadjoint.hpp"

namespace lieinv {

/// Per-field annihilation residuals for one candidate invariant. The
/// residual of field i is max over sample points of |X^_i F| normalized by
/// (1 + |grad F|) at the point; pass needs both real and imaginary parts of
/// every normalized residual below the tolerance.
struct AnnihilationReport {
    std::string expr_id;
    std::vector<double> residuals;  // one per field, max over points
    int points_used = 0;
    double tolerance = 0.0;
    bool pass = false;
    std::string error;  // nonempty when sampling/evaluation failed outright
};

/// Numeric Jacobian rank of a set of candidates across sample points.
struct IndependenceReport {
    std::vector<std::size_t> ranks;  // per point
    std::size_t modal_rank = 0;
    std::size_t expected = 0;
    bool pass = false;
    std::string error;
};

/// Combined fundamental-set verdict for one algebra.
struct FundamentalSetReport {
    std::size_t invariant_count = 0;  // N from the Beltrametti-Blasi formula
    RankCertificate rank_certificate;
    std::vector<AnnihilationReport> annihilation;
    IndependenceReport independence;
    bool pass = false;
};

struct VerifyConfig {
    int n_points = 20;
    double tol = 1e-8;
    int rank_trials = 5;
    std::uint64_t seed = 0;
};

/// X^(F) = sum_j component_j * dF/dx_j, as an expression.
Expr apply_field(const VectorField& vf, const Expr& e);

/// Theorem-1 annihilation test at random nonsingular points.
AnnihilationReport check_invariant(const StructureConstants& sc, const Expr& e,
                                   const std::map<std::string, std::complex<double>>& params,
                                   int n_points, double tol, std::uint64_t seed);

/// Functional independence via the numeric rank of the stacked gradient
/// matrix; rows are normalized before pivoted elimination so wildly scaled
/// invariants do not mask each other.
IndependenceReport check_independence(const std::vector<Expr>& exprs,
                                      const std::map<std::string, std::complex<double>>& params,
                                      std::size_t dim, std::size_t expected_rank, int n_points,
                                      double tol, std::uint64_t seed);

/// Full check: every candidate annihilates, the candidates are independent,
/// and their number equals the Beltrametti-Blasi count.
FundamentalSetReport verify_fundamental_set(const StructureConstants& sc,
                                            const std::vector<Expr>& exprs,
                                            const std::map<std::string, std::complex<double>>& params,
                                            const VerifyConfig& config);

}  // namespace lieinv
