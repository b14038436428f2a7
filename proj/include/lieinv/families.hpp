#pragma once

#include "lieinv/coadjoint.hpp"

namespace lieinv {

struct FamilyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The 2m-dimensional nilpotent algebra [X1, Xi] = X_{i+1} (2 <= i <= 2m-1)
/// plus one abelian generator X_{2m+1}.
StructureConstants chain_nilradical(std::size_t m);

/// The (2m+1)-dimensional deformed Heisenberg nilpotent algebra:
///   [X_{2+j}, X_{2m+1-j}] = X_1            (0 <= j <= m-1)
///   [X_{2+j}, X_{2m+1}]   = alpha_j X_{1+j} (1 <= j <= 2m-2)
/// with alpha_j + alpha_{2m-j} = 0 for 1 <= j <= m-1. The alphas argument
/// carries 2m-2 bracket coefficients, optionally followed by alpha_{2m-1}
/// which appears only in the j=1 constraint.
StructureConstants deformed_heisenberg_nilradical(std::size_t m, const QVec& alphas);

/// Exact basis of the derivation space of a nilpotent algebra, flattened
/// row-major as d*d vectors. rows_pinned_to_zero adds the constraints
/// D[r][*] = 0 for each listed row (1-based).
QMat derivation_space(const StructureConstants& nil,
                      const std::vector<std::size_t>& rows_pinned_to_zero = {});

/// Random rational element of a derivation space.
QMat random_derivation(const StructureConstants& nil, Rng& rng,
                       const std::vector<std::size_t>& rows_pinned_to_zero = {});

/// One-dimensional solvable extension: X_{d+1} acts on the nilradical by
/// the derivation D ([X_i, X_{d+1}] = sum_k D[i][k] X_k). Throws
/// InvalidAlgebraError (with a witness triple) when D is not a derivation.
StructureConstants extend_by_derivation(const StructureConstants& nil, const QMat& derivation);

struct Theorem2Build {
    std::size_t m = 0;
    StructureConstants sc{1};
    bool hypothesis_holds = false;      // [X_2m, X_2m+2] != 0 or [X_2m+1, X_2m+2] != 0
    bool whole_algebra_nilpotent = false;  // flags degenerate extensions (e.g. D = 0)
};

Theorem2Build build_theorem2(std::size_t m, const QMat& derivation);

struct Theorem2Count {
    std::size_t computed = 0;
    std::size_t expected = 0;  // 2m-2
    std::size_t rank = 0;
    bool hypothesis_holds = false;
    RankCertificate certificate;
};

Theorem2Count check_theorem2_count(const Theorem2Build& build, int trials, std::uint64_t seed);

struct Theorem3Input {
    std::size_t m = 0;
    QVec alphas;      // 2m-2 coefficients, optionally with alpha_{2m-1} appended
    QMat derivation;  // (2m+1) x (2m+1)
};

struct Theorem3Build {
    std::size_t m = 0;
    StructureConstants sc{1};
    bool action_on_x1_nonzero = false;
};

Theorem3Build build_theorem3(const Theorem3Input& input);

/// Exact check of det(C_ij^k x_k) = x_1^{2m} (C_{1,2m+2}^k x_k)^2 at
/// n_points random rational points; no tolerance.
bool check_det_identity(const StructureConstants& sc, std::size_t m, int n_points, std::uint64_t seed);

struct Theorem3Dichotomy {
    int case_id = 0;  // 1: action on X1 nonzero, 2: action zero
    std::size_t invariant_count = 0;
    bool count_matches = false;  // case 1 -> 0, case 2 -> 2
    bool x1_passes = false;      // case 2 only
    RankCertificate certificate;
};

Theorem3Dichotomy check_theorem3_dichotomy(const Theorem3Input& input, std::uint64_t seed);

}  // namespace lieinv
