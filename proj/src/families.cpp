#include "lieinv/families.hpp"

#include "lieinv/verify.hpp"

namespace lieinv {

StructureConstants chain_nilradical(std::size_t m) {
    if (m < 2) throw FamilyError("chain nilradical needs m >= 2");
    const std::size_t d = 2 * m + 1;
    StructureConstants sc(d);
    for (std::size_t i = 2; i <= 2 * m - 1; ++i) {
        QVec coeffs(d, Rational(0));
        coeffs[i] = Rational(1);  // X_{i+1}
        sc.set_bracket(1, i, std::move(coeffs));
    }
    return sc;
}

StructureConstants deformed_heisenberg_nilradical(std::size_t m, const QVec& alphas) {
    if (m < 2) throw FamilyError("deformed Heisenberg nilradical needs m >= 2");
    const std::size_t want = 2 * m - 2;
    if (alphas.size() != want && alphas.size() != want + 1)
        throw FamilyError("expected " + std::to_string(want) + " (or " + std::to_string(want + 1) +
                          ") alpha coefficients, got " + std::to_string(alphas.size()));
    auto alpha = [&](std::size_t j) -> Rational {
        return j <= alphas.size() ? alphas[j - 1] : Rational(0);
    };
    for (std::size_t j = 1; j + 1 <= m; ++j) {
        if (2 * m - j > alphas.size()) continue;  // constraint partner not supplied
        if (!(alpha(j) + alpha(2 * m - j)).is_zero())
            throw FamilyError("alpha_" + std::to_string(j) + " + alpha_" + std::to_string(2 * m - j) +
                              " must vanish");
    }
    const std::size_t d = 2 * m + 1;
    StructureConstants sc(d);
    for (std::size_t j = 0; j + 1 <= m; ++j) {
        QVec coeffs(d, Rational(0));
        coeffs[0] = Rational(1);  // X_1
        sc.set_bracket(2 + j, 2 * m + 1 - j, std::move(coeffs));
    }
    for (std::size_t j = 1; j <= 2 * m - 2; ++j) {
        if (alpha(j).is_zero()) continue;
        sc.set_component(2 + j, 2 * m + 1, 1 + j, alpha(j));
    }
    return sc;
}

QMat derivation_space(const StructureConstants& nil, const std::vector<std::size_t>& rows_pinned_to_zero) {
    const std::size_t d = nil.dim();
    const std::size_t unknowns = d * d;
    auto slot = [d](std::size_t row, std::size_t col) { return (row - 1) * d + (col - 1); };

    QMat system;
    // D[X_i, X_j] = [D X_i, X_j] + [X_i, D X_j] for every basis pair i < j.
    // Component k gives the linear equation
    //   sum_l C_ij^l D[l][k] - sum_l D[i][l] C_lj^k - sum_l D[j][l] C_il^k = 0.
    for (std::size_t i = 1; i <= d; ++i) {
        for (std::size_t j = i + 1; j <= d; ++j) {
            for (std::size_t k = 1; k <= d; ++k) {
                QVec row(unknowns, Rational(0));
                bool nonzero = false;
                for (std::size_t l = 1; l <= d; ++l) {
                    Rational c = nil.c(i, j, l);
                    if (!c.is_zero()) {
                        row[slot(l, k)] += c;
                        nonzero = true;
                    }
                    Rational clj = nil.c(l, j, k);
                    if (!clj.is_zero()) {
                        row[slot(i, l)] -= clj;
                        nonzero = true;
                    }
                    Rational cil = nil.c(i, l, k);
                    if (!cil.is_zero()) {
                        row[slot(j, l)] -= cil;
                        nonzero = true;
                    }
                }
                if (nonzero) system.push_back(std::move(row));
            }
        }
    }
    for (std::size_t r : rows_pinned_to_zero) {
        for (std::size_t k = 1; k <= d; ++k) {
            QVec row(unknowns, Rational(0));
            row[slot(r, k)] = Rational(1);
            system.push_back(std::move(row));
        }
    }
    return nullspace(std::move(system), unknowns);
}

QMat random_derivation(const StructureConstants& nil, Rng& rng,
                       const std::vector<std::size_t>& rows_pinned_to_zero) {
    const std::size_t d = nil.dim();
    QMat basis = derivation_space(nil, rows_pinned_to_zero);
    if (basis.empty()) throw FamilyError("derivation space is trivial under the requested pinning");
    QVec flat(d * d, Rational(0));
    for (const auto& vec : basis) {
        Rational coeff(rng.uniform_int(-6, 6), rng.uniform_int(1, 4));
        for (std::size_t s = 0; s < flat.size(); ++s) flat[s] += coeff * vec[s];
    }
    QMat out(d, QVec(d));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) out[r][c] = flat[r * d + c];
    return out;
}

StructureConstants extend_by_derivation(const StructureConstants& nil, const QMat& derivation) {
    const std::size_t d = nil.dim();
    if (derivation.size() != d)
        throw std::invalid_argument("derivation matrix dimension mismatch");
    for (const auto& row : derivation)
        if (row.size() != d) throw std::invalid_argument("derivation matrix dimension mismatch");
    StructureConstants sc(d + 1);
    for (const auto& [ij, coeffs] : nil.table()) {
        QVec extended = coeffs;
        extended.resize(d + 1, Rational(0));
        sc.set_bracket(ij.first, ij.second, std::move(extended));
    }
    for (std::size_t i = 1; i <= d; ++i) {
        QVec coeffs(d + 1, Rational(0));
        for (std::size_t k = 1; k <= d; ++k) coeffs[k - 1] = derivation[i - 1][k - 1];
        sc.set_bracket(i, d + 1, std::move(coeffs));
    }
    require_valid(sc);  // fails exactly when D is not a derivation
    return sc;
}

Theorem2Build build_theorem2(std::size_t m, const QMat& derivation) {
    Theorem2Build build;
    build.m = m;
    build.sc = extend_by_derivation(chain_nilradical(m), derivation);
    const std::size_t d = 2 * m + 1;
    bool row_2m = false, row_2m1 = false;
    for (std::size_t k = 0; k < d; ++k) {
        row_2m = row_2m || !derivation[2 * m - 1][k].is_zero();
        row_2m1 = row_2m1 || !derivation[2 * m][k].is_zero();
    }
    build.hypothesis_holds = row_2m || row_2m1;
    build.whole_algebra_nilpotent = is_nilpotent(build.sc);
    return build;
}

Theorem2Count check_theorem2_count(const Theorem2Build& build, int trials, std::uint64_t seed) {
    Theorem2Count out;
    out.expected = 2 * build.m - 2;
    out.hypothesis_holds = build.hypothesis_holds;
    out.certificate = invariant_count_certificate(build.sc, trials, seed);
    out.rank = out.certificate.rank;
    out.computed = build.sc.dim() - out.rank;
    return out;
}

Theorem3Build build_theorem3(const Theorem3Input& input) {
    Theorem3Build build;
    build.m = input.m;
    StructureConstants nil = deformed_heisenberg_nilradical(input.m, input.alphas);
    build.sc = extend_by_derivation(nil, input.derivation);
    for (const auto& v : input.derivation[0]) build.action_on_x1_nonzero = build.action_on_x1_nonzero || !v.is_zero();
    return build;
}

bool check_det_identity(const StructureConstants& sc, std::size_t m, int n_points, std::uint64_t seed) {
    const std::size_t dim = sc.dim();
    if (dim != 2 * m + 2) throw FamilyError("determinant identity needs dim = 2m+2");
    CoadjointMatrix A = commutator_matrix(sc);
    Rng rng(seed);
    for (int t = 0; t < n_points; ++t) {
        QVec p = sample_rank_point(dim, rng);
        Rational det = det_fraction_free(A.evaluate(p));
        Rational action(0);
        for (std::size_t k = 1; k <= dim; ++k) action += sc.c(1, dim, k) * p[k - 1];
        Rational rhs = p[0].pow(static_cast<long long>(2 * m)) * action * action;
        if (det != rhs) return false;
    }
    return true;
}

Theorem3Dichotomy check_theorem3_dichotomy(const Theorem3Input& input, std::uint64_t seed) {
    Theorem3Build build = build_theorem3(input);
    Theorem3Dichotomy out;
    out.case_id = build.action_on_x1_nonzero ? 1 : 2;
    out.certificate = invariant_count_certificate(build.sc, 5, seed);
    out.invariant_count = build.sc.dim() - out.certificate.rank;
    if (out.case_id == 1) {
        out.count_matches = out.invariant_count == 0;
    } else {
        out.count_matches = out.invariant_count == 2;
        AnnihilationReport r = check_invariant(build.sc, Expr::var(1), {}, 20, 1e-8,
                                               Rng::derive(seed, "x1"));
        out.x1_passes = r.pass;
    }
    return out;
}

}  // namespace lieinv
