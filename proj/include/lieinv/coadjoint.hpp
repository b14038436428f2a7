#pragma once

#include <cstdint>
#include <vector>

#include "lieinv/algebra.hpp"
#include "lieinv/expr.hpp"
#include "lieinv/rng.hpp"

namespace lieinv {

/// Linear form sum_k coeffs[k] x_k over the dual coordinates.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(QVec coeffs) : coeffs_(std::move(coeffs)) {}

    std::size_t dim() const { return coeffs_.size(); }
    const QVec& coeffs() const { return coeffs_; }
    const Rational& coeff(std::size_t k) const { return coeffs_[k - 1]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    Rational eval(const QVec& point) const {
        Rational acc(0);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero()) acc += coeffs_[k] * point[k];
        return acc;
    }

    LinearForm operator-() const {
        QVec c = coeffs_;
        for (auto& x : c) x = -x;
        return LinearForm(std::move(c));
    }

    /// Lifts the form into the expression language.
    Expr to_expr() const;

private:
    QVec coeffs_;
};

/// The skew-symmetric matrix (C_ij^k x_k) representing the commutator table.
class CoadjointMatrix {
public:
    explicit CoadjointMatrix(std::size_t dim)
        : dim_(dim), entries_(dim, std::vector<LinearForm>(dim, LinearForm(QVec(dim, Rational(0))))) {}

    std::size_t dim() const { return dim_; }
    const LinearForm& entry(std::size_t i, std::size_t j) const { return entries_[i - 1][j - 1]; }
    void set_entry(std::size_t i, std::size_t j, LinearForm f) { entries_[i - 1][j - 1] = std::move(f); }

    /// Exact evaluation at a rational point.
    QMat evaluate(const QVec& point) const {
        QMat m(dim_, QVec(dim_, Rational(0)));
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m[i][j] = entries_[i][j].eval(point);
        return m;
    }

private:
    std::size_t dim_;
    std::vector<std::vector<LinearForm>> entries_;
};

/// Coadjoint vector field X^_i = -C_ij^k x_k d/dx_j.
struct VectorField {
    std::size_t index = 0;
    std::vector<LinearForm> components;  // component j-1 is the d/dx_j coefficient
};

/// Entry (i,j) is the linear form sum_k C_ij^k x_k.
CoadjointMatrix commutator_matrix(const StructureConstants& sc);

/// Witness data for the probabilistic rank computation.
struct RankCertificate {
    std::size_t rank = 0;
    QVec witness;        // point achieving the maximum
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Random rational point with coordinates a/b, a in [-100,100]\{0},
/// b in [1,10].
QVec sample_rank_point(std::size_t dim, Rng& rng);

/// Maximum exact rank of the matrix over `trials` random rational points
/// (fraction-free elimination); even by skew-symmetry.
RankCertificate generic_rank(const CoadjointMatrix& m, int trials, std::uint64_t seed);

/// The Beltrametti-Blasi count N = dim - sup rank(C_ij^k x_k).
std::size_t invariant_count(const StructureConstants& sc, int trials, std::uint64_t seed);
RankCertificate invariant_count_certificate(const StructureConstants& sc, int trials, std::uint64_t seed);

/// All n coadjoint fields of the algebra.
std::vector<VectorField> vector_fields(const StructureConstants& sc);

}  // namespace lieinv
