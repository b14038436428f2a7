#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lieinv/qmatrix.hpp"

namespace lieinv {

/// Raised when an operation requires a valid Lie algebra but the structure
/// constants fail the Jacobi identity.
struct InvalidAlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structure constants of an n-dimensional algebra over an ordered basis.
/// Only i<j entries are stored; antisymmetry holds by construction.
class StructureConstants {
public:
    explicit StructureConstants(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }

    /// Sets [X_i, X_j] = sum_k coeffs[k] X_k for i < j (1-based).
    void set_bracket(std::size_t i, std::size_t j, QVec coeffs) {
        check_pair(i, j);
        coeffs.resize(dim_, Rational(0));
        table_[{i, j}] = std::move(coeffs);
    }

    void set_component(std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
        check_pair(i, j);
        auto& row = table_[{i, j}];
        row.resize(dim_, Rational(0));
        row[k - 1] = v;
    }

    /// C_ij^k with antisymmetry applied (all indices 1-based).
    Rational c(std::size_t i, std::size_t j, std::size_t k) const {
        if (i == j) return Rational(0);
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = table_.find({i, j});
        if (it == table_.end()) return Rational(0);
        const Rational& v = it->second[k - 1];
        return flip ? -v : v;
    }

    /// [u, v] for coordinate vectors of length dim.
    QVec bracket(const QVec& u, const QVec& v) const {
        QVec out(dim_, Rational(0));
        for (const auto& [ij, coeffs] : table_) {
            auto [i, j] = ij;
            Rational f = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1];
            if (f.is_zero()) continue;
            for (std::size_t k = 0; k < dim_; ++k) {
                if (!coeffs[k].is_zero()) out[k] += f * coeffs[k];
            }
        }
        return out;
    }

    const std::map<std::pair<std::size_t, std::size_t>, QVec>& table() const { return table_; }

private:
    std::size_t dim_;
    std::map<std::pair<std::size_t, std::size_t>, QVec> table_;

    void check_pair(std::size_t i, std::size_t j) const {
        if (i < 1 || j <= i || j > dim_)
            throw std::invalid_argument("StructureConstants: bracket indices must satisfy 1 <= i < j <= dim");
    }
};

/// One failing Jacobi triple together with its exact residual vector.
struct JacobiViolation {
    std::size_t i, j, k;
    QVec residual;
};

/// Exact Jacobi check over all triples i < j < k; empty result means the
/// constants define a Lie algebra.
std::vector<JacobiViolation> validate_jacobi(const StructureConstants& sc);

void require_valid(const StructureConstants& sc);

/// Linear subspace in canonical form (reduced row echelon basis).
class Subspace {
public:
    Subspace(std::size_t ambient_dim, QMat vectors) : ambient_(ambient_dim), basis_(std::move(vectors)) {
        for (auto& v : basis_) v.resize(ambient_, Rational(0));
        rref(basis_);
    }

    static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim, {}); }

    static Subspace full(std::size_t ambient_dim) {
        QMat id(ambient_dim, QVec(ambient_dim, Rational(0)));
        for (std::size_t i = 0; i < ambient_dim; ++i) id[i][i] = Rational(1);
        return Subspace(ambient_dim, std::move(id));
    }

    /// Span of the first k basis coordinates.
    static Subspace coordinate_span(std::size_t ambient_dim, std::size_t k) {
        QMat rows(k, QVec(ambient_dim, Rational(0)));
        for (std::size_t i = 0; i < k; ++i) rows[i][i] = Rational(1);
        return Subspace(ambient_dim, std::move(rows));
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const QMat& basis() const { return basis_; }

    bool contains(const QVec& v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    /// Coordinates of v in this basis; requires contains(v).
    QVec coordinates(const QVec& v) const;

private:
    std::size_t ambient_;
    QMat basis_;
};

/// Span of all [u, v] with u in a, v in b.
Subspace bracket_space(const StructureConstants& sc, const Subspace& a, const Subspace& b);

/// g > [g,g] > [[g,g],[g,g]] > ... until stabilization; solvable iff the
/// last term is zero.
std::vector<Subspace> derived_series(const StructureConstants& sc);

/// g > [g,g] > [g,[g,g]] > ... until stabilization; nilpotent iff the last
/// term is zero.
std::vector<Subspace> lower_central_series(const StructureConstants& sc);

bool is_solvable(const StructureConstants& sc);
bool is_nilpotent(const StructureConstants& sc);

/// True iff sub is an ideal of g and sub with the restricted brackets is a
/// nilpotent algebra.
bool is_nilpotent_ideal(const StructureConstants& sc, const Subspace& sub);

/// Structure constants of an invariant subspace in its own rref basis.
/// Requires [sub, sub] to lie in sub.
StructureConstants restrict_to(const StructureConstants& sc, const Subspace& sub);

}  // namespace lieinv
