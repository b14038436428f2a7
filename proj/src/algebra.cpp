#include "lieinv/algebra.hpp"

namespace lieinv {

std::vector<JacobiViolation> validate_jacobi(const StructureConstants& sc) {
    std::vector<JacobiViolation> out;
    const std::size_t n = sc.dim();
    QMat e(n, QVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) e[i][i] = Rational(1);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
            for (std::size_t k = j + 1; k <= n; ++k) {
                QVec r = sc.bracket(e[i - 1], sc.bracket(e[j - 1], e[k - 1]));
                QVec r2 = sc.bracket(e[j - 1], sc.bracket(e[k - 1], e[i - 1]));
                QVec r3 = sc.bracket(e[k - 1], sc.bracket(e[i - 1], e[j - 1]));
                bool zero = true;
                for (std::size_t m = 0; m < n; ++m) {
                    r[m] += r2[m] + r3[m];
                    if (!r[m].is_zero()) zero = false;
                }
                if (!zero) out.push_back({i, j, k, std::move(r)});
            }
        }
    }
    return out;
}

void require_valid(const StructureConstants& sc) {
    auto violations = validate_jacobi(sc);
    if (!violations.empty()) {
        const auto& v = violations.front();
        throw InvalidAlgebraError("structure constants violate the Jacobi identity at triple (" +
                                  std::to_string(v.i) + "," + std::to_string(v.j) + "," +
                                  std::to_string(v.k) + ")");
    }
}

bool Subspace::contains(const QVec& v) const {
    QVec r = v;
    r.resize(ambient_, Rational(0));
    for (const auto& row : basis_) {
        std::size_t piv = 0;
        while (piv < ambient_ && row[piv].is_zero()) ++piv;
        if (piv == ambient_) continue;
        if (!r[piv].is_zero()) {
            Rational f = r[piv];
            for (std::size_t j = piv; j < ambient_; ++j) r[j] -= f * row[j];
        }
    }
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& row : other.basis_)
        if (!contains(row)) return false;
    return true;
}

QVec Subspace::coordinates(const QVec& v) const {
    QVec r = v;
    r.resize(ambient_, Rational(0));
    QVec coords(basis_.size(), Rational(0));
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        std::size_t piv = 0;
        while (piv < ambient_ && basis_[b][piv].is_zero()) ++piv;
        if (piv == ambient_) continue;
        coords[b] = r[piv];
        if (!coords[b].is_zero()) {
            for (std::size_t j = piv; j < ambient_; ++j) r[j] -= coords[b] * basis_[b][j];
        }
    }
    for (const auto& x : r)
        if (!x.is_zero()) throw std::invalid_argument("Subspace: vector is not in the subspace");
    return coords;
}

Subspace bracket_space(const StructureConstants& sc, const Subspace& a, const Subspace& b) {
    QMat span;
    for (const auto& u : a.basis())
        for (const auto& v : b.basis()) span.push_back(sc.bracket(u, v));
    return Subspace(sc.dim(), std::move(span));
}

std::vector<Subspace> derived_series(const StructureConstants& sc) {
    require_valid(sc);
    std::vector<Subspace> series{Subspace::full(sc.dim())};
    for (;;) {
        Subspace next = bracket_space(sc, series.back(), series.back());
        if (next.dim() == series.back().dim()) break;
        series.push_back(std::move(next));
        if (series.back().dim() == 0) break;
    }
    return series;
}

std::vector<Subspace> lower_central_series(const StructureConstants& sc) {
    require_valid(sc);
    std::vector<Subspace> series{Subspace::full(sc.dim())};
    for (;;) {
        Subspace next = bracket_space(sc, series.front(), series.back());
        if (next.dim() == series.back().dim()) break;
        series.push_back(std::move(next));
        if (series.back().dim() == 0) break;
    }
    return series;
}

bool is_solvable(const StructureConstants& sc) { return derived_series(sc).back().dim() == 0; }

bool is_nilpotent(const StructureConstants& sc) { return lower_central_series(sc).back().dim() == 0; }

StructureConstants restrict_to(const StructureConstants& sc, const Subspace& sub) {
    if (sub.ambient_dim() != sc.dim())
        throw std::invalid_argument("restrict_to: subspace ambient dimension mismatch");
    const std::size_t d = sub.dim();
    StructureConstants out(d);
    for (std::size_t i = 1; i <= d; ++i) {
        for (std::size_t j = i + 1; j <= d; ++j) {
            QVec w = sc.bracket(sub.basis()[i - 1], sub.basis()[j - 1]);
            out.set_bracket(i, j, sub.coordinates(w));
        }
    }
    return out;
}

bool is_nilpotent_ideal(const StructureConstants& sc, const Subspace& sub) {
    if (sub.ambient_dim() != sc.dim())
        throw std::invalid_argument("is_nilpotent_ideal: subspace ambient dimension mismatch");
    if (sub.dim() == 0) return true;
    Subspace image = bracket_space(sc, Subspace::full(sc.dim()), sub);
    if (!sub.contains(image)) return false;
    return is_nilpotent(restrict_to(sc, sub));
}

}  // namespace lieinv
