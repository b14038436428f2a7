#include "lieinv/coadjoint.hpp"

namespace lieinv {

Expr LinearForm::to_expr() const {
    Expr acc = Expr::integer(0);
    for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k - 1];
        if (c.is_zero()) continue;
        acc = Expr::add(std::move(acc), Expr::mul(Expr::constant(c), Expr::var(k)));
    }
    return acc;
}

CoadjointMatrix commutator_matrix(const StructureConstants& sc) {
    require_valid(sc);
    const std::size_t n = sc.dim();
    CoadjointMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            if (i == j) continue;
            QVec coeffs(n, Rational(0));
            for (std::size_t k = 1; k <= n; ++k) coeffs[k - 1] = sc.c(i, j, k);
            m.set_entry(i, j, LinearForm(std::move(coeffs)));
        }
    }
    return m;
}

QVec sample_rank_point(std::size_t dim, Rng& rng) {
    QVec p(dim);
    for (auto& x : p) x = rng.nonzero_rational(100, 10);
    return p;
}

RankCertificate generic_rank(const CoadjointMatrix& m, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("generic_rank: trials must be >= 1");
    Rng rng(seed);
    RankCertificate cert;
    cert.trials = trials;
    cert.seed = seed;
    for (int t = 0; t < trials; ++t) {
        QVec p = sample_rank_point(m.dim(), rng);
        std::size_t r = rank_fraction_free(m.evaluate(p));
        if (cert.witness.empty() || r > cert.rank) {
            cert.rank = r;
            cert.witness = std::move(p);
        }
    }
    return cert;
}

RankCertificate invariant_count_certificate(const StructureConstants& sc, int trials, std::uint64_t seed) {
    return generic_rank(commutator_matrix(sc), trials, seed);
}

std::size_t invariant_count(const StructureConstants& sc, int trials, std::uint64_t seed) {
    return sc.dim() - invariant_count_certificate(sc, trials, seed).rank;
}

std::vector<VectorField> vector_fields(const StructureConstants& sc) {
    require_valid(sc);
    const std::size_t n = sc.dim();
    std::vector<VectorField> fields(n);
    for (std::size_t i = 1; i <= n; ++i) {
        fields[i - 1].index = i;
        fields[i - 1].components.resize(n, LinearForm(QVec(n, Rational(0))));
        for (std::size_t j = 1; j <= n; ++j) {
            QVec coeffs(n, Rational(0));
            for (std::size_t k = 1; k <= n; ++k) coeffs[k - 1] = -sc.c(i, j, k);
            fields[i - 1].components[j - 1] = LinearForm(std::move(coeffs));
        }
    }
    return fields;
}

}  // namespace lieinv
