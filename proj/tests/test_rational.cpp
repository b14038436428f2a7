#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lieinv/qmatrix.hpp"
#include "lieinv/rng.hpp"

using namespace lieinv;

namespace {

BigInt random_bigint(Rng& rng, int max_limbs) {
    BigInt acc(0);
    int limbs = static_cast<int>(rng.uniform_int(1, max_limbs));
    for (int i = 0; i < limbs; ++i) {
        acc = acc * BigInt(1LL << 32) + BigInt(static_cast<long long>(rng.next() & 0xffffffffULL));
    }
    if (rng.coin()) acc = -acc;
    return acc;
}

}  // namespace

TEST_CASE("bigint string round trip and arithmetic basics") {
    CHECK(BigInt("123456789012345678901234567890").to_string() == "123456789012345678901234567890");
    CHECK(BigInt("-42").to_string() == "-42");
    CHECK(BigInt(0).to_string() == "0");
    CHECK((BigInt("99999999999999999999") + BigInt(1)).to_string() == "100000000000000000000");
    CHECK((BigInt("100000000000000000000") - BigInt(1)).to_string() == "99999999999999999999");
    CHECK((BigInt("123456789") * BigInt("987654321")).to_string() == "121932631112635269");
}

TEST_CASE("bigint division invariants on random operands") {
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        BigInt a = random_bigint(rng, 8);
        BigInt b = random_bigint(rng, 4);
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divrem(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero() && !a.is_zero()) CHECK(r.sign() == a.sign());
        CHECK(BigInt::div_exact(a * b, b) == a);
    }
}

TEST_CASE("bigint division with adversarial limb patterns") {
    // limbs biased toward 0, 1, B-1, B/2 provoke the rare correction
    // branches of the long division
    Rng rng(101);
    auto biased_limb = [&]() -> std::uint32_t {
        switch (rng.uniform_int(0, 5)) {
            case 0: return 0;
            case 1: return 1;
            case 2: return 0xffffffffu;
            case 3: return 0x80000000u;
            case 4: return 0x7fffffffu;
            default: return static_cast<std::uint32_t>(rng.next());
        }
    };
    auto biased_bigint = [&](int limbs) {
        BigInt acc(0);
        for (int i = 0; i < limbs; ++i)
            acc = acc * BigInt(1LL << 32) + BigInt(static_cast<long long>(biased_limb()));
        return rng.coin() ? -acc : acc;
    };
    for (int trial = 0; trial < 3000; ++trial) {
        BigInt a = biased_bigint(static_cast<int>(rng.uniform_int(1, 6)));
        BigInt b = biased_bigint(static_cast<int>(rng.uniform_int(1, 4)));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divrem(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
    }
}

TEST_CASE("bigint gcd") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)).to_string() == "6");
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)).to_string() == "6");
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)).to_string() == "5");
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        BigInt a = random_bigint(rng, 5), b = random_bigint(rng, 5);
        BigInt g = BigInt::gcd(a, b);
        if (g.is_zero()) {
            CHECK(a.is_zero());
            CHECK(b.is_zero());
            continue;
        }
        CHECK(BigInt::div_exact(a, g) * g == a);
        CHECK(BigInt::div_exact(b, g) * g == b);
    }
}

TEST_CASE("rational canonical form") {
    CHECK(Rational(2, 4).to_string() == "1/2");
    CHECK(Rational(-2, -4).to_string() == "1/2");
    CHECK(Rational(2, -4).to_string() == "-1/2");
    CHECK(Rational(0, 5).to_string() == "0");
    CHECK(Rational::parse("-6/8").to_string() == "-3/4");
    CHECK(Rational::parse("7").to_string() == "7");
}

TEST_CASE("rational field laws on random values") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        Rational a = rng.nonzero_rational(50, 20);
        Rational b = rng.nonzero_rational(50, 20);
        Rational c = rng.nonzero_rational(50, 20);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a / b * b == a);
        CHECK((a - a).is_zero());
    }
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(5).pow(0) == Rational(1));
}

TEST_CASE("rref gives the canonical basis") {
    QMat m = {{Rational(2), Rational(4), Rational(2)},
              {Rational(1), Rational(2), Rational(3)}};
    CHECK(rref(m) == 2);
    CHECK(m[0][0] == Rational(1));
    CHECK(m[0][1] == Rational(2));
    CHECK(m[0][2] == Rational(0));
    CHECK(m[1][2] == Rational(1));
}

TEST_CASE("fraction-free rank and determinant agree with known matrices") {
    QMat a = {{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
    CHECK(rank_fraction_free(a) == 2);
    CHECK(det_fraction_free(a) == Rational(-2));

    QMat singular = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK(rank_fraction_free(singular) == 1);
    CHECK(det_fraction_free(singular) == Rational(0));

    QMat frac = {{Rational(1, 2), Rational(1, 3)}, {Rational(1, 5), Rational(1, 7)}};
    CHECK(det_fraction_free(frac) == Rational(1, 2) * Rational(1, 7) - Rational(1, 3) * Rational(1, 5));
}

TEST_CASE("determinant by elimination matches cofactor expansion on random matrices") {
    Rng rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 4;
        QMat m(n, QVec(n));
        for (auto& row : m)
            for (auto& x : row) x = Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 5));

        // independent oracle: Laplace expansion
        auto cofactor_det = [](auto&& self, const QMat& a) -> Rational {
            if (a.size() == 1) return a[0][0];
            Rational acc(0);
            int sign = 1;
            for (std::size_t c = 0; c < a.size(); ++c) {
                QMat minor;
                for (std::size_t r = 1; r < a.size(); ++r) {
                    QVec row;
                    for (std::size_t cc = 0; cc < a.size(); ++cc)
                        if (cc != c) row.push_back(a[r][cc]);
                    minor.push_back(std::move(row));
                }
                Rational term = a[0][c] * self(self, minor);
                acc += sign > 0 ? term : -term;
                sign = -sign;
            }
            return acc;
        };
        CHECK(det_fraction_free(m) == cofactor_det(cofactor_det, m));
    }
}

TEST_CASE("nullspace vectors are annihilated") {
    QMat m = {{Rational(1), Rational(2), Rational(3)},
              {Rational(2), Rational(4), Rational(6)}};
    QMat basis = nullspace(m, 3);
    CHECK(basis.size() == 2);
    for (const auto& v : basis) {
        Rational dot(0);
        for (std::size_t j = 0; j < 3; ++j) dot += m[0][j] * v[j];
        CHECK(dot.is_zero());
    }
}
