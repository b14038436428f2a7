#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "lieinv/catalog.hpp"

using namespace lieinv;

namespace {

const Catalog& catalog() {
    static Catalog cat = load_catalog(default_catalog_path());
    return cat;
}

}  // namespace

TEST_CASE("catalog shape: nine nilradicals plus one entry per printed row") {
    const Catalog& cat = catalog();
    CHECK(cat.nilradicals.size() == 9);  // the printed classification lists nine
    CHECK(cat.algebras.size() == 113);

    std::set<std::string> names;
    for (const auto& e : cat.algebras) names.insert(e.name);
    CHECK(names.size() == 100);  // g_{6,1}..g_{6,99} plus the starred g_{6,92}*
    for (int k = 1; k <= 99; ++k)
        CHECK(names.count("g_{6," + std::to_string(k) + "}") == 1);
    CHECK(names.count("g_{6,92}*") == 1);

    // regime splits as printed
    CHECK(cat.by_name_or_id("g_{6,27}").size() == 2);
    CHECK(cat.by_name_or_id("g_{6,82}").size() == 2);
    CHECK(cat.by_name_or_id("g_{6,92}*").size() == 2);
    CHECK(cat.by_name_or_id("g_{6,94}").size() == 2);
}

TEST_CASE("load: spec row examples") {
    const Catalog& cat = catalog();

    const CatalogEntry* g65 = cat.find("g6_65");
    REQUIRE(g65);
    bool has35 = false, has16 = false;
    for (const auto& b : g65->brackets) {
        if (b.i == 3 && b.j == 5) {
            has35 = true;
            CHECK(b.coeffs.at(1) == "1");
        }
        if (b.i == 1 && b.j == 6) {
            has16 = true;
            CHECK(b.coeffs.at(1) == "lambda");
            CHECK(b.coeffs.at(2) == "1");
        }
    }
    CHECK(has35);
    CHECK(has16);

    const CatalogEntry* g99 = cat.find("g6_99");
    REQUIRE(g99);
    CHECK(g99->invariants.empty());
    CHECK(g99->status == "verified");

    const CatalogEntry* g34 = cat.find("g6_34");
    REQUIRE(g34);
    CHECK(g34->status == "paper-blank");
}

TEST_CASE("schema violations carry the row id") {
    std::string path = "bad_catalog_test.json";
    {
        std::ofstream out(path);
        out << "{\"nilradicals\": [{\"id\": \"5g1\", \"dim\": 5, \"brackets\": []}],"
            << "\"algebras\": [{\"id\": \"broken\", \"name\": \"x\", \"nilradical\": \"5g1\","
            << "\"brackets\": [], \"invariants\": [\"x7\"], \"status\": \"verified\"}]}";
    }
    try {
        load_catalog(path);
        CHECK(false);
    } catch (const SchemaError& ex) {
        CHECK(std::string(ex.what()).find("broken") != std::string::npos);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_catalog("does_not_exist.json"), SchemaError);
}

TEST_CASE("constraints: parse and evaluate") {
    std::set<std::string> names{"alpha", "beta", "gamma", "delta", "epsilon", "h"};
    Constraint chain =
        parse_constraint("0 < abs(delta) <= abs(gamma) <= abs(beta) <= abs(alpha) < 1", names);
    std::map<std::string, Rational> ok{{"alpha", Rational(1, 2)},
                                       {"beta", Rational(1, 3)},
                                       {"gamma", Rational(1, 4)},
                                       {"delta", Rational(1, 5)}};
    CHECK(constraint_satisfied(chain, ok));
    auto bad = ok;
    bad["alpha"] = Rational(2);
    CHECK(!constraint_satisfied(chain, bad));
    bad["alpha"] = Rational(-1, 2);  // |alpha| ordering holds again
    CHECK(constraint_satisfied(chain, bad));

    Constraint ne = parse_constraint("alpha^2+beta^2 != 0", names);
    CHECK(constraint_satisfied(ne, ok));
    CHECK(!constraint_satisfied(ne, {{"alpha", Rational(0)}, {"beta", Rational(0)}}));

    Constraint prod = parse_constraint("epsilon*h = 0", names);
    CHECK(constraint_satisfied(prod, {{"epsilon", Rational(0)}, {"h", Rational(7)}}));
    CHECK(!constraint_satisfied(prod, {{"epsilon", Rational(2)}, {"h", Rational(7)}}));

    CHECK(parse_constraint("true", names).always_true);
    CHECK_THROWS_AS(parse_constraint("alpha", names), ParseError);
    CHECK_THROWS_AS(parse_constraint("alpha < x1", names), ParseError);
}

TEST_CASE("instantiate: explicit values validated against constraints") {
    const Catalog& cat = catalog();
    const CatalogEntry* g1 = cat.find("g6_1");
    REQUIRE(g1);

    std::map<std::string, Rational> good{{"alpha", Rational(1, 2)},
                                         {"beta", Rational(1, 3)},
                                         {"gamma", Rational(1, 4)},
                                         {"delta", Rational(1, 5)}};
    Instantiation inst = instantiate(*g1, good);
    CHECK(inst.sc.c(2, 6, 2) == Rational(1, 2));
    CHECK(validate_jacobi(inst.sc).empty());

    auto bad = good;
    bad["alpha"] = Rational(2);
    CHECK_THROWS_AS(instantiate(*g1, bad), ConstraintError);
}

TEST_CASE("instantiate: discrete enumeration and random sampling") {
    const Catalog& cat = catalog();
    const CatalogEntry* g77 = cat.find("g6_77");
    REQUIRE(g77);
    auto insts = instantiate_all_discrete(*g77, 11);
    REQUIRE(insts.size() == 2);
    std::set<std::string> eps;
    for (const auto& inst : insts) eps.insert(inst.values.at("epsilon").to_string());
    CHECK(eps == std::set<std::string>{"-1", "1"});

    // rejection sampling satisfies the hardest chained constraint
    const CatalogEntry* g1 = cat.find("g6_1");
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Instantiation inst = instantiate(*g1, seed);
        Rational a = inst.values.at("alpha").abs(), b = inst.values.at("beta").abs();
        Rational c = inst.values.at("gamma").abs(), d = inst.values.at("delta").abs();
        CHECK(Rational(0) < d);
        CHECK(d <= c);
        CHECK(c <= b);
        CHECK(b <= a);
        CHECK(a < Rational(1));
    }

    // product-zero constraint: epsilon*h = 0 with the other factor free
    const CatalogEntry* g34 = cat.find("g6_34");
    REQUIRE(g34);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Instantiation inst = instantiate(*g34, seed);
        CHECK((inst.values.at("epsilon") * inst.values.at("h")).is_zero());
        CHECK(validate_jacobi(inst.sc).empty());
    }
}

TEST_CASE("every shipped entry is a Lie algebra with the claimed nilradical") {
    const Catalog& cat = catalog();
    for (const auto& entry : cat.algebras) {
        auto insts = instantiate_all_discrete(entry, 5);
        REQUIRE(!insts.empty());
        const auto& inst = insts.front();
        CAPTURE(entry.id);
        CHECK(validate_jacobi(inst.sc).empty());
        const NilradicalRecord* rec = cat.find_nilradical(entry.nilradical);
        REQUIRE(rec);
        CHECK(nilradical_pattern_matches(*rec, entry, inst.sc));
        CHECK(is_nilpotent_ideal(inst.sc, Subspace::coordinate_span(6, 5)));
    }
}

TEST_CASE("print/parse round trip over every catalog expression") {
    const Catalog& cat = catalog();
    for (const auto& entry : cat.algebras) {
        std::set<std::string> names = entry.param_names();
        std::vector<std::string> texts = entry.invariants;
        texts.insert(texts.end(), entry.repaired_invariants.begin(),
                     entry.repaired_invariants.end());
        for (const auto& b : entry.brackets)
            for (const auto& [k, coeff] : b.coeffs) texts.push_back(coeff);
        for (const auto& text : texts) {
            CAPTURE(entry.id);
            CAPTURE(text);
            Expr parsed = parse_expr(text, 6, names);
            CHECK(structurally_equal(parsed, parse_expr(parsed.to_string(), 6, names)));
        }
    }
}

TEST_CASE("at least one coordinate function fails whenever N < 6") {
    const Catalog& cat = catalog();
    for (const auto& entry : cat.algebras) {
        Instantiation inst = instantiate(entry, 17);
        if (invariant_count(inst.sc, 5, 3) == 6) continue;  // all coordinates central
        std::map<std::string, std::complex<double>> params;
        for (const auto& [k, v] : inst.values) params[k] = {v.to_double(), 0.0};
        bool some_fail = false;
        for (std::size_t k = 1; k <= 6 && !some_fail; ++k)
            some_fail = !check_invariant(inst.sc, Expr::var(k), params, 10, 1e-8, 23).pass;
        CAPTURE(entry.id);
        CHECK(some_fail);
    }
}

TEST_CASE("invariant counts by nilradical family") {
    // abelian nilradical: always four invariants; the Heisenberg-type
    // nilradicals g_{3,1}+2g_1, g_{4,1}+g_1, g_{5,1}, g_{5,2}, g_{5,3}:
    // always two; the deformed Heisenberg ones g_{5,4}, g_{5,5}, g_{5,6}:
    // two when X1 stays central, none otherwise.
    const Catalog& cat = catalog();
    for (const auto& entry : cat.algebras) {
        Instantiation inst = instantiate(entry, 41);
        std::size_t n = invariant_count(inst.sc, 5, 13);
        CAPTURE(entry.id);
        if (entry.nilradical == "5g1") {
            CHECK(n == 4);
        } else if (entry.nilradical == "g5_4" || entry.nilradical == "g5_5" ||
                   entry.nilradical == "g5_6") {
            CHECK((n == 0 || n == 2));
            std::size_t center = entry.nilradical_map.empty() ? 1 : entry.nilradical_map[0];
            bool center_action = false;
            for (std::size_t k = 1; k <= 6; ++k)
                center_action = center_action || !inst.sc.c(center, 6, k).is_zero();
            CHECK(n == (center_action ? 0u : 2u));
        } else {
            CHECK(n == 2);
        }
    }
}

TEST_CASE("every erratum-suspect row genuinely fails as printed") {
    const Catalog& cat = catalog();
    AuditConfig config;
    config.verify.seed = 0;
    std::vector<const CatalogEntry*> suspects;
    for (const auto& entry : cat.algebras)
        if (entry.status == "erratum-suspect") suspects.push_back(&entry);
    REQUIRE(!suspects.empty());
    auto reports = audit(cat, suspects, config);
    for (const auto& rep : reports) {
        CAPTURE(rep.entry_id);
        CHECK(rep.quarantined);
        CHECK(rep.structural_ok);  // the algebra itself is sound
        bool printed_fails_somewhere = false;
        for (const auto& inst : rep.instantiations)
            printed_fails_somewhere = printed_fails_somewhere || !inst.pass;
        CHECK(printed_fails_somewhere);
        for (const auto& inst : rep.repaired_instantiations) CHECK(inst.pass);
    }
}

TEST_CASE("audit: spot checks") {
    const Catalog& cat = catalog();
    AuditConfig config;
    config.verify.seed = 0;

    auto report_for = [&](const std::string& id) {
        auto reports = audit(cat, {cat.find(id)}, config);
        REQUIRE(reports.size() == 1);
        return reports.front();
    };

    EntryReport g53 = report_for("g6_53");  // two polynomial invariants
    CHECK(!g53.quarantined);
    CHECK(g53.pass);

    EntryReport g65 = report_for("g6_65");
    CHECK(g65.pass);

    EntryReport g34 = report_for("g6_34");  // paper-blank: quarantined, never failed
    CHECK(g34.quarantined);
    CHECK(g34.pass);
    CHECK(!g34.quarantine_reason.empty());

    EntryReport g54 = report_for("g6_54");  // erratum-suspect with repaired formulas
    CHECK(g54.quarantined);
    CHECK(g54.pass);  // structural checks plus repaired invariants
    CHECK(!g54.repaired_instantiations.empty());
    for (const auto& inst : g54.repaired_instantiations) CHECK(inst.pass);
}
