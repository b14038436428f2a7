// lieinv: invariants of six-dimensional solvable Lie algebras from the
// coadjoint commutator matrix. JSON report on stdout, summary on stderr.
//
// Exit codes: 0 pass, 1 parse error, 2 invalid algebra, 3 verification
// failure, 4 catalog regression, 5 family mismatch.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lieinv/catalog.hpp"
#include "lieinv/families.hpp"

using namespace lieinv;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CliParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json rational_json(const Rational& r) { return r.to_string(); }

json point_json(const QVec& p) {
    json out = json::array();
    for (const auto& x : p) out.push_back(rational_json(x));
    return out;
}

json values_json(const std::map<std::string, Rational>& values) {
    json out = json::object();
    for (const auto& [k, v] : values) out[k] = rational_json(v);
    return out;
}

json certificate_json(const RankCertificate& cert) {
    return json{{"rank", cert.rank},
                {"trials", cert.trials},
                {"seed", cert.seed},
                {"witness", point_json(cert.witness)}};
}

json annihilation_json(const AnnihilationReport& r) {
    return json{{"expr", r.expr_id},
                {"residuals", r.residuals},
                {"points_used", r.points_used},
                {"tolerance", r.tolerance},
                {"pass", r.pass},
                {"error", r.error}};
}

json independence_json(const IndependenceReport& r) {
    return json{{"ranks", r.ranks},
                {"modal_rank", r.modal_rank},
                {"expected", r.expected},
                {"pass", r.pass},
                {"error", r.error}};
}

json instantiation_json(const InstantiationReport& r) {
    json ann = json::array();
    for (const auto& a : r.annihilation) ann.push_back(annihilation_json(a));
    return json{{"values", values_json(r.values)},
                {"jacobi_ok", r.jacobi_ok},
                {"nilradical_ok", r.nilradical_ok},
                {"derived_in_nilradical", r.derived_in_nilradical},
                {"rank_certificate", certificate_json(r.rank_certificate)},
                {"invariant_count", r.invariant_count},
                {"count_matches", r.count_matches},
                {"annihilation", ann},
                {"independence", independence_json(r.independence)},
                {"pass", r.pass},
                {"error", r.error}};
}

json entry_report_json(const EntryReport& r) {
    json insts = json::array(), rep = json::array();
    for (const auto& i : r.instantiations) insts.push_back(instantiation_json(i));
    for (const auto& i : r.repaired_instantiations) rep.push_back(instantiation_json(i));
    return json{{"entry", r.entry_id},
                {"name", r.name},
                {"regime", r.regime},
                {"status", r.status},
                {"quarantined", r.quarantined},
                {"quarantine_reason", r.quarantine_reason},
                {"structural_ok", r.structural_ok},
                {"pass", r.pass},
                {"instantiations", insts},
                {"repaired_instantiations", rep}};
}

/// Standalone algebra file: the catalog record schema minus invariants and
/// status; an optional "values" object pins the parameters.
struct AlgebraFile {
    CatalogEntry entry;
    std::map<std::string, Rational> explicit_values;
    bool has_values = false;
};

AlgebraFile load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliParseError("cannot open algebra file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw CliParseError("algebra file is not valid JSON: " + std::string(ex.what()));
    }
    // round-trip through the catalog loader for uniform validation
    json root{{"nilradicals", json::array({{{"id", "none"}, {"dim", 5}, {"brackets", json::array()}}})},
              {"algebras", json::array()}};
    json record = j;
    if (!record.contains("id")) record["id"] = "algebra";
    if (!record.contains("name")) record["name"] = record["id"];
    record["nilradical"] = "none";
    if (!record.contains("invariants")) record["invariants"] = json::array();
    if (!record.contains("status")) record["status"] = "verified";
    json values = record.contains("values") ? record["values"] : json::object();
    record.erase("values");
    root["algebras"].push_back(record);

    Catalog cat;
    try {
        cat = load_catalog_from_string(root.dump());
    } catch (const SchemaError& ex) {
        throw CliParseError(ex.what());
    }

    AlgebraFile file;
    file.entry = cat.algebras.front();
    for (const auto& [k, v] : values.items()) {
        file.has_values = true;
        file.explicit_values[k] =
            v.is_number_integer() ? Rational(v.get<long long>()) : Rational::parse(v.get<std::string>());
    }
    return file;
}

Instantiation realize(const AlgebraFile& file, std::uint64_t seed) {
    if (file.has_values) return instantiate(file.entry, file.explicit_values);
    return instantiate(file.entry, seed);
}

void emit(const json& report, const std::string& summary) {
    std::cout << report.dump(2) << std::endl;
    std::cerr << summary << std::endl;
}

json report_skeleton(const std::string& command, std::uint64_t seed) {
    return json{{"command", command}, {"seed", seed}, {"version", kVersion}};
}

int finish(json& report, const std::chrono::steady_clock::time_point& start,
           const std::string& summary, int code) {
    auto elapsed = std::chrono::steady_clock::now() - start;
    report["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    emit(report, summary);
    return code;
}

std::vector<std::size_t> series_dims(const std::vector<Subspace>& series) {
    std::vector<std::size_t> out;
    for (const auto& s : series) out.push_back(s.dim());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Casimir invariants of solvable Lie algebras"};
    app.require_subcommand(1);

    std::string algebra_path, invariants_path, catalog_path, entry_id, theorem, alphas_text,
        derivation_path;
    std::uint64_t seed = 0;
    int trials = 5, points = 20;
    double tol = 1e-8;
    bool all_entries = false, zero_x1 = false;
    std::size_t family_m = 2;

    auto* cmd_check = app.add_subcommand("check", "Jacobi verdict and solvability diagnostics");
    cmd_check->add_option("algebra", algebra_path, "algebra JSON file")->required();
    cmd_check->add_option("--seed", seed, "rng seed (default 0)");

    auto* cmd_count = app.add_subcommand("count", "generic rank and invariant count");
    cmd_count->add_option("algebra", algebra_path, "algebra JSON file")->required();
    cmd_count->add_option("--trials", trials, "rank sample points (default 5)");
    cmd_count->add_option("--seed", seed, "rng seed (default 0)");

    auto* cmd_verify = app.add_subcommand("verify", "verify a fundamental set of invariants");
    cmd_verify->add_option("algebra", algebra_path, "algebra JSON file")->required();
    cmd_verify->add_option("invariants", invariants_path, "invariants JSON file")->required();
    cmd_verify->add_option("--points", points, "sample points (default 20)");
    cmd_verify->add_option("--tol", tol, "normalized residual tolerance (default 1e-8)");
    cmd_verify->add_option("--seed", seed, "rng seed (default 0)");

    auto* cmd_catalog = app.add_subcommand("catalog", "audit the shipped catalog");
    cmd_catalog->add_flag("--all", all_entries, "audit every entry");
    cmd_catalog->add_option("--id", entry_id, "audit one entry by id or printed name");
    cmd_catalog->add_option("--seed", seed, "rng seed (default 0)");
    cmd_catalog->add_option("--catalog", catalog_path, "catalog file (default: $LIEINV_CATALOG)");

    auto* cmd_family = app.add_subcommand("family", "theorem 2 / theorem 3 family checks");
    cmd_family->add_option("theorem", theorem, "theorem2 or theorem3")->required();
    cmd_family->add_option("--m", family_m, "family index m >= 2 (default 2)");
    cmd_family->add_option("--alphas", alphas_text, "comma-separated alpha_j (theorem3)");
    cmd_family->add_option("--derivation-file", derivation_path, "JSON matrix for the derivation");
    cmd_family->add_flag("--zero-x1-action", zero_x1,
                         "restrict the random derivation to act trivially on X1 (theorem3)");
    cmd_family->add_option("--seed", seed, "rng seed (default 0)");

    CLI11_PARSE(app, argc, argv);
    auto start = std::chrono::steady_clock::now();

    try {
        if (*cmd_check) {
            json report = report_skeleton("check", seed);
            AlgebraFile file = load_algebra_file(algebra_path);
            Instantiation inst = realize(file, seed);
            report["values"] = values_json(inst.values);
            auto violations = validate_jacobi(inst.sc);
            json vio = json::array();
            for (const auto& v : violations)
                vio.push_back(json{{"triple", {v.i, v.j, v.k}}, {"residual", point_json(v.residual)}});
            report["jacobi_ok"] = violations.empty();
            report["jacobi_violations"] = vio;
            if (!violations.empty())
                return finish(report, start, "FAIL: Jacobi identity violated", 2);
            report["derived_series_dims"] = series_dims(derived_series(inst.sc));
            report["lower_central_series_dims"] = series_dims(lower_central_series(inst.sc));
            report["solvable"] = is_solvable(inst.sc);
            report["nilpotent"] = is_nilpotent(inst.sc);
            return finish(report, start, "OK: valid Lie algebra", 0);
        }

        if (*cmd_count) {
            json report = report_skeleton("count", seed);
            AlgebraFile file = load_algebra_file(algebra_path);
            Instantiation inst = realize(file, seed);
            auto violations = validate_jacobi(inst.sc);
            if (!violations.empty()) {
                report["jacobi_ok"] = false;
                return finish(report, start, "FAIL: Jacobi identity violated", 2);
            }
            RankCertificate cert = invariant_count_certificate(inst.sc, trials, seed);
            report["values"] = values_json(inst.values);
            report["rank_certificate"] = certificate_json(cert);
            report["generic_rank"] = cert.rank;
            report["invariant_count"] = inst.sc.dim() - cert.rank;
            return finish(report, start,
                          "N = " + std::to_string(inst.sc.dim() - cert.rank) +
                              " (rank " + std::to_string(cert.rank) + ")",
                          0);
        }

        if (*cmd_verify) {
            json report = report_skeleton("verify", seed);
            AlgebraFile file = load_algebra_file(algebra_path);

            std::ifstream in(invariants_path);
            if (!in) throw CliParseError("cannot open invariants file '" + invariants_path + "'");
            json jinv;
            try {
                in >> jinv;
            } catch (const json::exception& ex) {
                throw CliParseError("invariants file is not valid JSON: " + std::string(ex.what()));
            }
            if (!jinv.contains("invariants"))
                throw CliParseError("invariants file needs an 'invariants' array");
            const json jparams = jinv.value("params", json::object());
            for (const auto& [k, v] : jparams.items()) {
                file.explicit_values[k] = v.is_number_integer()
                                              ? Rational(v.get<long long>())
                                              : Rational::parse(v.get<std::string>());
                file.has_values = true;
            }

            Instantiation inst = realize(file, seed);
            auto violations = validate_jacobi(inst.sc);
            if (!violations.empty()) {
                report["jacobi_ok"] = false;
                return finish(report, start, "FAIL: Jacobi identity violated", 2);
            }

            std::set<std::string> names = file.entry.param_names();
            std::vector<Expr> exprs;
            for (const auto& s : jinv["invariants"]) {
                try {
                    exprs.push_back(parse_expr(s.get<std::string>(), inst.sc.dim(), names));
                } catch (const ParseError& ex) {
                    throw CliParseError("bad invariant '" + s.get<std::string>() + "': " + ex.what());
                }
            }
            std::map<std::string, std::complex<double>> params;
            for (const auto& [k, v] : inst.values) params[k] = {v.to_double(), 0.0};

            VerifyConfig config;
            config.n_points = points;
            config.tol = tol;
            config.seed = seed;
            FundamentalSetReport rep = verify_fundamental_set(inst.sc, exprs, params, config);
            report["values"] = values_json(inst.values);
            report["invariant_count"] = rep.invariant_count;
            report["rank_certificate"] = certificate_json(rep.rank_certificate);
            json ann = json::array();
            for (const auto& a : rep.annihilation) ann.push_back(annihilation_json(a));
            report["annihilation"] = ann;
            report["independence"] = independence_json(rep.independence);
            report["pass"] = rep.pass;
            return finish(report, start, rep.pass ? "PASS: fundamental set verified"
                                                  : "FAIL: fundamental set rejected",
                          rep.pass ? 0 : 3);
        }

        if (*cmd_catalog) {
            json report = report_skeleton("catalog", seed);
            std::string path = catalog_path.empty() ? default_catalog_path() : catalog_path;
            Catalog cat = load_catalog(path);
            std::vector<const CatalogEntry*> selected;
            if (!entry_id.empty()) {
                selected = cat.by_name_or_id(entry_id);
                if (selected.empty()) throw CliParseError("no catalog entry matches '" + entry_id + "'");
            } else {
                for (const auto& e : cat.algebras) selected.push_back(&e);
            }
            AuditConfig config;
            config.verify.seed = seed;
            auto reports = audit(cat, selected, config);

            int passed = 0, failed = 0, quarantined = 0;
            json entries = json::array();
            for (const auto& r : reports) {
                entries.push_back(entry_report_json(r));
                if (r.quarantined) {
                    ++quarantined;
                } else if (r.pass) {
                    ++passed;
                } else {
                    ++failed;
                }
            }
            bool regression = false;
            for (const auto& r : reports) regression = regression || (!r.quarantined && !r.pass);
            report["catalog"] = path;
            report["entries"] = entries;
            report["summary"] =
                json{{"pass", passed}, {"fail", failed}, {"quarantined", quarantined}};
            std::string summary = "pass=" + std::to_string(passed) +
                                  " fail=" + std::to_string(failed) +
                                  " quarantined=" + std::to_string(quarantined);
            return finish(report, start, summary, regression ? 4 : 0);
        }

        if (*cmd_family) {
            json report = report_skeleton("family " + theorem, seed);
            if (family_m < 2) throw CliParseError("--m must be at least 2");
            report["m"] = family_m;

            auto load_derivation = [&](std::size_t dim) -> QMat {
                std::ifstream in(derivation_path);
                if (!in) throw CliParseError("cannot open derivation file '" + derivation_path + "'");
                json j;
                in >> j;
                QMat D(dim, QVec(dim, Rational(0)));
                if (!j.is_array() || j.size() != dim)
                    throw CliParseError("derivation matrix must be " + std::to_string(dim) + "x" +
                                        std::to_string(dim));
                for (std::size_t r = 0; r < dim; ++r)
                    for (std::size_t c = 0; c < dim; ++c)
                        D[r][c] = j[r][c].is_number_integer()
                                      ? Rational(j[r][c].get<long long>())
                                      : Rational::parse(j[r][c].get<std::string>());
                return D;
            };

            if (theorem == "theorem2") {
                const std::size_t dim = 2 * family_m + 1;
                StructureConstants nil = chain_nilradical(family_m);
                QMat D;
                if (!derivation_path.empty()) {
                    D = load_derivation(dim);
                } else {
                    Rng rng(Rng::derive(seed, "theorem2-derivation"));
                    Theorem2Build probe;
                    do {
                        D = random_derivation(nil, rng);
                        probe = build_theorem2(family_m, D);
                    } while (!probe.hypothesis_holds);
                }
                Theorem2Build build = build_theorem2(family_m, D);
                Theorem2Count count = check_theorem2_count(build, trials, seed);
                report["hypothesis_holds"] = count.hypothesis_holds;
                report["whole_algebra_nilpotent"] = build.whole_algebra_nilpotent;
                report["generic_rank"] = count.rank;
                report["invariant_count"] = count.computed;
                report["expected"] = count.expected;
                report["rank_certificate"] = certificate_json(count.certificate);
                bool ok = !count.hypothesis_holds || count.computed == count.expected;
                std::string summary = "N = " + std::to_string(count.computed) + ", expected " +
                                      std::to_string(count.expected) +
                                      (count.hypothesis_holds ? "" : " (hypothesis does not hold)");
                report["pass"] = ok;
                return finish(report, start, summary, ok ? 0 : 5);
            }
            if (theorem == "theorem3") {
                const std::size_t dim = 2 * family_m + 1;
                QVec alphas(2 * family_m - 2, Rational(0));
                if (!alphas_text.empty()) {
                    alphas.clear();
                    std::size_t pos = 0;
                    while (pos <= alphas_text.size()) {
                        std::size_t comma = alphas_text.find(',', pos);
                        if (comma == std::string::npos) comma = alphas_text.size();
                        alphas.push_back(Rational::parse(alphas_text.substr(pos, comma - pos)));
                        pos = comma + 1;
                    }
                }
                StructureConstants nil = deformed_heisenberg_nilradical(family_m, alphas);
                QMat D;
                if (!derivation_path.empty()) {
                    D = load_derivation(dim);
                } else {
                    Rng rng(Rng::derive(seed, "theorem3-derivation"));
                    D = zero_x1 ? random_derivation(nil, rng, {1}) : random_derivation(nil, rng);
                }
                Theorem3Input input{family_m, alphas, D};
                Theorem3Build build = build_theorem3(input);
                Theorem3Dichotomy out = check_theorem3_dichotomy(input, seed);
                bool det_ok = check_det_identity(build.sc, family_m, 10, Rng::derive(seed, "det"));
                report["case"] = out.case_id;
                report["invariant_count"] = out.invariant_count;
                report["count_matches"] = out.count_matches;
                report["x1_passes"] = out.x1_passes;
                report["det_identity"] = det_ok;
                report["rank_certificate"] = certificate_json(out.certificate);
                bool ok = out.count_matches && det_ok && (out.case_id == 1 || out.x1_passes);
                report["pass"] = ok;
                std::string summary = "case " + std::to_string(out.case_id) + ", N = " +
                                      std::to_string(out.invariant_count) +
                                      (det_ok ? ", det identity holds" : ", det identity FAILS");
                return finish(report, start, summary, ok ? 0 : 5);
            }
            throw CliParseError("theorem must be 'theorem2' or 'theorem3'");
        }
    } catch (const CliParseError& ex) {
        std::cerr << "parse error: " << ex.what() << std::endl;
        return 1;
    } catch (const SchemaError& ex) {
        std::cerr << "parse error: " << ex.what() << std::endl;
        return 1;
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << std::endl;
        return 1;
    } catch (const ConstraintError& ex) {
        std::cerr << "constraint error: " << ex.what() << std::endl;
        return 1;
    } catch (const InvalidAlgebraError& ex) {
        std::cerr << "invalid algebra: " << ex.what() << std::endl;
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << std::endl;
        return 1;
    }
    return 0;
}
