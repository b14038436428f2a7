#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lieinv/verify.hpp"

namespace lieinv {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstraintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

/// A chained comparison over exact parameter expressions, e.g.
/// "0 < abs(delta) <= abs(gamma) <= 1" or "epsilon*h = 0".
struct Constraint {
    std::string source;
    bool always_true = false;
    std::vector<Expr> operands;
    std::vector<CmpOp> ops;
};

Constraint parse_constraint(const std::string& text, const std::set<std::string>& param_names);
bool constraint_satisfied(const Constraint& c, const std::map<std::string, Rational>& values);

struct ParameterSpec {
    std::string name;
    enum class Kind { Continuous, Discrete } kind = Kind::Continuous;
    std::vector<std::string> constraints;  // continuous only
    std::vector<Rational> values;          // discrete only
};

struct BracketSpec {
    std::size_t i = 0, j = 0;
    std::map<std::size_t, std::string> coeffs;  // k -> parameter expression
};

/// One transcribed table row (or printed parameter regime of a row).
struct CatalogEntry {
    std::string id;
    std::string name;        // printed name, shared by regime splits
    std::string nilradical;  // id of a five-dimensional nilradical record
    std::string regime;      // empty when the row has no regime tag
    std::vector<ParameterSpec> params;
    std::vector<BracketSpec> brackets;
    std::vector<std::string> invariants;
    std::string status;  // verified | erratum-suspect | paper-blank
    std::string note;
    std::vector<std::string> repaired_invariants;  // erratum-suspect only
    std::vector<std::size_t> nilradical_map;       // basis relabeling, identity if empty

    std::set<std::string> param_names() const {
        std::set<std::string> names;
        for (const auto& p : params) names.insert(p.name);
        return names;
    }
};

struct NilradicalRecord {
    std::string id;
    std::string name;
    std::size_t dim = 5;
    std::vector<BracketSpec> brackets;
};

struct Catalog {
    std::vector<NilradicalRecord> nilradicals;
    std::vector<CatalogEntry> algebras;

    const NilradicalRecord* find_nilradical(const std::string& id) const;
    const CatalogEntry* find(const std::string& id) const;
    std::vector<const CatalogEntry*> by_name_or_id(const std::string& key) const;
};

Catalog load_catalog(const std::string& path);
Catalog load_catalog_from_string(const std::string& json_text);

/// Default catalog location: $LIEINV_CATALOG, else ./data/catalog.json,
/// else the source-tree path baked in at configure time.
std::string default_catalog_path();

struct Instantiation {
    std::string entry_id;
    std::map<std::string, Rational> values;
    StructureConstants sc{6};
};

/// Builds exact structure constants from an entry at given parameter values.
StructureConstants build_structure_constants(const CatalogEntry& entry,
                                             const std::map<std::string, Rational>& values,
                                             std::size_t dim = 6);

/// Nilradical record as a standalone five-dimensional algebra.
StructureConstants nilradical_structure_constants(const NilradicalRecord& rec);

/// Samples admissible continuous values (rejection, at most 1000 attempts)
/// for one choice of the discrete parameters.
std::map<std::string, Rational> sample_parameters(const CatalogEntry& entry,
                                                  const std::map<std::string, Rational>& discrete_choice,
                                                  Rng& rng);

std::vector<std::map<std::string, Rational>> enumerate_discrete(const CatalogEntry& entry);

/// Random admissible instantiation (discrete values chosen at random).
Instantiation instantiate(const CatalogEntry& entry, std::uint64_t seed);

/// One instantiation per discrete combination, continuous values sampled.
std::vector<Instantiation> instantiate_all_discrete(const CatalogEntry& entry, std::uint64_t seed);

/// Explicit values; throws ConstraintError when they violate a constraint.
Instantiation instantiate(const CatalogEntry& entry, const std::map<std::string, Rational>& values);

/// True iff span{X1..X5} of sc brackets exactly as the named
/// nilradical under the entry's basis relabeling.
bool nilradical_pattern_matches(const NilradicalRecord& rec, const CatalogEntry& entry,
                                const StructureConstants& sc);

struct AuditConfig {
    int continuous_draws = 3;
    VerifyConfig verify;
};

struct InstantiationReport {
    std::map<std::string, Rational> values;
    bool jacobi_ok = false;
    bool nilradical_ok = false;
    bool derived_in_nilradical = false;
    RankCertificate rank_certificate;
    std::size_t invariant_count = 0;
    bool count_matches = false;
    std::vector<AnnihilationReport> annihilation;
    IndependenceReport independence;
    bool pass = false;
    std::string error;
};

struct EntryReport {
    std::string entry_id;
    std::string name;
    std::string regime;
    std::string status;
    bool quarantined = false;
    std::string quarantine_reason;
    std::vector<InstantiationReport> instantiations;           // shipped invariants
    std::vector<InstantiationReport> repaired_instantiations;  // repaired set, when present
    bool structural_ok = false;  // Jacobi + nilradical checks across instantiations
    bool pass = false;
};

/// Runs the full verification sweep over the given entries. Quarantined
/// entries (paper-blank, erratum-suspect) are reported, never failed on
/// their printed formulas; repaired formulas are checked when present.
std::vector<EntryReport> audit(const Catalog& catalog, const std::vector<const CatalogEntry*>& entries,
                               const AuditConfig& config);

/// Distinct printed names whose entries are all status=verified.
std::set<std::string> verified_names(const Catalog& catalog);
std::set<std::string> quarantined_names(const Catalog& catalog);

}  // namespace lieinv
