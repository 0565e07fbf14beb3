#pragma once

#include <string>
#include <vector>

#include "bsym/determining.hpp"
#include "bsym/lie_algebra.hpp"

namespace bsym {

// One row of the classification table: the PDE instance, its additional
// generators, the expected bracket tensor over {X, T, extras}, and the
// expected isomorphism class.
struct ClassificationEntry {
    std::string case_id;  // "arb", "1", ..., "6", "7a", "7b"
    std::string g_text;   // "abstract" for the arbitrary case
    PDESpec pde;
    // generators exactly as listed in the table (additional to X, T)
    std::vector<VectorField> listed_extras;
    // generators that actually verify (differ from listed_extras only for 7b)
    std::vector<VectorField> verified_extras;
    StructureConstants expected_brackets;  // over {X, T, verified extras}
    AlgebraLabel::Kind expected_kind = AlgebraLabel::Kind::Unknown;
    Rational expected_a{0};
    int discover_degree = 2;
    bool paper_corrected = false;
    std::string correction_note;
};

const std::vector<ClassificationEntry>& classification_catalog();

const VectorField& generator_X();
const VectorField& generator_T();

struct CaseResult {
    std::string case_id;
    std::string g_text;
    bool listed_generators_verify = false;  // every listed extra has zero residual
    bool generators_ok = false;             // every verified extra has zero residual
    bool brackets_ok = false;
    AlgebraLabel label;
    bool label_ok = false;
    bool witness_ok = false;
    std::size_t discover_dim = 0;
    bool discover_ok = false;  // dimension and mutual span inclusion at every sample
    std::vector<std::string> findings;

    bool passed() const {
        return generators_ok && brackets_ok && label_ok && witness_ok && discover_ok;
    }
};

struct ClassificationReport {
    Expr nu;
    std::vector<CaseResult> cases;
    std::vector<std::string> findings;  // aggregated paper corrections

    bool all_passed() const;
    bool corrections_found() const { return !findings.empty(); }

    std::string text() const;
    std::string latex() const;
    Json to_json() const;
};

// Verifies every catalog entry: generator residuals, bracket tables,
// algebra identification with exact witnesses, and discovery cross-checks
// at each parameter sample. Entries run concurrently; results are
// assembled in case order.
ClassificationReport run_classification(const Expr& nu, bool parallel = true);

}  // namespace bsym
