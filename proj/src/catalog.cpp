#include "bsym/catalog.hpp"

#include <future>

#include "bsym/errors.hpp"
#include "bsym/parse.hpp"

namespace bsym {

const VectorField& generator_X() {
    static const VectorField x = VectorField::parse("1;0;0");
    return x;
}

const VectorField& generator_T() {
    static const VectorField t = VectorField::parse("0;1;0");
    return t;
}

namespace {

struct SparseBracket {
    int i, j, k;
    Rational value;
};

StructureConstants tensor(int dim, const std::vector<SparseBracket>& entries) {
    StructureConstants sc(dim);
    for (const SparseBracket& e : entries) sc.set(e.k, e.i, e.j, e.value);
    sc.validate();
    return sc;
}

ClassificationEntry make_entry(std::string case_id, std::string g_text,
                               std::vector<std::string> listed,
                               std::vector<std::string> verified,
                               std::vector<SparseBracket> brackets,
                               AlgebraLabel::Kind kind, Rational a, int degree,
                               bool corrected, std::string note) {
    ClassificationEntry e{std::move(case_id),
                          g_text,
                          g_text == "abstract" ? PDESpec::with_abstract_g()
                                               : PDESpec::with_g(parse_expr(g_text)),
                          {},
                          {},
                          tensor(2 + static_cast<int>(verified.size()), brackets),
                          kind,
                          std::move(a),
                          degree,
                          corrected,
                          std::move(note)};
    for (const std::string& s : listed) e.listed_extras.push_back(VectorField::parse(s));
    for (const std::string& s : verified) e.verified_extras.push_back(VectorField::parse(s));
    return e;
}

}  // namespace

const std::vector<ClassificationEntry>& classification_catalog() {
    using K = AlgebraLabel::Kind;
    static const std::vector<ClassificationEntry> entries = [] {
        const Rational half(1, 2);
        std::vector<ClassificationEntry> out;
        out.push_back(make_entry("arb", "abstract", {}, {}, {}, K::Abelian, Rational(0), 1,
                                 false, ""));
        out.push_back(make_entry(
            "1", "u", {"t*x;t^2;x - t*u", "t;0;1", "x;2*t;-u"},
            {"t*x;t^2;x - t*u", "t;0;1", "x;2*t;-u"},
            {
                {0, 2, 3, Rational(1)},   // [X,B11] = B12
                {0, 4, 0, Rational(1)},   // [X,B13] = X
                {1, 2, 4, Rational(1)},   // [T,B11] = B13
                {1, 3, 0, Rational(1)},   // [T,B12] = X
                {1, 4, 1, Rational(2)},   // [T,B13] = 2T (table prints this as [X,B13] = 2T)
                {2, 4, 2, Rational(-2)},  // [B11,B13] = -2B11
                {3, 4, 3, Rational(-1)},  // [B12,B13] = -B12
            },
            K::A540, Rational(0), 2, true,
            "bracket printed as [X,B13] = 2T computes as [T,B13] = 2T, while [X,B13] = X"));
        out.push_back(make_entry("2", "u^p", {"x;2*t;-(1/p)*u"}, {"x;2*t;-(1/p)*u"},
                                 {{0, 2, 0, Rational(1)}, {1, 2, 1, Rational(2)}}, K::A35, half,
                                 2, false, ""));
        out.push_back(make_entry("3", "log(u)", {"t;0;u"}, {"t;0;u"},
                                 {{1, 2, 0, Rational(1)}}, K::Heisenberg, Rational(0), 2, false,
                                 ""));
        out.push_back(make_entry("4", "exp(b*u)", {"x;2*t;-(1/b)"}, {"x;2*t;-(1/b)"},
                                 {{0, 2, 0, Rational(1)}, {1, 2, 1, Rational(2)}}, K::A35, half,
                                 2, false, ""));
        out.push_back(make_entry("5", "(1-u)/(1+u)", {"x - t;2*t;1 + u"}, {"x - t;2*t;1 + u"},
                                 {{0, 2, 0, Rational(1)},
                                  {1, 2, 0, Rational(-1)},
                                  {1, 2, 1, Rational(2)}},
                                 K::A35, half, 2, false, ""));
        out.push_back(make_entry("6", "1/(1+u)", {"x;2*t;1 + u"}, {"x;2*t;1 + u"},
                                 {{0, 2, 0, Rational(1)}, {1, 2, 1, Rational(2)}}, K::A35, half,
                                 2, false, ""));
        out.push_back(make_entry("7a", "u/(1+u)", {"x + t;2*t;1 + u"}, {"x + t;2*t;1 + u"},
                                 {{0, 2, 0, Rational(1)},
                                  {1, 2, 0, Rational(1)},
                                  {1, 2, 1, Rational(2)}},
                                 K::A35, half, 2, false, ""));
        out.push_back(make_entry(
            "7b", "u/(1-u)", {"x + t;2*t;1 + u"}, {"x - t;2*t;u - 1"},
            {{0, 2, 0, Rational(1)}, {1, 2, 0, Rational(-1)}, {1, 2, 1, Rational(2)}}, K::A35,
            half, 2, true,
            "listed generator (x+t)dx + 2t dt + (1+u)du has nonzero residual for g = u/(1-u); "
            "the discovered replacement (x-t)dx + 2t dt + (u-1)du verifies"));
        return out;
    }();
    return entries;
}

namespace {

PDESpec pde_with_nu(const ClassificationEntry& e, const Expr& nu) {
    return PDESpec(nu, e.pde.g);
}

VectorField substituted(const VectorField& vf, const SubstitutionMap& rules) {
    if (rules.empty()) return vf;
    return VectorField(substitute(vf.xi, rules), substitute(vf.phi, rules),
                       substitute(vf.eta, rules));
}

CaseResult run_case(const ClassificationEntry& entry, const Expr& nu) {
    CaseResult r;
    r.case_id = entry.case_id;
    r.g_text = entry.g_text;
    PDESpec pde = pde_with_nu(entry, nu);

    // (a) generator verification
    if (entry.pde.abstract_g()) {
        r.listed_generators_verify = true;
        r.generators_ok = invariance_residual(pde, generator_X()).is_zero() &&
                          invariance_residual(pde, generator_T()).is_zero();
    } else {
        r.listed_generators_verify = true;
        for (const VectorField& vf : entry.listed_extras)
            if (!verify_symmetry(pde, vf).is_symmetry) r.listed_generators_verify = false;
        r.generators_ok = verify_symmetry(pde, generator_X()).is_symmetry &&
                          verify_symmetry(pde, generator_T()).is_symmetry;
        for (const VectorField& vf : entry.verified_extras)
            r.generators_ok = r.generators_ok && verify_symmetry(pde, vf).is_symmetry;
    }
    if (entry.paper_corrected) {
        if (entry.case_id == "7b" && r.listed_generators_verify)
            r.findings.push_back("case 7b: expected the listed generator to fail, but it verified");
        else
            r.findings.push_back("case " + entry.case_id + ": " + entry.correction_note);
    }

    // (b) bracket table
    std::vector<VectorField> basis = {generator_X(), generator_T()};
    for (const VectorField& vf : entry.verified_extras) basis.push_back(vf);
    StructureConstants sc = structure_constants(basis);
    r.brackets_ok = sc == entry.expected_brackets;

    // (c) identification with exact witness
    IdentifyResult idr = identify(sc);
    r.label = idr.label;
    r.label_ok = idr.label.kind == entry.expected_kind;
    if (entry.expected_kind == AlgebraLabel::Kind::A35)
        r.label_ok = r.label_ok && idr.label.a == entry.expected_a;
    if (entry.expected_kind == AlgebraLabel::Kind::Abelian) {
        r.witness_ok = idr.witness.has_value();
    } else if (idr.witness) {
        StructureConstants target =
            entry.expected_kind == AlgebraLabel::Kind::Heisenberg ? heisenberg_target()
            : entry.expected_kind == AlgebraLabel::Kind::A35      ? a35_target(idr.label.a)
                                                                  : a540_target();
        r.witness_ok = change_of_basis(sc, *idr.witness) == target;
    }

    // (d) discovery cross-check at every parameter sample
    r.discover_ok = true;
    auto sample_maps = entry.pde.abstract_g() ? std::vector<SubstitutionMap>{{}}
                                              : parameter_sample_maps(*entry.pde.g);
    for (const SubstitutionMap& rules : sample_maps) {
        PDESpec sample = entry.pde.abstract_g()
                             ? pde
                             : PDESpec(nu, substitute(*entry.pde.g, rules));
        std::vector<VectorField> expected_basis = {generator_X(), generator_T()};
        for (const VectorField& vf : entry.verified_extras)
            expected_basis.push_back(substituted(vf, rules));
        std::vector<VectorField> found = discover_symmetries(sample, entry.discover_degree);
        r.discover_dim = found.size();
        if (found.size() != expected_basis.size()) {
            r.discover_ok = false;
            continue;
        }
        for (const VectorField& vf : found)
            if (!expand_in_basis(vf, expected_basis)) r.discover_ok = false;
        for (const VectorField& vf : expected_basis)
            if (!expand_in_basis(vf, found)) r.discover_ok = false;
    }
    return r;
}

}  // namespace

bool ClassificationReport::all_passed() const {
    for (const CaseResult& c : cases)
        if (!c.passed()) return false;
    return true;
}

ClassificationReport run_classification(const Expr& nu, bool parallel) {
    const auto& entries = classification_catalog();
    ClassificationReport report;
    report.nu = nu;
    if (parallel) {
        std::vector<std::future<CaseResult>> futures;
        futures.reserve(entries.size());
        for (const ClassificationEntry& e : entries)
            futures.push_back(
                std::async(std::launch::async, [&e, &nu] { return run_case(e, nu); }));
        for (auto& f : futures) report.cases.push_back(f.get());
    } else {
        for (const ClassificationEntry& e : entries) report.cases.push_back(run_case(e, nu));
    }
    for (const CaseResult& c : report.cases)
        for (const std::string& f : c.findings) report.findings.push_back(f);
    return report;
}

std::string ClassificationReport::text() const {
    std::string out;
    out += "group classification of nu*u_xx = u_t + g(u)*u_x   (nu = " + nu.str() + ")\n";
    out += "case  g                 generators  brackets  algebra        discovery  status\n";
    for (const CaseResult& c : cases) {
        auto pad = [](std::string s, std::size_t w) {
            if (s.size() < w) s.append(w - s.size(), ' ');
            return s + "  ";
        };
        std::string status = !c.passed()           ? "FAILED"
                             : c.findings.empty()  ? "confirmed"
                                                   : "corrected";
        out += pad(c.case_id, 4) + pad(c.g_text, 16) +
               pad(c.generators_ok ? "verified" : "FAILED", 10) +
               pad(c.brackets_ok ? "ok" : "FAILED", 8) + pad(c.label.str(), 13) +
               pad("dim " + std::to_string(c.discover_dim) + (c.discover_ok ? "" : "!"), 9) +
               status + "\n";
    }
    if (!findings.empty()) {
        out += "\nfindings (departures from the printed table):\n";
        for (const std::string& f : findings) out += "  - " + f + "\n";
    }
    return out;
}

std::string ClassificationReport::latex() const {
    std::string out = "\\begin{tabular}{lllll}\n";
    out += "case & $g(u)$ & generators & algebra & status\\\\\\hline\n";
    const auto& entries = classification_catalog();
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const CaseResult& c = cases[i];
        std::string gens;
        for (const VectorField& vf : entries[i].verified_extras) {
            if (!gens.empty()) gens += ",\\; ";
            gens += "$" + vf.latex() + "$";
        }
        if (gens.empty()) gens = "--";
        std::string g_tex =
            c.g_text == "abstract" ? "\\text{arbitrary}" : parse_expr(c.g_text).latex();
        out += c.case_id + " & $" + g_tex + "$ & " + gens + " & $" + c.label.str() + "$ & " +
               (c.passed() ? (c.findings.empty() ? "confirmed" : "corrected") : "failed") +
               "\\\\\n";
    }
    out += "\\end{tabular}\n";
    return out;
}

Json ClassificationReport::to_json() const {
    Json j;
    j["pde"] = "nu*u_xx = u_t + g(u)*u_x";
    j["nu"] = nu.str();
    Json arr = Json::array();
    for (const CaseResult& c : cases) {
        Json e;
        e["case"] = c.case_id;
        e["g"] = c.g_text;
        e["generators_ok"] = c.generators_ok;
        e["listed_generators_verify"] = c.listed_generators_verify;
        e["brackets_ok"] = c.brackets_ok;
        e["algebra"] = c.label.to_json();
        e["label_ok"] = c.label_ok;
        e["witness_ok"] = c.witness_ok;
        e["discover_dim"] = c.discover_dim;
        e["discover_ok"] = c.discover_ok;
        e["status"] = !c.passed() ? "failed" : c.findings.empty() ? "confirmed" : "corrected";
        Json f = Json::array();
        for (const std::string& s : c.findings) f.push_back(s);
        e["findings"] = f;
        arr.push_back(e);
    }
    j["cases"] = arr;
    Json f = Json::array();
    for (const std::string& s : findings) f.push_back(s);
    j["findings"] = f;
    j["all_passed"] = all_passed();
    return j;
}

}  // namespace bsym
