#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

#include "bsym/catalog.hpp"
#include "bsym/errors.hpp"
#include "bsym/numlab.hpp"
#include "bsym/parse.hpp"

namespace {

using namespace bsym;

PDESpec make_pde(const std::string& g_text, const std::string& nu_text) {
    Expr nu = nu_text.empty() ? Expr(atoms::nu()) : parse_expr(nu_text);
    if (g_text == "abstract") return PDESpec(nu, std::nullopt);
    return PDESpec(nu, parse_expr(g_text));
}

int cmd_deteq(const std::string& g, const std::string& nu, bool json, bool latex) {
    DeterminingSystem sys = extract_determining(make_pde(g, nu));
    if (json)
        std::cout << sys.to_json().dump(2) << "\n";
    else if (latex)
        std::cout << sys.latex();
    else
        std::cout << sys.str();
    return 0;
}

int cmd_verify(const std::string& g, const std::string& vf_text, const std::string& nu,
               bool json) {
    PDESpec pde = make_pde(g, nu);
    VectorField vf = VectorField::parse(vf_text);
    VerifyReport rep = verify_symmetry(pde, vf);
    if (json) {
        Json j{{"g", g},
               {"vf", vf.str()},
               {"is_symmetry", rep.is_symmetry},
               {"residual", rep.residual.str()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "SYMMETRY: " << (rep.is_symmetry ? "yes" : "no") << "\n";
        if (!rep.is_symmetry) std::cout << "residual: " << rep.residual.str() << "\n";
    }
    return 0;
}

int cmd_discover(const std::string& g, int degree, const std::string& nu, bool json, bool latex) {
    PDESpec pde = make_pde(g, nu);
    std::vector<VectorField> basis = discover_symmetries(pde, degree);
    if (json) {
        Json arr = Json::array();
        for (const VectorField& vf : basis)
            arr.push_back(Json{{"xi", vf.xi.str()}, {"phi", vf.phi.str()}, {"eta", vf.eta.str()}});
        std::cout << Json{{"g", g}, {"degree", degree}, {"dimension", basis.size()},
                          {"basis", arr}}
                         .dump(2)
                  << "\n";
    } else if (latex) {
        for (const VectorField& vf : basis) std::cout << vf.latex() << "\n";
    } else {
        std::cout << "dimension: " << basis.size() << "\n";
        for (const VectorField& vf : basis) std::cout << vf.str() << "\n";
    }
    return 0;
}

int cmd_bracket(const std::string& a, const std::string& b, bool json, bool latex) {
    VectorField result = bracket(VectorField::parse(a), VectorField::parse(b));
    if (json)
        std::cout << Json{{"xi", result.xi.str()},
                          {"phi", result.phi.str()},
                          {"eta", result.eta.str()}}
                         .dump(2)
                  << "\n";
    else if (latex)
        std::cout << result.latex() << "\n";
    else
        std::cout << result.str() << "\n";
    return 0;
}

int cmd_identify(const std::string& path, bool json) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open basis file '" + path + "'");
    std::vector<VectorField> basis;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        basis.push_back(VectorField::parse(line));
    }
    if (basis.empty()) throw Error("basis file contains no vector fields");
    StructureConstants sc = structure_constants(basis);
    IdentifyResult res = identify(sc);
    if (json) {
        Json j;
        j["dim"] = sc.dim();
        j["structure_constants"] = sc.to_json();
        j["algebra"] = res.label.to_json();
        if (res.witness) {
            Json w = Json::array();
            for (std::size_t i = 0; i < res.witness->rows(); ++i) {
                Json row = Json::array();
                for (std::size_t jj = 0; jj < res.witness->cols(); ++jj)
                    row.push_back(to_string(res.witness->at(i, jj)));
                w.push_back(row);
            }
            j["witness"] = w;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << sc.str();
        std::cout << "algebra: " << res.label.str() << "\n";
        if (res.witness) {
            std::cout << "witness columns (target basis in input coordinates):\n";
            for (std::size_t i = 0; i < res.witness->rows(); ++i) {
                for (std::size_t jj = 0; jj < res.witness->cols(); ++jj)
                    std::cout << (jj ? " " : "  ") << to_string(res.witness->at(i, jj));
                std::cout << "\n";
            }
        }
    }
    return 0;
}

int cmd_classify(const std::string& nu, bool json, bool latex) {
    Expr nu_expr = nu.empty() ? Expr(atoms::nu()) : parse_expr(nu);
    ClassificationReport report = run_classification(nu_expr);
    if (json)
        std::cout << report.to_json().dump(2) << "\n";
    else if (latex)
        std::cout << report.latex();
    else
        std::cout << report.text();
    if (!report.all_passed()) return 1;
    return report.corrections_found() ? 2 : 0;
}

struct NumcheckOptions {
    std::string g, vf_text, nu = "1";
    std::string p = "2", b = "1";
    int points = 32;
    unsigned seed = 20260809u;
    double eps = 0.2;
    double x_min = 0.0, x_max = 2.0 * M_PI, t_final = 0.4;
    int nx = 64, nt = 64;
    bool transport = false;
    bool json = false;
    std::string csv_path;  // export of the solved field
};

double parse_numeric(const std::string& text) {
    return eval_numeric(parse_expr(text), {});
}

int cmd_numcheck(const NumcheckOptions& opt) {
    PDESpec pde = make_pde(opt.g, opt.nu);
    VectorField vf = VectorField::parse(opt.vf_text);
    EvalPoint params;
    params[atoms::nu()] = parse_numeric(opt.nu);
    params[Atom::make_param("p")] = parse_numeric(opt.p);
    params[Atom::make_param("b")] = parse_numeric(opt.b);

    JetSampling sampling;
    sampling.n_points = opt.points;
    sampling.seed = opt.seed;
    double jet_residual = jet_residual_check(pde, vf, sampling, params);

    // flow group law error at eps/2 + eps/2 vs eps
    std::vector<FlowPoint> probes = {{0.4, 0.5, 0.4}, {1.5, 0.2, 0.6}, {-0.7, 0.8, 0.3}};
    double group_law_error = 0.0;
    {
        FlowMap half{vf, opt.eps / 2.0, 128}, whole{vf, opt.eps, 128};
        auto twice = flow_transform(half, flow_transform(half, probes, params), params);
        auto direct = flow_transform(whole, probes, params);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            group_law_error = std::max(group_law_error, std::abs(twice[i].x - direct[i].x));
            group_law_error = std::max(group_law_error, std::abs(twice[i].t - direct[i].t));
            group_law_error = std::max(group_law_error, std::abs(twice[i].u - direct[i].u));
        }
    }

    Json j;
    j["g"] = opt.g;
    j["vf"] = vf.str();
    j["jet_residual_max"] = jet_residual;
    j["numeric_symmetry"] = jet_residual < 1e-9;
    j["flow_group_law_error"] = group_law_error;

    if (opt.transport || !opt.csv_path.empty()) {
        Grid grid;
        grid.x_min = opt.x_min;
        grid.x_max = opt.x_max;
        grid.nx = opt.nx;
        grid.nt = opt.nt;
        grid.t_final = opt.t_final;
        grid.boundary = Grid::Boundary::Periodic;
        Expr g_expr = pde.g_expr();
        ScalarFn g_fn = [&, g_expr](double v) {
            EvalPoint pt = params;
            pt[atoms::u()] = v;
            return eval_numeric(g_expr, pt);
        };
        std::vector<double> u0(static_cast<std::size_t>(grid.nx));
        for (int i = 0; i < grid.nx; ++i)
            u0[static_cast<std::size_t>(i)] = 0.4 + 0.05 * std::sin(grid.x_at(i));
        if (!opt.csv_path.empty()) {
            SolutionField field = solve_pde(parse_numeric(opt.nu), g_fn, u0, grid);
            std::ofstream out(opt.csv_path);
            if (!out) throw Error("cannot write '" + opt.csv_path + "'");
            out << field.csv();
            j["csv"] = opt.csv_path;
        }
        if (opt.transport) {
            TransportCheck t = invariance_transport_check(parse_numeric(opt.nu), g_fn, vf,
                                                          opt.eps, grid, u0, params);
            j["transport"] = Json{{"residual_untransformed", t.residual_untransformed},
                                  {"residual_transformed", t.residual_transformed},
                                  {"clipped_fraction", t.clipped_fraction}};
        }
    }

    if (opt.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "jet residual max      : " << jet_residual << "\n";
        std::cout << "numeric symmetry      : " << (jet_residual < 1e-9 ? "yes" : "no") << "\n";
        std::cout << "flow group-law error  : " << group_law_error << "\n";
        if (opt.transport) {
            std::cout << "transport residual    : " << j["transport"]["residual_transformed"]
                      << " (untransformed " << j["transport"]["residual_untransformed"] << ")\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symmetry workbench for the PDE family nu*u_xx = u_t + g(u)*u_x"};
    app.require_subcommand(1);

    std::string g = "abstract", vf_text, vf2_text, nu_text, basis_path;
    int degree = 2;
    bool json = false, latex = false;

    auto* deteq = app.add_subcommand("deteq", "print the determining system");
    deteq->add_option("--g", g, "g(u) expression or 'abstract'");
    deteq->add_option("--nu", nu_text, "rational nu (default: symbolic)");
    deteq->add_flag("--json", json);
    deteq->add_flag("--latex", latex);

    auto* verify = app.add_subcommand("verify", "check a candidate symmetry exactly");
    verify->add_option("--g", g, "g(u) expression")->required();
    verify->add_option("--vf", vf_text, "vector field 'xi;phi;eta'")->required();
    verify->add_option("--nu", nu_text);
    verify->add_flag("--json", json);

    auto* discover = app.add_subcommand("discover", "find symmetries under a polynomial ansatz");
    discover->add_option("--g", g, "g(u) expression or 'abstract'")->required();
    discover->add_option("--deg", degree, "ansatz degree (0..3)")->check(CLI::Range(0, 3));
    discover->add_option("--nu", nu_text);
    discover->add_flag("--json", json);
    discover->add_flag("--latex", latex);

    auto* br = app.add_subcommand("bracket", "Lie bracket of two generators");
    br->add_option("--vf1", vf_text)->required();
    br->add_option("--vf2", vf2_text)->required();
    br->add_flag("--json", json);
    br->add_flag("--latex", latex);

    auto* ident = app.add_subcommand("identify", "identify the algebra spanned by a basis file");
    ident->add_option("--basis", basis_path, "file with one 'xi;phi;eta' per line")->required();
    ident->add_flag("--json", json);

    auto* classify = app.add_subcommand("classify", "run the full classification table");
    classify->add_option("--nu", nu_text);
    classify->add_flag("--json", json);
    classify->add_flag("--latex", latex);

    NumcheckOptions opt;
    auto* numcheck = app.add_subcommand("numcheck", "numeric cross-checks of a generator");
    numcheck->add_option("--g", opt.g, "g(u) expression")->required();
    numcheck->add_option("--vf", opt.vf_text)->required();
    numcheck->add_option("--nu", opt.nu, "numeric nu (default 1)");
    numcheck->add_option("--p", opt.p, "value for the parameter p");
    numcheck->add_option("--b", opt.b, "value for the parameter b");
    numcheck->add_option("--points", opt.points);
    numcheck->add_option("--seed", opt.seed);
    numcheck->add_option("--eps", opt.eps);
    numcheck->add_option("--nx", opt.nx);
    numcheck->add_option("--nt", opt.nt);
    numcheck->add_option("--xmin", opt.x_min);
    numcheck->add_option("--xmax", opt.x_max);
    numcheck->add_option("--tfinal", opt.t_final);
    numcheck->add_flag("--transport", opt.transport, "also run the solution-transport check");
    numcheck->add_option("--csv", opt.csv_path, "solve the PDE on the grid and export (x,t,u)");
    numcheck->add_flag("--json", opt.json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (deteq->parsed()) return cmd_deteq(g, nu_text, json, latex);
        if (verify->parsed()) return cmd_verify(g, vf_text, nu_text, json);
        if (discover->parsed()) return cmd_discover(g, degree, nu_text, json, latex);
        if (br->parsed()) return cmd_bracket(vf_text, vf2_text, json, latex);
        if (ident->parsed()) return cmd_identify(basis_path, json);
        if (classify->parsed()) return cmd_classify(nu_text, json, latex);
        if (numcheck->parsed()) return cmd_numcheck(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
