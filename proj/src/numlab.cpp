#include "bsym/numlab.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bsym/errors.hpp"

namespace bsym {

double Grid::dx() const {
    return boundary == Boundary::Periodic ? (x_max - x_min) / nx : (x_max - x_min) / (nx - 1);
}

void Grid::validate(long cell_budget) const {
    if (nx < 16 || nt < 16) throw InvariantViolationError("grid needs nx, nt >= 16");
    if (!(x_max > x_min)) throw InvariantViolationError("empty spatial interval");
    if (!(t_final > 0.0)) throw InvariantViolationError("t_final must be positive");
    if (static_cast<long>(nx) * nt > cell_budget)
        throw InvariantViolationError("grid exceeds the cell budget");
}

std::string SolutionField::csv() const {
    std::string out = "x,t,u\n";
    char buf[96];
    for (std::size_t n = 0; n < values.size(); ++n)
        for (int i = 0; i < grid.nx; ++i) {
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", grid.x_at(i), times[n],
                          values[n][static_cast<std::size_t>(i)]);
            out += buf;
        }
    return out;
}

Json SolutionField::to_json() const {
    Json j;
    j["scheme"] = scheme;
    j["nx"] = grid.nx;
    j["nt"] = grid.nt;
    j["x_min"] = grid.x_min;
    j["x_max"] = grid.x_max;
    j["times"] = times;
    j["values"] = values;
    return j;
}

namespace {

// Thomas algorithm; diagonals are copied since the sweep destroys them.
std::vector<double> solve_tridiagonal(std::vector<double> a, std::vector<double> b,
                                      std::vector<double> c, std::vector<double> d) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (b[i - 1] == 0.0) throw NumericError("tridiagonal solver breakdown");
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    if (b[n - 1] == 0.0) throw NumericError("tridiagonal solver breakdown");
    std::vector<double> x(n);
    x[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
    return x;
}

// Cyclic tridiagonal solve by the Sherman-Morrison correction.
std::vector<double> solve_cyclic(const std::vector<double>& a, const std::vector<double>& b,
                                 const std::vector<double>& c, const std::vector<double>& d) {
    const std::size_t n = b.size();
    double gamma = -b[0];
    std::vector<double> bb = b;
    bb[0] -= gamma;
    bb[n - 1] -= c[n - 1] * a[0] / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    std::vector<double> x1 = solve_tridiagonal(a, bb, c, d);
    std::vector<double> x2 = solve_tridiagonal(a, bb, c, u);
    double vx1 = x1[0] + a[0] / gamma * x1[n - 1];
    double vx2 = x2[0] + a[0] / gamma * x2[n - 1];
    double factor = vx1 / (1.0 + vx2);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = x1[i] - factor * x2[i];
    return x;
}

// Four-point Lagrange interpolation on the sorted graph; index wrapping is
// periodic over the stated length. Keeps the re-interpolation error well
// below the residual's second differences.
double interp_graph(const std::vector<std::pair<double, double>>& graph, double x, bool periodic,
                    double length) {
    const long n = static_cast<long>(graph.size());
    auto it = std::lower_bound(graph.begin(), graph.end(), std::pair<double, double>{x, -1e300});
    long hi = it - graph.begin();
    double xs[4], ys[4];
    for (int k = 0; k < 4; ++k) {
        long idx = hi - 2 + k;
        double shift = 0.0;
        if (periodic) {
            if (idx < 0) {
                idx += n;
                shift = -length;
            } else if (idx >= n) {
                idx -= n;
                shift = length;
            }
        } else {
            idx = std::clamp(idx, 0L, n - 1);
        }
        xs[k] = graph[static_cast<std::size_t>(idx)].first + shift;
        ys[k] = graph[static_cast<std::size_t>(idx)].second;
    }
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        double w = 1.0;
        for (int m = 0; m < 4; ++m) {
            if (m == k) continue;
            double denom = xs[k] - xs[m];
            if (denom == 0.0) return ys[k];
            w *= (x - xs[m]) / denom;
        }
        sum += w * ys[k];
    }
    return sum;
}

// Second-order upwind-biased derivative of u at node i.
double upwind_dx(const std::vector<double>& u, int i, double wind, const Grid& g) {
    const int n = g.nx;
    const double dx = g.dx();
    if (g.boundary == Grid::Boundary::Periodic) {
        auto at = [&](int k) { return u[static_cast<std::size_t>(((k % n) + n) % n)]; };
        if (wind >= 0.0) return (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) / (2.0 * dx);
        return (-3.0 * at(i) + 4.0 * at(i + 1) - at(i + 2)) / (2.0 * dx);
    }
    auto at = [&](int k) { return u[static_cast<std::size_t>(k)]; };
    if (wind >= 0.0) {
        if (i >= 2) return (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) / (2.0 * dx);
        if (i >= 1) return (at(i) - at(i - 1)) / dx;
        return (at(i + 1) - at(i)) / dx;
    }
    if (i <= n - 3) return (-3.0 * at(i) + 4.0 * at(i + 1) - at(i + 2)) / (2.0 * dx);
    if (i <= n - 2) return (at(i + 1) - at(i)) / dx;
    return (at(i) - at(i - 1)) / dx;
}

}  // namespace

SolutionField solve_pde(double nu, const ScalarFn& g, const std::vector<double>& u0,
                        const Grid& grid, const SourceFn& source) {
    grid.validate();
    if (!(nu > 0.0)) throw InvariantViolationError("nu must be positive");
    if (static_cast<int>(u0.size()) != grid.nx)
        throw InvariantViolationError("initial profile size does not match the grid");
    const int n = grid.nx;
    const double dx = grid.dx(), dt = grid.dt();
    const double mu = nu * dt / (dx * dx);

    SolutionField field;
    field.grid = grid;
    field.scheme = "implicit centered diffusion + explicit upwind-biased advection";
    field.values.reserve(static_cast<std::size_t>(grid.nt) + 1);
    field.values.push_back(u0);
    field.times.push_back(0.0);

    std::vector<double> a(n, -mu), b(n, 1.0 + 2.0 * mu), c(n, -mu);
    const bool periodic = grid.boundary == Grid::Boundary::Periodic;
    if (!periodic) {
        a[0] = c[0] = 0.0;
        b[0] = 1.0;
        a[n - 1] = c[n - 1] = 0.0;
        b[n - 1] = 1.0;
    }

    std::vector<double> rhs(n);
    for (int step = 0; step < grid.nt; ++step) {
        const std::vector<double>& u = field.values.back();
        const double t = step * dt;
        double max_wind = 0.0;
        for (int i = 0; i < n; ++i) max_wind = std::max(max_wind, std::abs(g(u[i])));
        if (max_wind * dt / dx > 0.9)
            throw NumericError("advective stability guard |g| dt/dx <= 0.9 violated");
        for (int i = 0; i < n; ++i) {
            double wind = g(u[static_cast<std::size_t>(i)]);
            rhs[i] = u[static_cast<std::size_t>(i)] - dt * wind * upwind_dx(u, i, wind, grid);
            if (source) rhs[i] += dt * source(grid.x_at(i), t);
        }
        std::vector<double> next;
        if (periodic) {
            next = solve_cyclic(a, b, c, rhs);
        } else {
            rhs[0] = grid.left;
            rhs[n - 1] = grid.right;
            next = solve_tridiagonal(a, b, c, rhs);
        }
        for (double v : next)
            if (!std::isfinite(v)) throw NumericError("solution blew up");
        field.values.push_back(std::move(next));
        field.times.push_back((step + 1) * dt);
    }
    return field;
}

double discrete_residual(const SolutionField& field, double nu, const ScalarFn& g) {
    const Grid& grid = field.grid;
    const int n = grid.nx;
    const double dx = grid.dx();
    const bool periodic = grid.boundary == Grid::Boundary::Periodic;
    double sum = 0.0;
    long count = 0;
    for (std::size_t lvl = 0; lvl + 1 < field.values.size(); ++lvl) {
        double dt = field.times[lvl + 1] - field.times[lvl];
        if (!(dt > 0.0)) throw NumericError("non-increasing time levels");
        const auto& u = field.values[lvl];
        const auto& unext = field.values[lvl + 1];
        for (int i = 0; i < n; ++i) {
            if (!periodic && (i == 0 || i == n - 1)) continue;
            auto at = [&](int k) {
                return u[static_cast<std::size_t>(periodic ? ((k % n) + n) % n : k)];
            };
            double uxx = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (dx * dx);
            double ux = (at(i + 1) - at(i - 1)) / (2.0 * dx);
            double ut = (unext[static_cast<std::size_t>(i)] - at(i)) / dt;
            double r = nu * uxx - ut - g(at(i)) * ux;
            sum += r * r;
            ++count;
        }
    }
    return count ? std::sqrt(sum / count) : 0.0;
}

std::vector<FlowPoint> flow_transform(const FlowMap& fm, const std::vector<FlowPoint>& points,
                                      const EvalPoint& params) {
    if (fm.steps < 64) throw InvariantViolationError("flow integration wants at least 64 steps");
    const double h = fm.epsilon / fm.steps;
    std::vector<FlowPoint> out;
    out.reserve(points.size());
    auto rate = [&](const FlowPoint& p) {
        EvalPoint at = params;
        at[atoms::x()] = p.x;
        at[atoms::t()] = p.t;
        at[atoms::u()] = p.u;
        return FlowPoint{eval_numeric(fm.generator.xi, at), eval_numeric(fm.generator.phi, at),
                         eval_numeric(fm.generator.eta, at)};
    };
    for (FlowPoint p : points) {
        if (fm.epsilon != 0.0) {
            for (int s = 0; s < fm.steps; ++s) {
                FlowPoint k1 = rate(p);
                FlowPoint k2 = rate({p.x + 0.5 * h * k1.x, p.t + 0.5 * h * k1.t, p.u + 0.5 * h * k1.u});
                FlowPoint k3 = rate({p.x + 0.5 * h * k2.x, p.t + 0.5 * h * k2.t, p.u + 0.5 * h * k2.u});
                FlowPoint k4 = rate({p.x + h * k3.x, p.t + h * k3.t, p.u + h * k3.u});
                p.x += h / 6.0 * (k1.x + 2.0 * (k2.x + k3.x) + k4.x);
                p.t += h / 6.0 * (k1.t + 2.0 * (k2.t + k3.t) + k4.t);
                p.u += h / 6.0 * (k1.u + 2.0 * (k2.u + k3.u) + k4.u);
                if (std::abs(p.x) > 1e12 || std::abs(p.t) > 1e12 || std::abs(p.u) > 1e12)
                    throw NumericError("flow blow-up detected");
            }
        }
        out.push_back(p);
    }
    return out;
}

double jet_residual_check(const PDESpec& pde, const VectorField& vf, const JetSampling& sampling,
                          EvalPoint params) {
    Expr residual = invariance_residual(pde, vf);
    if (!params.count(atoms::nu())) params[atoms::nu()] = 1.0;
    std::mt19937 rng(sampling.seed);
    std::uniform_real_distribution<double> u_dist(sampling.u_min, sampling.u_max);
    std::uniform_real_distribution<double> jet_dist(-sampling.amplitude, sampling.amplitude);
    std::set<Atom> needed = residual.atoms();
    double worst = 0.0;
    for (int k = 0; k < sampling.n_points; ++k) {
        for (int attempt = 0;; ++attempt) {
            EvalPoint pt = params;
            pt[atoms::u()] = u_dist(rng);
            for (const Atom& a : needed) {
                if (a.kind == Atom::Kind::Jet)
                    pt[a] = jet_dist(rng);
                else if (a.kind == Atom::Kind::Coord && a.coord != Coordinate::U)
                    pt[a] = jet_dist(rng);
            }
            try {
                worst = std::max(worst, std::abs(eval_numeric(residual, pt)));
                break;
            } catch (const NumericError&) {
                if (attempt >= sampling.max_retries)
                    throw NumericError("jet sampling kept hitting poles of g");
            }
        }
    }
    return worst;
}

TransportCheck invariance_transport_check(double nu, const ScalarFn& g, const VectorField& vf,
                                          double eps, const Grid& grid,
                                          const std::vector<double>& u0,
                                          const EvalPoint& params) {
    if (vf.phi.contains_atom(atoms::x()) || vf.phi.contains_atom(atoms::u()))
        throw InvariantViolationError("transport requires phi = phi(t)");
    SolutionField field = solve_pde(nu, g, u0, grid);
    TransportCheck out;
    out.residual_untransformed = discrete_residual(field, nu, g);
    if (eps == 0.0) {
        out.residual_transformed = out.residual_untransformed;
        return out;
    }

    FlowMap fm{vf, eps, 128};
    const int n = grid.nx;
    const bool periodic = grid.boundary == Grid::Boundary::Periodic;
    const double length = grid.x_max - grid.x_min;

    SolutionField moved;
    moved.grid = grid;
    moved.scheme = field.scheme + " + flow transport";
    long clipped = 0, total = 0;
    for (std::size_t lvl = 0; lvl < field.values.size(); ++lvl) {
        std::vector<FlowPoint> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            pts.push_back({grid.x_at(i), field.times[lvl], field.values[lvl][static_cast<std::size_t>(i)]});
        std::vector<FlowPoint> tr = flow_transform(fm, pts, params);
        double tstar = tr[0].t;
        // re-interpolate the transformed graph onto the grid nodes
        std::vector<std::pair<double, double>> graph;
        graph.reserve(tr.size());
        for (const FlowPoint& p : tr) {
            double x = p.x;
            if (periodic) x = grid.x_min + std::fmod(std::fmod(x - grid.x_min, length) + length, length);
            graph.emplace_back(x, p.u);
        }
        std::sort(graph.begin(), graph.end());
        std::vector<double> row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double x = grid.x_at(i);
            ++total;
            if (!periodic && (x < graph.front().first || x > graph.back().first)) {
                ++clipped;
                row[static_cast<std::size_t>(i)] =
                    x < graph.front().first ? graph.front().second : graph.back().second;
                continue;
            }
            row[static_cast<std::size_t>(i)] = interp_graph(graph, x, periodic, length);
        }
        moved.values.push_back(std::move(row));
        moved.times.push_back(tstar);
    }
    out.clipped_fraction = total ? static_cast<double>(clipped) / total : 0.0;
    if (out.clipped_fraction > 0.5)
        throw NumericError("flow transport clipped more than half of the domain");
    out.residual_transformed = discrete_residual(moved, nu, g);
    return out;
}

}  // namespace bsym
