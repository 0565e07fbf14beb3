#pragma once

#include <functional>
#include <vector>

#include "bsym/determining.hpp"
#include "bsym/json.hpp"
#include "bsym/vector_field.hpp"

namespace bsym {

struct Grid {
    double x_min = 0.0, x_max = 1.0;
    int nx = 64;
    double t_final = 1.0;
    int nt = 64;
    enum class Boundary { Periodic, Dirichlet };
    Boundary boundary = Boundary::Periodic;
    double left = 0.0, right = 0.0;  // Dirichlet values

    double dx() const;
    double dt() const { return t_final / nt; }
    double x_at(int i) const { return x_min + i * dx(); }
    void validate(long cell_budget = 50000000L) const;
};

struct SolutionField {
    Grid grid;
    // values[n][i]: time level n, space node i
    std::vector<std::vector<double>> values;
    // time level coordinates; uniform for solver output, possibly rescaled
    // after a flow transport
    std::vector<double> times;
    std::string scheme;

    std::string csv() const;
    Json to_json() const;
};

using ScalarFn = std::function<double(double)>;
using SourceFn = std::function<double(double, double)>;

// Semi-implicit scheme: backward-Euler centered diffusion (cyclic/plain
// tridiagonal solve per step), explicit second-order upwind-biased
// advection of g(u) u_x, optional source term. The advective stability
// guard |g| dt/dx <= 0.9 is enforced every step.
SolutionField solve_pde(double nu, const ScalarFn& g, const std::vector<double>& u0,
                        const Grid& grid, const SourceFn& source = nullptr);

// Discrete PDE residual nu*u_xx - u_t - g(u)*u_x of a stored field,
// forward in time, centered in space; returns the RMS over interior nodes.
double discrete_residual(const SolutionField& field, double nu, const ScalarFn& g);

struct FlowMap {
    VectorField generator;
    double epsilon = 0.0;
    int steps = 128;  // fixed-step RK4, at least 64
};

struct FlowPoint {
    double x, t, u;
};

// Integrates the one-parameter flow dx/de = xi, dt/de = phi, du/de = eta
// from each starting point. Parameters appearing in the generator (nu, p,
// b) are supplied through params.
std::vector<FlowPoint> flow_transform(const FlowMap& fm, const std::vector<FlowPoint>& points,
                                      const EvalPoint& params = {});

struct JetSampling {
    int n_points = 32;
    unsigned seed = 20260809u;
    double u_min = 0.2, u_max = 0.8;
    double amplitude = 2.0;  // jets drawn uniformly from [-amplitude, amplitude]
    int max_retries = 5;
};

// Evaluates the on-manifold invariance residual at random jet points;
// returns the maximum absolute value. Symbols without values in params
// default nu to 1.
double jet_residual_check(const PDESpec& pde, const VectorField& vf,
                          const JetSampling& sampling = {}, EvalPoint params = {});

struct TransportCheck {
    double residual_untransformed = 0.0;
    double residual_transformed = 0.0;
    double clipped_fraction = 0.0;
};

// Solves the PDE, pushes the solution graph through the flow of the
// generator, re-interpolates onto the grid, and measures the discrete
// residual of the transported field. The generator's phi must depend on
// t alone so time slices map to time slices.
TransportCheck invariance_transport_check(double nu, const ScalarFn& g, const VectorField& vf,
                                          double eps, const Grid& grid,
                                          const std::vector<double>& u0,
                                          const EvalPoint& params = {});

}  // namespace bsym
