#pragma once

#include <optional>
#include <vector>

#include "bsym/json.hpp"
#include "bsym/linalg.hpp"
#include "bsym/vector_field.hpp"

namespace bsym {

// Commutator of point-symmetry generators.
VectorField bracket(const VectorField& v, const VectorField& w);

// Exact coordinates of vector fields over the union of the monomials in
// their components; one column per field.
ExprMat field_coordinates(const std::vector<VectorField>& fields);

// Expansion of f over the basis if f lies in its exact span.
std::optional<std::vector<Expr>> expand_in_basis(const VectorField& f,
                                                 const std::vector<VectorField>& basis);

// Exact rational tensor c^k_{ij} of a closed bracket basis. Antisymmetry
// and the Jacobi identity are validated on construction.
class StructureConstants {
public:
    explicit StructureConstants(int dim);

    int dim() const { return dim_; }
    const Rational& at(int k, int i, int j) const;
    void set(int k, int i, int j, const Rational& value);  // also sets the antisymmetric slot

    void validate() const;
    bool operator==(const StructureConstants& o) const;

    // ad(e_i) as a matrix: (ad e_i)^k_j = c^k_{i,j}
    RatMat adjoint(int i) const;
    RatMat killing() const;

    Json to_json() const;
    std::string str() const;  // non-null brackets, one per line

private:
    int dim_;
    std::vector<Rational> c_;  // ((k * dim) + i) * dim + j
};

StructureConstants structure_constants(const std::vector<VectorField>& basis);

// Tensor in the basis e'_j = sum_i M(i,j) e_i; M must be invertible.
StructureConstants change_of_basis(const StructureConstants& sc, const RatMat& m);

// Classification targets in their conventional presentations.
StructureConstants heisenberg_target();            // [e2,e3] = e1
StructureConstants a35_target(const Rational& a);  // [e1,e3] = e1, [e2,e3] = a e2
StructureConstants a540_target();

struct AlgebraProfile {
    std::vector<int> derived_series;  // dims of g, g', g'', ... until stable
    std::vector<int> lower_central;   // dims of g, [g,g], [g,[g,g]], ...
    int center_dim = 0;
    int killing_rank = 0;
    int killing_positive = 0;
    int killing_negative = 0;
    int nilradical_dim = -1;  // -1: not determined

    std::string str() const;
    Json to_json() const;
};

AlgebraProfile algebra_profile(const StructureConstants& sc);

struct AlgebraLabel {
    enum class Kind { Abelian, Heisenberg, A35, A540, Unknown };
    Kind kind = Kind::Unknown;
    int dim = 0;
    Rational a{0};  // A35 parameter, canonical 0 < |a| <= 1
    AlgebraProfile profile;

    std::string str() const;
    Json to_json() const;
    bool same_class(const AlgebraLabel& o) const;
};

struct IdentifyResult {
    AlgebraLabel label;
    // change_of_basis(sc, *witness) equals the label's target tensor
    std::optional<RatMat> witness;
};

IdentifyResult identify(const StructureConstants& sc);

}  // namespace bsym
