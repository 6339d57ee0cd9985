#pragma once

#include <string>
#include <vector>

#include "artin/algebra.hpp"
#include "artin/poly.hpp"

namespace artin {

struct NotZeroDimensional : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotLocal : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegreeBoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A quotient of a polynomial ring by finitely many relations.
struct Presentation {
    FieldConfig field;
    std::vector<std::string> vars;
    std::vector<Poly> relations;
};

struct CompileLimits {
    std::size_t dim_cap = 256;
    /// 0 means 2 * dim_cap.
    std::size_t degree_bound = 0;
};

/// Full reduction of f modulo the polynomials in gb (leading terms must be
/// monic is not required; divisors are used as given).
Poly normal_form(Poly f, const std::vector<Poly>& gb);

/// The reduced Groebner basis of the given generators under grevlex; unique,
/// monic, sorted by ascending leading monomial.
std::vector<Poly> groebner_basis(FieldConfig field, std::size_t nvars,
                                 const std::vector<Poly>& gens,
                                 std::size_t degree_bound);

/// A presentation compiled to structure constants. The basis consists of the
/// standard monomials in ascending grevlex order, so index 0 is 1.
class CompiledRing {
public:
    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<std::string>& variables() const { return vars_; }
    const std::vector<Monomial>& basis_monomials() const { return basis_; }
    const std::vector<Poly>& groebner() const { return groebner_; }

    Poly normal_form(const Poly& f) const;
    Element to_element(const Poly& f) const;
    /// Image of the i-th variable.
    Element var_element(std::size_t i) const;
    Element parse(const std::string& text) const;
    std::string to_string(const Element& e) const;
    /// The element as a polynomial supported on standard monomials.
    Poly lift(const Element& e) const;

private:
    friend CompiledRing compile_ring(const Presentation&, const CompileLimits&);
    CompiledRing() = default;

    AlgebraPtr algebra_;
    std::vector<std::string> vars_;
    std::vector<Monomial> basis_;
    std::vector<Poly> groebner_;
};

/// Compile a presentation to a finite local algebra. Throws
/// NotZeroDimensional when the quotient is infinite-dimensional, NotLocal
/// when some variable is not nilpotent modulo the relations (or the relations
/// generate the unit ideal), DegreeBoundExceeded or DimensionCapExceeded when
/// a limit is hit.
CompiledRing compile_ring(const Presentation& pres, const CompileLimits& limits = {});

/// The polynomial ring in r variables x1..xr truncated above total degree t:
/// the basis is all monomials of degree at most t.
CompiledRing truncated_poly_algebra(FieldConfig field, std::size_t r, std::size_t t,
                                    const CompileLimits& limits = {});

/// Evaluate a polynomial at the given images of its variables.
Element evaluate_poly(const Poly& f, const AlgebraPtr& target, const std::vector<Element>& images);

/// The morphism sending the i-th source variable to images[i]. Throws when
/// some source relation does not vanish on the images (the assignment then
/// defines no morphism).
AlgebraMorphism morphism_from_images(const CompiledRing& source, const AlgebraPtr& target,
                                     const std::vector<Element>& images);

} // namespace artin
