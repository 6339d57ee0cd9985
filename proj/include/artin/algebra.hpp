#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "artin/linalg.hpp"

namespace artin {

class FiniteLocalAlgebra;
class Element;
using AlgebraPtr = std::shared_ptr<const FiniteLocalAlgebra>;

enum class Validate {
    full,    ///< all axioms including associativity on every basis triple
    trusted  ///< cheap checks only; for algebras correct by construction
};

struct AlgebraValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A finite-dimensional commutative local algebra over F_p, given by structure
/// constants c_{ijk} with e_i e_j = sum_k c_{ijk} e_k. The basis is aligned:
/// e_0 = 1 and e_1..e_{d-1} span the maximal ideal, which must be nilpotent.
/// Constructors reject non-local data with a diagnostic.
class FiniteLocalAlgebra : public std::enable_shared_from_this<FiniteLocalAlgebra> {
public:
    /// struct_consts holds d^3 scalars, c[i][j][k] at index (i*d + j)*d + k.
    static AlgebraPtr make(FieldConfig field, std::size_t dim,
                           const std::vector<Scalar>& struct_consts,
                           Validate mode = Validate::full);

    const FieldConfig& field() const { return field_; }
    std::size_t dim() const { return dim_; }

    Scalar struct_const(std::size_t i, std::size_t j, std::size_t k) const {
        return mult_[i].at(k, j);
    }
    /// Matrix of multiplication by e_i: (e_i v)_k = sum_j c_{ijk} v_j.
    const Mat& mult_matrix(std::size_t i) const { return mult_[i]; }
    /// Matrix of multiplication by an arbitrary coordinate vector.
    Mat mult_matrix_of(const Vec& coords) const;

    const Subspace& max_ideal() const { return max_ideal_; }
    /// Powers m^1, m^2, ..., m^t = 0 (t entries).
    const std::vector<Subspace>& max_ideal_powers() const { return m_powers_; }
    /// Smallest t >= 1 with m^t = 0.
    std::size_t nilpotency_index() const { return m_powers_.size(); }

    Element element(Vec coords) const;
    Element zero() const;
    Element one() const;
    Element basis_element(std::size_t i) const;

private:
    FiniteLocalAlgebra(FieldConfig field, std::size_t dim, std::vector<Mat> mult)
        : field_(field), dim_(dim), mult_(std::move(mult)),
          max_ideal_(Subspace::zero(field, dim)) {}
    void validate_and_finish(Validate mode);

    FieldConfig field_;
    std::size_t dim_;
    std::vector<Mat> mult_;
    Subspace max_ideal_;
    std::vector<Subspace> m_powers_;
};

/// An element of a FiniteLocalAlgebra; immutable coordinates mod p.
class Element {
public:
    Element(AlgebraPtr parent, Vec coords);

    const AlgebraPtr& parent() const { return parent_; }
    const Vec& coords() const { return coords_; }
    const FieldConfig& field() const { return parent_->field(); }

    bool is_zero() const;
    /// True iff the element lies outside the maximal ideal.
    bool is_unit() const { return coords_[0] != 0; }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element scaled(Scalar c) const;
    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    /// Matrix of multiplication by this element.
    Mat mult_matrix() const { return parent_->mult_matrix_of(coords_); }

    Element pow(std::uint64_t e) const;

private:
    AlgebraPtr parent_;
    Vec coords_;
};

bool is_unit(const Element& a);
/// Inverse of a unit a = c(1 + n), n nilpotent, via the finite geometric series.
Element invert(const Element& a);

void require_same_parent(const Element& a, const Element& b);

/// A multiplication-closed subspace of an algebra.
class IdealSpan {
public:
    IdealSpan(AlgebraPtr parent, Subspace space);

    const AlgebraPtr& parent() const { return parent_; }
    const Subspace& space() const { return space_; }
    std::size_t dim() const { return space_.dim(); }
    bool contains(const Element& a) const { return space_.contains(a.coords()); }
    bool contains(const IdealSpan& other) const { return space_.contains(other.space()); }

private:
    AlgebraPtr parent_;
    Subspace space_;
};

/// Smallest ideal containing the generators: span{e_i * g_j}.
IdealSpan ideal_generated(const std::vector<Element>& gens);

/// A local algebra homomorphism A -> B as a linear map on coordinates that
/// maps 1 to 1 and is multiplicative on basis pairs.
class AlgebraMorphism {
public:
    /// matrix is dim(B) x dim(A); column i is the image of e_i^A.
    static AlgebraMorphism from_matrix(AlgebraPtr source, AlgebraPtr target, Mat matrix,
                                       Validate mode = Validate::full);
    static AlgebraMorphism identity(AlgebraPtr a);

    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const Mat& matrix() const { return matrix_; }

    Element apply(const Element& a) const;
    AlgebraMorphism compose_after(const AlgebraMorphism& inner) const; // this o inner

private:
    AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, Mat matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

    AlgebraPtr source_, target_;
    Mat matrix_;
};

struct QuotientResult {
    AlgebraPtr algebra;
    Mat projection;            ///< q x d coordinate map A -> A/I
    std::vector<std::size_t> rep_coords; ///< coordinate of A carried by each quotient basis vector
};

/// Quotient by a proper ideal, with the deterministic complement basis given
/// by the non-pivot coordinates of I's echelon basis.
QuotientResult quotient(const AlgebraPtr& a, const IdealSpan& ideal, Validate mode = Validate::full);

/// The fiber ring B/m_A B of a morphism, i.e. the base change to the residue field.
QuotientResult base_change_fiber(const AlgebraMorphism& phi);

/// Deterministic minimal generators of the maximal ideal: the first
/// dim(m/m^2) basis vectors of m whose images in m/m^2 are independent.
std::vector<Element> minimal_generators(const AlgebraPtr& a);

/// Largest dimension for which Validate::full associativity sweeps are run by
/// internal construction paths (they produce associative data by construction).
inline constexpr std::size_t kFullValidationDimCap = 16;

inline Validate auto_validate(std::size_t dim) {
    return dim <= kFullValidationDimCap ? Validate::full : Validate::trusted;
}

} // namespace artin
