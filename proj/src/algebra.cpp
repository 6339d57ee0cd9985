#include "artin/algebra.hpp"

#include <string>
#include <utility>

namespace artin {

namespace {

// w += a * (L * v) mod p, skipping zero entries of v.
void add_scaled_apply(const FieldConfig& f, Vec& w, Scalar a, const Mat& L, const Vec& v) {
    const std::size_t d = w.size();
    for (std::size_t j = 0; j < d; ++j) {
        Scalar vj = v[j];
        if (vj == 0) continue;
        Scalar c = f.mul(a, vj);
        if (c == 0) continue;
        for (std::size_t k = 0; k < d; ++k) {
            Scalar l = L.at(k, j);
            if (l != 0) w[k] = f.add(w[k], f.mul(c, l));
        }
    }
}

Vec column(const Mat& m, std::size_t j) {
    Vec v(m.rows());
    for (std::size_t k = 0; k < m.rows(); ++k) v[k] = m.at(k, j);
    return v;
}

} // namespace

AlgebraPtr FiniteLocalAlgebra::make(FieldConfig field, std::size_t dim,
                                    const std::vector<Scalar>& struct_consts,
                                    Validate mode) {
    if (dim == 0) throw AlgebraValidationError("algebra dimension must be at least 1");
    if (struct_consts.size() != dim * dim * dim)
        throw AlgebraValidationError("structure constant array must hold dim^3 entries, got " +
                                     std::to_string(struct_consts.size()));
    std::vector<Mat> mult;
    mult.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Mat m(field, dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                m.at(k, j) = field.reduce(static_cast<std::int64_t>(struct_consts[(i * dim + j) * dim + k]));
        mult.push_back(std::move(m));
    }
    auto a = std::shared_ptr<FiniteLocalAlgebra>(
        new FiniteLocalAlgebra(field, dim, std::move(mult)));
    a->validate_and_finish(mode);
    return a;
}

void FiniteLocalAlgebra::validate_and_finish(Validate mode) {
    const FieldConfig& f = field_;
    const std::size_t d = dim_;

    if (!(mult_[0] == Mat::identity(f, d)))
        throw AlgebraValidationError("e_0 is not a left identity: multiplication by e_0 is not the identity map");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (struct_const(i, j, k) != struct_const(j, i, k))
                    throw AlgebraValidationError(
                        "structure constants are not commutative at (i,j,k)=(" + std::to_string(i) +
                        "," + std::to_string(j) + "," + std::to_string(k) + ")");
    for (std::size_t i = 1; i < d; ++i)
        for (std::size_t j = 1; j < d; ++j)
            if (struct_const(i, j, 0) != 0)
                throw AlgebraValidationError(
                    "e_" + std::to_string(i) + " * e_" + std::to_string(j) +
                    " has a unit component; the span of e_1..e_{d-1} is not an ideal");

    if (mode == Validate::full) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Mat lhs = mult_[i].mul(mult_[j]);
                Mat rhs(f, d, d);
                for (std::size_t k = 0; k < d; ++k) {
                    Scalar c = struct_const(i, j, k);
                    if (c == 0) continue;
                    for (std::size_t r = 0; r < d; ++r)
                        for (std::size_t s = 0; s < d; ++s)
                            rhs.at(r, s) = f.add(rhs.at(r, s), f.mul(c, mult_[k].at(r, s)));
                }
                if (!(lhs == rhs))
                    throw AlgebraValidationError(
                        "associativity fails on the basis pair (e_" + std::to_string(i) +
                        ", e_" + std::to_string(j) + ")");
            }
    }

    // m = span{e_1..e_{d-1}} must be nilpotent; record the decreasing chain
    // m, m^2, ..., m^t = 0. Each step is contained in the previous one, so a
    // step without a strict dimension drop means m^k stabilized nonzero.
    {
        std::vector<Vec> unit_rows;
        std::vector<std::size_t> unit_pivots;
        for (std::size_t i = 1; i < d; ++i) {
            Vec e(d, 0);
            e[i] = 1;
            unit_rows.push_back(std::move(e));
            unit_pivots.push_back(i);
        }
        Subspace prev = Subspace::from_echelon(f, d, unit_rows, std::move(unit_pivots));
        max_ideal_ = prev;
        m_powers_.push_back(prev);
        while (prev.dim() > 0) {
            IncrementalSpan next(f, d);
            for (std::size_t i = 1; i < d && next.dim() < prev.dim(); ++i)
                for (std::size_t b = 0; b < prev.dim() && next.dim() < prev.dim(); ++b) {
                    Vec w(d, 0);
                    add_scaled_apply(f, w, 1, mult_[i], prev.basis_vector(b));
                    next.insert(std::move(w));
                }
            Subspace nxt = next.to_subspace();
            if (nxt.dim() == prev.dim())
                throw AlgebraValidationError(
                    "the span of e_1..e_{d-1} is not nilpotent: its power chain stabilizes at dimension " +
                    std::to_string(nxt.dim()) + ", so the basis is not aligned to a local algebra");
            m_powers_.push_back(nxt);
            prev = std::move(nxt);
        }
    }
}

Mat FiniteLocalAlgebra::mult_matrix_of(const Vec& coords) const {
    if (coords.size() != dim_)
        throw std::invalid_argument("coordinate length mismatch in mult_matrix_of");
    Mat out(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Scalar a = field_.reduce(static_cast<std::int64_t>(coords[i]));
        if (a == 0) continue;
        const Mat& L = mult_[i];
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) {
                Scalar l = L.at(r, c);
                if (l != 0) out.at(r, c) = field_.add(out.at(r, c), field_.mul(a, l));
            }
    }
    return out;
}

Element FiniteLocalAlgebra::element(Vec coords) const {
    return Element(shared_from_this(), std::move(coords));
}

Element FiniteLocalAlgebra::zero() const { return element(Vec(dim_, 0)); }

Element FiniteLocalAlgebra::one() const { return basis_element(0); }

Element FiniteLocalAlgebra::basis_element(std::size_t i) const {
    if (i >= dim_) throw std::invalid_argument("basis index out of range");
    Vec v(dim_, 0);
    v[i] = 1;
    return element(std::move(v));
}

Element::Element(AlgebraPtr parent, Vec coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
    if (coords_.size() != parent_->dim())
        throw std::invalid_argument("coordinate length does not match algebra dimension");
    for (Scalar& c : coords_) c = parent_->field().reduce(static_cast<std::int64_t>(c));
}

bool Element::is_zero() const {
    for (Scalar c : coords_)
        if (c != 0) return false;
    return true;
}

void require_same_parent(const Element& a, const Element& b) {
    if (a.parent() != b.parent())
        throw std::invalid_argument("elements belong to different algebras");
}

Element Element::operator+(const Element& o) const {
    require_same_parent(*this, o);
    Vec v(coords_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = field().add(coords_[i], o.coords_[i]);
    return Element(parent_, std::move(v));
}

Element Element::operator-(const Element& o) const {
    require_same_parent(*this, o);
    Vec v(coords_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = field().sub(coords_[i], o.coords_[i]);
    return Element(parent_, std::move(v));
}

Element Element::operator-() const {
    Vec v(coords_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = field().neg(coords_[i]);
    return Element(parent_, std::move(v));
}

Element Element::operator*(const Element& o) const {
    require_same_parent(*this, o);
    const FieldConfig& f = field();
    const std::size_t d = parent_->dim();
    Vec out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        Scalar a = coords_[i];
        if (a == 0) continue;
        add_scaled_apply(f, out, a, parent_->mult_matrix(i), o.coords_);
    }
    return Element(parent_, std::move(out));
}

Element Element::scaled(Scalar c) const {
    Vec v(coords_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = field().mul(coords_[i], c);
    return Element(parent_, std::move(v));
}

bool Element::operator==(const Element& o) const {
    require_same_parent(*this, o);
    return coords_ == o.coords_;
}

Element Element::pow(std::uint64_t e) const {
    Element acc = parent_->one();
    Element base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool is_unit(const Element& a) { return a.is_unit(); }

Element invert(const Element& a) {
    if (!a.is_unit())
        throw std::domain_error("cannot invert an element of the maximal ideal");
    const FieldConfig& f = a.field();
    const AlgebraPtr& parent = a.parent();
    Scalar c_inv = f.inv(a.coords()[0]);
    // a = c(1 + n) with n nilpotent; invert the unipotent part by the
    // geometric series, which terminates at the nilpotency index.
    Element n = a.scaled(c_inv) - parent->one();
    Element acc = parent->one();
    Element term = parent->one();
    const std::size_t t = parent->nilpotency_index();
    for (std::size_t k = 1; k < t; ++k) {
        term = term * n;
        if (term.is_zero()) break;
        acc = (k % 2 == 1) ? acc - term : acc + term;
    }
    Element result = acc.scaled(c_inv);
    if (!(result * a == parent->one()))
        throw std::logic_error("inverse verification failed; algebra data is inconsistent");
    return result;
}

IdealSpan::IdealSpan(AlgebraPtr parent, Subspace space)
    : parent_(std::move(parent)), space_(std::move(space)) {
    if (space_.ambient_dim() != parent_->dim())
        throw std::invalid_argument("ideal ambient dimension does not match algebra dimension");
}

IdealSpan ideal_generated(const std::vector<Element>& gens) {
    if (gens.empty())
        throw std::invalid_argument("ideal_generated requires at least one generator");
    AlgebraPtr a = gens[0].parent();
    for (const Element& g : gens)
        if (g.parent() != a) throw std::invalid_argument("generators belong to different algebras");
    const FieldConfig& f = a->field();
    const std::size_t d = a->dim();
    // span{e_i g_j} is already multiplication-closed: e_k(e_i g) expands to a
    // combination of e_m g by associativity.
    IncrementalSpan span(f, d);
    for (const Element& g : gens) {
        span.insert(g.coords());
        for (std::size_t i = 1; i < d; ++i) {
            Vec w(d, 0);
            add_scaled_apply(f, w, 1, a->mult_matrix(i), g.coords());
            span.insert(std::move(w));
        }
    }
    return IdealSpan(a, span.to_subspace());
}

AlgebraMorphism AlgebraMorphism::from_matrix(AlgebraPtr source, AlgebraPtr target, Mat matrix,
                                             Validate mode) {
    if (source->field() != target->field())
        throw std::invalid_argument("morphism endpoints live over different fields");
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
        throw std::invalid_argument("morphism matrix must be dim(target) x dim(source)");
    for (std::size_t k = 0; k < target->dim(); ++k)
        if (matrix.at(k, 0) != (k == 0 ? 1u : 0u))
            throw std::invalid_argument("morphism does not map 1 to 1");
    for (std::size_t i = 1; i < source->dim(); ++i)
        if (matrix.at(0, i) != 0)
            throw std::invalid_argument("morphism is not local: e_" + std::to_string(i) +
                                        " maps outside the maximal ideal");
    if (mode == Validate::full) {
        for (std::size_t i = 0; i < source->dim(); ++i) {
            Element phi_i = target->element(column(matrix, i));
            for (std::size_t j = i; j < source->dim(); ++j) {
                Element phi_j = target->element(column(matrix, j));
                Vec prod = column(source->mult_matrix(i), j); // e_i e_j in the source
                Element lhs = target->element(matrix.apply(prod));
                if (!(lhs == phi_i * phi_j))
                    throw std::invalid_argument(
                        "morphism is not multiplicative on (e_" + std::to_string(i) + ", e_" +
                        std::to_string(j) + ")");
            }
        }
    }
    return AlgebraMorphism(std::move(source), std::move(target), std::move(matrix));
}

AlgebraMorphism AlgebraMorphism::identity(AlgebraPtr a) {
    Mat m = Mat::identity(a->field(), a->dim());
    return AlgebraMorphism(a, a, std::move(m));
}

Element AlgebraMorphism::apply(const Element& a) const {
    if (a.parent() != source_)
        throw std::invalid_argument("element does not belong to the morphism source");
    return target_->element(matrix_.apply(a.coords()));
}

AlgebraMorphism AlgebraMorphism::compose_after(const AlgebraMorphism& inner) const {
    if (inner.target_ != source_)
        throw std::invalid_argument("morphisms are not composable");
    return AlgebraMorphism(inner.source_, target_, matrix_.mul(inner.matrix_));
}

QuotientResult quotient(const AlgebraPtr& a, const IdealSpan& ideal, Validate mode) {
    if (ideal.parent() != a)
        throw std::invalid_argument("ideal does not belong to this algebra");
    const FieldConfig& f = a->field();
    const std::size_t d = a->dim();
    const Subspace& I = ideal.space();
    for (std::size_t c : I.pivot_cols())
        if (c == 0)
            throw std::invalid_argument("cannot form a quotient by an ideal containing a unit");
    if (mode == Validate::full) {
        for (std::size_t b = 0; b < I.dim(); ++b) {
            Vec v = I.basis_vector(b);
            for (std::size_t i = 1; i < d; ++i) {
                Vec w(d, 0);
                add_scaled_apply(f, w, 1, a->mult_matrix(i), v);
                if (!I.contains(w))
                    throw std::invalid_argument(
                        "subspace is not multiplication-closed: e_" + std::to_string(i) +
                        " times basis vector " + std::to_string(b) + " leaves it");
            }
        }
    }

    std::vector<bool> is_piv(d, false);
    for (std::size_t c : I.pivot_cols()) is_piv[c] = true;
    std::vector<std::size_t> reps;
    for (std::size_t c = 0; c < d; ++c)
        if (!is_piv[c]) reps.push_back(c);
    const std::size_t q = reps.size();

    Mat proj(f, q, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vec e(d, 0);
        e[j] = 1;
        Vec red = I.reduce(e);
        for (std::size_t r = 0; r < q; ++r) proj.at(r, j) = red[reps[r]];
    }

    std::vector<Scalar> sc(q * q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            Vec prod = column(a->mult_matrix(reps[i]), reps[j]);
            Vec red = I.reduce(prod);
            for (std::size_t k = 0; k < q; ++k) sc[(i * q + j) * q + k] = red[reps[k]];
        }
    return {FiniteLocalAlgebra::make(f, q, sc, mode), std::move(proj), std::move(reps)};
}

QuotientResult base_change_fiber(const AlgebraMorphism& phi) {
    const AlgebraPtr& a = phi.source();
    const AlgebraPtr& b = phi.target();
    std::vector<Element> gens;
    for (std::size_t i = 1; i < a->dim(); ++i) gens.push_back(phi.apply(a->basis_element(i)));
    IdealSpan extended = gens.empty()
                             ? IdealSpan(b, Subspace::zero(b->field(), b->dim()))
                             : ideal_generated(gens);
    return quotient(b, extended, auto_validate(b->dim() - extended.dim()));
}

std::vector<Element> minimal_generators(const AlgebraPtr& a) {
    const Subspace& m = a->max_ideal();
    if (m.dim() == 0) return {};
    const Subspace& m2 = a->max_ideal_powers()[1];
    IncrementalSpan seen(a->field(), a->dim());
    seen.insert_all(m2);
    std::vector<Element> gens;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Vec v = m.basis_vector(i);
        if (seen.insert(v)) gens.push_back(a->element(std::move(v)));
    }
    return gens;
}

} // namespace artin
