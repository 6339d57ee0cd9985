#include "artin/presentation.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <utility>

namespace artin {

Poly normal_form(Poly f, const std::vector<Poly>& gb) {
    Poly r(f.field(), f.nvars());
    while (!f.is_zero()) {
        auto [m, c] = f.leading();
        bool reduced = false;
        for (const Poly& g : gb) {
            if (g.is_zero()) continue;
            auto [gm, gc] = g.leading();
            if (!gm.divides(m)) continue;
            Scalar factor = f.field().mul(c, f.field().inv(gc));
            f = f - g.times_term(m.divided_by(gm), factor);
            reduced = true;
            break;
        }
        if (!reduced) {
            r.add_term(m, c);
            f.add_term(m, f.field().neg(c));
        }
    }
    return r;
}

namespace {

Poly spoly(const Poly& a, const Poly& b) {
    const FieldConfig& f = a.field();
    auto [ma, ca] = a.leading();
    auto [mb, cb] = b.leading();
    Monomial l = Monomial::lcm(ma, mb);
    return a.times_term(l.divided_by(ma), f.inv(ca)) -
           b.times_term(l.divided_by(mb), f.inv(cb));
}

Poly nf_pow(const Poly& base, std::uint64_t e, const std::vector<Poly>& gb) {
    Poly acc = Poly::constant(base.field(), base.nvars(), 1);
    Poly b = normal_form(base, gb);
    while (e > 0) {
        if (e & 1) acc = normal_form(acc * b, gb);
        b = normal_form(b * b, gb);
        e >>= 1;
    }
    return acc;
}

} // namespace

std::vector<Poly> groebner_basis(FieldConfig field, std::size_t nvars,
                                 const std::vector<Poly>& gens,
                                 std::size_t degree_bound) {
    std::vector<Poly> g;
    for (const Poly& f : gens) {
        if (f.is_zero()) continue;
        if (f.nvars() != nvars || f.field() != field)
            throw std::invalid_argument("generator does not match the ambient polynomial ring");
        if (f.degree() > degree_bound)
            throw DegreeBoundExceeded("input relation of degree " + std::to_string(f.degree()) +
                                      " exceeds the degree bound " + std::to_string(degree_bound));
        g.push_back(f);
    }

    std::deque<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        Monomial mi = g[i].leading().first;
        Monomial mj = g[j].leading().first;
        if (Monomial::lcm(mi, mj) == mi.times(mj)) continue; // coprime leading terms
        Poly r = normal_form(spoly(g[i], g[j]), g);
        if (r.is_zero()) continue;
        if (r.degree() > degree_bound)
            throw DegreeBoundExceeded("Groebner basis element of degree " +
                                      std::to_string(r.degree()) + " exceeds the degree bound " +
                                      std::to_string(degree_bound));
        for (std::size_t k = 0; k < g.size(); ++k) pairs.emplace_back(k, g.size());
        g.push_back(std::move(r));
    }

    // Minimal basis: drop elements whose leading term another one divides.
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        Monomial mi = g[i].leading().first;
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (j == i) continue;
            Monomial mj = g[j].leading().first;
            if (mj.divides(mi) && (mj != mi || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[i]);
    }

    // Reduce each element against the others; leading terms stay put, so one
    // pass yields the unique reduced basis.
    std::vector<Poly> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = normal_form(minimal[i], others);
        reduced.push_back(r.scaled(field.inv(r.leading().second)));
    }

    std::sort(reduced.begin(), reduced.end(), [](const Poly& a, const Poly& b) {
        return grevlex_less(a.leading().first, b.leading().first);
    });
    return reduced;
}

Poly CompiledRing::normal_form(const Poly& f) const {
    return artin::normal_form(f, groebner_);
}

Element CompiledRing::to_element(const Poly& f) const {
    if (f.nvars() != vars_.size() || f.field() != algebra_->field())
        throw std::invalid_argument("polynomial does not match this ring's presentation");
    Poly nf = normal_form(f);
    Vec coords(algebra_->dim(), 0);
    std::size_t next = 0;
    for (const auto& [m, c] : nf.terms()) {
        while (next < basis_.size() && basis_[next] != m) ++next;
        if (next == basis_.size())
            throw std::logic_error("normal form left the standard monomial basis");
        coords[next] = c;
    }
    return algebra_->element(std::move(coords));
}

Element CompiledRing::var_element(std::size_t i) const {
    return to_element(Poly::variable(algebra_->field(), vars_.size(), i));
}

Element CompiledRing::parse(const std::string& text) const {
    return to_element(parse_poly(algebra_->field(), vars_, text));
}

Poly CompiledRing::lift(const Element& e) const {
    if (e.parent() != algebra_)
        throw std::invalid_argument("element does not belong to this ring");
    Poly f(algebra_->field(), vars_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) f.add_term(basis_[i], e.coords()[i]);
    return f;
}

std::string CompiledRing::to_string(const Element& e) const {
    return poly_to_string(lift(e), vars_);
}

CompiledRing compile_ring(const Presentation& pres, const CompileLimits& limits) {
    const FieldConfig& field = pres.field;
    const std::size_t n = pres.vars.size();
    {
        std::set<std::string> names(pres.vars.begin(), pres.vars.end());
        if (names.size() != n) throw std::invalid_argument("duplicate variable names");
        for (const std::string& v : pres.vars)
            if (v.empty()) throw std::invalid_argument("empty variable name");
    }
    const std::size_t bound = limits.degree_bound ? limits.degree_bound : 2 * limits.dim_cap;

    std::vector<Poly> gb = groebner_basis(field, n, pres.relations, bound);
    for (const Poly& g : gb)
        if (g.leading().first.is_one())
            throw NotLocal("the relations generate the unit ideal");

    // Zero-dimensionality: each variable needs a pure power among the leading
    // terms; its exponent bounds the staircase box.
    std::vector<std::uint32_t> box(n, 0);
    for (const Poly& g : gb) {
        const Monomial& lt = g.leading().first;
        std::size_t support = 0, var = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (lt.exps[v] > 0) {
                ++support;
                var = v;
            }
        if (support == 1 && (box[var] == 0 || lt.exps[var] < box[var])) box[var] = lt.exps[var];
    }
    for (std::size_t v = 0; v < n; ++v)
        if (box[v] == 0)
            throw NotZeroDimensional("no power of variable '" + pres.vars[v] +
                                     "' appears among the leading terms; the quotient is not finite-dimensional");

    std::vector<Monomial> lts;
    for (const Poly& g : gb) lts.push_back(g.leading().first);
    auto divisible = [&](const Monomial& m) {
        for (const Monomial& lt : lts)
            if (lt.divides(m)) return true;
        return false;
    };

    std::vector<Monomial> basis;
    Monomial cur = Monomial::one(n);
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (v == n) {
            basis.push_back(cur);
            if (basis.size() > limits.dim_cap)
                throw DimensionCapExceeded("quotient dimension exceeds the cap " +
                                           std::to_string(limits.dim_cap));
            return;
        }
        for (std::uint32_t e = 0;; ++e) {
            cur.exps[v] = e;
            if (divisible(cur)) break; // stays divisible for larger exponents
            dfs(v + 1);
        }
        cur.exps[v] = 0;
    };
    dfs(0);
    std::sort(basis.begin(), basis.end(), grevlex_less);
    const std::size_t d = basis.size();

    for (std::size_t v = 0; v < n; ++v) {
        // Nilpotent elements of a d-dimensional ring have index at most d.
        Poly p = nf_pow(Poly::variable(field, n, v), d, gb);
        if (!p.is_zero())
            throw NotLocal("variable '" + pres.vars[v] +
                           "' is not nilpotent modulo the relations; the quotient is not local "
                           "with maximal ideal generated by the variables");
    }

    std::map<Monomial, std::size_t, GrevlexLess> index;
    for (std::size_t i = 0; i < d; ++i) index[basis[i]] = i;

    std::vector<Scalar> sc(d * d * d, 0);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            Poly nf = normal_form(Poly::term(field, n, basis[a].times(basis[b]), 1), gb);
            for (const auto& [m, c] : nf.terms()) {
                std::size_t k = index.at(m);
                sc[(a * d + b) * d + k] = c;
                sc[(b * d + a) * d + k] = c;
            }
        }

    CompiledRing ring;
    ring.algebra_ = FiniteLocalAlgebra::make(field, d, sc, auto_validate(d));
    ring.vars_ = pres.vars;
    ring.basis_ = std::move(basis);
    ring.groebner_ = std::move(gb);
    return ring;
}

CompiledRing truncated_poly_algebra(FieldConfig field, std::size_t r, std::size_t t,
                                    const CompileLimits& limits) {
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= r; ++i) vars.push_back("x" + std::to_string(i));

    // Relations: every monomial of total degree exactly t+1.
    std::vector<Poly> rels;
    Monomial cur = Monomial::one(r);
    std::function<void(std::size_t, std::uint64_t)> emit = [&](std::size_t v, std::uint64_t left) {
        if (v + 1 == r) {
            cur.exps[v] = std::uint32_t(left);
            rels.push_back(Poly::term(field, r, cur, 1));
            cur.exps[v] = 0;
            return;
        }
        for (std::uint64_t e = 0; e <= left; ++e) {
            cur.exps[v] = std::uint32_t(e);
            emit(v + 1, left - e);
        }
        cur.exps[v] = 0;
    };
    if (r > 0) emit(0, t + 1);

    CompileLimits lim = limits;
    if (lim.degree_bound == 0 && t + 1 > 2 * lim.dim_cap) lim.degree_bound = t + 1;
    return compile_ring({field, vars, rels}, lim);
}

Element evaluate_poly(const Poly& f, const AlgebraPtr& target, const std::vector<Element>& images) {
    if (f.nvars() != images.size())
        throw std::invalid_argument("evaluate_poly: wrong number of images");
    if (f.field() != target->field())
        throw std::invalid_argument("evaluate_poly: field mismatch");
    Element acc = target->zero();
    for (const auto& [mono, coeff] : f.terms()) {
        Element term = target->one();
        for (std::size_t v = 0; v < images.size(); ++v)
            for (std::uint32_t e = 0; e < mono.exps[v]; ++e) term = term * images[v];
        acc = acc + term.scaled(coeff);
    }
    return acc;
}

AlgebraMorphism morphism_from_images(const CompiledRing& source, const AlgebraPtr& target,
                                     const std::vector<Element>& images) {
    const auto& a = source.algebra();
    if (images.size() != source.variables().size())
        throw std::invalid_argument("morphism_from_images: expected one image per variable");
    for (const auto& img : images)
        if (img.parent().get() != target.get())
            throw std::invalid_argument("morphism_from_images: image from wrong algebra");
    for (const auto& rel : source.groebner()) {
        if (!evaluate_poly(rel, target, images).is_zero())
            throw std::invalid_argument(
                "morphism_from_images: images do not satisfy the source relations");
    }

    // Evaluate basis monomials in ascending order; every proper divisor of a
    // basis monomial is an earlier basis monomial, so each image is one
    // multiplication away from a previously computed one.
    const auto& basis = source.basis_monomials();
    std::vector<Element> monomial_images;
    monomial_images.reserve(basis.size());
    Mat mat(target->field(), target->dim(), a->dim());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const Monomial& m = basis[j];
        Element img = target->one();
        if (!m.is_one()) {
            std::size_t v = 0;
            while (m.exps[v] == 0) ++v;
            Monomial rest = m;
            rest.exps[v] -= 1;
            std::size_t prev = 0;
            while (prev < j && basis[prev] != rest) ++prev;
            if (prev == j) throw std::logic_error("morphism_from_images: basis not divisor-closed");
            img = monomial_images[prev] * images[v];
        }
        monomial_images.push_back(img);
        for (std::size_t i = 0; i < target->dim(); ++i) mat.at(i, j) = img.coords()[i];
    }

    // Multiplicativity holds by construction (polynomial evaluation is a ring
    // morphism and the relations vanish), so structural checks suffice.
    return AlgebraMorphism::from_matrix(a, target, mat,
                                        auto_validate(std::max(a->dim(), target->dim())));
}

} // namespace artin
