#include "artin/invariants.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "artin/poly.hpp"
#include "artin/presentation.hpp"

namespace artin {
namespace {

constexpr std::size_t kDead = static_cast<std::size_t>(-1);

// C(t+r, r), aborting as soon as the running value exceeds the cap.
std::size_t checked_truncation_dim(std::size_t r, std::size_t t, std::size_t cap) {
    unsigned long long num = 1;
    for (std::size_t k = 1; k <= r; ++k) {
        unsigned long long factor = static_cast<unsigned long long>(t) + k;
        if (num > std::numeric_limits<unsigned long long>::max() / factor ||
            num * factor / k > cap) {
            throw DimensionCapExceeded(
                "complete-intersection test: truncation dimension exceeds cap " +
                std::to_string(cap));
        }
        num = num * factor / k;
    }
    return static_cast<std::size_t>(num);
}

void collect_monomials(std::size_t r, std::uint32_t budget, std::vector<std::uint32_t>& exps,
                       std::size_t pos, std::vector<Monomial>& out) {
    if (pos == r) {
        out.push_back(Monomial{exps});
        return;
    }
    for (std::uint32_t e = 0; e <= budget; ++e) {
        exps[pos] = e;
        collect_monomials(r, budget - e, exps, pos + 1, out);
    }
    exps[pos] = 0;
}

// The order-t truncation R' = k[y_1..y_r]/(degree > t) together with the
// surjection pi: R' -> B sending y_v to u[v]. Relations are computed inside
// R'; this is exact for minimal relation counts because m^t = 0 in B forces
// every relation of degree > t into m_{R'} * ker(pi).
struct Truncation {
    std::size_t r;
    std::size_t t;
    std::vector<Monomial> monos;  // ascending grevlex, degree <= t
    std::map<Monomial, std::size_t, GrevlexLess> index;
    Mat pi;                 // dim_B x dim_P; column j is the image of monos[j]
    Subspace relations;     // ker(pi)
    Subspace m_relations;   // m_{R'} * ker(pi)
};

Truncation build_truncation(const AlgebraPtr& b, const std::vector<Element>& u,
                            std::size_t dim_cap) {
    const FieldConfig f = b->field();
    const std::size_t r = u.size();
    const std::size_t t = b->nilpotency_index();
    checked_truncation_dim(r, t, dim_cap);

    std::vector<Monomial> monos;
    std::vector<std::uint32_t> exps(r, 0);
    collect_monomials(r, static_cast<std::uint32_t>(t), exps, 0, monos);
    std::sort(monos.begin(), monos.end(), GrevlexLess{});

    std::map<Monomial, std::size_t, GrevlexLess> index;
    for (std::size_t j = 0; j < monos.size(); ++j) index.emplace(monos[j], j);

    // Every monomial after the leading 1 is a strictly smaller divisor times
    // one variable, so images fill in left to right.
    std::vector<Vec> images(monos.size());
    images[0] = b->one().coords();
    for (std::size_t j = 1; j < monos.size(); ++j) {
        std::size_t v = 0;
        while (monos[j].exps[v] == 0) ++v;
        std::size_t parent = index.at(monos[j].divided_by(Monomial::var(r, v)));
        images[j] = (u[v] * b->element(images[parent])).coords();
    }
    Mat pi = Mat::from_rows(f, images, b->dim()).transposed();
    Subspace relations = kernel(pi);
    if (relations.dim() != monos.size() - b->dim())
        throw std::logic_error("truncation: generators do not span the algebra");

    std::vector<std::vector<std::size_t>> shift(r, std::vector<std::size_t>(monos.size(), kDead));
    for (std::size_t j = 0; j < monos.size(); ++j) {
        if (monos[j].degree() == t) continue;  // y_v * monos[j] leaves the truncation
        for (std::size_t v = 0; v < r; ++v)
            shift[v][j] = index.at(monos[j].times(Monomial::var(r, v)));
    }
    IncrementalSpan m_span(f, monos.size());
    for (std::size_t i = 0; i < relations.dim(); ++i) {
        Vec g = relations.basis_vector(i);
        for (std::size_t v = 0; v < r; ++v) {
            Vec shifted(monos.size(), 0);
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (g[j] == 0 || shift[v][j] == kDead) continue;
                shifted[shift[v][j]] = f.add(shifted[shift[v][j]], g[j]);
            }
            m_span.insert(std::move(shifted));
        }
    }
    return Truncation{r, t, std::move(monos), std::move(index), std::move(pi),
                      std::move(relations), m_span.to_subspace()};
}

Subspace square_of_max_ideal(const AlgebraPtr& a) {
    const auto& powers = a->max_ideal_powers();
    return powers.size() > 1 ? powers[1] : Subspace::zero(a->field(), a->dim());
}

} // namespace

std::size_t edim(const AlgebraPtr& a) {
    return a->max_ideal().dim() - square_of_max_ideal(a).dim();
}

Subspace socle(const AlgebraPtr& a) {
    std::vector<Element> gens = minimal_generators(a);
    if (gens.empty()) return Subspace::full(a->field(), a->dim());
    Mat stacked = gens[0].mult_matrix();
    for (std::size_t i = 1; i < gens.size(); ++i)
        stacked = stacked.vstack(gens[i].mult_matrix());
    return kernel(stacked);
}

bool is_gorenstein(const AlgebraPtr& a) {
    return socle(a).dim() == 1;
}

CompleteIntersection is_complete_intersection(const AlgebraPtr& b, std::size_t dim_cap) {
    if (edim(b) == 0) return {true, 0};
    Truncation tr = build_truncation(b, minimal_generators(b), dim_cap);
    std::size_t mu = tr.relations.dim() - tr.m_relations.dim();
    return {mu == tr.r, mu};
}

std::optional<WiebeMatrix> wiebe_matrix(const AlgebraPtr& b, const std::vector<Element>& u,
                                        std::size_t max_n, std::size_t dim_cap) {
    const FieldConfig f = b->field();
    const std::size_t r = edim(b);
    if (u.size() != r)
        throw std::invalid_argument("wiebe_matrix: expected edim(B) generators");
    std::vector<Vec> gen_coords;
    for (const Element& g : u) {
        if (g.parent() != b)
            throw std::invalid_argument("wiebe_matrix: generator from a different algebra");
        if (!b->max_ideal().contains(g.coords()))
            throw std::invalid_argument("wiebe_matrix: generator outside the maximal ideal");
        gen_coords.push_back(g.coords());
    }
    if (r == 0) return WiebeMatrix{b, {}, {}, b->one()};
    Subspace uspan = Subspace::span(f, b->dim(), gen_coords);
    if (uspan.sum(square_of_max_ideal(b)).dim() != b->max_ideal().dim())
        throw std::invalid_argument("wiebe_matrix: generators do not span m modulo m^2");

    Truncation tr = build_truncation(b, u, dim_cap);
    std::size_t mu = tr.relations.dim() - tr.m_relations.dim();
    if (mu != r) return std::nullopt;

    // Minimal relations: echelon basis vectors of ker(pi) that are new modulo
    // m * ker(pi), in echelon order.
    IncrementalSpan seen(f, tr.monos.size());
    seen.insert_all(tr.m_relations);
    std::vector<Vec> fs;
    for (std::size_t i = 0; i < tr.relations.dim() && fs.size() < r; ++i) {
        Vec g = tr.relations.basis_vector(i);
        if (seen.insert(g)) fs.push_back(std::move(g));
    }
    if (fs.size() != r)
        throw std::logic_error("wiebe_matrix: echelon basis missed a minimal relation");

    // Split each relation as sum_v w_v * y_v by peeling the least variable of
    // every monomial, then push the cofactors through pi. Relations have no
    // constant term, so the split is total.
    std::vector<std::vector<Element>> entries;
    for (const Vec& rel : fs) {
        std::vector<Vec> w(r, Vec(tr.monos.size(), 0));
        for (std::size_t j = 0; j < rel.size(); ++j) {
            if (rel[j] == 0) continue;
            const Monomial& mono = tr.monos[j];
            if (mono.is_one())
                throw std::logic_error("wiebe_matrix: relation has a constant term");
            std::size_t v = 0;
            while (mono.exps[v] == 0) ++v;
            std::size_t parent = tr.index.at(mono.divided_by(Monomial::var(r, v)));
            w[v][parent] = f.add(w[v][parent], rel[j]);
        }
        std::vector<Element> row;
        for (std::size_t v = 0; v < r; ++v) row.push_back(b->element(tr.pi.apply(w[v])));
        entries.push_back(std::move(row));
    }

    for (std::size_t j = 0; j < r; ++j) {
        Element acc = b->zero();
        for (std::size_t i = 0; i < r; ++i) acc = acc + entries[j][i] * u[i];
        if (!acc.is_zero()) throw std::logic_error("wiebe_matrix: W u != 0");
    }
    MinorTable table(b, entries, max_n);
    Element det = table.determinant();
    if (det.is_zero()) throw std::logic_error("wiebe_matrix: zero determinant");
    Subspace soc = socle(b);
    if (soc.dim() != 1)
        throw std::logic_error("wiebe_matrix: complete intersection with socle dimension != 1");
    if (!soc.contains(det.coords()))
        throw std::logic_error("wiebe_matrix: determinant outside the socle");
    return WiebeMatrix{b, u, std::move(entries), std::move(det)};
}

InvariantReport invariant_report(const AlgebraPtr& a, std::size_t dim_cap) {
    CompleteIntersection ci = is_complete_intersection(a, dim_cap);
    InvariantReport rep{edim(a), socle(a).dim(), a->nilpotency_index(),
                        false, ci.is_ci, ci.mu};
    rep.is_gorenstein = rep.socle_dim == 1;
    if (rep.is_ci && !rep.is_gorenstein)
        throw std::logic_error("invariant_report: complete intersection with socle dimension != 1");
    return rep;
}

} // namespace artin
