#include "artin/verifier.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

namespace artin {

std::uint64_t SeededRng::next(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("SeededRng: zero bound");
    return eng_() % bound;
}

Scalar SeededRng::scalar(const FieldConfig& f) { return Scalar(next(f.p())); }

Scalar SeededRng::nonzero_scalar(const FieldConfig& f) {
    return Scalar(1 + next(f.p() - 1));
}

Vec SeededRng::vec(const FieldConfig& f, std::size_t len) {
    Vec v(len);
    for (auto& c : v) c = scalar(f);
    return v;
}

GenKind gen_kind_from_string(const std::string& s) {
    if (s == "monomial_ci") return GenKind::monomial_ci;
    if (s == "monomial_general") return GenKind::monomial_general;
    if (s == "group_algebra") return GenKind::group_algebra;
    if (s == "binomial") return GenKind::binomial;
    throw std::invalid_argument("unknown generator kind: " + s);
}

std::string to_string(GenKind kind) {
    switch (kind) {
        case GenKind::monomial_ci: return "monomial_ci";
        case GenKind::monomial_general: return "monomial_general";
        case GenKind::group_algebra: return "group_algebra";
        case GenKind::binomial: return "binomial";
    }
    throw std::logic_error("unhandled generator kind");
}

namespace {

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

std::vector<std::string> name_list(bool source, std::size_t r) {
    static const char* const kSource[] = {"s", "t", "u", "v"};
    static const char* const kTarget[] = {"x", "y", "z", "w"};
    if (r > 4) throw std::invalid_argument("generators support at most 4 variables");
    const char* const* pool = source ? kSource : kTarget;
    return std::vector<std::string>(pool, pool + r);
}

Poly power_relation(const FieldConfig& f, std::size_t nvars, std::size_t i,
                    std::uint32_t e) {
    return Poly::term(f, nvars, Monomial::var(nvars, i, e), 1);
}

// (1 + x_i)^alpha - 1; over F_p with alpha a p-power this collapses to
// x_i^alpha, which is exactly the group-algebra presentation of Z/alpha.
Poly unipotent_relation(const FieldConfig& f, std::size_t nvars, std::size_t i,
                        std::size_t alpha) {
    std::vector<std::uint64_t> binom(alpha + 1, 0);
    binom[0] = 1;
    for (std::size_t n = 1; n <= alpha; ++n)
        for (std::size_t k = n; k >= 1; --k) binom[k] += binom[k - 1];
    Poly rel(f, nvars);
    for (std::size_t k = 1; k <= alpha; ++k) {
        Scalar c = Scalar(binom[k] % f.p());
        if (c != 0) rel.add_term(Monomial::var(nvars, i, std::uint32_t(k)), c);
    }
    return rel;
}

// Exponent-bounded monomial of total degree >= 2, or nullopt when eight
// draws fail (possible when every bound is 2).
std::optional<Monomial> random_bounded_monomial(SeededRng& rng,
                                                const std::vector<std::size_t>& bounds) {
    for (int tries = 0; tries < 8; ++tries) {
        std::vector<std::uint32_t> e(bounds.size());
        std::uint32_t deg = 0;
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            e[i] = std::uint32_t(rng.next(bounds[i]));
            deg += e[i];
        }
        if (deg >= 2) return Monomial{e};
    }
    return std::nullopt;
}

std::vector<std::size_t> draw_power_exponents(SeededRng& rng, const GenCaps& caps) {
    std::size_t max_vars = std::min<std::size_t>(caps.max_vars, 4);
    std::size_t r = 1 + rng.next(max_vars);
    std::vector<std::size_t> exps;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t e = 2 + rng.next(3);
        if (exps.empty()) {
            exps.push_back(e);
            dim = e;
            continue;
        }
        if (dim * e > caps.max_dim) break;
        dim *= e;
        exps.push_back(e);
    }
    return exps;
}

std::vector<std::size_t> draw_group_orders(const FieldConfig& f, SeededRng& rng,
                                           const GenCaps& caps) {
    std::size_t p = f.p();
    std::size_t emax = p == 2 ? 3 : p == 3 ? 2 : 1;
    std::size_t max_vars = std::min<std::size_t>(caps.max_vars, 4);
    std::size_t r = 1 + rng.next(max_vars);
    std::vector<std::size_t> alphas;
    std::size_t dim = 1;
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t alpha = ipow(p, 1 + rng.next(emax));
        if (alphas.empty()) {
            alphas.push_back(alpha);
            dim = alpha;
            continue;
        }
        if (dim * alpha > caps.max_dim) break;
        dim *= alpha;
        alphas.push_back(alpha);
    }
    return alphas;
}

Element random_m_element(const AlgebraPtr& a, SeededRng& rng) {
    Vec v = rng.vec(a->field(), a->dim());
    v[0] = 0;
    return a->element(v);
}

ModulePtr unit_pivot_cokernel(const AlgebraPtr& b, SeededRng& rng) {
    // One relation column with a unit entry: the quotient is free of rank 1.
    Element head = b->one() + random_m_element(b, rng);
    Element tail = b->element(rng.vec(b->field(), b->dim()));
    return FiniteModule::cokernel(b, 2, {{head, tail}});
}

std::string first_failed_hypothesis(const Theorem1Hypotheses& h) {
    if (!h.morphism_local) return "morphism_local";
    if (!h.edim_le) return "edim_le";
    if (!h.module_nonzero) return "module_nonzero";
    return "module_a_flat";
}

std::string failed_conclusions(const Theorem1Conclusions& c) {
    std::string out;
    auto add = [&](bool ok, const char* name) {
        if (ok) return;
        if (!out.empty()) out += ",";
        out += name;
    };
    add(c.phi_flat, "phi_flat");
    add(c.edim_equal, "edim_equal");
    add(c.fiber_ci, "fiber_ci");
    add(c.module_b_flat, "module_b_flat");
    add(c.delta_spans_fiber_socle, "delta_spans_fiber_socle");
    return out;
}

// Delta is the determinant of a matrix writing the images of A's minimal
// generators over B's; the shorter list is padded with zeros so the matrix
// stays square even on degenerate inputs.
bool delta_spans_fiber_socle(const AlgebraMorphism& phi, const QuotientResult& fiber,
                             std::size_t max_n) {
    const AlgebraPtr& b = phi.target();
    std::vector<Element> u = minimal_generators(b);
    std::vector<Element> xs;
    for (const Element& g : minimal_generators(phi.source())) xs.push_back(phi.apply(g));
    std::size_t n = std::max(u.size(), xs.size());
    while (u.size() < n) u.push_back(b->zero());
    while (xs.size() < n) xs.push_back(b->zero());

    ModulePtr free_b = FiniteModule::free_module(b, 1);
    std::vector<std::vector<Element>> entries;
    for (const Element& xk : xs) {
        auto sol = resolve(free_b, u, xk.coords());
        if (!sol) return false;
        std::vector<Element> row;
        for (const Vec& c : *sol) row.push_back(b->element(c));
        entries.push_back(std::move(row));
    }
    MinorTable table(b, std::move(entries), max_n);
    Element det = table.determinant();
    Element image = fiber.algebra->element(fiber.projection.apply(det.coords()));
    if (image.is_zero()) return false;
    Subspace soc = socle(fiber.algebra);
    return soc.dim() == 1 && soc.contains(image.coords());
}

} // namespace

CompiledRing generate_algebra(GenKind kind, FieldConfig field, SeededRng& rng,
                              const GenCaps& caps) {
    if (kind == GenKind::group_algebra) {
        std::vector<std::size_t> alphas = draw_group_orders(field, rng, caps);
        Presentation pres{field, name_list(false, alphas.size()), {}};
        for (std::size_t i = 0; i < alphas.size(); ++i)
            pres.relations.push_back(unipotent_relation(field, alphas.size(), i, alphas[i]));
        return compile_ring(pres);
    }
    std::vector<std::size_t> exps = draw_power_exponents(rng, caps);
    std::size_t r = exps.size();
    Presentation pres{field, name_list(false, r), {}};
    for (std::size_t i = 0; i < r; ++i)
        pres.relations.push_back(power_relation(field, r, i, std::uint32_t(exps[i])));
    if (kind == GenKind::monomial_general) {
        std::size_t extras = rng.next(3);
        for (std::size_t k = 0; k < extras; ++k) {
            if (auto mono = random_bounded_monomial(rng, exps)) {
                Poly rel(field, r);
                rel.add_term(*mono, 1);
                pres.relations.push_back(rel);
            }
        }
    } else if (kind == GenKind::binomial) {
        std::size_t extras = 1 + rng.next(2);
        for (std::size_t k = 0; k < extras; ++k) {
            auto m1 = random_bounded_monomial(rng, exps);
            auto m2 = random_bounded_monomial(rng, exps);
            if (!m1 || !m2 || *m1 == *m2) continue;
            Poly rel(field, r);
            rel.add_term(*m1, 1);
            rel.add_term(*m2, field.neg(rng.nonzero_scalar(field)));
            pres.relations.push_back(rel);
        }
    }
    return compile_ring(pres);
}

MorphismInstance generate_flat_pair(GenKind kind, FieldConfig field, SeededRng& rng,
                                    const GenCaps& caps) {
    // Matched powers: n_i = a_i * b_i with s_i -> x_i^{b_i}, so the target is
    // free over the source with the monomials x^e, e_i < b_i, as a basis.
    std::vector<std::size_t> source_exp, target_exp;
    {
        std::size_t max_vars = std::min<std::size_t>(caps.max_vars, 4);
        std::size_t r = 1 + rng.next(max_vars);
        std::size_t dim = 1;
        for (std::size_t i = 0; i < r; ++i) {
            std::size_t ai, bi;
            if (kind == GenKind::group_algebra) {
                std::size_t emax = field.p() == 2 ? 3 : field.p() == 3 ? 2 : 1;
                std::size_t e = 1 + rng.next(emax);
                std::size_t c = 1 + rng.next(e);
                ai = ipow(field.p(), c);
                bi = ipow(field.p(), e - c);
            } else {
                ai = 2 + rng.next(2);
                bi = 1 + rng.next(2);
            }
            if (!source_exp.empty() && dim * ai * bi > caps.max_dim) break;
            dim *= ai * bi;
            source_exp.push_back(ai);
            target_exp.push_back(ai * bi);
        }
    }
    std::size_t r = source_exp.size();

    Presentation src{field, name_list(true, r), {}};
    for (std::size_t i = 0; i < r; ++i)
        src.relations.push_back(power_relation(field, r, i, std::uint32_t(source_exp[i])));
    CompiledRing a = compile_ring(src);

    std::vector<Poly> base;
    for (std::size_t i = 0; i < r; ++i) {
        base.push_back(kind == GenKind::group_algebra
                           ? unipotent_relation(field, r, i, target_exp[i])
                           : power_relation(field, r, i, std::uint32_t(target_exp[i])));
    }

    // Extra relations usually break freeness; candidate draws are kept only
    // when the flat check passes, and the plain power target is the fallback.
    std::size_t extra_attempts =
        (kind == GenKind::monomial_general || kind == GenKind::binomial) ? 3 : 0;
    for (std::size_t attempt = 0; attempt <= extra_attempts; ++attempt) {
        Presentation tgt{field, name_list(false, r), base};
        if (attempt < extra_attempts) {
            std::size_t extras = 1 + rng.next(2);
            for (std::size_t k = 0; k < extras; ++k) {
                auto m1 = random_bounded_monomial(rng, target_exp);
                if (!m1) continue;
                Poly rel(field, r);
                rel.add_term(*m1, 1);
                if (kind == GenKind::binomial) {
                    auto m2 = random_bounded_monomial(rng, target_exp);
                    if (!m2 || *m2 == *m1) continue;
                    rel.add_term(*m2, field.neg(rng.nonzero_scalar(field)));
                }
                tgt.relations.push_back(rel);
            }
        }
        CompiledRing b = compile_ring(tgt);
        std::vector<Element> images;
        for (std::size_t i = 0; i < r; ++i) {
            Element img = b.var_element(i).pow(target_exp[i] / source_exp[i]);
            if (rng.next(2) == 1)
                img = img * (b.algebra()->one() + random_m_element(b.algebra(), rng));
            images.push_back(img);
        }
        AlgebraMorphism phi = morphism_from_images(a, b.algebra(), images);
        ModulePtr b_over_a = restrict_scalars(phi, FiniteModule::free_module(b.algebra(), 1));
        if (is_flat(b_over_a).flat)
            return {std::move(a), std::move(b), std::move(phi)};
    }
    throw std::logic_error("generate_flat_pair: power pair failed the flat check");
}

std::vector<ModulePtr> generate_modules(const AlgebraPtr& b, SeededRng& rng,
                                        std::size_t budget) {
    std::vector<ModulePtr> out;
    out.reserve(budget);
    const FieldConfig& f = b->field();
    for (std::size_t i = 0; i < budget; ++i) {
        switch (rng.next(6)) {
            case 0:
                out.push_back(FiniteModule::free_module(b, 1 + rng.next(3)));
                break;
            case 1:
                out.push_back(FiniteModule::residue_field(b));
                break;
            case 2: {
                std::size_t rank = 1 + rng.next(2);
                std::size_t cols = 1 + rng.next(3);
                std::vector<std::vector<Element>> relation_columns;
                for (std::size_t j = 0; j < cols; ++j) {
                    std::vector<Element> col;
                    for (std::size_t k = 0; k < rank; ++k)
                        col.push_back(b->element(rng.vec(f, b->dim())));
                    relation_columns.push_back(std::move(col));
                }
                out.push_back(FiniteModule::cokernel(b, rank, relation_columns));
                break;
            }
            case 3: {
                ModulePtr free2 = FiniteModule::free_module(b, 2);
                Subspace sub = submodule_spanned(free2, {rng.vec(f, free2->dim())});
                out.push_back(quotient_module(free2, sub, auto_validate(free2->dim())).module);
                break;
            }
            case 4:
                out.push_back(FiniteModule::direct_sum(FiniteModule::free_module(b, 1),
                                                       FiniteModule::residue_field(b)));
                break;
            default:
                out.push_back(unit_pivot_cokernel(b, rng));
                break;
        }
    }
    return out;
}

ModulePtr generate_flat_module(const AlgebraPtr& b, SeededRng& rng) {
    switch (rng.next(3)) {
        case 0: return FiniteModule::free_module(b, 1 + rng.next(3));
        case 1: return unit_pivot_cokernel(b, rng);
        default:
            return FiniteModule::direct_sum(FiniteModule::free_module(b, 1 + rng.next(2)),
                                            FiniteModule::free_module(b, 1 + rng.next(2)));
    }
}

Theorem1Report check_theorem1(const AlgebraMorphism& phi, const ModulePtr& m,
                              std::size_t max_n) {
    if (m->algebra() != phi.target())
        throw std::invalid_argument("check_theorem1: module is not over the morphism target");
    const AlgebraPtr& a = phi.source();
    const AlgebraPtr& b = phi.target();
    Theorem1Report rep;

    rep.hypotheses.morphism_local = true;
    const Subspace& ma = a->max_ideal();
    for (std::size_t i = 0; i < ma.dim(); ++i) {
        if (!b->max_ideal().contains(phi.matrix().apply(ma.basis_vector(i)))) {
            rep.hypotheses.morphism_local = false;
            break;
        }
    }
    std::size_t edim_a = edim(a);
    std::size_t edim_b = edim(b);
    rep.hypotheses.edim_le = edim_b <= edim_a;
    rep.hypotheses.module_nonzero = m->dim() > 0;
    rep.hypotheses.module_a_flat = is_flat(restrict_scalars(phi, m)).flat;

    FlatnessVerdict b_over_a = is_flat(restrict_scalars(phi, FiniteModule::free_module(b, 1)));
    rep.conclusions.phi_flat = b_over_a.flat;
    rep.conclusions.phi_rank = b_over_a.min_generators;
    rep.conclusions.edim_equal = edim_a == edim_b;
    QuotientResult fiber = base_change_fiber(phi);
    CompleteIntersection fiber_ci = is_complete_intersection(fiber.algebra);
    rep.conclusions.fiber_ci = fiber_ci.is_ci;
    rep.conclusions.fiber_mu = fiber_ci.mu;
    FlatnessVerdict over_b = is_flat(m);
    rep.conclusions.module_b_flat = over_b.flat;
    rep.conclusions.module_rank = over_b.min_generators;
    rep.conclusions.delta_spans_fiber_socle = delta_spans_fiber_socle(phi, fiber, max_n);

    if (!rep.hypotheses.all()) {
        rep.verdict = Theorem1Verdict::hypothesis_not_met;
        rep.detail = first_failed_hypothesis(rep.hypotheses);
    } else if (rep.conclusions.all()) {
        rep.verdict = Theorem1Verdict::pass;
    } else {
        rep.verdict = Theorem1Verdict::theorem_violation;
        rep.detail = failed_conclusions(rep.conclusions);
    }
    return rep;
}

DesmitReport check_desmit(const AlgebraMorphism& phi, std::size_t budget, SeededRng& rng) {
    DesmitReport rep;
    for (const ModulePtr& m : generate_modules(phi.target(), rng, budget)) {
        ++rep.tested;
        if (m->dim() == 0) continue;
        if (!is_flat(restrict_scalars(phi, m)).flat) continue;
        ++rep.a_flat_found;
        if (!is_flat(m).flat) ++rep.violations;
    }
    return rep;
}

WtfEquivReport check_wtf_equiv_flat(const AlgebraPtr& r, std::size_t budget, SeededRng& rng,
                                    WtfCheckMode mode) {
    WtfEquivReport rep;
    rep.gorenstein = is_gorenstein(r);
    if (mode == WtfCheckMode::equivalence && !rep.gorenstein)
        throw std::invalid_argument(
            "check_wtf_equiv_flat: equivalence mode requires a Gorenstein ring");
    for (const ModulePtr& m : generate_modules(r, rng, budget)) {
        ++rep.tested;
        bool flat = is_flat(m).flat;
        if (flat) ++rep.flat_count;
        WtfVerdict w{};
        try {
            w = is_weakly_torsion_free(m);
        } catch (const std::invalid_argument&) {
            ++rep.skipped;
            continue;
        }
        if (flat && !w.weakly_torsion_free) ++rep.forward_violations;
        if (mode == WtfCheckMode::equivalence && w.weakly_torsion_free && !flat)
            ++rep.backward_violations;
    }
    return rep;
}

LemmaInstanceBundle generate_lemma_instance(GenKind kind, FieldConfig field, SeededRng& rng,
                                            const GenCaps& caps) {
    MorphismInstance pair = generate_flat_pair(kind, field, rng, caps);
    const AlgebraPtr& b = pair.target.algebra();
    ModulePtr mod = generate_flat_module(b, rng);

    std::vector<Element> u = minimal_generators(b);
    std::vector<Element> x;
    for (const Element& g : minimal_generators(pair.source.algebra()))
        x.push_back(pair.phi.apply(g));
    if (x.size() != u.size())
        throw std::logic_error("generate_lemma_instance: edim mismatch in generated pair");

    ModulePtr free_b = FiniteModule::free_module(b, 1);
    std::vector<std::vector<Element>> w;
    for (const Element& xi : x) {
        auto sol = resolve(free_b, u, xi.coords());
        if (!sol)
            throw std::logic_error("generate_lemma_instance: image outside the maximal ideal");
        std::vector<Element> row;
        for (const Vec& c : *sol) row.push_back(b->element(c));
        w.push_back(std::move(row));
    }
    LemmaInstance inst = LemmaInstance::make(mod, x, u, w);
    return {std::move(pair), std::move(mod), std::move(inst)};
}

SweepReport sweep_theorem1(GenKind kind, Scalar p, std::uint64_t seed, std::size_t count,
                           const GenCaps& caps) {
    SweepReport rep;
    rep.kind = kind;
    rep.p = p;
    rep.seed = seed;
    rep.count = count;
    FieldConfig field(p);
    SeededRng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        MorphismInstance inst = generate_flat_pair(kind, field, rng, caps);
        ModulePtr m = generate_flat_module(inst.target.algebra(), rng);
        Theorem1Report r = check_theorem1(inst.phi, m);
        switch (r.verdict) {
            case Theorem1Verdict::pass:
                ++rep.passes;
                break;
            case Theorem1Verdict::hypothesis_not_met:
                ++rep.hypothesis_failures;
                break;
            case Theorem1Verdict::theorem_violation:
                ++rep.violations;
                rep.violation_details.push_back("instance " + std::to_string(i) + ": " +
                                                r.detail);
                break;
        }
    }
    return rep;
}

} // namespace artin
