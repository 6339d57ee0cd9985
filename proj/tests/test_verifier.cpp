#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "artin/verifier.hpp"

using namespace artin;

namespace {

CompiledRing ring(Scalar p, const std::vector<std::string>& vars,
                  const std::vector<std::string>& rels) {
    FieldConfig f(p);
    Presentation pres{f, vars, {}};
    for (const auto& r : rels) pres.relations.push_back(parse_poly(f, vars, r));
    return compile_ring(pres);
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a->dim() != b->dim() || a->field().p() != b->field().p()) return false;
    for (std::size_t i = 0; i < a->dim(); ++i)
        if (!(a->mult_matrix(i) == b->mult_matrix(i))) return false;
    return true;
}

} // namespace

TEST_CASE("seeded rng determinism") {
    SeededRng a(42), b(42), c(43);
    bool diverged = false;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t va = a.next(1000);
        CHECK(va == b.next(1000));
        if (va != c.next(1000)) diverged = true;
    }
    CHECK(diverged);
    CHECK_THROWS_AS(a.next(0), std::invalid_argument);

    FieldConfig f(5);
    SeededRng d(1);
    for (int i = 0; i < 32; ++i) {
        CHECK(d.scalar(f) < 5);
        Scalar nz = d.nonzero_scalar(f);
        CHECK(nz >= 1);
        CHECK(nz < 5);
    }
}

TEST_CASE("generator kind strings") {
    for (GenKind k : {GenKind::monomial_ci, GenKind::monomial_general,
                      GenKind::group_algebra, GenKind::binomial}) {
        CHECK(gen_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(gen_kind_from_string("lattice"), std::invalid_argument);
}

TEST_CASE("generated algebras are deterministic and within caps") {
    for (GenKind kind : {GenKind::monomial_ci, GenKind::monomial_general,
                         GenKind::group_algebra, GenKind::binomial}) {
        for (Scalar p : {Scalar(2), Scalar(3), Scalar(5)}) {
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                SeededRng r1(seed), r2(seed);
                CompiledRing g1 = generate_algebra(kind, FieldConfig(p), r1);
                CompiledRing g2 = generate_algebra(kind, FieldConfig(p), r2);
                CAPTURE(to_string(kind));
                CAPTURE(p);
                CAPTURE(seed);
                CHECK(same_algebra(g1.algebra(), g2.algebra()));
                CHECK(g1.algebra()->dim() >= 2);
                CHECK(g1.algebra()->dim() <= 64);
            }
        }
    }
}

TEST_CASE("monomial ci generator yields complete intersections") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        SeededRng rng(seed);
        CompiledRing g = generate_algebra(GenKind::monomial_ci, FieldConfig(3), rng);
        InvariantReport rep = invariant_report(g.algebra());
        CHECK(rep.is_ci);
        CHECK(rep.mu == g.variables().size());
        CHECK(rep.edim == g.variables().size());
    }
}

TEST_CASE("group algebra generator has edim equal to the rank") {
    for (Scalar p : {Scalar(2), Scalar(3)}) {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            SeededRng rng(seed);
            CompiledRing g = generate_algebra(GenKind::group_algebra, FieldConfig(p), rng);
            CHECK(edim(g.algebra()) == g.variables().size());
            CHECK(is_complete_intersection(g.algebra()).is_ci);
        }
    }
}

TEST_CASE("binomial generator keeps the embedding dimension") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        SeededRng rng(seed);
        CompiledRing g = generate_algebra(GenKind::binomial, FieldConfig(5), rng);
        CHECK(edim(g.algebra()) == g.variables().size());
    }
}

TEST_CASE("flat pairs are flat with matching edim") {
    for (GenKind kind : {GenKind::monomial_ci, GenKind::monomial_general,
                         GenKind::group_algebra, GenKind::binomial}) {
        for (Scalar p : {Scalar(2), Scalar(3)}) {
            SeededRng rng(17);
            MorphismInstance inst = generate_flat_pair(kind, FieldConfig(p), rng);
            CAPTURE(to_string(kind));
            CAPTURE(p);
            const AlgebraPtr& a = inst.source.algebra();
            const AlgebraPtr& b = inst.target.algebra();
            CHECK(edim(a) == edim(b));
            FlatnessVerdict fv =
                is_flat(restrict_scalars(inst.phi, FiniteModule::free_module(b, 1)));
            CHECK(fv.flat);
            CHECK(fv.min_generators * a->dim() == b->dim());

            SeededRng rng2(17);
            MorphismInstance again = generate_flat_pair(kind, FieldConfig(p), rng2);
            CHECK(same_algebra(inst.target.algebra(), again.target.algebra()));
            CHECK(inst.phi.matrix() == again.phi.matrix());
        }
    }
}

TEST_CASE("theorem1 flat power pair passes") {
    auto a = ring(2, {"s"}, {"s^2"});
    auto b = ring(2, {"x"}, {"x^4"});
    AlgebraMorphism phi = morphism_from_images(a, b.algebra(), {b.parse("x^2")});
    Theorem1Report rep = check_theorem1(phi, FiniteModule::free_module(b.algebra(), 1));
    CHECK(rep.hypotheses.all());
    CHECK(rep.conclusions.phi_flat);
    CHECK(rep.conclusions.phi_rank == 2);
    CHECK(rep.conclusions.edim_equal);
    CHECK(rep.conclusions.fiber_ci);
    CHECK(rep.conclusions.fiber_mu == 1);
    CHECK(rep.conclusions.module_b_flat);
    CHECK(rep.conclusions.module_rank == 1);
    CHECK(rep.conclusions.delta_spans_fiber_socle);
    CHECK(rep.verdict == Theorem1Verdict::pass);
    CHECK(rep.detail.empty());
}

TEST_CASE("theorem1 identity with residue field fails flatness hypothesis") {
    auto b = ring(2, {"x"}, {"x^4"});
    AlgebraMorphism id = AlgebraMorphism::identity(b.algebra());
    Theorem1Report rep = check_theorem1(id, FiniteModule::residue_field(b.algebra()));
    CHECK(rep.hypotheses.morphism_local);
    CHECK(rep.hypotheses.edim_le);
    CHECK(rep.hypotheses.module_nonzero);
    CHECK_FALSE(rep.hypotheses.module_a_flat);
    CHECK(rep.verdict == Theorem1Verdict::hypothesis_not_met);
    CHECK(rep.detail == "module_a_flat");
}

TEST_CASE("theorem1 edim violation control") {
    auto a = ring(2, {"s"}, {"s^2"});
    auto b = ring(2, {"x", "y"}, {"x^2", "x*y", "y^2"});
    AlgebraMorphism phi = morphism_from_images(a, b.algebra(), {b.parse("x")});
    ModulePtr m = FiniteModule::cokernel(b.algebra(), 1, {{b.parse("y")}});
    REQUIRE(m->dim() == 2);
    Theorem1Report rep = check_theorem1(phi, m);
    CHECK(rep.hypotheses.morphism_local);
    CHECK_FALSE(rep.hypotheses.edim_le);
    CHECK(rep.hypotheses.module_nonzero);
    CHECK(rep.hypotheses.module_a_flat);
    CHECK_FALSE(rep.conclusions.module_b_flat);
    CHECK(rep.verdict == Theorem1Verdict::hypothesis_not_met);
    CHECK(rep.detail == "edim_le");
}

TEST_CASE("theorem1 zero module fails the nonzero hypothesis") {
    auto b = ring(3, {"x"}, {"x^3"});
    ModulePtr zero = FiniteModule::cokernel(b.algebra(), 1, {{b.algebra()->one()}});
    REQUIRE(zero->dim() == 0);
    Theorem1Report rep =
        check_theorem1(AlgebraMorphism::identity(b.algebra()), zero);
    CHECK(rep.verdict == Theorem1Verdict::hypothesis_not_met);
    CHECK(rep.detail == "module_nonzero");
}

TEST_CASE("theorem1 non flat morphism fails module flatness over the source") {
    auto a = ring(2, {"s"}, {"s^2"});
    auto b = ring(2, {"x"}, {"x^3"});
    AlgebraMorphism phi = morphism_from_images(a, b.algebra(), {b.parse("x^2")});
    Theorem1Report rep = check_theorem1(phi, FiniteModule::free_module(b.algebra(), 1));
    CHECK_FALSE(rep.hypotheses.module_a_flat);
    CHECK_FALSE(rep.conclusions.phi_flat);
    CHECK(rep.verdict == Theorem1Verdict::hypothesis_not_met);
    CHECK(rep.detail == "module_a_flat");
}

TEST_CASE("theorem1 identity morphism passes") {
    auto b = ring(3, {"x", "y"}, {"x^2", "y^2"});
    Theorem1Report rep = check_theorem1(AlgebraMorphism::identity(b.algebra()),
                                        FiniteModule::free_module(b.algebra(), 2));
    CHECK(rep.verdict == Theorem1Verdict::pass);
    CHECK(rep.conclusions.phi_rank == 1);
    CHECK(rep.conclusions.fiber_mu == 0);
    CHECK(rep.conclusions.module_rank == 2);
}

TEST_CASE("theorem1 sweeps pass deterministically") {
    SweepReport r1 = sweep_theorem1(GenKind::monomial_ci, 2, 11, 25);
    SweepReport r2 = sweep_theorem1(GenKind::monomial_ci, 2, 11, 25);
    CHECK(r1.passes == 25);
    CHECK(r1.hypothesis_failures == 0);
    CHECK(r1.violations == 0);
    CHECK(r1.passes == r2.passes);
    CHECK(r1.violation_details == r2.violation_details);

    SweepReport g = sweep_theorem1(GenKind::group_algebra, 3, 5, 15);
    CHECK(g.passes == 15);
    CHECK(g.violations == 0);

    for (GenKind kind : {GenKind::monomial_general, GenKind::binomial}) {
        SweepReport s = sweep_theorem1(kind, 5, 2, 10);
        CHECK(s.passes == 10);
        CHECK(s.violations == 0);
    }
}

TEST_CASE("desmit reports") {
    auto a = ring(2, {"s"}, {"s^2"});
    auto b = ring(2, {"x"}, {"x^4"});
    AlgebraMorphism phi = morphism_from_images(a, b.algebra(), {b.parse("x^2")});
    SeededRng rng(3);
    DesmitReport rep = check_desmit(phi, 40, rng);
    CHECK(rep.tested == 40);
    CHECK(rep.violations == 0);
    CHECK(rep.a_flat_found >= 1);

    SeededRng rng2(4);
    DesmitReport id = check_desmit(AlgebraMorphism::identity(b.algebra()), 30, rng2);
    CHECK(id.violations == 0);
    CHECK(id.a_flat_found >= 1);

    // dim B = 3 is not a multiple of dim A = 2, so B is not A-flat and by the
    // criterion no nonzero A-flat B-module can exist.
    auto b3 = ring(2, {"x"}, {"x^3"});
    AlgebraMorphism bad = morphism_from_images(a, b3.algebra(), {b3.parse("x^2")});
    SeededRng rng3(5);
    DesmitReport badrep = check_desmit(bad, 60, rng3);
    CHECK(badrep.tested == 60);
    CHECK(badrep.a_flat_found == 0);
    CHECK(badrep.violations == 0);
}

TEST_CASE("wtf equivalence reports") {
    auto gor = ring(2, {"x", "y"}, {"x^2", "y^2"});
    SeededRng rng(7);
    WtfEquivReport rep = check_wtf_equiv_flat(gor.algebra(), 20, rng);
    CHECK(rep.gorenstein);
    CHECK(rep.tested == 20);
    CHECK(rep.forward_violations == 0);
    CHECK(rep.backward_violations == 0);
    CHECK(rep.flat_count >= 1);
    CHECK(rep.skipped == 0);

    auto non = ring(2, {"x", "y"}, {"x^2", "x*y", "y^2"});
    SeededRng rng2(8);
    CHECK_THROWS_AS(check_wtf_equiv_flat(non.algebra(), 5, rng2, WtfCheckMode::equivalence),
                    std::invalid_argument);
    SeededRng rng3(9);
    WtfEquivReport fwd = check_wtf_equiv_flat(non.algebra(), 20, rng3,
                                              WtfCheckMode::forward_only);
    CHECK_FALSE(fwd.gorenstein);
    CHECK(fwd.forward_violations == 0);
}

TEST_CASE("quotient by a principal ideal is neither flat nor torsion free") {
    auto r = ring(2, {"x", "y"}, {"x^2", "y^2"});
    ModulePtr m = FiniteModule::cokernel(r.algebra(), 1, {{r.parse("x")}});
    REQUIRE(m->dim() == 2);
    CHECK_FALSE(is_flat(m).flat);
    WtfVerdict w = is_weakly_torsion_free(m);
    CHECK_FALSE(w.weakly_torsion_free);
    REQUIRE(w.witness.has_value());
}

TEST_CASE("generated lemma instances certify memberships") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (Scalar p : {Scalar(2), Scalar(3)}) {
            SeededRng rng(seed * 31 + p);
            GenCaps caps{32, 2};
            LemmaInstanceBundle bundle =
                generate_lemma_instance(GenKind::monomial_ci, FieldConfig(p), rng, caps);
            const LemmaInstance& inst = bundle.instance;
            const FieldConfig& f = bundle.module->field();
            CAPTURE(seed);
            CAPTURE(p);

            Vec target(bundle.module->dim(), 0);
            for (const Element& xk : inst.x()) {
                Vec img = bundle.module->apply(xk, rng.vec(f, bundle.module->dim()));
                for (std::size_t i = 0; i < target.size(); ++i)
                    target[i] = f.add(target[i], img[i]);
            }
            MembershipCertificate cert = membership_certificate(inst, target);
            CHECK(verify_certificate(cert));
            CHECK(resolve(bundle.module, inst.u(), target).has_value());
        }
    }
}

TEST_CASE("generated module families mix flat and non flat shapes") {
    auto b = ring(2, {"x"}, {"x^4"});
    SeededRng rng(13);
    auto mods = generate_modules(b.algebra(), rng, 24);
    CHECK(mods.size() == 24);
    std::size_t flats = 0;
    std::size_t nonflats = 0;
    for (const auto& m : mods) {
        CHECK(m->algebra() == b.algebra());
        if (is_flat(m).flat)
            ++flats;
        else
            ++nonflats;
    }
    CHECK(flats >= 1);
    CHECK(nonflats >= 1);
}
