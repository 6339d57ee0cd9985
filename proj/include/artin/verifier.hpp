#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "artin/invariants.hpp"
#include "artin/module.hpp"
#include "artin/presentation.hpp"

namespace artin {

/// Deterministic RNG for instance generation; mt19937_64 so identical seeds
/// give identical instances on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform-ish draw from [0, bound); bound must be positive.
    std::uint64_t next(std::uint64_t bound);
    Scalar scalar(const FieldConfig& f);
    Scalar nonzero_scalar(const FieldConfig& f);
    Vec vec(const FieldConfig& f, std::size_t len);

private:
    std::mt19937_64 eng_;
};

enum class GenKind { monomial_ci, monomial_general, group_algebra, binomial };

GenKind gen_kind_from_string(const std::string& s);
std::string to_string(GenKind kind);

struct GenCaps {
    std::size_t max_dim = 64;
    std::size_t max_vars = 3;
};

/// A random presentation of the given kind: monomial_ci is k[x..]/(x_i^{a_i});
/// monomial_general adds extra monomials of degree >= 2; group_algebra is
/// k[G] for G a product of cyclic p-groups, presented by (1+x_i)^{q_i} - 1;
/// binomial adds relations mono - c * mono' of degree >= 2.
CompiledRing generate_algebra(GenKind kind, FieldConfig field, SeededRng& rng,
                              const GenCaps& caps = {});

struct MorphismInstance {
    CompiledRing source;
    CompiledRing target;
    AlgebraMorphism phi;
};

/// A -> B with B free over A, built from matched variable powers
/// s_i -> x_i^{b_i} (times a random unit); the flat verdict is re-checked and
/// a failure throws, so callers may rely on it.
MorphismInstance generate_flat_pair(GenKind kind, FieldConfig field, SeededRng& rng,
                                    const GenCaps& caps = {});

/// Mixed module shapes over B: free modules, the residue field, random
/// cokernels, quotients by invariant subspaces, direct sums. Not all entries
/// are flat or nonzero.
std::vector<ModulePtr> generate_modules(const AlgebraPtr& b, SeededRng& rng,
                                        std::size_t budget);

/// A module that is B-flat by construction (free, a unit-pivot cokernel, or a
/// direct sum of free modules).
ModulePtr generate_flat_module(const AlgebraPtr& b, SeededRng& rng);

struct Theorem1Hypotheses {
    bool morphism_local = false;
    bool edim_le = false;       // edim(B) <= edim(A)
    bool module_nonzero = false;
    bool module_a_flat = false;
    bool all() const { return morphism_local && edim_le && module_nonzero && module_a_flat; }
};

struct Theorem1Conclusions {
    bool phi_flat = false;
    std::size_t phi_rank = 0;
    bool edim_equal = false;
    bool fiber_ci = false;
    std::size_t fiber_mu = 0;
    bool module_b_flat = false;
    std::size_t module_rank = 0;
    bool delta_spans_fiber_socle = false;
    bool all() const {
        return phi_flat && edim_equal && fiber_ci && module_b_flat && delta_spans_fiber_socle;
    }
};

enum class Theorem1Verdict { pass, hypothesis_not_met, theorem_violation };

struct Theorem1Report {
    Theorem1Hypotheses hypotheses;
    Theorem1Conclusions conclusions;
    Theorem1Verdict verdict = Theorem1Verdict::hypothesis_not_met;
    std::string detail;  // first failed hypothesis, or the failed conclusions
};

/// Evaluates every hypothesis and every conclusion of the flatness criterion
/// for phi and a module over its target. A report with all hypotheses true
/// and any conclusion false is a theorem violation and must be surfaced.
Theorem1Report check_theorem1(const AlgebraMorphism& phi, const ModulePtr& m,
                              std::size_t max_n = MinorTable::kDefaultMaxN);

struct DesmitReport {
    std::size_t tested = 0;
    std::size_t a_flat_found = 0;  // nonzero A-flat modules in the sample
    std::size_t violations = 0;    // of those, not B-flat
};

/// Samples `budget` modules over the target of phi and asserts that every
/// nonzero A-flat one is B-flat.
DesmitReport check_desmit(const AlgebraMorphism& phi, std::size_t budget, SeededRng& rng);

enum class WtfCheckMode { equivalence, forward_only };

struct WtfEquivReport {
    bool gorenstein = false;
    std::size_t tested = 0;
    std::size_t flat_count = 0;
    std::size_t skipped = 0;              // exhaustive enumeration refused
    std::size_t forward_violations = 0;   // flat but not weakly torsion-free
    std::size_t backward_violations = 0;  // weakly torsion-free but not flat
};

/// Checks flat <=> weakly torsion-free on sampled modules. The equivalence
/// mode requires a Gorenstein ring; forward_only checks flat => wtf and is
/// valid over any ring.
WtfEquivReport check_wtf_equiv_flat(const AlgebraPtr& r, std::size_t budget, SeededRng& rng,
                                    WtfCheckMode mode = WtfCheckMode::equivalence);

struct LemmaInstanceBundle {
    MorphismInstance pair;
    ModulePtr module;
    LemmaInstance instance;
};

/// A lemma instance with x the images of minimal generators of the source's
/// maximal ideal, u the minimal generators of the target's, W obtained by
/// resolving x over u, and a module that is flat over both rings.
LemmaInstanceBundle generate_lemma_instance(GenKind kind, FieldConfig field, SeededRng& rng,
                                            const GenCaps& caps = {});

struct SweepReport {
    GenKind kind;
    Scalar p = 0;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::size_t passes = 0;
    std::size_t hypothesis_failures = 0;
    std::size_t violations = 0;
    std::vector<std::string> violation_details;
};

/// Runs check_theorem1 on `count` generated instances with hypotheses
/// satisfied by construction; any non-pass verdict is tallied.
SweepReport sweep_theorem1(GenKind kind, Scalar p, std::uint64_t seed, std::size_t count,
                           const GenCaps& caps = {});

} // namespace artin
