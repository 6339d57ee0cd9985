#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "artin/algebra.hpp"

namespace artin {

class FiniteModule;
using ModulePtr = std::shared_ptr<const FiniteModule>;

/// A finite module over a FiniteLocalAlgebra, given by the action matrix of
/// every basis element: action(i) is rho(e_i), with rho(e_0) = identity and
/// rho(e_i) rho(e_j) = sum_k c_{ijk} rho(e_k).
class FiniteModule : public std::enable_shared_from_this<FiniteModule> {
public:
    static ModulePtr make(AlgebraPtr algebra, std::vector<Mat> actions,
                          Validate mode = Validate::full);
    static ModulePtr free_module(AlgebraPtr algebra, std::size_t rank);
    /// A/m as a module: one-dimensional, the maximal ideal acts by zero.
    static ModulePtr residue_field(AlgebraPtr algebra);
    static ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);
    /// Cokernel of the map A^s -> A^rank whose columns are the relation
    /// columns (each a vector of rank elements of A).
    static ModulePtr cokernel(const AlgebraPtr& algebra, std::size_t rank,
                              const std::vector<std::vector<Element>>& relation_columns);

    const AlgebraPtr& algebra() const { return algebra_; }
    const FieldConfig& field() const { return algebra_->field(); }
    std::size_t dim() const { return dim_; }
    const Mat& action(std::size_t i) const { return actions_[i]; }
    /// rho of an arbitrary element.
    Mat action_of(const Element& a) const;
    Vec apply(const Element& a, const Vec& v) const;

private:
    FiniteModule(AlgebraPtr algebra, std::size_t dim, std::vector<Mat> actions)
        : algebra_(std::move(algebra)), dim_(dim), actions_(std::move(actions)) {}
    void validate(Validate mode) const;

    AlgebraPtr algebra_;
    std::size_t dim_;
    std::vector<Mat> actions_;
};

/// Smallest submodule containing the given vectors: span{rho(e_i) v_j}.
Subspace submodule_spanned(const ModulePtr& m, const std::vector<Vec>& vectors);

/// J M for an ideal J: the span of rho(b)(M) over a basis of J.
Subspace submodule_product(const ModulePtr& m, const IdealSpan& ideal);
/// (x_1, ..., x_n) M = sum_k image(rho(x_k)).
Subspace submodule_product(const ModulePtr& m, const std::vector<Element>& xs);

/// Quotient by an action-invariant subspace; the quotient basis consists of
/// the non-pivot coordinates. Invariance is checked under Validate::full.
struct ModuleQuotient {
    ModulePtr module;
    Mat projection;
    std::vector<std::size_t> rep_coords;
};
ModuleQuotient quotient_module(const ModulePtr& m, const Subspace& sub,
                               Validate mode = Validate::full);

/// View a module over the target of phi as a module over its source.
ModulePtr restrict_scalars(const AlgebraMorphism& phi, const ModulePtr& m);

/// Unit vectors at the non-pivot coordinates of mM; their classes are a basis
/// of M/mM, so they generate M.
std::vector<Vec> minimal_module_generators(const ModulePtr& m);

/// Flat = free for finite modules over a local ring. The verdict compares
/// dim M with (number of minimal generators) * dim A.
struct FlatnessVerdict {
    bool flat;
    std::size_t min_generators;
};
FlatnessVerdict is_flat(const ModulePtr& m);

enum class WtfMode { exhaustive, sampled };

struct WtfWitness {
    Vec lambda; ///< nonzero element of the maximal ideal (full coordinates)
    Vec vector; ///< annihilated by lambda yet outside mM
};

struct WtfVerdict {
    bool weakly_torsion_free;
    std::optional<WtfWitness> witness;
    std::uint64_t lambdas_checked;
    bool exhaustive;
};

/// Is ker(rho(lambda)) contained in mM for every nonzero lambda in m?
/// Exhaustive mode enumerates m \ {0} up to scalar multiples and refuses when
/// |m| exceeds 2^20 (pass sampled mode with a trial count instead). Witnesses
/// are re-verified before being returned.
WtfVerdict is_weakly_torsion_free(const ModulePtr& m, WtfMode mode = WtfMode::exhaustive,
                                  std::uint64_t trials = 1000, std::uint64_t seed = 0);

inline constexpr std::uint64_t kWtfExhaustiveCap = 1ull << 20;

/// Coefficients a_k with target = sum_k rho(x_k) a_k, or nullopt when target
/// lies outside (x_1..x_n)M. Deterministic: free variables of the stacked
/// system are set to zero.
std::optional<std::vector<Vec>> resolve(const ModulePtr& m, const std::vector<Element>& xs,
                                        const Vec& target);

} // namespace artin
