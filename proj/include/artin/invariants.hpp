#pragma once

#include <optional>
#include <vector>

#include "artin/lemma.hpp"

namespace artin {

/// dim m/m^2, the minimal number of generators of the maximal ideal.
std::size_t edim(const AlgebraPtr& a);

/// Ann(m) as a subspace; the whole ring when m = 0.
Subspace socle(const AlgebraPtr& a);

/// Artin local case: socle dimension 1.
bool is_gorenstein(const AlgebraPtr& a);

/// Ambient-dimension cap for the internal polynomial truncation used by the
/// complete-intersection test; exceeding it raises DimensionCapExceeded.
inline constexpr std::size_t kCiTruncationCap = 4096;

/// mu is the minimal number of relations of a presentation of the algebra on
/// edim generators; the algebra is a zero-dimensional complete intersection
/// exactly when mu equals edim.
struct CompleteIntersection {
    bool is_ci;
    std::size_t mu;
};
CompleteIntersection is_complete_intersection(const AlgebraPtr& b,
                                              std::size_t dim_cap = kCiTruncationCap);

/// A matrix over B with W u = 0 componentwise and det spanning the socle;
/// exists when B is a zero-dimensional complete intersection.
struct WiebeMatrix {
    AlgebraPtr algebra;
    std::vector<Element> u;
    std::vector<std::vector<Element>> entries;
    Element det;
};

/// Builds a Wiebe matrix for the given minimal generators of m_B, or nullopt
/// when B is not a complete intersection. The construction is verified
/// (W u = 0, det != 0, det spans the socle) before returning.
std::optional<WiebeMatrix> wiebe_matrix(const AlgebraPtr& b, const std::vector<Element>& u,
                                        std::size_t max_n = MinorTable::kDefaultMaxN,
                                        std::size_t dim_cap = kCiTruncationCap);

struct InvariantReport {
    std::size_t edim;
    std::size_t socle_dim;
    std::size_t nilpotency_index;
    bool is_gorenstein;
    bool is_ci;
    std::size_t mu;
};
InvariantReport invariant_report(const AlgebraPtr& a, std::size_t dim_cap = kCiTruncationCap);

} // namespace artin
