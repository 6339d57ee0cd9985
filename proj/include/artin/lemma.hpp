#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "artin/module.hpp"

namespace artin {

// Row and column indices below are 1-based positions in E_n = {1..n}; subsets
// of E_n are bitmasks where bit (i-1) stands for i.

/// +1 if i < j, -1 if i > j.
int epsilon_bar(std::size_t i, std::size_t j);

/// (-1)^p where p is the position of i in the ordered set E_n \ (I - i).
/// Satisfies epsilon(i, I) = (-1)^i * prod_{j in I-i} epsilon_bar(i, j) and
/// epsilon(i, I) * epsilon(i, I-j) = epsilon_bar(i, j) for i != j in I.
int epsilon(std::size_t i, std::uint32_t subset, std::size_t n);

/// Subsets of E_n with the given popcount, ascending as integers.
std::vector<std::uint32_t> subsets_of_size(std::size_t n, std::size_t size);

/// Bounds-checked sign lookups for a fixed n.
class SignTable {
public:
    explicit SignTable(std::size_t n) : n_(n) {}
    std::size_t n() const { return n_; }
    int bar(std::size_t i, std::size_t j) const;
    int at(std::size_t i, std::uint32_t subset) const;

private:
    std::size_t n_;
};

/// Memoized division-free minors of a square matrix over an algebra. minor()
/// takes the sets of deleted rows and deleted columns, so minor(0, 0) is the
/// full determinant and minor(full, full) is 1.
class MinorTable {
public:
    static constexpr std::size_t kDefaultMaxN = 8;

    MinorTable(AlgebraPtr algebra, std::vector<std::vector<Element>> entries,
               std::size_t max_n = kDefaultMaxN);

    std::size_t n() const { return n_; }
    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<std::vector<Element>>& entries() const { return w_; }
    /// 1-based entry c_{row,col}.
    const Element& entry(std::size_t row, std::size_t col) const;
    Element minor(std::uint32_t rows_deleted, std::uint32_t cols_deleted) const;
    Element determinant() const { return minor(0, 0); }

private:
    Element kept(std::uint32_t rows, std::uint32_t cols) const;

    AlgebraPtr algebra_;
    std::size_t n_;
    std::vector<std::vector<Element>> w_;
    mutable std::unordered_map<std::uint64_t, Element> memo_;
};

/// Verifies one instance of the minor expansion identities: for |I| = ell+1
/// and i in I, the expansion of minor(E_ell, I-i) along column i; for i not
/// in I, the same alternating sum vanishes (two equal columns).
bool check_expansion_identities(const MinorTable& w, std::size_t ell, std::uint32_t subset,
                                std::size_t i);

/// Data for the membership engine: sequences x, u in B with x = W u (checked),
/// and a module M over B.
class LemmaInstance {
public:
    static LemmaInstance make(ModulePtr module, std::vector<Element> x, std::vector<Element> u,
                              std::vector<std::vector<Element>> w,
                              std::size_t max_n = MinorTable::kDefaultMaxN);

    const ModulePtr& module() const { return module_; }
    const AlgebraPtr& algebra() const { return module_->algebra(); }
    std::size_t n() const { return x_.size(); }
    const std::vector<Element>& x() const { return x_; }
    const std::vector<Element>& u() const { return u_; }
    const std::vector<std::vector<Element>>& w() const { return minors_.entries(); }
    const MinorTable& minors() const { return minors_; }
    const Subspace& jx_m() const { return jx_m_; }
    const Subspace& ju_m() const { return ju_m_; }

private:
    LemmaInstance(ModulePtr module, std::vector<Element> x, std::vector<Element> u,
                  MinorTable minors, Subspace jx_m, Subspace ju_m)
        : module_(std::move(module)), x_(std::move(x)), u_(std::move(u)),
          minors_(std::move(minors)), jx_m_(std::move(jx_m)), ju_m_(std::move(ju_m)) {}

    ModulePtr module_;
    std::vector<Element> x_, u_;
    MinorTable minors_;
    Subspace jx_m_, ju_m_;
};

class PreconditionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Some g_I failed the membership g_I in J_x M that the second hypothesis of
/// the lemma guarantees; carries the offending level, subset, and vector.
class HypothesisTwoViolated : public std::runtime_error {
public:
    HypothesisTwoViolated(std::size_t level, std::uint32_t subset, Vec g);
    std::size_t level() const { return level_; }
    std::uint32_t subset() const { return subset_; }
    const Vec& g() const { return g_; }

private:
    std::size_t level_;
    std::uint32_t subset_;
    Vec g_;
};

/// One induction record: the subset I, the vector g_I, and coefficients with
/// g_I = sum_k rho(x_k) a[k].
struct CertLevelEntry {
    std::uint32_t subset;
    Vec g;
    std::vector<Vec> a;
};

/// Explicit witness of m in J_u M: m = sum_i rho(u_i) b[i], plus the full
/// induction trace it was assembled from, re-checkable by evaluation.
struct MembershipCertificate {
    LemmaInstance instance;
    Vec m;
    std::vector<Vec> b;
    std::vector<std::vector<CertLevelEntry>> trace; ///< levels 0..n
};

/// Runs the induction: level 0 certifies Delta*m in J_x M, level l+1 builds
/// g_I from the x_{l+1}-coefficients of level l, and the final fold through
/// x = W u produces b. Throws PreconditionFailed when Delta*m is outside
/// J_x M and HypothesisTwoViolated when some later g_I is.
MembershipCertificate membership_certificate(const LemmaInstance& inst, const Vec& m);

/// Recomputes every g_I, every decomposition, b, and the final identity from
/// scratch; any mutation of the certificate makes this false.
bool verify_certificate(const MembershipCertificate& cert, std::string* why = nullptr);

} // namespace artin
