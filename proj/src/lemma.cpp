#include "artin/lemma.hpp"

#include <bit>
#include <string>

namespace artin {

namespace {

std::uint32_t bit_of(std::size_t i) { return 1u << (i - 1); }

void check_index(std::size_t i, std::size_t n, const char* what) {
    if (i < 1 || i > n) throw std::invalid_argument(std::string(what) + " index out of range");
}

void add_scaled(const FieldConfig& f, Vec& acc, Scalar c, const Vec& v) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = f.add(acc[k], f.mul(c, v[k]));
}

std::string subset_to_string(std::uint32_t subset) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 1; subset >> (i - 1); ++i) {
        if (!(subset & bit_of(i))) continue;
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

} // namespace

int epsilon_bar(std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("epsilon_bar requires distinct indices");
    return i < j ? 1 : -1;
}

int epsilon(std::size_t i, std::uint32_t subset, std::size_t n) {
    check_index(i, n, "epsilon");
    if (n < 32 && subset >= (1u << n))
        throw std::invalid_argument("epsilon: subset is not contained in {1..n}");
    if (!(subset & bit_of(i))) throw std::invalid_argument("epsilon: i is not in the subset");
    // The position of i in E_n \ (I - i) is i minus the number of smaller
    // elements of I.
    std::size_t p = i - std::popcount(subset & (bit_of(i) - 1));
    return p % 2 == 0 ? 1 : -1;
}

std::vector<std::uint32_t> subsets_of_size(std::size_t n, std::size_t size) {
    if (n > 20) throw std::invalid_argument("subset enumeration capped at n = 20");
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (std::popcount(mask) == int(size)) out.push_back(mask);
    return out;
}

int SignTable::bar(std::size_t i, std::size_t j) const {
    check_index(i, n_, "sign");
    check_index(j, n_, "sign");
    return epsilon_bar(i, j);
}

int SignTable::at(std::size_t i, std::uint32_t subset) const { return epsilon(i, subset, n_); }

MinorTable::MinorTable(AlgebraPtr algebra, std::vector<std::vector<Element>> entries,
                       std::size_t max_n)
    : algebra_(std::move(algebra)), n_(entries.size()), w_(std::move(entries)) {
    if (max_n > 16) max_n = 16;
    if (n_ > max_n)
        throw std::invalid_argument("matrix size " + std::to_string(n_) +
                                    " exceeds the minor table cap " + std::to_string(max_n));
    for (const auto& row : w_) {
        if (row.size() != n_) throw std::invalid_argument("minor table matrix is not square");
        for (const Element& e : row)
            if (e.parent() != algebra_)
                throw std::invalid_argument("matrix entry from a different algebra");
    }
}

const Element& MinorTable::entry(std::size_t row, std::size_t col) const {
    check_index(row, n_, "row");
    check_index(col, n_, "column");
    return w_[row - 1][col - 1];
}

Element MinorTable::minor(std::uint32_t rows_deleted, std::uint32_t cols_deleted) const {
    const std::uint32_t full = n_ == 32 ? ~0u : (1u << n_) - 1;
    if ((rows_deleted & ~full) || (cols_deleted & ~full))
        throw std::invalid_argument("minor mask is not a subset of the index range");
    if (std::popcount(rows_deleted) != std::popcount(cols_deleted))
        throw std::invalid_argument("minor requires equally many deleted rows and columns");
    return kept(full & ~rows_deleted, full & ~cols_deleted);
}

Element MinorTable::kept(std::uint32_t rows, std::uint32_t cols) const {
    if (rows == 0) return algebra_->one();
    const std::uint64_t key = (std::uint64_t(rows) << 32) | cols;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    // Cofactor expansion along the lowest kept row.
    const int r0 = std::countr_zero(rows);
    const std::uint32_t rest_rows = rows & (rows - 1);
    Element acc = algebra_->zero();
    int sign = 1;
    for (std::uint32_t c = cols; c != 0; c &= c - 1) {
        const int col = std::countr_zero(c);
        const Element& e = w_[std::size_t(r0)][std::size_t(col)];
        if (!e.is_zero()) {
            Element cof = e * kept(rest_rows, cols & ~(1u << col));
            acc = acc + cof.scaled(algebra_->field().reduce(sign));
        }
        sign = -sign;
    }
    memo_.emplace(key, acc);
    return acc;
}

bool check_expansion_identities(const MinorTable& w, std::size_t ell, std::uint32_t subset,
                                std::size_t i) {
    const std::size_t n = w.n();
    if (ell >= n) throw std::invalid_argument("level must satisfy 0 <= ell <= n-1");
    if (std::popcount(subset) != int(ell) + 1)
        throw std::invalid_argument("subset must have ell+1 elements");
    check_index(i, n, "column");
    const std::uint32_t e_ell = (1u << ell) - 1;
    const FieldConfig& f = w.algebra()->field();

    Element sum = w.algebra()->zero();
    for (std::size_t k = ell + 1; k <= n; ++k) {
        Element term = w.entry(k, i) * w.minor(e_ell | bit_of(k), subset);
        sum = sum + term.scaled(f.reduce(k % 2 == 0 ? 1 : -1));
    }
    if (!(subset & bit_of(i))) return sum.is_zero();

    Element lhs = w.minor(e_ell, subset & ~bit_of(i));
    int outer = epsilon(i, subset, n) * (ell % 2 == 0 ? 1 : -1);
    return lhs == sum.scaled(f.reduce(outer));
}

LemmaInstance LemmaInstance::make(ModulePtr module, std::vector<Element> x,
                                  std::vector<Element> u, std::vector<std::vector<Element>> w,
                                  std::size_t max_n) {
    if (!module) throw std::invalid_argument("lemma instance needs a module");
    const AlgebraPtr& b = module->algebra();
    const std::size_t n = x.size();
    if (u.size() != n || w.size() != n)
        throw std::invalid_argument("x, u, and W must share the same length n");
    for (const Element& e : x)
        if (e.parent() != b) throw std::invalid_argument("x entry from a different algebra");
    for (const Element& e : u)
        if (e.parent() != b) throw std::invalid_argument("u entry from a different algebra");

    MinorTable minors(b, std::move(w), max_n);
    for (std::size_t k = 1; k <= n; ++k) {
        Element rhs = b->zero();
        for (std::size_t i = 1; i <= n; ++i) rhs = rhs + minors.entry(k, i) * u[i - 1];
        if (!(x[k - 1] == rhs))
            throw std::invalid_argument("x = W u fails at row " + std::to_string(k));
    }
    if (n > 0) {
        // x = W u makes J_x a subset of J_u; a failure here is a bug.
        IdealSpan ju = ideal_generated(u);
        for (const Element& e : x)
            if (!ju.contains(e)) throw std::logic_error("x = W u holds yet J_x is not inside J_u");
    }

    Subspace jx_m = submodule_product(module, x);
    Subspace ju_m = submodule_product(module, u);
    return LemmaInstance(std::move(module), std::move(x), std::move(u), std::move(minors),
                         std::move(jx_m), std::move(ju_m));
}

HypothesisTwoViolated::HypothesisTwoViolated(std::size_t level, std::uint32_t subset, Vec g)
    : std::runtime_error("g_" + subset_to_string(subset) + " at level " + std::to_string(level) +
                         " lies outside J_x M; the relation-splitting hypothesis fails here"),
      level_(level), subset_(subset), g_(std::move(g)) {}

namespace {

// g_I = minor(E_ell, I) * m + sum_{i in I} epsilon(i, I) u_i a_prev[I - i][ell],
// where prev holds the level-(ell-1) decompositions in ascending mask order.
Vec level_vector(const LemmaInstance& inst, std::size_t ell, std::uint32_t subset, const Vec& m,
                 const std::vector<CertLevelEntry>* prev) {
    const ModulePtr& mod = inst.module();
    const FieldConfig& f = mod->field();
    const std::size_t n = inst.n();
    const std::uint32_t e_ell = (1u << ell) - 1;

    Vec g = mod->apply(inst.minors().minor(e_ell, subset), m);
    if (ell == 0) return g;
    for (std::size_t i = 1; i <= n; ++i) {
        if (!(subset & bit_of(i))) continue;
        const std::uint32_t sub = subset & ~bit_of(i);
        std::size_t pos = 0;
        while (pos < prev->size() && (*prev)[pos].subset != sub) ++pos;
        if (pos == prev->size()) throw std::logic_error("missing induction entry for a subset");
        Scalar sign = f.reduce(epsilon(i, subset, n));
        add_scaled(f, g, sign, mod->apply(inst.u()[i - 1], (*prev)[pos].a[ell - 1]));
    }
    return g;
}

std::vector<Vec> assemble_b(const LemmaInstance& inst,
                            const std::vector<std::vector<CertLevelEntry>>& trace) {
    const ModulePtr& mod = inst.module();
    const FieldConfig& f = mod->field();
    const std::size_t n = inst.n();
    std::vector<Vec> b;
    if (n == 0) return b;
    const std::vector<Vec>& c = trace[n][0].a;
    const std::vector<CertLevelEntry>& last = trace[n - 1];
    const std::uint32_t full = (1u << n) - 1;
    for (std::size_t i = 1; i <= n; ++i) {
        Vec bi(mod->dim(), 0);
        for (std::size_t k = 1; k <= n; ++k)
            add_scaled(f, bi, 1, mod->apply(inst.minors().entry(k, i), c[k - 1]));
        const std::uint32_t sub = full & ~bit_of(i);
        std::size_t pos = 0;
        while (pos < last.size() && last[pos].subset != sub) ++pos;
        if (pos == last.size()) throw std::logic_error("missing induction entry for a subset");
        Scalar sign = f.reduce(-epsilon(i, full, n));
        add_scaled(f, bi, sign, last[pos].a[n - 1]);
        b.push_back(std::move(bi));
    }
    return b;
}

Vec fold_with_u(const LemmaInstance& inst, const std::vector<Vec>& b) {
    const ModulePtr& mod = inst.module();
    const FieldConfig& f = mod->field();
    Vec total(mod->dim(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        add_scaled(f, total, 1, mod->apply(inst.u()[i], b[i]));
    return total;
}

} // namespace

MembershipCertificate membership_certificate(const LemmaInstance& inst, const Vec& m) {
    const ModulePtr& mod = inst.module();
    if (m.size() != mod->dim())
        throw std::invalid_argument("membership target length does not match the module");
    const std::size_t n = inst.n();

    std::vector<std::vector<CertLevelEntry>> trace;
    for (std::size_t ell = 0; ell <= n; ++ell) {
        std::vector<CertLevelEntry> level;
        const std::vector<CertLevelEntry>* prev = ell == 0 ? nullptr : &trace[ell - 1];
        for (std::uint32_t subset : subsets_of_size(n, ell)) {
            Vec g = level_vector(inst, ell, subset, m, prev);
            auto a = resolve(mod, inst.x(), g);
            if (!a) {
                if (ell == 0)
                    throw PreconditionFailed("Delta * m does not lie in J_x M");
                throw HypothesisTwoViolated(ell, subset, std::move(g));
            }
            level.push_back({subset, std::move(g), std::move(*a)});
        }
        trace.push_back(std::move(level));
    }

    std::vector<Vec> b = assemble_b(inst, trace);
    if (fold_with_u(inst, b) != m)
        throw std::logic_error("assembled membership certificate fails the final identity");
    return {inst, m, std::move(b), std::move(trace)};
}

bool verify_certificate(const MembershipCertificate& cert, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    const LemmaInstance& inst = cert.instance;
    const ModulePtr& mod = inst.module();
    const FieldConfig& f = mod->field();
    const std::size_t n = inst.n();

    if (cert.m.size() != mod->dim()) return fail("target vector has the wrong length");
    if (cert.trace.size() != n + 1) return fail("trace does not have n+1 levels");
    for (std::size_t ell = 0; ell <= n; ++ell) {
        const auto expected = subsets_of_size(n, ell);
        if (cert.trace[ell].size() != expected.size())
            return fail("level " + std::to_string(ell) + " has the wrong number of entries");
        for (std::size_t t = 0; t < expected.size(); ++t) {
            const CertLevelEntry& entry = cert.trace[ell][t];
            if (entry.subset != expected[t])
                return fail("level " + std::to_string(ell) + " subsets are out of order");
            if (entry.g.size() != mod->dim() || entry.a.size() != n)
                return fail("entry for subset " + subset_to_string(entry.subset) +
                            " has malformed data");
            for (const Vec& ak : entry.a)
                if (ak.size() != mod->dim())
                    return fail("entry for subset " + subset_to_string(entry.subset) +
                                " has malformed coefficients");

            Vec g = level_vector(inst, ell, entry.subset, cert.m,
                                 ell == 0 ? nullptr : &cert.trace[ell - 1]);
            if (g != entry.g)
                return fail("g for subset " + subset_to_string(entry.subset) + " at level " +
                            std::to_string(ell) + " does not match its recomputation");
            Vec combo(mod->dim(), 0);
            for (std::size_t k = 0; k < n; ++k)
                add_scaled(f, combo, 1, mod->apply(inst.x()[k], entry.a[k]));
            if (combo != entry.g)
                return fail("decomposition for subset " + subset_to_string(entry.subset) +
                            " at level " + std::to_string(ell) + " does not reproduce g");
        }
    }

    if (cert.b.size() != n) return fail("b does not have n entries");
    for (const Vec& bi : cert.b)
        if (bi.size() != mod->dim()) return fail("b entry has the wrong length");
    std::vector<Vec> b = assemble_b(inst, cert.trace);
    for (std::size_t i = 0; i < n; ++i)
        if (b[i] != cert.b[i]) return fail("b[" + std::to_string(i + 1) + "] does not match");
    if (fold_with_u(inst, cert.b) != cert.m)
        return fail("m != sum of rho(u_i) b_i");
    return true;
}

} // namespace artin
