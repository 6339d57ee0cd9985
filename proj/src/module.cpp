#include "artin/module.hpp"

#include <cmath>
#include <random>
#include <string>

namespace artin {

ModulePtr FiniteModule::make(AlgebraPtr algebra, std::vector<Mat> actions, Validate mode) {
    if (actions.size() != algebra->dim())
        throw std::invalid_argument("need one action matrix per algebra basis element");
    std::size_t dim = actions.empty() ? 0 : actions[0].rows();
    for (const Mat& m : actions)
        if (m.rows() != dim || m.cols() != dim || m.field() != algebra->field())
            throw std::invalid_argument("action matrices must be square, equal-sized, over the algebra's field");
    auto mod = std::shared_ptr<FiniteModule>(
        new FiniteModule(std::move(algebra), dim, std::move(actions)));
    mod->validate(mode);
    return mod;
}

void FiniteModule::validate(Validate mode) const {
    const std::size_t d = algebra_->dim();
    if (!(actions_[0] == Mat::identity(field(), dim_)))
        throw std::invalid_argument("e_0 must act as the identity");
    auto check_pair = [&](std::size_t i, std::size_t j) {
        Mat lhs = actions_[i].mul(actions_[j]);
        Mat rhs(field(), dim_, dim_);
        for (std::size_t k = 0; k < d; ++k) {
            Scalar c = algebra_->struct_const(i, j, k);
            if (c == 0) continue;
            rhs = rhs.add(actions_[k].scaled(c));
        }
        if (!(lhs == rhs))
            throw std::invalid_argument("actions do not respect the structure constants on (e_" +
                                        std::to_string(i) + ", e_" + std::to_string(j) + ")");
    };
    if (mode == Validate::full) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) check_pair(i, j);
    } else if (d > 1) {
        check_pair(1, 1);
        check_pair(1, d - 1);
        check_pair(d - 1, 1);
        check_pair(d - 1, d - 1);
    }
}

ModulePtr FiniteModule::free_module(AlgebraPtr algebra, std::size_t rank) {
    const FieldConfig& f = algebra->field();
    const std::size_t d = algebra->dim();
    std::vector<Mat> actions;
    actions.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        Mat block(f, d * rank, d * rank);
        const Mat& l = algebra->mult_matrix(i);
        for (std::size_t b = 0; b < rank; ++b)
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) block.at(b * d + r, b * d + c) = l.at(r, c);
        actions.push_back(std::move(block));
    }
    return make(std::move(algebra), std::move(actions), Validate::trusted);
}

ModulePtr FiniteModule::residue_field(AlgebraPtr algebra) {
    const FieldConfig& f = algebra->field();
    std::vector<Mat> actions;
    actions.push_back(Mat::identity(f, 1));
    for (std::size_t i = 1; i < algebra->dim(); ++i) actions.push_back(Mat(f, 1, 1));
    return make(std::move(algebra), std::move(actions), Validate::trusted);
}

ModulePtr FiniteModule::direct_sum(const ModulePtr& a, const ModulePtr& b) {
    if (a->algebra() != b->algebra())
        throw std::invalid_argument("direct summands live over different algebras");
    const FieldConfig& f = a->field();
    std::vector<Mat> actions;
    for (std::size_t i = 0; i < a->algebra()->dim(); ++i) {
        Mat block(f, a->dim() + b->dim(), a->dim() + b->dim());
        for (std::size_t r = 0; r < a->dim(); ++r)
            for (std::size_t c = 0; c < a->dim(); ++c) block.at(r, c) = a->action(i).at(r, c);
        for (std::size_t r = 0; r < b->dim(); ++r)
            for (std::size_t c = 0; c < b->dim(); ++c)
                block.at(a->dim() + r, a->dim() + c) = b->action(i).at(r, c);
        actions.push_back(std::move(block));
    }
    return make(a->algebra(), std::move(actions), Validate::trusted);
}

ModulePtr FiniteModule::cokernel(const AlgebraPtr& algebra, std::size_t rank,
                                 const std::vector<std::vector<Element>>& relation_columns) {
    ModulePtr free = free_module(algebra, rank);
    std::vector<Vec> gens;
    for (const auto& col : relation_columns) {
        if (col.size() != rank)
            throw std::invalid_argument("relation column length does not match the free rank");
        Vec v;
        v.reserve(algebra->dim() * rank);
        for (const Element& e : col) {
            if (e.parent() != algebra)
                throw std::invalid_argument("relation entry belongs to a different algebra");
            v.insert(v.end(), e.coords().begin(), e.coords().end());
        }
        gens.push_back(std::move(v));
    }
    Subspace sub = submodule_spanned(free, gens);
    return quotient_module(free, sub, Validate::trusted).module;
}

Mat FiniteModule::action_of(const Element& a) const {
    if (a.parent() != algebra_)
        throw std::invalid_argument("element does not belong to this module's algebra");
    Mat out(field(), dim_, dim_);
    for (std::size_t i = 0; i < algebra_->dim(); ++i) {
        Scalar c = a.coords()[i];
        if (c == 0) continue;
        out = out.add(actions_[i].scaled(c));
    }
    return out;
}

Vec FiniteModule::apply(const Element& a, const Vec& v) const {
    if (a.parent() != algebra_)
        throw std::invalid_argument("element does not belong to this module's algebra");
    if (v.size() != dim_) throw std::invalid_argument("vector length does not match module dimension");
    const FieldConfig& f = field();
    Vec out(dim_, 0);
    for (std::size_t i = 0; i < algebra_->dim(); ++i) {
        Scalar c = a.coords()[i];
        if (c == 0) continue;
        Vec w = actions_[i].apply(v);
        for (std::size_t k = 0; k < dim_; ++k) out[k] = f.add(out[k], f.mul(c, w[k]));
    }
    return out;
}

Subspace submodule_spanned(const ModulePtr& m, const std::vector<Vec>& vectors) {
    IncrementalSpan span(m->field(), m->dim());
    for (const Vec& v : vectors) {
        if (v.size() != m->dim())
            throw std::invalid_argument("vector length does not match module dimension");
        // rho(e_k) rho(e_i) v expands over rho(e_j) v, so one pass is closed.
        for (std::size_t i = 0; i < m->algebra()->dim(); ++i) span.insert(m->action(i).apply(v));
    }
    return span.to_subspace();
}

Subspace submodule_product(const ModulePtr& m, const IdealSpan& ideal) {
    if (ideal.parent() != m->algebra())
        throw std::invalid_argument("ideal does not belong to this module's algebra");
    IncrementalSpan span(m->field(), m->dim());
    for (std::size_t b = 0; b < ideal.dim(); ++b) {
        Mat act = m->action_of(m->algebra()->element(ideal.space().basis_vector(b)));
        for (std::size_t c = 0; c < m->dim(); ++c) {
            Vec col(m->dim());
            for (std::size_t r = 0; r < m->dim(); ++r) col[r] = act.at(r, c);
            span.insert(std::move(col));
        }
    }
    return span.to_subspace();
}

Subspace submodule_product(const ModulePtr& m, const std::vector<Element>& xs) {
    IncrementalSpan span(m->field(), m->dim());
    for (const Element& x : xs) {
        Mat act = m->action_of(x);
        for (std::size_t c = 0; c < m->dim(); ++c) {
            Vec col(m->dim());
            for (std::size_t r = 0; r < m->dim(); ++r) col[r] = act.at(r, c);
            span.insert(std::move(col));
        }
    }
    return span.to_subspace();
}

ModuleQuotient quotient_module(const ModulePtr& m, const Subspace& sub, Validate mode) {
    if (sub.ambient_dim() != m->dim())
        throw std::invalid_argument("subspace ambient does not match module dimension");
    if (mode == Validate::full) {
        for (std::size_t b = 0; b < sub.dim(); ++b) {
            Vec v = sub.basis_vector(b);
            for (std::size_t i = 1; i < m->algebra()->dim(); ++i)
                if (!sub.contains(m->action(i).apply(v)))
                    throw std::invalid_argument("subspace is not action-invariant");
        }
    }
    const FieldConfig& f = m->field();
    const std::size_t d = m->dim();
    std::vector<bool> is_piv(d, false);
    for (std::size_t c : sub.pivot_cols()) is_piv[c] = true;
    std::vector<std::size_t> reps;
    for (std::size_t c = 0; c < d; ++c)
        if (!is_piv[c]) reps.push_back(c);
    const std::size_t q = reps.size();

    Mat proj(f, q, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vec e(d, 0);
        e[j] = 1;
        Vec red = sub.reduce(e);
        for (std::size_t r = 0; r < q; ++r) proj.at(r, j) = red[reps[r]];
    }

    std::vector<Mat> actions;
    for (std::size_t i = 0; i < m->algebra()->dim(); ++i) {
        Mat act(f, q, q);
        for (std::size_t c = 0; c < q; ++c) {
            Vec e(d, 0);
            e[reps[c]] = 1;
            Vec img = proj.apply(m->action(i).apply(e));
            for (std::size_t r = 0; r < q; ++r) act.at(r, c) = img[r];
        }
        actions.push_back(std::move(act));
    }
    ModulePtr out = FiniteModule::make(m->algebra(), std::move(actions),
                                       mode == Validate::full ? Validate::full : Validate::trusted);
    return {std::move(out), std::move(proj), std::move(reps)};
}

ModulePtr restrict_scalars(const AlgebraMorphism& phi, const ModulePtr& m) {
    if (m->algebra() != phi.target())
        throw std::invalid_argument("module is not defined over the morphism target");
    std::vector<Mat> actions;
    for (std::size_t i = 0; i < phi.source()->dim(); ++i)
        actions.push_back(m->action_of(phi.apply(phi.source()->basis_element(i))));
    return FiniteModule::make(phi.source(), std::move(actions), Validate::trusted);
}

std::vector<Vec> minimal_module_generators(const ModulePtr& m) {
    Subspace mm = submodule_product(m, IdealSpan(m->algebra(), m->algebra()->max_ideal()));
    std::vector<bool> is_piv(m->dim(), false);
    for (std::size_t c : mm.pivot_cols()) is_piv[c] = true;
    std::vector<Vec> gens;
    for (std::size_t c = 0; c < m->dim(); ++c) {
        if (is_piv[c]) continue;
        Vec v(m->dim(), 0);
        v[c] = 1;
        gens.push_back(std::move(v));
    }
    return gens;
}

FlatnessVerdict is_flat(const ModulePtr& m) {
    std::vector<Vec> gens = minimal_module_generators(m);
    const std::size_t g = gens.size();
    bool flat = (m->dim() == g * m->algebra()->dim());
    if (flat && m->dim() > 0) {
        // Nakayama: the lifted generators span; dimensions then force freeness.
        if (submodule_spanned(m, gens).dim() != m->dim())
            throw std::logic_error("minimal generators fail to span; module data is inconsistent");
    }
    return {flat, g};
}

namespace {

bool witness_valid(const ModulePtr& m, const Subspace& mm, const Vec& lambda, const Vec& v) {
    const AlgebraPtr& a = m->algebra();
    Element lam = a->element(lambda);
    if (lam.is_unit() || lam.is_zero()) return false;
    Vec img = m->apply(lam, v);
    for (Scalar c : img)
        if (c != 0) return false;
    return !mm.contains(v);
}

// Checks one lambda; fills the witness on failure.
bool lambda_ok(const ModulePtr& m, const Subspace& mm, const Vec& lambda,
               std::optional<WtfWitness>& witness) {
    Subspace ker = kernel(m->action_of(m->algebra()->element(lambda)));
    for (std::size_t i = 0; i < ker.dim(); ++i) {
        Vec v = ker.basis_vector(i);
        if (!mm.contains(v)) {
            WtfWitness w{lambda, v};
            if (!witness_valid(m, mm, w.lambda, w.vector))
                throw std::logic_error("weak-torsion witness failed re-verification");
            witness = std::move(w);
            return false;
        }
    }
    return true;
}

} // namespace

WtfVerdict is_weakly_torsion_free(const ModulePtr& m, WtfMode mode, std::uint64_t trials,
                                  std::uint64_t seed) {
    const AlgebraPtr& a = m->algebra();
    const std::size_t d = a->dim();
    const Scalar p = a->field().p();
    Subspace mm = submodule_product(m, IdealSpan(a, a->max_ideal()));
    std::optional<WtfWitness> witness;
    std::uint64_t checked = 0;

    if (d == 1) return {true, std::nullopt, 0, true};

    if (mode == WtfMode::exhaustive) {
        // |m| = p^{d-1}; enumerate up to scalar multiples (first nonzero
        // coordinate normalized to 1).
        double log2_size = double(d - 1) * std::log2(double(p));
        if (log2_size > 20.0)
            throw std::invalid_argument(
                "maximal ideal has more than 2^20 elements; use sampled mode");
        for (std::size_t lead = 1; lead < d && !witness; ++lead) {
            std::uint64_t suffix_count = 1;
            for (std::size_t i = lead + 1; i < d; ++i) suffix_count *= p;
            for (std::uint64_t idx = 0; idx < suffix_count && !witness; ++idx) {
                Vec lambda(d, 0);
                lambda[lead] = 1;
                std::uint64_t rest = idx;
                for (std::size_t i = d; i-- > lead + 1;) {
                    lambda[i] = Scalar(rest % p);
                    rest /= p;
                }
                ++checked;
                lambda_ok(m, mm, lambda, witness);
            }
        }
        return {!witness.has_value(), std::move(witness), checked, true};
    }

    std::mt19937_64 rng(seed);
    for (std::uint64_t t = 0; t < trials && !witness; ++t) {
        Vec lambda(d, 0);
        bool nonzero = false;
        for (std::size_t i = 1; i < d; ++i) {
            lambda[i] = Scalar(rng() % p);
            if (lambda[i] != 0) nonzero = true;
        }
        if (!nonzero) continue;
        ++checked;
        lambda_ok(m, mm, lambda, witness);
    }
    return {!witness.has_value(), std::move(witness), checked, false};
}

std::optional<std::vector<Vec>> resolve(const ModulePtr& m, const std::vector<Element>& xs,
                                        const Vec& target) {
    if (target.size() != m->dim())
        throw std::invalid_argument("target length does not match module dimension");
    if (xs.empty()) {
        for (Scalar c : target)
            if (c != 0) return std::nullopt;
        return std::vector<Vec>{};
    }
    Mat stacked = m->action_of(xs[0]);
    for (std::size_t k = 1; k < xs.size(); ++k) stacked = stacked.hstack(m->action_of(xs[k]));
    std::optional<Vec> sol = solve(stacked, target);
    if (!sol) return std::nullopt;
    std::vector<Vec> parts;
    for (std::size_t k = 0; k < xs.size(); ++k)
        parts.emplace_back(sol->begin() + k * m->dim(), sol->begin() + (k + 1) * m->dim());
    return parts;
}

} // namespace artin
