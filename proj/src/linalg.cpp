#include "artin/linalg.hpp"

#include <stdexcept>

namespace artin {

Mat Mat::identity(FieldConfig field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(FieldConfig field, const std::vector<Vec>& rows, std::size_t cols) {
    Mat m(field, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("row length mismatch in Mat::from_rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Vec Mat::row(std::size_t r) const {
    Vec v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

Mat Mat::mul(const Mat& other) const {
    if (cols_ != other.rows_)
        throw std::invalid_argument("dimension mismatch in Mat::mul");
    Mat out(field_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            Scalar a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                Scalar prod = field_.mul(a, other.at(k, j));
                out.at(i, j) = field_.add(out.at(i, j), prod);
            }
        }
    return out;
}

Vec Mat::apply(const Vec& v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("dimension mismatch in Mat::apply");
    Vec out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            acc += std::uint64_t(at(i, j)) * v[j] % field_.p();
            if (acc >= (1ull << 62)) acc %= field_.p();
        }
        out[i] = Scalar(acc % field_.p());
    }
    return out;
}

Mat Mat::add(const Mat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("dimension mismatch in Mat::add");
    Mat out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = field_.add(data_[i], other.data_[i]);
    return out;
}

Mat Mat::scaled(Scalar c) const {
    Mat out(field_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = field_.mul(data_[i], c);
    return out;
}

Mat Mat::transposed() const {
    Mat out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out.at(c, r) = at(r, c);
    return out;
}

Mat Mat::vstack(const Mat& other) const {
    if (cols_ != other.cols_)
        throw std::invalid_argument("column mismatch in Mat::vstack");
    Mat out(field_, rows_ + other.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
    for (std::size_t r = 0; r < other.rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.at(rows_ + r, c) = other.at(r, c);
    return out;
}

Mat Mat::hstack(const Mat& other) const {
    if (rows_ != other.rows_)
        throw std::invalid_argument("row mismatch in Mat::hstack");
    Mat out(field_, rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c) out.at(r, cols_ + c) = other.at(r, c);
    }
    return out;
}

bool Mat::is_zero() const {
    for (Scalar v : data_)
        if (v != 0) return false;
    return true;
}

RrefResult rref(const Mat& m) {
    Mat r = m;
    const FieldConfig& f = r.field();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < r.cols() && pr < r.rows(); ++c) {
        std::size_t sel = pr;
        while (sel < r.rows() && r.at(sel, c) == 0) ++sel;
        if (sel == r.rows()) continue;
        if (sel != pr)
            for (std::size_t j = 0; j < r.cols(); ++j)
                std::swap(r.at(sel, j), r.at(pr, j));
        Scalar piv_inv = f.inv(r.at(pr, c));
        for (std::size_t j = c; j < r.cols(); ++j)
            r.at(pr, j) = f.mul(r.at(pr, j), piv_inv);
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == pr) continue;
            Scalar factor = r.at(i, c);
            if (factor == 0) continue;
            for (std::size_t j = c; j < r.cols(); ++j)
                r.at(i, j) = f.sub(r.at(i, j), f.mul(factor, r.at(pr, j)));
        }
        pivots.push_back(c);
        ++pr;
    }
    return {std::move(r), pivots.size(), std::move(pivots)};
}

Subspace Subspace::zero(FieldConfig field, std::size_t ambient_dim) {
    return Subspace(Mat(field, 0, ambient_dim), {});
}

Subspace Subspace::full(FieldConfig field, std::size_t ambient_dim) {
    std::vector<std::size_t> pivots(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) pivots[i] = i;
    return Subspace(Mat::identity(field, ambient_dim), std::move(pivots));
}

Subspace Subspace::row_space(const Mat& m) {
    RrefResult r = rref(m);
    Mat basis(m.field(), r.rank, m.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            basis.at(i, c) = r.mat.at(i, c);
    return Subspace(std::move(basis), std::move(r.pivot_cols));
}

Subspace Subspace::span(FieldConfig field, std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    return row_space(Mat::from_rows(field, vectors, ambient_dim));
}

Subspace Subspace::column_space(const Mat& m) {
    return row_space(m.transposed());
}

Subspace Subspace::from_echelon(FieldConfig field, std::size_t ambient_dim,
                                const std::vector<Vec>& rows, std::vector<std::size_t> pivots) {
    if (pivots.size() != rows.size())
        throw std::logic_error("from_echelon: pivot count does not match row count");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != ambient_dim)
            throw std::logic_error("from_echelon: row length mismatch");
        if (i > 0 && pivots[i] <= pivots[i - 1])
            throw std::logic_error("from_echelon: pivot columns not strictly increasing");
        if (pivots[i] >= ambient_dim || rows[i][pivots[i]] != 1)
            throw std::logic_error("from_echelon: pivot entry is not 1");
        for (std::size_t c = 0; c < pivots[i]; ++c)
            if (rows[i][c] != 0) throw std::logic_error("from_echelon: nonzero entry left of pivot");
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i && rows[j][pivots[i]] != 0)
                throw std::logic_error("from_echelon: pivot column not cleared in other rows");
    }
    return Subspace(Mat::from_rows(field, rows, ambient_dim), std::move(pivots));
}

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch in Subspace::reduce");
    const FieldConfig& f = field();
    Vec w = v;
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
        Scalar coef = w[pivots_[i]];
        if (coef == 0) continue;
        for (std::size_t c = 0; c < ambient_dim(); ++c)
            w[c] = f.sub(w[c], f.mul(coef, basis_.at(i, c)));
    }
    return w;
}

bool Subspace::contains(const Vec& v) const {
    Vec w = reduce(v);
    for (Scalar x : w)
        if (x != 0) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (ambient_dim() != other.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch in Subspace::contains");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_vector(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_dim() != other.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch in Subspace::sum");
    return row_space(basis_.vstack(other.basis_));
}

Mat Subspace::constraint_matrix() const {
    // v lies in the row space of basis_ iff u . v = 0 for every u in ker(basis_).
    Subspace k = kernel(basis_);
    return k.basis();
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient_dim() != other.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch in Subspace::intersect");
    Mat constraints = constraint_matrix().vstack(other.constraint_matrix());
    return kernel(constraints);
}

void IncrementalSpan::reduce_in_place(Vec& v) const {
    const FieldConfig& f = field_;
    for (std::size_t c = 0; c < ambient_; ++c) {
        Scalar coef = v[c];
        if (coef == 0) continue;
        std::size_t r = pivot_row_[c];
        if (r == kNoRow) continue;
        const Vec& row = rows_[r];
        for (std::size_t j = c; j < ambient_; ++j)
            if (row[j] != 0) v[j] = f.sub(v[j], f.mul(coef, row[j]));
    }
}

bool IncrementalSpan::insert(Vec v) {
    if (v.size() != ambient_)
        throw std::invalid_argument("ambient dimension mismatch in IncrementalSpan::insert");
    const FieldConfig& f = field_;
    reduce_in_place(v);
    std::size_t pc = ambient_;
    for (std::size_t c = 0; c < ambient_; ++c)
        if (v[c] != 0) { pc = c; break; }
    if (pc == ambient_) return false;
    Scalar piv_inv = f.inv(v[pc]);
    for (std::size_t j = pc; j < ambient_; ++j)
        if (v[j] != 0) v[j] = f.mul(v[j], piv_inv);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Scalar coef = rows_[r][pc];
        if (coef == 0) continue;
        for (std::size_t j = pc; j < ambient_; ++j)
            if (v[j] != 0) rows_[r][j] = f.sub(rows_[r][j], f.mul(coef, v[j]));
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pc) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, pc);
    for (std::size_t r = pos; r < rows_.size(); ++r) pivot_row_[pivots_[r]] = r;
    return true;
}

bool IncrementalSpan::contains(const Vec& v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("ambient dimension mismatch in IncrementalSpan::contains");
    Vec w = v;
    reduce_in_place(w);
    for (Scalar x : w)
        if (x != 0) return false;
    return true;
}

void IncrementalSpan::insert_all(const Subspace& s) {
    for (std::size_t i = 0; i < s.dim(); ++i) insert(s.basis_vector(i));
}

Subspace IncrementalSpan::to_subspace() const {
    return Subspace::from_echelon(field_, ambient_, rows_, pivots_);
}

Subspace kernel(const Mat& m) {
    RrefResult r = rref(m);
    const FieldConfig& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;

    std::vector<Vec> basis;
    for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
        if (is_pivot[free_c]) continue;
        Vec v(m.cols(), 0);
        v[free_c] = 1;
        for (std::size_t i = 0; i < r.rank; ++i)
            v[r.pivot_cols[i]] = f.neg(r.mat.at(i, free_c));
        basis.push_back(std::move(v));
    }
    return Subspace::span(f, m.cols(), basis);
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (b.size() != m.rows())
        throw std::invalid_argument("right-hand side length mismatch in solve");
    Mat rhs(m.field(), m.rows(), 1);
    for (std::size_t i = 0; i < m.rows(); ++i) rhs.at(i, 0) = b[i];
    RrefResult r = rref(m.hstack(rhs));
    for (std::size_t c : r.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    Vec x(m.cols(), 0);
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
        x[r.pivot_cols[i]] = r.mat.at(i, m.cols());
    return x;
}

} // namespace artin
