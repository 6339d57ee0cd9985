#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "artin/fp.hpp"

namespace artin {

using Vec = std::vector<Scalar>;

/// Dense matrix over F_p, row-major.
class Mat {
public:
    Mat(FieldConfig field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Mat identity(FieldConfig field, std::size_t n);
    static Mat from_rows(FieldConfig field, const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldConfig& field() const { return field_; }

    Scalar at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    Vec row(std::size_t r) const;

    Mat mul(const Mat& other) const;
    Vec apply(const Vec& v) const;
    Mat add(const Mat& other) const;
    Mat scaled(Scalar c) const;
    Mat transposed() const;

    /// Stack other's rows below this matrix. Column counts must agree.
    Mat vstack(const Mat& other) const;
    /// Concatenate other's columns to the right. Row counts must agree.
    Mat hstack(const Mat& other) const;

    bool is_zero() const;
    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    FieldConfig field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Mat mat;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form by Gauss-Jordan elimination, exact over F_p.
RrefResult rref(const Mat& m);

/// A linear subspace of F_p^n, stored as a canonical RREF basis.
/// Two Subspace values are equal as sets iff their representations are equal.
class Subspace {
public:
    static Subspace zero(FieldConfig field, std::size_t ambient_dim);
    static Subspace full(FieldConfig field, std::size_t ambient_dim);
    /// Canonicalize the span of the given vectors (zero vectors are dropped).
    static Subspace span(FieldConfig field, std::size_t ambient_dim, const std::vector<Vec>& vectors);
    /// Adopt rows already in reduced row-echelon form with the given pivot
    /// columns. The invariant is checked; violations throw std::logic_error.
    static Subspace from_echelon(FieldConfig field, std::size_t ambient_dim,
                                 const std::vector<Vec>& rows, std::vector<std::size_t> pivots);
    /// Canonicalize the row space of a matrix.
    static Subspace row_space(const Mat& m);
    /// Column space of a matrix (as vectors of length m.rows()).
    static Subspace column_space(const Mat& m);

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    const FieldConfig& field() const { return basis_.field(); }
    const Mat& basis() const { return basis_; }
    Vec basis_vector(std::size_t i) const { return basis_.row(i); }
    const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    /// Canonical representative of v modulo this subspace: pivot coordinates
    /// are eliminated, the result is supported on non-pivot coordinates.
    Vec reduce(const Vec& v) const;

    Subspace sum(const Subspace& other) const;
    /// Intersection via the kernel of stacked constraint matrices.
    Subspace intersect(const Subspace& other) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    explicit Subspace(Mat basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
    /// Rows of a matrix whose kernel is exactly this subspace.
    Mat constraint_matrix() const;

    Mat basis_;
    std::vector<std::size_t> pivots_;
};

/// Mutable echelon basis for building a span one vector at a time. Rows stay
/// in reduced row-echelon form, so insertion cost scales with the number of
/// pivots a vector actually hits; cheap for sparse inputs.
class IncrementalSpan {
public:
    IncrementalSpan(FieldConfig field, std::size_t ambient_dim)
        : field_(field), ambient_(ambient_dim), pivot_row_(ambient_dim, kNoRow) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient_dim() const { return ambient_; }
    const FieldConfig& field() const { return field_; }

    /// Reduce v against the current rows and adjoin any nonzero remainder.
    /// Returns true when the dimension grew.
    bool insert(Vec v);
    bool contains(const Vec& v) const;
    void insert_all(const Subspace& s);

    Subspace to_subspace() const;

private:
    static constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);
    void reduce_in_place(Vec& v) const;

    FieldConfig field_;
    std::size_t ambient_;
    std::vector<Vec> rows_;            // RREF rows, pivots strictly increasing
    std::vector<std::size_t> pivots_;  // pivot column per row
    std::vector<std::size_t> pivot_row_; // column -> row index, kNoRow if free
};

/// Kernel {v : m v = 0} as a subspace of F_p^cols.
Subspace kernel(const Mat& m);

/// One solution of m v = b if b lies in the column space, nullopt otherwise.
/// Deterministic tie-break: free variables are set to 0 after rref.
std::optional<Vec> solve(const Mat& m, const Vec& b);

} // namespace artin
