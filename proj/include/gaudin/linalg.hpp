// Exact rational linear algebra: sparse matrices, incremental echelon bases
// and dense kernels.
#pragma once

#include "gaudin/mp.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace gaudin {

/// Sparse vector over an integer index set (ordered for determinism).
using SparseVector = std::map<std::int64_t, Rational>;

void axpy(SparseVector& y, const Rational& a, const SparseVector& x);

/// Column-compressed square-or-rectangular exact matrix.
class SparseMatrix {
public:
    using Column = std::vector<std::pair<int, Rational>>;

    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Column>& columns() const { return data_; }

    /// Column j; entries sorted by row.
    const Column& column(int j) const;
    void set_column(int j, Column entries);
    void add(int row, int col, const Rational& value);
    Rational at(int row, int col) const;
    bool is_zero() const;
    std::size_t nonzeros() const;

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
    friend SparseMatrix operator*(const Rational& c, const SparseMatrix& a);
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

    static SparseMatrix identity(int n);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Column> data_;  // empty means all-zero
    void ensure_storage();
};

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b);

/// Incrementally maintained row-echelon basis of a subspace, with the change of
/// basis back to the vectors that were inserted.  Pivots are the first nonzero
/// coordinate of each reduced vector; every reduced vector vanishes at all
/// earlier pivots, so one forward sweep reduces any input.
class EchelonBasis {
public:
    /// Returns the index of the new basis vector, or nullopt if v was dependent.
    std::optional<int> insert(const SparseVector& v);
    /// Coordinates of v in terms of inserted vectors; nullopt if v is outside the span.
    std::optional<std::vector<Rational>> coordinates(const SparseVector& v) const;
    int size() const { return static_cast<int>(reduced_.size()); }

private:
    struct Row {
        SparseVector vec;
        std::int64_t pivot;
        std::vector<Rational> comb;  // vec = sum comb[l] * inserted[l]
    };
    std::vector<Row> reduced_;
    // Reduces v in place; returns the accumulated combination coefficients.
    std::vector<Rational> reduce(SparseVector& v) const;
};

/// Dense exact matrix, row-major.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> data;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, Rational(0)) {}
    Rational& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    const Rational& operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

/// Reduced row-echelon form in place; returns pivot columns.
std::vector<int> rref(DenseMatrix& m);

/// Kernel basis: one vector per free column, that column set to 1.
std::vector<std::vector<Rational>> nullspace(DenseMatrix m);

/// Solves the square system a x = b exactly; nullopt when a is singular.
std::optional<std::vector<Rational>> solve(DenseMatrix a, std::vector<Rational> b);

} // namespace gaudin
