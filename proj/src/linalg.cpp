#include "gaudin/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gaudin {

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
    if (sgn(a) == 0) return;
    for (const auto& [i, v] : x) {
        auto [it, inserted] = y.try_emplace(i, a * v);
        if (!inserted) {
            it->second += a * v;
            if (sgn(it->second) == 0) y.erase(it);
        }
    }
}

// --- SparseMatrix -------------------------------------------------------------

namespace {

const SparseMatrix::Column& empty_column() {
    static const SparseMatrix::Column empty;
    return empty;
}

} // namespace

void SparseMatrix::ensure_storage() {
    if (data_.empty() && cols_ > 0) data_.resize(cols_);
}

const SparseMatrix::Column& SparseMatrix::column(int j) const {
    if (j < 0 || j >= cols_) throw std::out_of_range("matrix column out of range");
    return data_.empty() ? empty_column() : data_[j];
}

void SparseMatrix::set_column(int j, Column entries) {
    if (j < 0 || j >= cols_) throw std::out_of_range("matrix column out of range");
    ensure_storage();
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::erase_if(entries, [](const auto& e) { return sgn(e.second) == 0; });
    data_[j] = std::move(entries);
}

void SparseMatrix::add(int row, int col, const Rational& value) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw std::out_of_range("matrix index out of range");
    if (sgn(value) == 0) return;
    ensure_storage();
    auto& c = data_[col];
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == row) {
        it->second += value;
        if (sgn(it->second) == 0) c.erase(it);
    } else {
        c.insert(it, {row, value});
    }
}

Rational SparseMatrix::at(int row, int col) const {
    for (const auto& [r, v] : column(col))
        if (r == row) return v;
    return 0;
}

bool SparseMatrix::is_zero() const {
    for (const auto& c : data_)
        if (!c.empty()) return false;
    return true;
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : data_) n += c.size();
    return n;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
    SparseMatrix out(a.rows(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        std::map<int, Rational> acc;
        for (const auto& [k, bv] : b.column(j))
            for (const auto& [i, av] : a.column(k)) acc[i] += av * bv;
        SparseMatrix::Column col(acc.begin(), acc.end());
        if (!col.empty()) out.set_column(j, std::move(col));
    }
    return out;
}

namespace {

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, int sign) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
    SparseMatrix out(a.rows(), a.cols());
    for (int j = 0; j < a.cols(); ++j) {
        std::map<int, Rational> acc;
        for (const auto& [i, v] : a.column(j)) acc[i] += v;
        for (const auto& [i, v] : b.column(j)) acc[i] += sign > 0 ? v : Rational(-v);
        SparseMatrix::Column col(acc.begin(), acc.end());
        out.set_column(j, std::move(col));
    }
    return out;
}

} // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, +1); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, -1); }

SparseMatrix operator*(const Rational& c, const SparseMatrix& a) {
    SparseMatrix out(a.rows(), a.cols());
    if (sgn(c) == 0) return out;
    for (int j = 0; j < a.cols(); ++j) {
        SparseMatrix::Column col = a.column(j);
        for (auto& e : col) e.second *= c;
        if (!col.empty()) out.set_column(j, std::move(col));
    }
    return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int j = 0; j < a.cols(); ++j)
        if (a.column(j) != b.column(j)) return false;
    return true;
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.add(i, i, 1);
    return m;
}

SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) { return a * b - b * a; }

// --- EchelonBasis -------------------------------------------------------------

std::vector<Rational> EchelonBasis::reduce(SparseVector& v) const {
    std::vector<Rational> coeffs(reduced_.size(), Rational(0));
    for (const auto& row : reduced_) {
        auto it = v.find(row.pivot);
        if (it == v.end()) continue;
        Rational c = it->second / row.vec.at(row.pivot);
        axpy(v, -c, row.vec);
        for (std::size_t l = 0; l < row.comb.size(); ++l)
            if (sgn(row.comb[l]) != 0) coeffs[l] += c * row.comb[l];
    }
    return coeffs;
}

std::optional<int> EchelonBasis::insert(const SparseVector& v) {
    SparseVector work = v;
    auto coeffs = reduce(work);
    if (work.empty()) return std::nullopt;
    // work = v - sum coeffs[l] inserted[l]
    std::vector<Rational> comb(reduced_.size() + 1, Rational(0));
    for (std::size_t l = 0; l < coeffs.size(); ++l) comb[l] = -coeffs[l];
    comb.back() = 1;
    for (auto& row : reduced_) row.comb.resize(reduced_.size() + 1, Rational(0));
    std::int64_t pivot = work.begin()->first;
    reduced_.push_back(Row{std::move(work), pivot, std::move(comb)});
    return static_cast<int>(reduced_.size()) - 1;
}

std::optional<std::vector<Rational>> EchelonBasis::coordinates(const SparseVector& v) const {
    SparseVector work = v;
    auto coeffs = reduce(work);
    if (!work.empty()) return std::nullopt;
    return coeffs;
}

// --- dense --------------------------------------------------------------------

std::vector<int> rref(DenseMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (sgn(m(i, c)) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Rational f = m(i, c);
            for (int j = c; j < m.cols; ++j)
                if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> nullspace(DenseMatrix m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(DenseMatrix a, std::vector<Rational> b) {
    if (a.rows != a.cols || static_cast<int>(b.size()) != a.rows) throw std::invalid_argument("solve needs a square system");
    DenseMatrix aug(a.rows, a.cols + 1);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
        aug(i, a.cols) = b[i];
    }
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != a.rows || pivots.back() == a.cols) return std::nullopt;
    std::vector<Rational> x(a.rows);
    for (int i = 0; i < a.rows; ++i) x[i] = aug(i, a.cols);
    return x;
}

} // namespace gaudin
