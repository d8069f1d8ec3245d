// Marked tensor products, Casimir pair operators and Gaudin hamiltonians.
//
// The invariant form is the trace form of the standard representation, so the
// Casimir on a factor pair is sum_{a != b} E_ab (x) E_ba plus the Cartan part,
// which on weight vectors of weights mu, nu is the scalar (mu, nu).  Factor
// indices are 0-based throughout the C++ interface.
#pragma once

#include "gaudin/repr.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace gaudin {

class TensorSpace {
public:
    /// Throws std::invalid_argument on fewer than two factors, a length mismatch,
    /// or coincident marks, and RankMismatch when factor ranks differ.
    TensorSpace(std::vector<ModulePtr> factors, std::vector<Rational> marks);

    int size() const { return static_cast<int>(factors_.size()); }
    int rank() const { return factors_.front()->rank(); }
    const Module& factor(int j) const { return *factors_.at(j); }
    const ModulePtr& factor_ptr(int j) const { return factors_.at(j); }
    const std::vector<Rational>& marks() const { return marks_; }
    const Rational& mark(int j) const { return marks_.at(j); }
    std::int64_t dim() const;

private:
    std::vector<ModulePtr> factors_;
    std::vector<Rational> marks_;
};

inline TensorSpace tensor_space(std::vector<ModulePtr> factors, std::vector<Rational> marks) {
    return TensorSpace(std::move(factors), std::move(marks));
}

using MultiIndex = std::vector<int>;

template <class S>
struct TensorState {
    std::map<MultiIndex, S> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const MultiIndex& idx, const S& value);
    /// Drops exact zeros.
    void prune();
};

template <class S>
void TensorState<S>::add(const MultiIndex& idx, const S& value) {
    auto it = terms.find(idx);
    if (it == terms.end())
        terms.emplace(idx, value);
    else
        it->second += value;
}

template <class S>
void TensorState<S>::prune() {
    std::erase_if(terms, [](const auto& e) { return gaudin::is_zero(e.second); });
}

template <class S>
TensorState<S> operator+(TensorState<S> a, const TensorState<S>& b) {
    for (const auto& [idx, c] : b.terms) a.add(idx, c);
    a.prune();
    return a;
}

template <class S>
TensorState<S> operator-(TensorState<S> a, const TensorState<S>& b) {
    for (const auto& [idx, c] : b.terms) a.add(idx, -c);
    a.prune();
    return a;
}

template <class S, class C>
TensorState<S> scale(TensorState<S> v, const C& c) {
    for (auto& [idx, x] : v.terms) x = x * c;
    v.prune();
    return v;
}

/// Converts an exact state into domain S at the given precision.
template <class S>
TensorState<S> lift(const TensorState<Rational>& v, unsigned precision_bits) {
    TensorState<S> out;
    for (const auto& [idx, c] : v.terms) out.terms.emplace(idx, from_rational<S>(c, precision_bits));
    return out;
}

/// Product vector of one state per factor.
TensorState<Rational> tensor_product(const std::vector<ModuleState<Rational>>& states);

/// Euclidean norm in the tensor basis.
template <class S>
Real norm(const TensorState<S>& v, unsigned precision_bits);

template <class S>
TensorState<S> apply_factor(const TensorSpace& space, int factor, const SparseMatrix& x, const TensorState<S>& v);

/// Diagonal action sum_j x^{(j)} of a generator.
template <class S>
TensorState<S> apply_diagonal(const TensorSpace& space, const Generator& g, const TensorState<S>& v);

template <class S>
TensorState<S> apply_casimir(const TensorSpace& space, int i, int j, const TensorState<S>& v);

/// H_j = sum_{i != j} C_ij / (z_j - z_i).
template <class S>
TensorState<S> apply_hamiltonian(const TensorSpace& space, int j, const TensorState<S>& v);

/// (Lambda, Lambda + 2 rho): the scalar by which sum_{a,b} E_ab E_ba acts on L_Lambda.
Rational casimir_scalar(const Weight& highest_weight);

/// Tensor basis multi-indices of total weight mu, lexicographically ordered.
std::vector<MultiIndex> weight_space_indices(const TensorSpace& space, const Weight& mu);

/// Exact kernel basis of the stacked e_1..e_N on the mu weight space.
std::vector<TensorState<Rational>> singular_basis(const TensorSpace& space, const Weight& mu);

template <class S>
struct EigenReport {
    std::vector<S> eigenvalues;
    std::vector<double> residuals;           // ||H_j v - lambda_j v|| / ||v||
    std::vector<double> singular_residuals;  // ||e_i v|| / ||v||
    unsigned precision_bits = 0;             // 0 for exact arithmetic
    bool ok = false;
};

/// Eigenvalues come from the largest-magnitude coordinate of v for exact
/// scalars and from the least-squares fit <v, H v> / <v, v> for floats.
/// Throws std::invalid_argument on a zero vector.
template <class S>
EigenReport<S> check_common_eigenvector(const TensorSpace& space, const TensorState<S>& v, double tol);

} // namespace gaudin
