// Explicit finite-dimensional sl(N+1)-modules with exact generator matrices.
#pragma once

#include "gaudin/liealg.hpp"
#include "gaudin/linalg.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gaudin {

inline constexpr int kDefaultMaxModuleDim = 10000;

struct DimensionCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Chevalley generators e_i, f_i, h_i (1-based i) and root vectors E_ab (1-based a != b).
struct Generator {
    enum class Kind { E, F, H, Root };
    Kind kind;
    int a;
    int b = 0;

    static Generator e(int i) { return {Kind::E, i}; }
    static Generator f(int i) { return {Kind::F, i}; }
    static Generator h(int i) { return {Kind::H, i}; }
    static Generator root(int a, int b) { return {Kind::Root, a, b}; }

    /// Parses "e1", "f2", "h3" or "E13" (row 1, column 3).  Unknown labels throw.
    static Generator parse(std::string_view label);
    std::string label() const;
};

class Module {
public:
    int rank() const { return rank_; }
    int dim() const { return static_cast<int>(weights_.size()); }
    const Weight& highest_weight() const { return highest_weight_; }
    int hw_index() const { return hw_index_; }
    const Weight& weight_of(int idx) const { return weights_.at(idx); }
    const std::string& label(int idx) const { return labels_.at(idx); }
    /// Orthogonal lambda-basis coordinates of the weight of basis vector idx.
    const std::vector<Rational>& orthogonal_weight(int idx) const { return ortho_.at(idx); }

    const SparseMatrix& e(int i) const { return e_.at(i - 1); }
    const SparseMatrix& f(int i) const { return f_.at(i - 1); }
    const SparseMatrix& h(int i) const { return h_.at(i - 1); }
    /// E_ab, 1-based, a != b; E_{a,a+1} = e_a and E_{a+1,a} = f_a.
    const SparseMatrix& root_vector(int a, int b) const;
    const SparseMatrix& matrix(const Generator& g) const;

    /// Distinct weights in first-appearance order.
    const std::vector<Weight>& weights() const { return distinct_weights_; }
    const std::vector<int>& indices_of_weight(const Weight& mu) const;

    // Construction; invoked by the factory functions below.
    struct Data {
        int rank = 0;
        Weight highest_weight;
        std::vector<Weight> weights;
        std::vector<std::string> labels;
        std::vector<SparseMatrix> e, f;
        // Optional: when empty they are derived as iterated commutators.
        std::vector<std::vector<SparseMatrix>> roots;
        int hw_index = 0;
    };
    explicit Module(Data data);

private:
    int rank_;
    Weight highest_weight_;
    int hw_index_;
    std::vector<Weight> weights_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Rational>> ortho_;
    std::vector<SparseMatrix> e_, f_, h_;
    std::vector<std::vector<SparseMatrix>> roots_;  // (N+1) x (N+1), diagonal unused
    std::vector<Weight> distinct_weights_;
    std::map<Weight, std::vector<int>> by_weight_;
};

using ModulePtr = std::shared_ptr<const Module>;

/// Root vectors E_ab built as iterated commutators of the e_i (a < b) and f_i (a > b).
std::vector<std::vector<SparseMatrix>> root_vectors_from_chevalley(const std::vector<SparseMatrix>& e,
                                                                   const std::vector<SparseMatrix>& f);

/// i-th exterior power of the standard module, highest weight omega_i.
ModulePtr fundamental_module(int rank, int i);

/// m-th symmetric power of the standard module: monomial basis in eps_1..eps_{N+1},
/// highest weight vector eps_1^m at index 0.
ModulePtr symmetric_power_module(int rank, int m);

/// L_Lambda as the cyclic span of the top vector in L_{Lambda - omega_i} (x) fundamental_i,
/// generated breadth-first by the f_i.  Results are cached.
ModulePtr irreducible_module(const Weight& highest_weight, int max_dim = kDefaultMaxModuleDim);

/// Module for a tensor factor: the symmetric power realization for m*omega_1
/// (m >= 1), the cyclic construction otherwise.
ModulePtr factor_module(const Weight& highest_weight, int max_dim = kDefaultMaxModuleDim);

/// Sparse state of a single module.
template <class S>
struct ModuleState {
    ModulePtr module;
    std::map<int, S> coeffs;

    bool is_zero() const { return coeffs.empty(); }
};

ModuleState<Rational> highest_weight_state(const ModulePtr& m);

template <class S>
ModuleState<S> apply_generator(const Module& m, const Generator& g, const ModuleState<S>& v);

/// Applies a word of lowering operators f_{w[0]} f_{w[1]} ... (rightmost acts first, 0-based letters).
ModuleState<Rational> apply_word(const ModulePtr& m, const std::vector<int>& word, const ModuleState<Rational>& v);

std::vector<int> weight_space_basis(const Module& m, const Weight& mu);

/// Exact checks of [h_i,e_j] = a_ji e_j, [h_i,f_j] = -a_ji f_j, [e_i,f_j] = delta_ij h_i,
/// [h_i,h_j] = 0 and e_i(hw) = 0.  Returns an empty string on success, else a description.
std::string check_relations(const Module& m);

} // namespace gaudin
