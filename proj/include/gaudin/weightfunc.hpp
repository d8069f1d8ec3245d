// The universal weight function v_k(t) on a marked tensor product.
//
// A word assignment distributes the lowering letters f_i (k_i copies each)
// over the n tensor factors.  Reading the concatenated words left to right, the
// l-th occurrence of f_i is tagged with the variable t_l(i); the word on factor
// j becomes the chain fraction 1/((u_1-u_2)(u_2-u_3)...(u_s-z_j)) and omega is
// the sum of the product of chains over permutations inside each root group.
#pragma once

#include "gaudin/errors.hpp"
#include "gaudin/tensor.hpp"

#include <string>
#include <vector>

namespace gaudin {

inline constexpr int kDefaultMaxSymmetrizedVariables = 10;

/// One word of lowering letters per tensor factor; letters are 0-based root indices.
struct WordAssignment {
    std::vector<std::vector<int>> words;

    std::string to_string() const;
    friend bool operator==(const WordAssignment&, const WordAssignment&) = default;
    friend bool operator<(const WordAssignment& a, const WordAssignment& b) { return a.words < b.words; }
};

/// Variables grouped by simple root: t[i][l] = t_{l+1}(i+1).
template <class S>
using BetheVariables = std::vector<std::vector<S>>;

/// All distributions of the letter multiset into n ordered words, sorted
/// lexicographically word by word.  Throws on k = 0 or n < 1.
std::vector<WordAssignment> enumerate_assignments(const RootVector& k, int n);

/// The multiplicity vector implied by the assignment's letters.
RootVector letter_counts(const WordAssignment& a, int rank);

/// omega_a(t).  Throws PoleError naming the vanishing factor, std::length_error
/// when the number of variables exceeds `max_variables`.
template <class S>
S omega_value(const WordAssignment& a, const BetheVariables<S>& t, const std::vector<Rational>& marks,
              int max_variables = kDefaultMaxSymmetrizedVariables);

/// v_k(t) = sum_a omega_a(t) (F_1 v_1 (x) ... (x) F_n v_n); annihilated words are skipped.
template <class S>
TensorState<S> universal_weight_state(const TensorSpace& space, const RootVector& k, const BetheVariables<S>& t,
                                      int max_variables = kDefaultMaxSymmetrizedVariables);

/// The target vector F_1 v_1 (x) ... (x) F_n v_n.
TensorState<Rational> assignment_vector(const TensorSpace& space, const WordAssignment& target);

/// Coefficient of v along the target vector.  The target's factors must each
/// lie in a one-dimensional weight space, so the target is a multiple of one
/// tensor basis element.  Throws TargetVanishes if the target is zero.
template <class S>
S projection_coefficient(const TensorSpace& space, const TensorState<S>& v, const WordAssignment& target);

/// T(x) = prod (x - t_j).
template <class S>
S root_polynomial_at(const std::vector<S>& t, const S& x);

/// Coefficient of v_k(t) along v_1 (x) ... (x) f_1^k v_last when all k letters
/// sit on the last factor: (-1)^k / T(z_last).
template <class S>
S projection_closed_form_single_root(const std::vector<S>& t, const Rational& last_mark);

/// Coefficient along f_1^{k_1} v_1 (x) ... (x) f_m^{k_m} v_m (x) v_{m+1} ...:
/// (-1)^{k_1+...+k_m} / (T_1(z_1) ... T_m(z_m)).
template <class S>
S projection_closed_form_distributed(const BetheVariables<S>& t, const std::vector<Rational>& marks);

/// omega of (f_3 | f_1^{i-1} f_2 f_1^{k+1-i}) at z = (1, 0):
/// (-1)^{i-1} s^{k-i} tau_{i-1} / ((r-1) T(s) tau_k).
template <class S>
S omega_closed_form_sympower(const std::vector<S>& t, const S& s, const S& r, int i);

/// sum_i (k+1-i) omega_i = T'(s) / ((r-1) T(s) tau_k).
template <class S>
S weighted_omega_sum_closed_form(const std::vector<S>& t, const S& s, const S& r);

/// Word assignment (f_3 | f_1^{i-1} f_2 f_1^{k+1-i}).
WordAssignment sympower_assignment(int k, int i);

} // namespace gaudin
