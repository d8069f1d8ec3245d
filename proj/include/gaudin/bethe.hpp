// The Bethe system on the variables t_l(i), its polynomial rewriting through
// T_i(x) = prod_l (x - t_l(i)), an analytic Jacobian and a multiprecision
// damped Newton solver with deterministic multi-start search.
#pragma once

#include "gaudin/errors.hpp"
#include "gaudin/weightfunc.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gaudin {

struct BetheProblem {
    int rank = 0;
    std::vector<Weight> weights;   // Lambda(1..n), fundamental coordinates
    std::vector<Rational> marks;   // z_1..z_n
    RootVector k;

    int size() const { return static_cast<int>(weights.size()); }
    /// (Lambda(j), alpha_i), 0-based j and i.
    const Rational& pairing(int j, int i) const { return weights.at(j)[i]; }
    Weight target_weight() const { return shift_weight(weights, k); }
    /// Throws std::invalid_argument (or RankMismatch/NotDominant) on inconsistent data.
    void validate() const;
};

/// One entry per variable t_l(i), ordered by group then l:
/// sum_{s != l} 2/(t_l(i)-t_s(i)) - sum_s 1/(t_l(i)-t_s(i-1)) - sum_s 1/(t_l(i)-t_s(i+1))
///   - sum_j (Lambda(j),alpha_i)/(t_l(i)-z_j).
/// Throws PoleError naming the colliding pair.
template <class S>
std::vector<S> bethe_residual(const BetheProblem& p, const BetheVariables<S>& t);

/// The same residuals via T_i''/T_i' - T_{i-1}'/T_{i-1} - T_{i+1}'/T_{i+1} evaluated from
/// expanded coefficients.  Throws PoleError when some T_i has a repeated root.
template <class S>
std::vector<S> bethe_residual_polyform(const BetheProblem& p, const BetheVariables<S>& t);

/// d residual_r / d variable_c, flat ordering as in bethe_residual.
template <class S>
std::vector<std::vector<S>> bethe_jacobian(const BetheProblem& p, const BetheVariables<S>& t);

/// Residual l multiplied by all of its denominators: a polynomial system with
/// the same roots inside the domain, plus spurious roots on collisions.
template <class S>
std::vector<S> bethe_residual_cleared(const BetheProblem& p, const BetheVariables<S>& t);

template <class S>
std::vector<std::vector<S>> bethe_jacobian_cleared(const BetheProblem& p, const BetheVariables<S>& t);

struct SingularJacobian : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DampingFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MaxIterationsExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BetheSolution {
    BetheVariables<Complex> t;
    Real residual_norm;
    unsigned precision_bits = kDefaultPrecisionBits;
    bool converged = false;
    int iterations = 0;
};

/// 2^(-precision_bits/2).
Real default_tolerance(unsigned precision_bits);

/// 10^6 * tol: minimal separation of every pair of quantities that meet in a denominator.
Real collision_margin(const Real& tol);

/// Smallest |difference| over all pairs that appear in denominators of the
/// system or of the weight function: within a group, adjacent groups, and marks.
Real min_separation(const BetheProblem& p, const BetheVariables<Complex>& t);

/// Sorts each group by (real, imaginary), treating real parts within `eps` as tied.
void canonicalize(BetheVariables<Complex>& t, const Real& eps);

/// True when the two points agree as multisets per group to within eps (max norm).
bool same_solution(const BetheVariables<Complex>& a, const BetheVariables<Complex>& b, const Real& eps);

/// Damped Newton on the cleared system: halve the step until its residual norm
/// decreases (at most 30 times).  Iteration stops once the cleared residual and
/// the last step are below tol; the point counts as converged iff the rational
/// residual is below tol and no pair is closer than collision_margin(tol).
/// A start on a pole throws PoleError.
BetheSolution newton_solve(const BetheProblem& p, const BetheVariables<Complex>& start, unsigned precision_bits,
                           int max_iter, const Real& tol);

struct MultiStartOptions {
    int num_starts = 64;
    std::uint64_t seed = 0;
    unsigned precision_bits = kDefaultPrecisionBits;
    int max_iter = 200;
    int threads = 1;
};

/// How each start ended; counts are independent of the thread count.
struct MultiStartStats {
    int converged = 0;
    int rejected = 0;  // Newton stopped but the point failed the residual or separation test
    int pole = 0;
    int singular_jacobian = 0;
    int damping_failed = 0;
    int max_iterations = 0;
};

/// Starts are drawn from derive_seed(seed, start) in a complex box around the
/// marks.  Results are canonicalized, deduplicated within 10 tol and returned in
/// canonical order; the output does not depend on the thread count.
std::vector<BetheSolution> multi_start_solve(const BetheProblem& p, const MultiStartOptions& options,
                                             MultiStartStats* stats = nullptr);

/// u = (t - z_1) / (z_2 - z_1).
struct AffineNormalization {
    Rational origin;
    Rational scale;

    Rational to_normalized(const Rational& t) const { return (t - origin) / scale; }
    Rational from_normalized(const Rational& u) const { return u * scale + origin; }
    Complex to_normalized(const Complex& t) const { return (t - origin) / scale; }
    Complex from_normalized(const Complex& u) const { return u * scale + origin; }

    template <class S>
    BetheVariables<S> pull_back(const BetheVariables<S>& u) const {
        BetheVariables<S> t = u;
        for (auto& g : t)
            for (auto& x : g) x = from_normalized(x);
        return t;
    }
};

/// For n = 2: the problem with marks (0, 1) and the map between variables.
/// Residuals relate by residual_normalized(u) = (z_2 - z_1) residual(t).
std::pair<BetheProblem, AffineNormalization> reduce_to_01(const BetheProblem& p);

} // namespace gaudin
