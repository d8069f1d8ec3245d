// Independent reference computations used only by the tests.
#pragma once

#include "gaudin/bethe.hpp"
#include "gaudin/identities.hpp"
#include "gaudin/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <random>
#include <vector>

namespace oracle {

using gaudin::Rational;
using gaudin::Weight;

/// Weight multiplicities of a module as a map.
inline std::map<Weight, int> character(const gaudin::Module& m) {
    std::map<Weight, int> ch;
    for (int i = 0; i < m.dim(); ++i) ++ch[m.weight_of(i)];
    return ch;
}

/// Multiplicity of each highest weight in L_a (x) L_b, by peeling characters:
/// repeatedly remove the character of the irreducible with the highest remaining dominant weight.
inline std::map<Weight, int> tensor_decomposition(const gaudin::Module& a, const gaudin::Module& b) {
    std::map<Weight, int> ch;
    for (const auto& [wa, ma] : character(a))
        for (const auto& [wb, mb] : character(b)) ch[wa + wb] += ma * mb;
    std::map<Weight, int> out;
    int rank = a.rank();
    while (true) {
        // The remaining weight of largest height (pairing with rho) is the highest
        // weight of some component.
        const Weight* top = nullptr;
        Rational best;
        for (const auto& [w, m] : ch) {
            if (m == 0) continue;
            Rational h = gaudin::pair(w, Weight::rho(rank));
            if (!top || h > best) {
                top = &w;
                best = h;
            }
        }
        if (!top) break;
        Weight hw = *top;
        int mult = ch[hw];
        if (!gaudin::is_dominant(hw)) throw std::logic_error("character peeling reached a non-dominant weight");
        out[hw] += mult;
        for (const auto& [w, m] : character(*gaudin::irreducible_module(hw))) ch[w] -= mult * m;
        for (const auto& [w, m] : ch)
            if (m < 0) throw std::logic_error("character peeling went negative");
    }
    return out;
}

/// sl2, two factors at z = (1, 0) with (Lambda(1),alpha) = a, (Lambda(0),alpha) = b:
/// the Bethe roots are the roots of the monic degree-k T with
/// t(t-1) T'' - (a t + b (t-1)) T' = (k(k-1) - (a+b)k) T.  Returns T's coefficients, lowest first.
inline std::vector<Rational> sl2_bethe_polynomial(long a, long b, int k) {
    // Unknowns c_0..c_{k-1}; c_k = 1.
    Rational lead = Rational(k * (k - 1) - (a + b) * k);
    gaudin::DenseMatrix m(k, k);
    std::vector<Rational> rhs(k, Rational(0));
    // Coefficient of x^d in the operator applied to x^j, minus lead * x^j.
    auto op = [&](int j, int d) {
        Rational v = 0;
        // t^2 T'' - t T'': x^j -> j(j-1) x^j - j(j-1) x^{j-1}
        if (d == j) v += j * (j - 1);
        if (d == j - 1) v -= j * (j - 1);
        // -(a+b) t T' + b T': x^j -> -(a+b) j x^j + b j x^{j-1}
        if (d == j) v -= (a + b) * j;
        if (d == j - 1) v += b * j;
        if (d == j) v -= lead;
        return v;
    };
    for (int d = 0; d < k; ++d) {
        for (int j = 0; j < k; ++j) m(d, j) = op(j, d);
        rhs[d] = -op(k, d);
    }
    auto sol = gaudin::solve(m, rhs);
    if (!sol) throw std::logic_error("sl2 Bethe polynomial system is singular");
    auto c = *sol;
    c.push_back(1);
    return c;
}

/// Central finite-difference Jacobian of the rational residual, complex step h.
inline std::vector<std::vector<gaudin::Complex>> finite_difference_jacobian(const gaudin::BetheProblem& p,
                                                                            const gaudin::BetheVariables<gaudin::Complex>& t,
                                                                            const Rational& h) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < static_cast<int>(t.size()); ++i)
        for (int l = 0; l < static_cast<int>(t[i].size()); ++l) slots.emplace_back(i, l);
    std::size_t n = slots.size();
    std::vector<std::vector<gaudin::Complex>> J(n);
    for (std::size_t c = 0; c < n; ++c) {
        auto tp = t, tm = t;
        unsigned bits = t[slots[c].first][slots[c].second].precision();
        tp[slots[c].first][slots[c].second] += gaudin::Complex(h, bits);
        tm[slots[c].first][slots[c].second] -= gaudin::Complex(h, bits);
        auto rp = gaudin::bethe_residual(p, tp);
        auto rm = gaudin::bethe_residual(p, tm);
        for (std::size_t r = 0; r < n; ++r) J[r].push_back((rp[r] - rm[r]) / Rational(2 * h));
    }
    return J;
}

/// Distinct random rationals avoiding the given values.
inline std::vector<Rational> distinct_rationals(std::mt19937_64& rng, int count, std::vector<Rational> avoid) {
    std::vector<Rational> out;
    while (static_cast<int>(out.size()) < count) {
        Rational q = gaudin::random_rational(rng);
        if (std::find(avoid.begin(), avoid.end(), q) != avoid.end()) continue;
        out.push_back(q);
        avoid.push_back(q);
    }
    return out;
}

/// e_i(t) by direct summation over i-subsets.
inline Rational elementary(const std::vector<Rational>& t, int i) {
    int n = static_cast<int>(t.size());
    if (i < 0 || i > n) return 0;
    Rational sum = 0;
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + i, true);
    do {
        Rational prod = 1;
        for (int j = 0; j < n; ++j)
            if (pick[j]) prod *= t[j];
        sum += prod;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return sum;
}

inline Rational T_at(const std::vector<Rational>& t, const Rational& x) {
    Rational v = 1;
    for (const auto& tj : t) v *= x - tj;
    return v;
}

/// T'(x) by the product rule.
inline Rational T_prime_at(const std::vector<Rational>& t, const Rational& x) {
    Rational sum = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        Rational prod = 1;
        for (std::size_t l = 0; l < t.size(); ++l)
            if (l != j) prod *= x - t[l];
        sum += prod;
    }
    return sum;
}

/// (-1)^(i-1) s^(k-i) e_(i-1)(t) / ((r-1) T(s) e_k(t)).
inline Rational sympower_omega(const std::vector<Rational>& t, const Rational& s, const Rational& r, int i) {
    int k = static_cast<int>(t.size());
    Rational num = (i - 1) % 2 ? -1 : 1;
    for (int j = 0; j < k - i; ++j) num *= s;
    return num * elementary(t, i - 1) / ((r - 1) * T_at(t, s) * elementary(t, k));
}

/// T'(s) / ((r-1) T(s) e_k(t)).
inline Rational sympower_weighted_sum(const std::vector<Rational>& t, const Rational& s, const Rational& r) {
    return T_prime_at(t, s) / ((r - 1) * T_at(t, s) * elementary(t, static_cast<int>(t.size())));
}

} // namespace oracle
