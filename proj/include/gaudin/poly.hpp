// Dense univariate polynomials with coefficients in either scalar domain,
// used for T(x) = prod (x - t_j) and its derivatives.
#pragma once

#include "gaudin/mp.hpp"

#include <vector>

namespace gaudin {

/// Coefficients of prod (x - r), lowest degree first.  `proto` fixes the domain/precision.
template <class S>
std::vector<S> poly_from_roots(const std::vector<S>& roots, const S& proto) {
    std::vector<S> c{lift_like(proto, Rational(1))};
    for (const auto& r : roots) {
        std::vector<S> next(c.size() + 1, zero_like(proto));
        for (std::size_t d = 0; d < c.size(); ++d) {
            next[d + 1] += c[d];
            next[d] -= c[d] * r;
        }
        c = std::move(next);
    }
    return c;
}

template <class S, class X>
S poly_eval(const std::vector<S>& coeffs, const X& x) {
    S acc = coeffs.back();
    for (std::size_t d = coeffs.size() - 1; d-- > 0;) acc = acc * x + coeffs[d];
    return acc;
}

template <class S>
std::vector<S> poly_derivative(const std::vector<S>& coeffs) {
    if (coeffs.size() <= 1) return {zero_like(coeffs.front())};
    std::vector<S> out;
    for (std::size_t d = 1; d < coeffs.size(); ++d) out.push_back(coeffs[d] * Rational(static_cast<long>(d)));
    return out;
}

/// i-th elementary symmetric function of t (tau_0 = 1), by the standard recurrence.
template <class S>
S elementary_symmetric(const std::vector<S>& t, int i) {
    S one = t.empty() ? from_rational<S>(Rational(1), kDefaultPrecisionBits) : lift_like(t.front(), Rational(1));
    std::vector<S> e(t.size() + 1, zero_like(one));
    e[0] = one;
    for (std::size_t j = 0; j < t.size(); ++j)
        for (std::size_t d = j + 1; d >= 1; --d) e[d] += e[d - 1] * t[j];
    return i < 0 || i > static_cast<int>(t.size()) ? zero_like(one) : e[i];
}

} // namespace gaudin
