#include "gaudin/identities.hpp"

#include "gaudin/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gaudin {

std::string_view to_string(IdentityKind kind) {
    switch (kind) {
        case IdentityKind::I: return "I";
        case IdentityKind::II: return "II";
        case IdentityKind::III: return "III";
        case IdentityKind::IV: return "IV";
        case IdentityKind::P1a: return "P1a";
        case IdentityKind::P1b: return "P1b";
    }
    return "?";
}

IdentityKind parse_identity_kind(std::string_view tag) {
    for (auto k : {IdentityKind::I, IdentityKind::II, IdentityKind::III, IdentityKind::IV, IdentityKind::P1a, IdentityKind::P1b})
        if (to_string(k) == tag) return k;
    throw std::invalid_argument("unknown identity kind '" + std::string(tag) + "'");
}

void IdentitySpec::validate() const {
    if (k < 1) throw std::invalid_argument("identity needs k >= 1");
    if ((kind == IdentityKind::IV || kind == IdentityKind::P1b) && (i < 1 || i > k))
        throw std::invalid_argument("index i must satisfy 1 <= i <= k");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

long uniform_int(std::mt19937_64& rng, long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng() % span);
}

Rational random_rational(std::mt19937_64& rng, long range, long max_den) {
    long p = uniform_int(rng, -range, range - 1);
    if (p >= 0) ++p;  // skip zero
    Rational q(p, uniform_int(rng, 1, max_den));
    q.canonicalize();
    return q;
}

namespace {

// Denominator factors of the chain fraction for the identity, as a list of
// "variable slots": index < k means t[perm[index]], otherwise a fixed value.
struct Chain {
    // Each factor is (left - right); a side is either a t-slot or a constant.
    struct Side {
        int slot = -1;  // position in the permuted t sequence, -1 for constant
        Rational value;
    };
    std::vector<std::pair<Side, Side>> factors;
};

Chain::Side slot(int position) { return {position, 0}; }
Chain::Side constant(const Rational& v) { return {-1, v}; }

Chain chain_for(const IdentitySpec& spec, const EvalPoint& p) {
    Chain c;
    int k = spec.k;
    auto link_run = [&](int from, int to) {
        for (int q = from; q + 1 <= to; ++q) c.factors.push_back({slot(q), slot(q + 1)});
    };
    switch (spec.kind) {
        case IdentityKind::I:
            c.factors.push_back({constant(p.s1), slot(0)});
            link_run(0, k - 1);
            c.factors.push_back({slot(k - 1), constant(p.s2)});
            break;
        case IdentityKind::II:
            c.factors.push_back({constant(p.s), slot(0)});
            link_run(0, k - 1);
            c.factors.push_back({slot(k - 1), constant(0)});
            break;
        case IdentityKind::III:
            link_run(0, k - 1);
            c.factors.push_back({slot(k - 1), constant(p.s)});
            break;
        case IdentityKind::IV: {
            // (t_1-t_2)...(t_{i-1}-s)(s-t_i)(t_i-t_{i+1})...(t_{k-1}-t_k) t_k
            int i = spec.i;
            link_run(0, i - 2);
            if (i >= 2) c.factors.push_back({slot(i - 2), constant(p.s)});
            c.factors.push_back({constant(p.s), slot(i - 1)});
            link_run(i - 1, k - 1);
            c.factors.push_back({slot(k - 1), constant(0)});
            break;
        }
        default: throw std::logic_error("no chain fraction for this identity kind");
    }
    return c;
}

Rational side_value(const Chain::Side& s, const std::vector<Rational>& t, const std::vector<int>& perm) {
    return s.slot < 0 ? s.value : t[perm[s.slot]];
}

std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int j = 2; j <= k; ++j) f *= static_cast<std::uint64_t>(j);
    return f;
}

Rational sym_chain(const IdentitySpec& spec, const EvalPoint& p, std::uint64_t cap) {
    if (static_cast<int>(p.t.size()) != spec.k) throw std::invalid_argument("evaluation point has the wrong number of t values");
    if (spec.k > 20 || factorial(spec.k) > cap)
        throw EnumerationCapExceeded("k! exceeds the enumeration cap for k = " + std::to_string(spec.k));
    Chain c = chain_for(spec, p);
    std::vector<int> perm(spec.k);
    std::iota(perm.begin(), perm.end(), 0);
    Rational sum = 0;
    do {
        Rational den = 1;
        for (const auto& [l, r] : c.factors) {
            Rational d = side_value(l, p.t, perm) - side_value(r, p.t, perm);
            if (sgn(d) == 0) throw PoleError("chain fraction denominator vanishes");
            den *= d;
        }
        sum += 1 / den;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

Rational T_at(const std::vector<Rational>& t, const Rational& x) {
    Rational v = 1;
    for (const auto& tj : t) v *= x - tj;
    return v;
}

Rational nonzero(const Rational& d, const char* what) {
    if (sgn(d) == 0) throw PoleError(std::string("closed form denominator vanishes: ") + what);
    return d;
}

} // namespace

Rational sym_bruteforce(const IdentitySpec& spec, const EvalPoint& p, std::uint64_t cap) {
    spec.validate();
    switch (spec.kind) {
        case IdentityKind::P1a: {
            auto T = poly_from_roots(p.t, Rational(1));
            return poly_eval(poly_derivative(T), p.s) / nonzero(poly_eval(T, p.s), "T(x)");
        }
        case IdentityKind::P1b: {
            auto T = poly_from_roots(p.t, Rational(1));
            auto dT = poly_derivative(T);
            const Rational& x = p.t.at(spec.i - 1);
            return poly_eval(poly_derivative(dT), x) / nonzero(poly_eval(dT, x), "T'(t_i)");
        }
        default: return sym_chain(spec, p, cap);
    }
}

Rational closed_form(const IdentitySpec& spec, const EvalPoint& p) {
    spec.validate();
    int k = spec.k;
    Rational sign = k % 2 ? -1 : 1;
    switch (spec.kind) {
        case IdentityKind::I: {
            Rational num = sign;
            for (int j = 0; j < k - 1; ++j) num *= p.s1 - p.s2;
            return num / nonzero(T_at(p.t, p.s1) * T_at(p.t, p.s2), "T(s1) T(s2)");
        }
        case IdentityKind::II: {
            Rational num = 1;
            for (int j = 0; j < k - 1; ++j) num *= p.s;
            return num / nonzero(T_at(p.t, p.s) * elementary_symmetric(p.t, k), "T(s) tau_k");
        }
        case IdentityKind::III: return sign / nonzero(T_at(p.t, p.s), "T(s)");
        case IdentityKind::IV: {
            int i = spec.i;
            Rational num = (i - 1) % 2 ? -1 : 1;
            for (int j = 0; j < k - i; ++j) num *= p.s;
            num *= elementary_symmetric(p.t, i - 1);
            return num / nonzero(T_at(p.t, p.s) * elementary_symmetric(p.t, k), "T(s) tau_k");
        }
        case IdentityKind::P1a: {
            Rational sum = 0;
            for (const auto& tj : p.t) sum += 1 / nonzero(p.s - tj, "x - t_j");
            return sum;
        }
        case IdentityKind::P1b: {
            const Rational& ti = p.t.at(spec.i - 1);
            Rational sum = 0;
            for (int j = 0; j < k; ++j)
                if (j != spec.i - 1) sum += 2 / nonzero(ti - p.t[j], "t_i - t_j");
            return sum;
        }
    }
    throw std::logic_error("unhandled identity kind");
}

EvalPoint sample_point(const IdentitySpec& spec, std::mt19937_64& rng) {
    spec.validate();
    while (true) {
        EvalPoint p;
        for (int j = 0; j < spec.k; ++j) p.t.push_back(random_rational(rng));
        p.s = random_rational(rng);
        p.s1 = random_rational(rng);
        p.s2 = random_rational(rng);
        // Reject any coincidence among t, s, s1, s2 and 0; this covers every
        // denominator of every kind.
        std::vector<Rational> all = p.t;
        all.push_back(p.s);
        all.push_back(p.s1);
        all.push_back(p.s2);
        all.push_back(0);
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) == all.end()) return p;
    }
}

IdentityReport verify_identity(const IdentitySpec& spec, int trials, std::uint64_t seed) {
    spec.validate();
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    IdentityReport report{spec, trials, 0, std::nullopt, std::nullopt};
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        EvalPoint p = sample_point(spec, rng);
        if (sym_bruteforce(spec, p) != closed_form(spec, p)) {
            ++report.failures;
            if (!report.witness) {
                report.witness = p;
                report.witness_trial = trial;
            }
        }
    }
    return report;
}

} // namespace gaudin
