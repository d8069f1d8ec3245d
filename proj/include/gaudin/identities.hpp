// Symmetrization identities for chain fractions, checked exactly by
// brute-force enumeration of S_k against their closed forms.
//
// Both sides of each identity are rational functions of bounded degree in
// every variable, so agreement at more random points than that bound (a few
// dozen for k <= 8) pins the identity down; trial counts default well above it.
#pragma once

#include "gaudin/errors.hpp"
#include "gaudin/mp.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace gaudin {

enum class IdentityKind { I, II, III, IV, P1a, P1b };

std::string_view to_string(IdentityKind kind);
/// Throws std::invalid_argument for unknown tags.
IdentityKind parse_identity_kind(std::string_view tag);

struct IdentitySpec {
    IdentityKind kind;
    int k;
    int i = 1;  // position of s for IV, index of t_i for P1b

    /// Throws std::invalid_argument when k or i is out of range.
    void validate() const;
};

struct EvalPoint {
    std::vector<Rational> t;
    Rational s = 0;
    Rational s1 = 0;
    Rational s2 = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 3628800;  // 10!

struct EnumerationCapExceeded : std::length_error {
    using std::length_error::length_error;
};

/// Left-hand side: the chain fraction summed over all k! permutations of t.
/// For P1a/P1b it is the polynomial route T'(s)/T(s) and T''(t_i)/T'(t_i)
/// computed from expanded coefficients.
Rational sym_bruteforce(const IdentitySpec& spec, const EvalPoint& p, std::uint64_t cap = kDefaultEnumerationCap);

/// Right-hand side in terms of T and the elementary symmetric functions.
Rational closed_form(const IdentitySpec& spec, const EvalPoint& p);

/// Pole-free point: numerators uniform in {-100..100} \ {0}, denominators in 1..20,
/// resampled until no denominator of either side vanishes.
EvalPoint sample_point(const IdentitySpec& spec, std::mt19937_64& rng);

struct IdentityReport {
    IdentitySpec spec;
    int trials = 0;
    int failures = 0;
    std::optional<EvalPoint> witness;  // first failing point
    std::optional<int> witness_trial;
};

/// Each trial draws its point from the sub-seed derive_seed(seed, trial).
IdentityReport verify_identity(const IdentitySpec& spec, int trials, std::uint64_t seed);

/// splitmix64 of seed + (index + 1) * golden ratio constant.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [lo, hi] from a 64-bit engine, platform independent.
long uniform_int(std::mt19937_64& rng, long lo, long hi);

/// Random rational p/q with p in {-range..range} \ {0}, q in 1..max_den.
Rational random_rational(std::mt19937_64& rng, long range = 100, long max_den = 20);

} // namespace gaudin
