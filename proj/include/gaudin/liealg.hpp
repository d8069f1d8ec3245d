// Root and weight combinatorics of sl(N+1).
//
// Weights are stored in fundamental-weight coordinates, so the pairing of a
// weight with a simple root is a coordinate read.  Roots given by their
// multiplicity vector k convert to weights through the Cartan matrix columns.
#pragma once

#include "gaudin/mp.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaudin {

struct RankMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotDominant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class CartanData {
public:
    explicit CartanData(int rank);

    int rank() const { return rank_; }
    int cartan(int i, int j) const { return cartan_[i * rank_ + j]; }
    const Rational& inverse_cartan(int i, int j) const { return inverse_[i * rank_ + j]; }

private:
    int rank_;
    std::vector<int> cartan_;
    std::vector<Rational> inverse_;
};

/// Throws std::invalid_argument for N = 0.
CartanData build_cartan(int rank);

class Weight {
public:
    Weight() = default;
    explicit Weight(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Weight(std::initializer_list<long> coords);
    static Weight zero(int rank) { return Weight(std::vector<Rational>(rank, Rational(0))); }
    /// The i-th fundamental weight, 1-based.
    static Weight fundamental(int rank, int i);
    /// Weyl vector: all fundamental coordinates equal to one.
    static Weight rho(int rank) { return Weight(std::vector<Rational>(rank, Rational(1))); }
    /// Simple root alpha_i (1-based) in fundamental coordinates: the i-th Cartan column.
    static Weight simple_root(int rank, int i);

    int rank() const { return static_cast<int>(coords_.size()); }
    const Rational& operator[](int i) const { return coords_[i]; }
    const std::vector<Rational>& coords() const { return coords_; }
    bool is_integral() const;

    Weight& operator+=(const Weight& rhs);
    Weight& operator-=(const Weight& rhs);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(const Rational& c, Weight w);
    friend bool operator==(const Weight& a, const Weight& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const Weight& a, const Weight& b) { return a.coords_ < b.coords_; }

    std::string to_string() const;

private:
    std::vector<Rational> coords_;
};

/// Nonnegative multiplicities of the simple roots.
struct RootVector {
    std::vector<int> mult;

    int rank() const { return static_cast<int>(mult.size()); }
    int total() const;
    bool is_zero() const { return total() == 0; }
    friend bool operator==(const RootVector&, const RootVector&) = default;
};

/// Sum of k_i alpha_i as a weight.
Weight root_weight(const RootVector& k);

/// Standard invariant form, (alpha_i, alpha_i) = 2.
Rational pair(const Weight& a, const Weight& b);

bool is_dominant(const Weight& w);

/// Sum of the weights minus sum_i k_i alpha_i.
Weight shift_weight(const std::vector<Weight>& weights, const RootVector& k);

/// Dimension of the irreducible module with highest weight w.
std::int64_t weyl_dim(const Weight& w);

/// Coordinates in the (lambda_1..lambda_{N+1}) basis normalized by lambda_{N+1} = 0.
std::vector<Rational> to_lambda_basis(const Weight& w);
/// Inverse of to_lambda_basis; accepts any representative of the quotient class.
Weight from_lambda_basis(const std::vector<Rational>& lambda);

/// Coordinates in the orthogonal lambda basis (sum of coordinates zero).  The
/// standard form is the Euclidean dot product of these vectors.
std::vector<Rational> orthogonal_coords(const Weight& w);

/// Enumerates every dominant integral weight of sl(N+1) with weyl_dim <= max_dim.
std::vector<Weight> dominant_weights_up_to(int rank, std::int64_t max_dim);

} // namespace gaudin
