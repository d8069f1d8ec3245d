#include "gaudin/liealg.hpp"

#include <cstdlib>
#include <numeric>

namespace gaudin {

CartanData::CartanData(int rank) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("invalid rank " + std::to_string(rank) + ": need N >= 1");
    cartan_.assign(rank * rank, 0);
    inverse_.assign(rank * rank, Rational(0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) {
            int d = std::abs(i - j);
            cartan_[i * rank + j] = d == 0 ? 2 : (d == 1 ? -1 : 0);
            // A_N closed form: min(i,j) (N+1-max(i,j)) / (N+1), 1-based.
            int a = std::min(i, j) + 1, b = std::max(i, j) + 1;
            inverse_[i * rank + j] = Rational(a * (rank + 1 - b), rank + 1);
            inverse_[i * rank + j].canonicalize();
        }
}

CartanData build_cartan(int rank) { return CartanData(rank); }

Weight::Weight(std::initializer_list<long> coords) {
    for (long c : coords) coords_.emplace_back(c);
}

Weight Weight::fundamental(int rank, int i) {
    if (i < 1 || i > rank) throw std::out_of_range("fundamental weight index out of range");
    Weight w = zero(rank);
    w.coords_[i - 1] = 1;
    return w;
}

Weight Weight::simple_root(int rank, int i) {
    if (i < 1 || i > rank) throw std::out_of_range("simple root index out of range");
    Weight w = zero(rank);
    w.coords_[i - 1] = 2;
    if (i > 1) w.coords_[i - 2] = -1;
    if (i < rank) w.coords_[i] = -1;
    return w;
}

bool Weight::is_integral() const {
    for (const auto& c : coords_)
        if (c.get_den() != 1) return false;
    return true;
}

Weight& Weight::operator+=(const Weight& rhs) {
    if (rank() != rhs.rank()) throw RankMismatch("weight rank mismatch");
    for (int i = 0; i < rank(); ++i) coords_[i] += rhs.coords_[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& rhs) {
    if (rank() != rhs.rank()) throw RankMismatch("weight rank mismatch");
    for (int i = 0; i < rank(); ++i) coords_[i] -= rhs.coords_[i];
    return *this;
}

Weight operator*(const Rational& c, Weight w) {
    for (auto& x : w.coords_) x *= c;
    return w;
}

std::string Weight::to_string() const {
    std::string s = "[";
    for (int i = 0; i < rank(); ++i) {
        if (i) s += ",";
        s += gaudin::to_string(coords_[i]);
    }
    return s + "]";
}

int RootVector::total() const { return std::accumulate(mult.begin(), mult.end(), 0); }

Weight root_weight(const RootVector& k) {
    int n = k.rank();
    Weight w = Weight::zero(n);
    for (int i = 1; i <= n; ++i)
        if (k.mult[i - 1] != 0) w += Rational(k.mult[i - 1]) * Weight::simple_root(n, i);
    return w;
}

Rational pair(const Weight& a, const Weight& b) {
    if (a.rank() != b.rank()) throw RankMismatch("pairing weights of different rank");
    CartanData cd(a.rank());
    Rational acc = 0;
    for (int i = 0; i < a.rank(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (int j = 0; j < b.rank(); ++j) acc += a[i] * cd.inverse_cartan(i, j) * b[j];
    }
    return acc;
}

bool is_dominant(const Weight& w) {
    for (const auto& c : w.coords())
        if (c.get_den() != 1 || sgn(c) < 0) return false;
    return true;
}

Weight shift_weight(const std::vector<Weight>& weights, const RootVector& k) {
    if (weights.empty()) throw std::invalid_argument("shift_weight needs at least one weight");
    Weight total = Weight::zero(weights.front().rank());
    for (const auto& w : weights) total += w;
    if (k.rank() != total.rank()) throw RankMismatch("root vector rank mismatch");
    return total - root_weight(k);
}

std::int64_t weyl_dim(const Weight& w) {
    if (!is_dominant(w)) throw NotDominant("weyl_dim needs a dominant integral weight, got " + w.to_string());
    // Positive roots of A_N are alpha_i + ... + alpha_j.
    Rational dim = 1;
    for (int i = 0; i < w.rank(); ++i) {
        Rational num = 0;
        for (int j = i; j < w.rank(); ++j) {
            num += w[j] + 1;
            dim *= num / Rational(j - i + 1);
        }
    }
    return dim.get_num().get_si();
}

std::vector<Rational> to_lambda_basis(const Weight& w) {
    int n = w.rank();
    std::vector<Rational> lam(n + 1, Rational(0));
    for (int a = n - 1; a >= 0; --a) lam[a] = lam[a + 1] + w[a];
    return lam;
}

Weight from_lambda_basis(const std::vector<Rational>& lambda) {
    if (lambda.size() < 2) throw std::invalid_argument("lambda coordinates need N+1 >= 2 entries");
    std::vector<Rational> c(lambda.size() - 1);
    for (std::size_t a = 0; a + 1 < lambda.size(); ++a) c[a] = lambda[a] - lambda[a + 1];
    return Weight(std::move(c));
}

std::vector<Rational> orthogonal_coords(const Weight& w) {
    auto lam = to_lambda_basis(w);
    Rational mean = 0;
    for (const auto& x : lam) mean += x;
    mean /= Rational(static_cast<long>(lam.size()));
    for (auto& x : lam) x -= mean;
    return lam;
}

std::vector<Weight> dominant_weights_up_to(int rank, std::int64_t max_dim) {
    if (rank < 1) throw std::invalid_argument("invalid rank");
    std::vector<Weight> out;
    std::vector<long> c(rank, 0);
    // weyl_dim is monotone in each coordinate, so a depth-first walk can prune.
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == rank) {
            std::vector<Rational> q(c.begin(), c.end());
            out.emplace_back(std::move(q));
            return;
        }
        for (long v = 0;; ++v) {
            c[pos] = v;
            std::vector<Rational> probe(c.begin(), c.end());
            for (int j = pos + 1; j < rank; ++j) probe[j] = 0;
            if (weyl_dim(Weight(probe)) > max_dim) break;
            self(self, pos + 1);
        }
        c[pos] = 0;
    };
    rec(rec, 0);
    return out;
}

} // namespace gaudin
