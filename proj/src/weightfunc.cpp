#include "gaudin/weightfunc.hpp"

#include "gaudin/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace gaudin {

std::string WordAssignment::to_string() const {
    std::string s = "(";
    for (std::size_t j = 0; j < words.size(); ++j) {
        if (j) s += " | ";
        if (words[j].empty()) s += "1";
        for (std::size_t q = 0; q < words[j].size(); ++q) s += (q ? " f" : "f") + std::to_string(words[j][q] + 1);
    }
    return s + ")";
}

std::vector<WordAssignment> enumerate_assignments(const RootVector& k, int n) {
    if (n < 1) throw std::invalid_argument("need at least one tensor factor");
    if (k.is_zero()) throw std::invalid_argument("enumerate_assignments needs a nonzero root vector");
    for (int m : k.mult)
        if (m < 0) throw std::invalid_argument("negative root multiplicity");
    std::vector<int> letters;
    for (int i = 0; i < k.rank(); ++i) letters.insert(letters.end(), k.mult[i], i);
    int total = static_cast<int>(letters.size());
    std::vector<WordAssignment> out;
    // Every distinct letter sequence, cut into n consecutive (possibly empty) words.
    do {
        std::vector<int> cuts(n - 1, 0);
        while (true) {
            WordAssignment a;
            int start = 0;
            for (int j = 0; j < n; ++j) {
                int end = j + 1 < n ? cuts[j] : total;
                a.words.emplace_back(letters.begin() + start, letters.begin() + end);
                start = end;
            }
            out.push_back(std::move(a));
            // Next non-decreasing cut vector with entries in [0, total].
            int p = n - 2;
            while (p >= 0 && cuts[p] == total) --p;
            if (p < 0) break;
            ++cuts[p];
            for (int q = p + 1; q < n - 1; ++q) cuts[q] = cuts[p];
        }
    } while (std::next_permutation(letters.begin(), letters.end()));
    std::sort(out.begin(), out.end());
    return out;
}

RootVector letter_counts(const WordAssignment& a, int rank) {
    RootVector k{std::vector<int>(rank, 0)};
    for (const auto& w : a.words)
        for (int letter : w) {
            if (letter < 0 || letter >= rank) throw std::out_of_range("letter outside the root system");
            ++k.mult[letter];
        }
    return k;
}

template <class S>
S omega_value(const WordAssignment& a, const BetheVariables<S>& t, const std::vector<Rational>& marks, int max_variables) {
    int rank = static_cast<int>(t.size());
    int n = static_cast<int>(a.words.size());
    if (static_cast<int>(marks.size()) != n) throw std::invalid_argument("one mark per word is required");
    RootVector k = letter_counts(a, rank);
    for (int i = 0; i < rank; ++i)
        if (static_cast<int>(t[i].size()) != k.mult[i])
            throw std::invalid_argument("variable group " + std::to_string(i + 1) + " has the wrong size");
    int nvars = k.total();
    if (nvars == 0) throw std::invalid_argument("omega needs at least one letter");
    if (nvars > max_variables)
        throw std::length_error("symmetrization over " + std::to_string(nvars) + " variables exceeds the cap " + std::to_string(max_variables));

    // Flat numbering: variables by group then tag, marks after them.
    std::vector<int> offset(rank + 1, 0);
    for (int i = 0; i < rank; ++i) offset[i + 1] = offset[i] + k.mult[i];
    const S& proto = [&]() -> const S& {
        for (const auto& g : t)
            if (!g.empty()) return g.front();
        throw std::logic_error("unreachable");
    }();
    std::vector<S> values;
    std::vector<std::string> names;
    for (int i = 0; i < rank; ++i)
        for (int l = 0; l < k.mult[i]; ++l) {
            values.push_back(t[i][l]);
            names.push_back("t_" + std::to_string(l + 1) + "(" + std::to_string(i + 1) + ")");
        }
    for (int j = 0; j < n; ++j) {
        values.push_back(lift_like(proto, marks[j]));
        names.push_back("z_" + std::to_string(j + 1));
    }

    // Chain factors (left, right) over flat indices, tags by first occurrence.
    std::vector<std::pair<int, int>> factors;
    std::vector<int> seen(rank, 0);
    for (int j = 0; j < n; ++j) {
        std::vector<int> chain;
        for (int letter : a.words[j]) chain.push_back(offset[letter] + seen[letter]++);
        chain.push_back(nvars + j);
        if (chain.size() == 1) continue;
        for (std::size_t q = 0; q + 1 < chain.size(); ++q) factors.emplace_back(chain[q], chain[q + 1]);
    }

    int total = nvars + n;
    std::vector<std::vector<std::optional<S>>> diff(total, std::vector<std::optional<S>>(total));
    auto difference = [&](int x, int y) -> const S& {
        auto& d = diff[x][y];
        if (!d) {
            d = values[x] - values[y];
            if (is_zero(*d)) throw PoleError("omega denominator vanishes: " + names[x] + " = " + names[y]);
        }
        return *d;
    };

    std::vector<std::vector<int>> perms(rank);
    for (int i = 0; i < rank; ++i) {
        perms[i].resize(k.mult[i]);
        std::iota(perms[i].begin(), perms[i].end(), 0);
    }
    std::vector<int> relabel(total);
    std::iota(relabel.begin(), relabel.end(), 0);
    S sum = zero_like(proto);
    while (true) {
        for (int i = 0; i < rank; ++i)
            for (int l = 0; l < k.mult[i]; ++l) relabel[offset[i] + l] = offset[i] + perms[i][l];
        S den = lift_like(proto, Rational(1));
        for (const auto& [x, y] : factors) den = den * difference(relabel[x], relabel[y]);
        sum += Rational(1) / den;
        int g = rank - 1;
        while (g >= 0 && !std::next_permutation(perms[g].begin(), perms[g].end())) --g;
        if (g < 0) break;
    }
    return sum;
}

namespace {

struct WordImageCache {
    const TensorSpace& space;
    std::map<std::pair<int, std::vector<int>>, ModuleState<Rational>> cache;

    const ModuleState<Rational>& image(int factor, const std::vector<int>& word) {
        auto key = std::make_pair(factor, word);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const auto& m = space.factor_ptr(factor);
            it = cache.emplace(key, apply_word(m, word, highest_weight_state(m))).first;
        }
        return it->second;
    }
};

} // namespace

template <class S>
TensorState<S> universal_weight_state(const TensorSpace& space, const RootVector& k, const BetheVariables<S>& t, int max_variables) {
    if (k.rank() != space.rank() || static_cast<int>(t.size()) != space.rank())
        throw RankMismatch("root vector or variables do not match the tensor space rank");
    WordImageCache images{space, {}};
    TensorState<S> out;
    for (const auto& a : enumerate_assignments(k, space.size())) {
        std::vector<ModuleState<Rational>> parts;
        bool vanishes = false;
        for (int j = 0; j < space.size() && !vanishes; ++j) {
            const auto& img = images.image(j, a.words[j]);
            vanishes = img.is_zero();
            parts.push_back(img);
        }
        if (vanishes) continue;
        S w = omega_value(a, t, space.marks(), max_variables);
        for (const auto& [idx, c] : tensor_product(parts).terms) out.add(idx, w * c);
    }
    out.prune();
    return out;
}

TensorState<Rational> assignment_vector(const TensorSpace& space, const WordAssignment& target) {
    if (static_cast<int>(target.words.size()) != space.size()) throw std::invalid_argument("target needs one word per factor");
    std::vector<ModuleState<Rational>> parts;
    for (int j = 0; j < space.size(); ++j) {
        const auto& m = space.factor_ptr(j);
        parts.push_back(apply_word(m, target.words[j], highest_weight_state(m)));
        if (parts.back().is_zero())
            throw TargetVanishes("projection target " + target.to_string() + " vanishes on factor " + std::to_string(j + 1));
    }
    return tensor_product(parts);
}

template <class S>
S projection_coefficient(const TensorSpace& space, const TensorState<S>& v, const WordAssignment& target) {
    auto tv = assignment_vector(space, target);
    for (int j = 0; j < space.size(); ++j) {
        int idx = tv.terms.begin()->first[j];
        if (space.factor(j).indices_of_weight(space.factor(j).weight_of(idx)).size() != 1)
            throw std::invalid_argument("projection target on factor " + std::to_string(j + 1) + " is not in a one-dimensional weight space");
    }
    const auto& [idx, c] = *tv.terms.begin();
    auto hit = v.terms.find(idx);
    if (hit == v.terms.end()) {
        if (v.terms.empty()) return S(from_rational<S>(Rational(0), kDefaultPrecisionBits));
        return zero_like(v.terms.begin()->second);
    }
    return hit->second / c;
}

template <class S>
S root_polynomial_at(const std::vector<S>& t, const S& x) {
    S v = lift_like(x, Rational(1));
    for (const auto& tj : t) v = v * (x - tj);
    return v;
}

template <class S>
S projection_closed_form_single_root(const std::vector<S>& t, const Rational& last_mark) {
    S T = root_polynomial_at(t, lift_like(t.at(0), last_mark));
    if (is_zero(T)) throw PoleError("T(z) vanishes");
    return Rational(t.size() % 2 ? -1 : 1) / T;
}

template <class S>
S projection_closed_form_distributed(const BetheVariables<S>& t, const std::vector<Rational>& marks) {
    std::optional<S> den;
    std::size_t total = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i].empty()) continue;
        S v = root_polynomial_at(t[i], lift_like(t[i].front(), marks.at(i)));
        den = den ? S(*den * v) : v;
        total += t[i].size();
    }
    if (!den) throw std::invalid_argument("no variables");
    if (is_zero(*den)) throw PoleError("some T_i(z_i) vanishes");
    return Rational(total % 2 ? -1 : 1) / *den;
}

template <class S>
S omega_closed_form_sympower(const std::vector<S>& t, const S& s, const S& r, int i) {
    int k = static_cast<int>(t.size());
    if (i < 1 || i > k) throw std::out_of_range("index i must satisfy 1 <= i <= k");
    S num = lift_like(s, Rational((i - 1) % 2 ? -1 : 1));
    for (int j = 0; j < k - i; ++j) num = num * s;
    num = num * elementary_symmetric(t, i - 1);
    S den = (r - Rational(1)) * root_polynomial_at(t, s) * elementary_symmetric(t, k);
    if (is_zero(den)) throw PoleError("(r-1) T(s) tau_k vanishes");
    return num / den;
}

template <class S>
S weighted_omega_sum_closed_form(const std::vector<S>& t, const S& s, const S& r) {
    int k = static_cast<int>(t.size());
    auto T = poly_from_roots(t, s);
    S den = (r - Rational(1)) * poly_eval(T, s) * elementary_symmetric(t, k);
    if (is_zero(den)) throw PoleError("(r-1) T(s) tau_k vanishes");
    return poly_eval(poly_derivative(T), s) / den;
}

WordAssignment sympower_assignment(int k, int i) {
    if (k < 1 || i < 1 || i > k + 1) throw std::out_of_range("need 1 <= i <= k+1");
    std::vector<int> w0(i - 1, 0);
    w0.push_back(1);
    w0.insert(w0.end(), k + 1 - i, 0);
    return WordAssignment{{{2}, w0}};
}

template Rational omega_value(const WordAssignment&, const BetheVariables<Rational>&, const std::vector<Rational>&, int);
template Complex omega_value(const WordAssignment&, const BetheVariables<Complex>&, const std::vector<Rational>&, int);
template TensorState<Rational> universal_weight_state(const TensorSpace&, const RootVector&, const BetheVariables<Rational>&, int);
template TensorState<Complex> universal_weight_state(const TensorSpace&, const RootVector&, const BetheVariables<Complex>&, int);
template Rational projection_coefficient(const TensorSpace&, const TensorState<Rational>&, const WordAssignment&);
template Rational root_polynomial_at(const std::vector<Rational>&, const Rational&);
template Complex root_polynomial_at(const std::vector<Complex>&, const Complex&);
template Rational projection_closed_form_single_root(const std::vector<Rational>&, const Rational&);
template Complex projection_closed_form_single_root(const std::vector<Complex>&, const Rational&);
template Rational projection_closed_form_distributed(const BetheVariables<Rational>&, const std::vector<Rational>&);
template Complex projection_closed_form_distributed(const BetheVariables<Complex>&, const std::vector<Rational>&);
template Rational omega_closed_form_sympower(const std::vector<Rational>&, const Rational&, const Rational&, int);
template Complex omega_closed_form_sympower(const std::vector<Complex>&, const Complex&, const Complex&, int);
template Rational weighted_omega_sum_closed_form(const std::vector<Rational>&, const Rational&, const Rational&);
template Complex weighted_omega_sum_closed_form(const std::vector<Complex>&, const Complex&, const Complex&);
template Complex projection_coefficient(const TensorSpace&, const TensorState<Complex>&, const WordAssignment&);

} // namespace gaudin
