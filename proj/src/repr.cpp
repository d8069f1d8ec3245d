#include "gaudin/repr.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>

namespace gaudin {

// --- Generator ----------------------------------------------------------------

Generator Generator::parse(std::string_view label) {
    auto bad = [&]() { return std::invalid_argument("unknown generator label '" + std::string(label) + "'"); };
    if (label.size() < 2) throw bad();
    std::string digits(label.substr(1));
    if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) throw bad();
    switch (label[0]) {
        case 'e': return e(std::stoi(digits));
        case 'f': return f(std::stoi(digits));
        case 'h': return h(std::stoi(digits));
        case 'E':
            // Two single-digit indices, as in E13.
            if (digits.size() != 2) throw bad();
            return root(digits[0] - '0', digits[1] - '0');
        default: throw bad();
    }
}

std::string Generator::label() const {
    switch (kind) {
        case Kind::E: return "e" + std::to_string(a);
        case Kind::F: return "f" + std::to_string(a);
        case Kind::H: return "h" + std::to_string(a);
        case Kind::Root: return "E" + std::to_string(a) + std::to_string(b);
    }
    return "?";
}

// --- Module -------------------------------------------------------------------

std::vector<std::vector<SparseMatrix>> root_vectors_from_chevalley(const std::vector<SparseMatrix>& e,
                                                                   const std::vector<SparseMatrix>& f) {
    int n = static_cast<int>(e.size());
    int d = n > 0 ? e[0].rows() : 0;
    std::vector<std::vector<SparseMatrix>> roots(n + 1, std::vector<SparseMatrix>(n + 1, SparseMatrix(d, d)));
    // 0-based: roots[a][a+1] = e[a], roots[a+1][a] = f[a].
    for (int a = 0; a < n; ++a) {
        roots[a][a + 1] = e[a];
        roots[a + 1][a] = f[a];
    }
    for (int span = 2; span <= n; ++span)
        for (int a = 0; a + span <= n; ++a) {
            int b = a + span;
            roots[a][b] = commutator(roots[a][b - 1], e[b - 1]);
            roots[b][a] = commutator(f[b - 1], roots[b - 1][a]);
        }
    return roots;
}

Module::Module(Data data)
    : rank_(data.rank),
      highest_weight_(std::move(data.highest_weight)),
      hw_index_(data.hw_index),
      weights_(std::move(data.weights)),
      labels_(std::move(data.labels)),
      e_(std::move(data.e)),
      f_(std::move(data.f)) {
    int d = dim();
    for (int idx = 0; idx < d; ++idx) {
        ortho_.push_back(orthogonal_coords(weights_[idx]));
        auto [it, inserted] = by_weight_.try_emplace(weights_[idx]);
        if (inserted) distinct_weights_.push_back(weights_[idx]);
        it->second.push_back(idx);
    }
    for (int i = 0; i < rank_; ++i) {
        SparseMatrix hi(d, d);
        for (int idx = 0; idx < d; ++idx) hi.add(idx, idx, weights_[idx][i]);
        h_.push_back(std::move(hi));
    }
    roots_ = data.roots.empty() ? root_vectors_from_chevalley(e_, f_) : std::move(data.roots);
}

const SparseMatrix& Module::root_vector(int a, int b) const {
    if (a < 1 || b < 1 || a > rank_ + 1 || b > rank_ + 1 || a == b) throw std::out_of_range("root vector index out of range");
    return roots_[a - 1][b - 1];
}

const SparseMatrix& Module::matrix(const Generator& g) const {
    auto check = [&](int i) {
        if (i < 1 || i > rank_) throw std::invalid_argument("generator index out of range: " + g.label());
    };
    switch (g.kind) {
        case Generator::Kind::E: check(g.a); return e(g.a);
        case Generator::Kind::F: check(g.a); return f(g.a);
        case Generator::Kind::H: check(g.a); return h(g.a);
        case Generator::Kind::Root: return root_vector(g.a, g.b);
    }
    throw std::invalid_argument("unknown generator");
}

const std::vector<int>& Module::indices_of_weight(const Weight& mu) const {
    static const std::vector<int> none;
    auto it = by_weight_.find(mu);
    return it == by_weight_.end() ? none : it->second;
}

// --- concrete modules -----------------------------------------------------------

namespace {

std::vector<SparseMatrix> zero_matrices(int count, int d) { return std::vector<SparseMatrix>(count, SparseMatrix(d, d)); }

// Fills e, f, and all root vectors from a rule E_ab(basis j) = coeff * basis(target).
template <class Rule>
void fill_from_rule(Module::Data& data, int d, Rule&& rule) {
    int n = data.rank;
    data.roots.assign(n + 1, zero_matrices(n + 1, d));
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            if (a == b) continue;
            for (int j = 0; j < d; ++j) {
                auto [target, coeff] = rule(a, b, j);
                if (target >= 0 && sgn(coeff) != 0) data.roots[a][b].add(target, j, coeff);
            }
        }
    data.e.clear();
    data.f.clear();
    for (int i = 0; i < n; ++i) {
        data.e.push_back(data.roots[i][i + 1]);
        data.f.push_back(data.roots[i + 1][i]);
    }
}

} // namespace

ModulePtr fundamental_module(int rank, int i) {
    if (rank < 1) throw std::invalid_argument("invalid rank");
    if (i < 1 || i > rank) throw std::out_of_range("fundamental module index " + std::to_string(i) + " out of range 1.." + std::to_string(rank));
    int n1 = rank + 1;
    // Increasing i-subsets of {0..N} in lexicographic order; {0..i-1} comes first.
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur(i);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        subsets.push_back(cur);
        int p = i - 1;
        while (p >= 0 && cur[p] == n1 - i + p) --p;
        if (p < 0) break;
        ++cur[p];
        for (int q = p + 1; q < i; ++q) cur[q] = cur[q - 1] + 1;
    }
    std::map<std::vector<int>, int> index;
    Module::Data data;
    data.rank = rank;
    data.highest_weight = Weight::fundamental(rank, i);
    for (std::size_t s = 0; s < subsets.size(); ++s) {
        index[subsets[s]] = static_cast<int>(s);
        std::vector<Rational> lam(n1, Rational(0));
        std::string label;
        for (int c : subsets[s]) {
            lam[c] = 1;
            label += (label.empty() ? "" : "^") + std::string("eps") + std::to_string(c + 1);
        }
        data.weights.push_back(from_lambda_basis(lam));
        data.labels.push_back(label);
    }
    int d = static_cast<int>(subsets.size());
    fill_from_rule(data, d, [&](int a, int b, int j) -> std::pair<int, Rational> {
        const auto& s = subsets[j];
        if (!std::binary_search(s.begin(), s.end(), b) || std::binary_search(s.begin(), s.end(), a)) return {-1, 0};
        int between = 0;
        for (int c : s)
            if (c > std::min(a, b) && c < std::max(a, b)) ++between;
        std::vector<int> t = s;
        *std::find(t.begin(), t.end(), b) = a;
        std::sort(t.begin(), t.end());
        return {index.at(t), Rational(between % 2 ? -1 : 1)};
    });
    return std::make_shared<const Module>(std::move(data));
}

ModulePtr symmetric_power_module(int rank, int m) {
    if (rank < 1) throw std::invalid_argument("invalid rank");
    if (m < 0) throw std::invalid_argument("symmetric power degree must be nonnegative");
    int n1 = rank + 1;
    // Exponent vectors summing to m, lexicographically descending (eps_1^m first).
    std::vector<std::vector<int>> monomials;
    std::vector<int> cur(n1, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n1 - 1) {
            cur[pos] = left;
            monomials.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, m);
    std::map<std::vector<int>, int> index;
    Module::Data data;
    data.rank = rank;
    data.highest_weight = Rational(m) * Weight::fundamental(rank, 1);
    for (std::size_t s = 0; s < monomials.size(); ++s) {
        index[monomials[s]] = static_cast<int>(s);
        std::vector<Rational> lam(monomials[s].begin(), monomials[s].end());
        data.weights.push_back(from_lambda_basis(lam));
        std::string label;
        for (int c = 0; c < n1; ++c) {
            if (monomials[s][c] == 0) continue;
            if (!label.empty()) label += " ";
            label += "eps" + std::to_string(c + 1);
            if (monomials[s][c] > 1) label += "^" + std::to_string(monomials[s][c]);
        }
        data.labels.push_back(label.empty() ? "1" : label);
    }
    int d = static_cast<int>(monomials.size());
    // E_ab is the derivation eps_b -> eps_a.
    fill_from_rule(data, d, [&](int a, int b, int j) -> std::pair<int, Rational> {
        const auto& x = monomials[j];
        if (x[b] == 0) return {-1, 0};
        std::vector<int> y = x;
        --y[b];
        ++y[a];
        return {index.at(y), Rational(x[b])};
    });
    return std::make_shared<const Module>(std::move(data));
}

namespace {

ModulePtr trivial_module(int rank) {
    Module::Data data;
    data.rank = rank;
    data.highest_weight = Weight::zero(rank);
    data.weights = {Weight::zero(rank)};
    data.labels = {"v"};
    data.e = zero_matrices(rank, 1);
    data.f = zero_matrices(rank, 1);
    return std::make_shared<const Module>(std::move(data));
}

// Applies X (x) 1 + 1 (x) X on the ambient tensor product A (x) B.
SparseVector apply_ambient(const SparseMatrix& xa, const SparseMatrix& xb, int dim_b, const SparseVector& v) {
    SparseVector out;
    for (const auto& [idx, c] : v) {
        int a = static_cast<int>(idx / dim_b), b = static_cast<int>(idx % dim_b);
        for (const auto& [row, val] : xa.column(a)) out[std::int64_t(row) * dim_b + b] += c * val;
        for (const auto& [row, val] : xb.column(b)) out[std::int64_t(a) * dim_b + row] += c * val;
    }
    std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
    return out;
}

ModulePtr build_cyclic(const Weight& hw, const ModulePtr& A, const ModulePtr& B, int max_dim) {
    int n = hw.rank();
    int dim_b = B->dim();
    struct WeightSpace {
        EchelonBasis basis;
        std::vector<int> global;  // insertion order -> module index
    };
    std::map<Weight, WeightSpace> spaces;
    std::vector<SparseVector> vecs;
    Module::Data data;
    data.rank = n;
    data.highest_weight = hw;

    auto add = [&](const Weight& mu, const SparseVector& v, const std::string& label) -> bool {
        auto& ws = spaces[mu];
        if (!ws.basis.insert(v)) return false;
        if (static_cast<int>(vecs.size()) >= max_dim)
            throw DimensionCapExceeded("module L" + hw.to_string() + " exceeds the dimension cap " + std::to_string(max_dim));
        ws.global.push_back(static_cast<int>(vecs.size()));
        vecs.push_back(v);
        data.weights.push_back(mu);
        data.labels.push_back(label);
        return true;
    };

    std::vector<Weight> alpha;
    for (int i = 1; i <= n; ++i) alpha.push_back(Weight::simple_root(n, i));

    add(hw, SparseVector{{std::int64_t(A->hw_index()) * dim_b + B->hw_index(), Rational(1)}}, "v");
    std::vector<int> level = {0};
    while (!level.empty()) {
        std::vector<int> next;
        for (int g : level)
            for (int i = 1; i <= n; ++i) {
                SparseVector y = apply_ambient(A->f(i), B->f(i), dim_b, vecs[g]);
                if (y.empty()) continue;
                Weight mu = data.weights[g] - alpha[i - 1];
                std::string label = "f" + std::to_string(i) + (data.labels[g] == "v" ? " v" : " " + data.labels[g]);
                if (add(mu, y, label)) next.push_back(static_cast<int>(vecs.size()) - 1);
            }
        level = std::move(next);
    }

    int d = static_cast<int>(vecs.size());
    auto express = [&](const Weight& mu, const SparseVector& y, SparseMatrix& target, int col) {
        if (y.empty()) return;
        auto it = spaces.find(mu);
        std::optional<std::vector<Rational>> coords;
        if (it != spaces.end()) coords = it->second.basis.coordinates(y);
        if (!coords) throw std::logic_error("cyclic span not closed under the generators");
        for (std::size_t l = 0; l < coords->size(); ++l) target.add(it->second.global[l], col, (*coords)[l]);
    };
    data.e = zero_matrices(n, d);
    data.f = zero_matrices(n, d);
    for (int g = 0; g < d; ++g)
        for (int i = 1; i <= n; ++i) {
            express(data.weights[g] - alpha[i - 1], apply_ambient(A->f(i), B->f(i), dim_b, vecs[g]), data.f[i - 1], g);
            express(data.weights[g] + alpha[i - 1], apply_ambient(A->e(i), B->e(i), dim_b, vecs[g]), data.e[i - 1], g);
        }
    return std::make_shared<const Module>(std::move(data));
}

std::mutex cache_mutex;
std::map<Weight, ModulePtr>& module_cache() {
    static std::map<Weight, ModulePtr> cache;
    return cache;
}

ModulePtr irreducible_uncached(const Weight& hw, int max_dim);

ModulePtr irreducible_cached(const Weight& hw, int max_dim) {
    {
        std::lock_guard lock(cache_mutex);
        auto it = module_cache().find(hw);
        if (it != module_cache().end()) {
            if (it->second->dim() > max_dim)
                throw DimensionCapExceeded("module L" + hw.to_string() + " exceeds the dimension cap " + std::to_string(max_dim));
            return it->second;
        }
    }
    ModulePtr m = irreducible_uncached(hw, max_dim);
    std::lock_guard lock(cache_mutex);
    return module_cache().try_emplace(hw, m).first->second;
}

ModulePtr irreducible_uncached(const Weight& hw, int max_dim) {
    int n = hw.rank();
    int total = 0, pick = -1;
    for (int i = 0; i < n; ++i) {
        total += static_cast<int>(hw[i].get_num().get_si());
        // Prefer the smallest fundamental module as the right factor.
        if (sgn(hw[i]) > 0 && (pick < 0 || std::min(i + 1, n - i) < std::min(pick + 1, n - pick))) pick = i;
    }
    if (total == 0) return trivial_module(n);
    if (total == 1) {
        auto m = fundamental_module(n, pick + 1);
        if (m->dim() > max_dim) throw DimensionCapExceeded("module exceeds the dimension cap");
        return m;
    }
    Weight rest = hw - Weight::fundamental(n, pick + 1);
    ModulePtr A = irreducible_cached(rest, max_dim);
    ModulePtr B = fundamental_module(n, pick + 1);
    return build_cyclic(hw, A, B, max_dim);
}

} // namespace

ModulePtr irreducible_module(const Weight& highest_weight, int max_dim) {
    if (highest_weight.rank() < 1) throw std::invalid_argument("invalid rank");
    if (!is_dominant(highest_weight))
        throw NotDominant("irreducible_module needs a dominant integral weight, got " + highest_weight.to_string());
    return irreducible_cached(highest_weight, max_dim);
}

ModulePtr factor_module(const Weight& highest_weight, int max_dim) {
    if (!is_dominant(highest_weight))
        throw NotDominant("factor module needs a dominant integral weight, got " + highest_weight.to_string());
    bool sym = sgn(highest_weight[0]) > 0;
    for (int i = 1; i < highest_weight.rank(); ++i) sym = sym && sgn(highest_weight[i]) == 0;
    if (sym) {
        int m = static_cast<int>(highest_weight[0].get_num().get_si());
        if (weyl_dim(highest_weight) > max_dim) throw DimensionCapExceeded("module exceeds the dimension cap");
        return symmetric_power_module(highest_weight.rank(), m);
    }
    return irreducible_module(highest_weight, max_dim);
}

ModuleState<Rational> highest_weight_state(const ModulePtr& m) {
    ModuleState<Rational> v{m, {}};
    v.coeffs.emplace(m->hw_index(), Rational(1));
    return v;
}

template <class S>
ModuleState<S> apply_generator(const Module& m, const Generator& g, const ModuleState<S>& v) {
    const SparseMatrix& x = m.matrix(g);
    ModuleState<S> out{v.module, {}};
    for (const auto& [j, c] : v.coeffs)
        for (const auto& [i, val] : x.column(j)) {
            auto it = out.coeffs.find(i);
            if (it == out.coeffs.end())
                out.coeffs.emplace(i, c * val);
            else
                it->second += c * val;
        }
    std::erase_if(out.coeffs, [](const auto& e) { return is_zero(e.second); });
    return out;
}

template ModuleState<Rational> apply_generator(const Module&, const Generator&, const ModuleState<Rational>&);
template ModuleState<Complex> apply_generator(const Module&, const Generator&, const ModuleState<Complex>&);

ModuleState<Rational> apply_word(const ModulePtr& m, const std::vector<int>& word, const ModuleState<Rational>& v) {
    ModuleState<Rational> cur = v;
    for (auto it = word.rbegin(); it != word.rend() && !cur.is_zero(); ++it)
        cur = apply_generator(*m, Generator::f(*it + 1), cur);
    return cur;
}

std::vector<int> weight_space_basis(const Module& m, const Weight& mu) {
    if (mu.rank() != m.rank()) throw RankMismatch("weight rank does not match the module");
    return m.indices_of_weight(mu);
}

std::string check_relations(const Module& m) {
    int n = m.rank();
    CartanData cd(n);
    for (int i = 1; i <= n; ++i) {
        for (const auto& entry : m.e(i).column(m.hw_index())) {
            (void)entry;
            return "e" + std::to_string(i) + " does not annihilate the highest weight vector";
        }
        for (int j = 1; j <= n; ++j) {
            Rational a = cd.cartan(j - 1, i - 1);
            if (!(commutator(m.h(i), m.e(j)) == a * m.e(j))) return "[h_i,e_j] relation fails for i=" + std::to_string(i) + ", j=" + std::to_string(j);
            if (!(commutator(m.h(i), m.f(j)) == Rational(-a) * m.f(j))) return "[h_i,f_j] relation fails for i=" + std::to_string(i) + ", j=" + std::to_string(j);
            if (!commutator(m.h(i), m.h(j)).is_zero()) return "[h_i,h_j] != 0";
            SparseMatrix ef = commutator(m.e(i), m.f(j));
            if (i == j ? !(ef == m.h(i)) : !ef.is_zero()) return "[e_i,f_j] relation fails for i=" + std::to_string(i) + ", j=" + std::to_string(j);
        }
    }
    return {};
}

} // namespace gaudin
