#include "gaudin/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace gaudin {

TensorSpace::TensorSpace(std::vector<ModulePtr> factors, std::vector<Rational> marks)
    : factors_(std::move(factors)), marks_(std::move(marks)) {
    if (factors_.size() < 2) throw std::invalid_argument("a tensor space needs at least two factors");
    if (factors_.size() != marks_.size()) throw std::invalid_argument("number of marks does not match number of factors");
    for (const auto& f : factors_)
        if (!f) throw std::invalid_argument("null module");
    for (const auto& f : factors_)
        if (f->rank() != factors_.front()->rank()) throw RankMismatch("tensor factors have different ranks");
    for (std::size_t a = 0; a < marks_.size(); ++a)
        for (std::size_t b = a + 1; b < marks_.size(); ++b)
            if (marks_[a] == marks_[b])
                throw std::invalid_argument("coincident marks z_" + std::to_string(a + 1) + " = z_" + std::to_string(b + 1) + " = " + to_string(marks_[a]));
}

std::int64_t TensorSpace::dim() const {
    std::int64_t d = 1;
    for (const auto& f : factors_) d *= f->dim();
    return d;
}

TensorState<Rational> tensor_product(const std::vector<ModuleState<Rational>>& states) {
    TensorState<Rational> out;
    MultiIndex idx(states.size());
    auto rec = [&](auto&& self, std::size_t pos, const Rational& c) -> void {
        if (pos == states.size()) {
            out.terms.emplace(idx, c);
            return;
        }
        for (const auto& [i, v] : states[pos].coeffs) {
            idx[pos] = i;
            self(self, pos + 1, c * v);
        }
    };
    rec(rec, 0, Rational(1));
    return out;
}

template <class S>
Real norm(const TensorState<S>& v, unsigned precision_bits) {
    Real acc(precision_bits);
    for (const auto& [idx, c] : v.terms) acc += magnitude2(c, precision_bits);
    return sqrt(acc);
}

template <class S>
TensorState<S> apply_factor(const TensorSpace& space, int factor, const SparseMatrix& x, const TensorState<S>& v) {
    if (factor < 0 || factor >= space.size()) throw std::out_of_range("factor index out of range");
    TensorState<S> out;
    for (const auto& [idx, c] : v.terms)
        for (const auto& [row, val] : x.column(idx[factor])) {
            MultiIndex j = idx;
            j[factor] = row;
            out.add(j, c * val);
        }
    out.prune();
    return out;
}

template <class S>
TensorState<S> apply_diagonal(const TensorSpace& space, const Generator& g, const TensorState<S>& v) {
    TensorState<S> out;
    for (int j = 0; j < space.size(); ++j)
        for (const auto& [idx, c] : apply_factor(space, j, space.factor(j).matrix(g), v).terms) out.add(idx, c);
    out.prune();
    return out;
}

template <class S>
TensorState<S> apply_casimir(const TensorSpace& space, int i, int j, const TensorState<S>& v) {
    if (i < 0 || j < 0 || i >= space.size() || j >= space.size()) throw std::out_of_range("factor index out of range");
    if (i == j) throw std::invalid_argument("Casimir pair operator needs two distinct factors");
    const Module& mi = space.factor(i);
    const Module& mj = space.factor(j);
    int n1 = space.rank() + 1;
    TensorState<S> out;
    for (const auto& [idx, c] : v.terms) {
        // Cartan part: (mu, nu) on weight vectors.
        const auto& oi = mi.orthogonal_weight(idx[i]);
        const auto& oj = mj.orthogonal_weight(idx[j]);
        Rational diag = 0;
        for (int a = 0; a < n1; ++a) diag += oi[a] * oj[a];
        if (sgn(diag) != 0) out.add(idx, c * diag);
        for (int a = 1; a <= n1; ++a)
            for (int b = 1; b <= n1; ++b) {
                if (a == b) continue;
                const auto& ci = mi.root_vector(a, b).column(idx[i]);
                if (ci.empty()) continue;
                const auto& cj = mj.root_vector(b, a).column(idx[j]);
                for (const auto& [ri, vi] : ci)
                    for (const auto& [rj, vj] : cj) {
                        MultiIndex k = idx;
                        k[i] = ri;
                        k[j] = rj;
                        out.add(k, c * Rational(vi * vj));
                    }
            }
    }
    out.prune();
    return out;
}

template <class S>
TensorState<S> apply_hamiltonian(const TensorSpace& space, int j, const TensorState<S>& v) {
    if (j < 0 || j >= space.size()) throw std::out_of_range("factor index out of range");
    TensorState<S> out;
    for (int i = 0; i < space.size(); ++i) {
        if (i == j) continue;
        Rational w = 1 / Rational(space.mark(j) - space.mark(i));
        for (const auto& [idx, c] : apply_casimir(space, i, j, v).terms) out.add(idx, c * w);
    }
    out.prune();
    return out;
}

Rational casimir_scalar(const Weight& hw) {
    if (!is_dominant(hw)) throw NotDominant("casimir_scalar needs a dominant integral weight, got " + hw.to_string());
    return pair(hw, hw + Rational(2) * Weight::rho(hw.rank()));
}

std::vector<MultiIndex> weight_space_indices(const TensorSpace& space, const Weight& mu) {
    if (mu.rank() != space.rank()) throw RankMismatch("weight rank does not match the tensor space");
    std::vector<MultiIndex> out;
    MultiIndex idx(space.size());
    int last = space.size() - 1;
    auto rec = [&](auto&& self, int pos, const Weight& partial) -> void {
        const Module& m = space.factor(pos);
        if (pos == last) {
            for (int i : m.indices_of_weight(mu - partial)) {
                idx[pos] = i;
                out.push_back(idx);
            }
            return;
        }
        for (const auto& w : m.weights())
            for (int i : m.indices_of_weight(w)) {
                idx[pos] = i;
                self(self, pos + 1, partial + w);
            }
    };
    rec(rec, 0, Weight::zero(space.rank()));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TensorState<Rational>> singular_basis(const TensorSpace& space, const Weight& mu) {
    auto cols = weight_space_indices(space, mu);
    if (cols.empty()) return {};
    std::map<std::pair<int, MultiIndex>, int> row_of;
    std::vector<TensorState<Rational>> images;
    for (int i = 1; i <= space.rank(); ++i)
        for (const auto& idx : cols) {
            TensorState<Rational> unit;
            unit.terms.emplace(idx, Rational(1));
            auto img = apply_diagonal(space, Generator::e(i), unit);
            for (const auto& [r, c] : img.terms) row_of.try_emplace({i, r}, static_cast<int>(row_of.size()));
            images.push_back(std::move(img));
        }
    int ncols = static_cast<int>(cols.size());
    DenseMatrix m(static_cast<int>(row_of.size()), ncols);
    for (int i = 1; i <= space.rank(); ++i)
        for (int col = 0; col < ncols; ++col)
            for (const auto& [r, c] : images[(i - 1) * ncols + col].terms) m(row_of.at({i, r}), col) = c;
    std::vector<TensorState<Rational>> out;
    for (const auto& v : nullspace(std::move(m))) {
        TensorState<Rational> s;
        for (int col = 0; col < ncols; ++col)
            if (sgn(v[col]) != 0) s.terms.emplace(cols[col], v[col]);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

template <class S>
S eigenvalue_estimate(const TensorState<S>& v, const TensorState<S>& w);

template <>
Rational eigenvalue_estimate(const TensorState<Rational>& v, const TensorState<Rational>& w) {
    auto best = v.terms.begin();
    for (auto it = v.terms.begin(); it != v.terms.end(); ++it)
        if (abs(it->second) > abs(best->second)) best = it;
    auto hit = w.terms.find(best->first);
    return hit == w.terms.end() ? Rational(0) : Rational(hit->second / best->second);
}

template <>
Complex eigenvalue_estimate(const TensorState<Complex>& v, const TensorState<Complex>& w) {
    unsigned bits = v.terms.begin()->second.precision();
    Complex num(bits);
    Real den(bits);
    for (const auto& [idx, c] : v.terms) {
        den += c.norm2();
        auto hit = w.terms.find(idx);
        if (hit != w.terms.end()) num += c.conj() * hit->second;
    }
    return Complex(num.real() / den, num.imag() / den);
}

} // namespace

template <class S>
EigenReport<S> check_common_eigenvector(const TensorSpace& space, const TensorState<S>& v, double tol) {
    if (v.is_zero()) throw std::invalid_argument("eigenvector check needs a nonzero vector");
    EigenReport<S> report;
    report.precision_bits = precision_of(v.terms.begin()->second);
    unsigned bits = report.precision_bits ? report.precision_bits : kDefaultPrecisionBits;
    Real vnorm = norm(v, bits);
    bool ok = true;
    for (int j = 0; j < space.size(); ++j) {
        auto w = apply_hamiltonian(space, j, v);
        S lambda = eigenvalue_estimate(v, w);
        auto r = w - scale(v, lambda);
        double res = (norm(r, bits) / vnorm).to_double();
        ok = ok && res <= tol;
        report.eigenvalues.push_back(std::move(lambda));
        report.residuals.push_back(res);
    }
    for (int i = 1; i <= space.rank(); ++i) {
        double res = (norm(apply_diagonal(space, Generator::e(i), v), bits) / vnorm).to_double();
        ok = ok && res <= tol;
        report.singular_residuals.push_back(res);
    }
    report.ok = ok;
    return report;
}

#define GAUDIN_INSTANTIATE(S)                                                                            \
    template Real norm(const TensorState<S>&, unsigned);                                                 \
    template TensorState<S> apply_factor(const TensorSpace&, int, const SparseMatrix&, const TensorState<S>&); \
    template TensorState<S> apply_diagonal(const TensorSpace&, const Generator&, const TensorState<S>&); \
    template TensorState<S> apply_casimir(const TensorSpace&, int, int, const TensorState<S>&);          \
    template TensorState<S> apply_hamiltonian(const TensorSpace&, int, const TensorState<S>&);           \
    template EigenReport<S> check_common_eigenvector(const TensorSpace&, const TensorState<S>&, double);

GAUDIN_INSTANTIATE(Rational)
GAUDIN_INSTANTIATE(Complex)

#undef GAUDIN_INSTANTIATE

} // namespace gaudin
