#include "gaudin/tensor.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace gaudin;

namespace {

TensorState<Rational> top_state(const TensorSpace& sp) {
    std::vector<ModuleState<Rational>> s;
    for (int j = 0; j < sp.size(); ++j) s.push_back(highest_weight_state(sp.factor_ptr(j)));
    return tensor_product(s);
}

TensorState<Rational> basis(const MultiIndex& idx) {
    TensorState<Rational> v;
    v.add(idx, Rational(1));
    return v;
}

Rational inner(const TensorState<Rational>& a, const TensorState<Rational>& b) {
    Rational s = 0;
    for (const auto& [idx, c] : a.terms) {
        auto it = b.terms.find(idx);
        if (it != b.terms.end()) s += c * it->second;
    }
    return s;
}

} // namespace

TEST_CASE("tensor_space validation") {
    auto v = fundamental_module(1, 1);
    CHECK_THROWS_AS(tensor_space({v}, {Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(tensor_space({v, v}, {Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(tensor_space({v, v}, {Rational(1), Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(tensor_space({v, fundamental_module(2, 1)}, {Rational(0), Rational(1)}), RankMismatch);
    auto sp = tensor_space({v, v, v}, {Rational(0), Rational(1), Rational(2)});
    CHECK(sp.dim() == 8);
}

TEST_CASE("Casimir on the top vector of V (x) V for sl2") {
    auto v = fundamental_module(1, 1);
    auto sp = tensor_space({v, v}, {Rational(1), Rational(0)});
    auto top = top_state(sp);
    auto c = apply_casimir(sp, 0, 1, top);
    CHECK(inner(top, c) == Rational(1, 2));
    CHECK(c.terms.size() == 1);
}

TEST_CASE("Casimir is symmetric in the factors and commutes with the diagonal action") {
    auto a = irreducible_module(Weight{1, 0});
    auto b = irreducible_module(Weight{1, 1});
    auto sp = tensor_space({a, b}, {Rational(0), Rational(1)});
    std::vector<MultiIndex> all;
    for (int i = 0; i < a->dim(); ++i)
        for (int j = 0; j < b->dim(); ++j) all.push_back({i, j});
    for (const auto& x : all) {
        auto cx = apply_casimir(sp, 0, 1, basis(x));
        CHECK(cx.terms == apply_casimir(sp, 1, 0, basis(x)).terms);
        for (int i = 1; i <= 2; ++i)
            for (auto g : {Generator::e(i), Generator::f(i), Generator::h(i)}) {
                auto lhs = apply_casimir(sp, 0, 1, apply_diagonal(sp, g, basis(x)));
                auto rhs = apply_diagonal(sp, g, cx);
                CHECK((lhs - rhs).is_zero());
            }
    }
}

TEST_CASE("hamiltonians: two factors and the sum rule") {
    auto v = fundamental_module(1, 1);
    auto sp = tensor_space({v, v}, {Rational(3), Rational(1)});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto x = basis({i, j});
            CHECK((apply_hamiltonian(sp, 0, x) - scale(apply_casimir(sp, 0, 1, x), Rational(1, 2))).is_zero());
        }
    auto w = irreducible_module(Weight{2});
    auto sp3 = tensor_space({v, w, v}, {Rational(0), Rational(1), Rational(-2, 3)});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 2; ++l) {
                auto x = basis({i, j, l});
                auto s = apply_hamiltonian(sp3, 0, x) + apply_hamiltonian(sp3, 1, x) + apply_hamiltonian(sp3, 2, x);
                CHECK(s.is_zero());
            }
}

TEST_CASE("sl2 singlet") {
    auto v = fundamental_module(1, 1);
    auto sp = tensor_space({v, v}, {Rational(1), Rational(0)});
    auto sing = singular_basis(sp, Weight{0});
    REQUIRE(sing.size() == 1);
    auto c = apply_casimir(sp, 0, 1, sing[0]);
    CHECK((c - scale(sing[0], Rational(-3, 2))).is_zero());
    auto rep = check_common_eigenvector(sp, sing[0], 0.0);
    CHECK(rep.ok);
    CHECK(rep.eigenvalues == std::vector<Rational>{Rational(-3, 2), Rational(3, 2)});
}

TEST_CASE("casimir_scalar") {
    CHECK(casimir_scalar(Weight{1}) == Rational(3, 2));
    CHECK(casimir_scalar(Weight{0, 0}) == 0);
    // Standard module of sl(N+1): N(N+2)/(N+1).
    for (int n = 1; n <= 5; ++n) CHECK(casimir_scalar(Weight::fundamental(n, 1)) == Rational(n * (n + 2), n + 1));
}

TEST_CASE("casimir_scalar matches the quadratic Casimir applied to the top vector") {
    // sum_{a != b} E_ab E_ba on the top vector plus the Cartan part (Lambda, Lambda).
    for (int n = 1; n <= 3; ++n)
        for (const auto& w : dominant_weights_up_to(n, 30)) {
            auto m = irreducible_module(w);
            auto hw = highest_weight_state(m);
            Rational total = pair(w, w);
            for (int a = 1; a <= n + 1; ++a)
                for (int b = 1; b <= n + 1; ++b) {
                    if (a == b) continue;
                    auto y = apply_generator(*m, Generator::root(a, b), apply_generator(*m, Generator::root(b, a), hw));
                    for (const auto& [idx, c] : y.coeffs) {
                        CHECK(idx == m->hw_index());
                        total += c;
                    }
                }
            CHECK(total == casimir_scalar(w));
        }
}

TEST_CASE("singular vectors count Clebsch-Gordan multiplicities") {
    struct Case {
        Weight a, b;
    };
    std::vector<Case> cases{{Weight{1}, Weight{1}},       {Weight{2}, Weight{3}},       {Weight{1, 0}, Weight{1, 0}},
                            {Weight{1, 1}, Weight{1, 1}}, {Weight{1, 0}, Weight{0, 1}}, {Weight{2, 0}, Weight{1, 1}},
                            {Weight{1, 0, 0}, Weight{0, 1, 0}}};
    for (const auto& c : cases) {
        auto ma = irreducible_module(c.a);
        auto mb = irreducible_module(c.b);
        auto sp = tensor_space({ma, mb}, {Rational(0), Rational(1)});
        auto cg = oracle::tensor_decomposition(*ma, *mb);
        std::int64_t total = 0;
        for (const auto& [hw, mult] : cg) {
            CAPTURE(hw.to_string());
            CHECK(static_cast<int>(singular_basis(sp, hw).size()) == mult);
            total += mult * weyl_dim(hw);
        }
        CHECK(total == sp.dim());
        // A weight that is not a highest weight in the decomposition has no singular vectors.
        auto top = c.a + c.b;
        auto below = top - Weight::simple_root(c.a.rank(), 1);
        if (is_dominant(below) && !cg.count(below)) CHECK(singular_basis(sp, below).empty());
    }
}

TEST_CASE("top vector eigenvalues") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<Weight> ws{Weight{1, 0}, Weight{0, 1}, Weight{1, 1}};
        std::vector<ModulePtr> ms;
        for (const auto& w : ws) ms.push_back(irreducible_module(w));
        auto z = oracle::distinct_rationals(rng, 3, {});
        auto sp = tensor_space(ms, z);
        auto rep = check_common_eigenvector(sp, top_state(sp), 0.0);
        REQUIRE(rep.ok);
        for (int j = 0; j < 3; ++j) {
            Rational e = 0;
            for (int i = 0; i < 3; ++i)
                if (i != j) e += pair(ws[i], ws[j]) / (z[j] - z[i]);
            CHECK(rep.eigenvalues[j] == e);
        }
    }
}

TEST_CASE("a generic vector is not an eigenvector") {
    auto v = fundamental_module(1, 1);
    auto sp = tensor_space({v, v, v}, {Rational(0), Rational(1), Rational(3)});
    TensorState<Rational> x;
    x.add({0, 0, 1}, Rational(1));
    x.add({0, 1, 0}, Rational(2));
    x.add({1, 0, 0}, Rational(5));
    CHECK_FALSE(check_common_eigenvector(sp, x, 1e-12).ok);
    CHECK_THROWS_AS(check_common_eigenvector(sp, TensorState<Rational>{}, 1e-12), std::invalid_argument);
}

TEST_CASE("float eigen check agrees with exact") {
    auto v = fundamental_module(1, 1);
    auto sp = tensor_space({v, v}, {Rational(1), Rational(0)});
    auto sing = singular_basis(sp, Weight{0});
    auto f = lift<Complex>(sing[0], 128);
    auto rep = check_common_eigenvector(sp, f, 1e-30);
    CHECK(rep.ok);
    CHECK(std::abs(rep.eigenvalues[0].real().to_double() + 1.5) < 1e-30);
    CHECK(rep.precision_bits == 128);
}

TEST_CASE("weight space indices") {
    auto v = fundamental_module(1, 1);
    auto sp = tensor_space({v, v, v}, {Rational(0), Rational(1), Rational(2)});
    CHECK(weight_space_indices(sp, Weight{1}).size() == 3);
    CHECK(weight_space_indices(sp, Weight{3}).size() == 1);
    CHECK(weight_space_indices(sp, Weight{2}).empty());
}
