// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "gaudin/bethe.hpp"
#include "gaudin/identities.hpp"
#include "gaudin/poly.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace gaudin;

namespace {

constexpr unsigned kBits = 128;
constexpr double kEigenBar = 1e-25;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TensorSpace space_of(const BetheProblem& p, int max_dim = kDefaultMaxModuleDim) {
    std::vector<ModulePtr> ms;
    for (const auto& w : p.weights) ms.push_back(factor_module(w, max_dim));
    return tensor_space(ms, p.marks);
}

Weight random_dominant(std::mt19937_64& rng, int rank, long lo, long hi) {
    std::vector<Rational> c;
    for (int i = 0; i < rank; ++i) c.emplace_back(uniform_int(rng, lo, hi));
    return Weight(c);
}

// ---------------------------------------------------------------------------

Outcome identity_suite() {
    auto t0 = std::chrono::steady_clock::now();
    int checked = 0, failures = 0;
    std::uint64_t seed = 1000;
    for (auto kind : {IdentityKind::I, IdentityKind::II, IdentityKind::III})
        for (int k = 1; k <= 6; ++k) {
            auto r = verify_identity({kind, k}, 200, seed++);
            checked += r.trials;
            failures += r.failures;
        }
    for (int k = 2; k <= 5; ++k)
        for (int i = 1; i <= k; ++i) {
            auto r = verify_identity({IdentityKind::IV, k, i}, 200, seed++);
            checked += r.trials;
            failures += r.failures;
        }
    double secs = seconds_since(t0);
    return {failures == 0 && secs < 60.0,
            std::to_string(failures) + " failures in " + std::to_string(checked) + " points, " + fmt(secs) + " s (limit 60 s)"};
}

Outcome polynomial_route() {
    int checked = 0, failures = 0;
    std::uint64_t seed = 2000;
    for (int k = 2; k <= 8; ++k) {
        auto a = verify_identity({IdentityKind::P1a, k}, 100, seed++);
        checked += a.trials;
        failures += a.failures;
        for (int i = 1; i <= k; ++i) {
            auto b = verify_identity({IdentityKind::P1b, k, i}, 100, seed++);
            checked += b.trials;
            failures += b.failures;
        }
    }
    return {failures == 0, std::to_string(failures) + " failures in " + std::to_string(checked) + " points"};
}

Outcome single_root_projection() {
    std::mt19937_64 rng(3000);
    int checked = 0, mismatches = 0, zeros = 0;
    const std::vector<Rational> z{Rational(1), Rational(0)};
    for (int k = 1; k <= 6; ++k) {
        int rank = static_cast<int>(uniform_int(rng, 1, 2));
        Weight l1 = random_dominant(rng, rank, 0, 2);
        Weight l0 = random_dominant(rng, rank, 0, 1);
        l0 = l0 + Rational(k) * Weight::fundamental(rank, 1);
        TensorSpace sp = tensor_space({factor_module(l1), factor_module(l0)}, z);
        std::vector<int> letters(k, 0);
        WordAssignment target{{{}, letters}};
        RootVector kv{std::vector<int>(rank, 0)};
        kv.mult[0] = k;
        for (int trial = 0; trial < 50; ++trial) {
            auto t = oracle::distinct_rationals(rng, k, z);
            BetheVariables<Rational> tv(rank);
            tv[0] = t;
            auto v = universal_weight_state(sp, kv, tv);
            Rational got = projection_coefficient(sp, v, target);
            Rational want = (k % 2 ? Rational(-1) : Rational(1)) / oracle::T_at(t, Rational(0));
            ++checked;
            if (got != want) ++mismatches;
            if (got == 0) ++zeros;
        }
    }
    return {mismatches == 0 && zeros == 0,
            std::to_string(mismatches) + " mismatches, " + std::to_string(zeros) + " zero coefficients in " + std::to_string(checked) +
                " points"};
}

Outcome general_n() {
    std::mt19937_64 rng(4000);
    int checked = 0, mismatches = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Weight> ws;
        for (int j = 0; j < 3; ++j) {
            Weight w = random_dominant(rng, 3, 0, 1);
            std::vector<Rational> c = w.coords();
            c[j] = Rational(uniform_int(rng, 1, 2));
            ws.emplace_back(c);
        }
        auto z = oracle::distinct_rationals(rng, 3, {});
        auto t = oracle::distinct_rationals(rng, 3, z);
        BetheProblem p{3, ws, z, RootVector{{1, 1, 1}}};
        TensorSpace sp = space_of(p);
        BetheVariables<Rational> tv{{t[0]}, {t[1]}, {t[2]}};
        auto v = universal_weight_state(sp, p.k, tv);
        Rational got = projection_coefficient(sp, v, WordAssignment{{{0}, {1}, {2}}});
        Rational want = Rational(-1) / ((z[0] - t[0]) * (z[1] - t[1]) * (z[2] - t[2]));
        ++checked;
        if (got != want) ++mismatches;
    }
    return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(checked) + " points"};
}

Outcome sympower_omegas() {
    std::mt19937_64 rng(5000);
    const std::vector<Rational> z{Rational(1), Rational(0)};
    int checked = 0, omega_bad = 0, sum_bad = 0, proj_bad = 0, factor_bad = 0;
    for (int k = 1; k <= 5; ++k) {
        long m = k + uniform_int(rng, 0, 2);
        BetheProblem p{3, {Weight{0, 1, 1}, Rational(m) * Weight::fundamental(3, 1)}, z, RootVector{{k, 1, 1}}};
        TensorSpace sp = space_of(p);
        // The target vectors differ only by the factor (k+1-i)/k.
        auto w1 = assignment_vector(sp, sympower_assignment(k, 1));
        for (int i = 2; i <= k; ++i) {
            auto wi = assignment_vector(sp, sympower_assignment(k, i));
            if (!(wi - scale(w1, Rational(k + 1 - i, k))).is_zero()) ++factor_bad;
        }
        for (int trial = 0; trial < 50; ++trial) {
            auto vals = oracle::distinct_rationals(rng, k + 2, z);
            std::vector<Rational> t(vals.begin(), vals.begin() + k);
            Rational s = vals[k], r = vals[k + 1];
            BetheVariables<Rational> tv{t, {s}, {r}};
            Rational weighted = 0;
            for (int i = 1; i <= k; ++i) {
                Rational w = omega_value(sympower_assignment(k, i), tv, z);
                if (w != oracle::sympower_omega(t, s, r, i)) ++omega_bad;
                weighted += Rational(k + 1 - i) * w;
            }
            Rational closed = oracle::sympower_weighted_sum(t, s, r);
            if (weighted != closed) ++sum_bad;
            if (trial < 10) {
                auto v = universal_weight_state(sp, p.k, tv);
                if (projection_coefficient(sp, v, sympower_assignment(k, 1)) != closed / k) ++proj_bad;
            }
            ++checked;
        }
    }
    bool ok = omega_bad == 0 && sum_bad == 0 && proj_bad == 0 && factor_bad == 0;
    return {ok, std::to_string(checked) + " points: omega mismatches " + std::to_string(omega_bad) + ", weighted sum mismatches " +
                    std::to_string(sum_bad) + ", projection mismatches " + std::to_string(proj_bad) + ", target factor mismatches " +
                    std::to_string(factor_bad)};
}

struct Certificate {
    bool ok = true;
    double max_eigen_residual = 0;
    double max_singular_residual = 0;
    double norm = 0;
    std::vector<Complex> eigenvalues;
};

Certificate certify(const BetheProblem& p, const TensorSpace& sp, const BetheVariables<Complex>& t) {
    Certificate c;
    auto v = universal_weight_state(sp, p.k, t);
    c.norm = norm(v, kBits).to_double();
    auto rep = check_common_eigenvector(sp, v, kEigenBar);
    for (double x : rep.residuals) c.max_eigen_residual = std::max(c.max_eigen_residual, x);
    for (double x : rep.singular_residuals) c.max_singular_residual = std::max(c.max_singular_residual, x);
    c.eigenvalues = rep.eigenvalues;
    c.ok = rep.ok && c.max_eigen_residual < kEigenBar && c.max_singular_residual < kEigenBar && c.norm > 1e-3;
    return c;
}

Outcome sl2_end_to_end() {
    BetheProblem p{1, {Weight{1}, Weight{1}}, {Rational(1), Rational(0)}, RootVector{{1}}};
    MultiStartOptions opt;
    opt.precision_bits = kBits;
    auto sols = multi_start_solve(p, opt);
    if (sols.size() != 1) return {false, std::to_string(sols.size()) + " solutions found, expected 1"};
    const auto& t = sols[0].t;
    Real err = (t[0][0] - Complex(Rational(1, 2), kBits)).abs();
    bool root_ok = err < pow2(-64, kBits);
    auto sp = space_of(p);
    auto c = certify(p, sp, t);
    double e0 = (c.eigenvalues[0] - Complex(Rational(-3, 2), kBits)).abs().to_double();
    double e1 = (c.eigenvalues[1] - Complex(Rational(3, 2), kBits)).abs().to_double();
    bool eig_ok = e0 < kEigenBar && e1 < kEigenBar;
    return {root_ok && c.ok && eig_ok, "|t-1/2| = " + fmt(err.to_double()) + ", eigen residual " + fmt(c.max_eigen_residual) +
                                           ", e-residual " + fmt(c.max_singular_residual) + ", eigenvalue errors " + fmt(e0) + "/" +
                                           fmt(e1) + ", |v| = " + fmt(c.norm)};
}

Outcome sympower_instance() {
    BetheProblem p{3, {Weight{0, 1, 1}, Weight{2, 0, 0}}, {Rational(1), Rational(0)}, RootVector{{1, 1, 1}}};
    MultiStartOptions opt;
    opt.precision_bits = kBits;
    auto sols = multi_start_solve(p, opt);
    if (sols.empty()) return {false, "no converged solution"};
    auto sp = space_of(p);
    Real tol = default_tolerance(kBits);
    bool ok = true;
    double min_tprime = 1e300, min_proj = 1e300, worst_res = 0;
    for (const auto& s : sols) {
        const auto& t = s.t;
        auto T = poly_from_roots(t[0], t[1][0]);
        double tp = poly_eval(poly_derivative(T), t[1][0]).abs().to_double();
        min_tprime = std::min(min_tprime, tp);
        auto v = universal_weight_state(sp, p.k, t);
        Complex proj = projection_coefficient(sp, v, sympower_assignment(1, 1));
        Complex want = weighted_omega_sum_closed_form(t[0], t[1][0], t[2][0]);
        double pabs = proj.abs().to_double();
        min_proj = std::min(min_proj, pabs);
        auto c = certify(p, sp, t);
        worst_res = std::max({worst_res, c.max_eigen_residual, c.max_singular_residual});
        ok = ok && tp > 1e-10 && pabs > 1e-10 && (proj - want).abs() < tol && c.ok;
    }
    return {ok, std::to_string(sols.size()) + " solution(s), min |T'(s)| = " + fmt(min_tprime) + ", min |projection| = " +
                    fmt(min_proj) + ", worst certification residual " + fmt(worst_res)};
}

std::vector<MultiIndex> all_indices(const TensorSpace& sp) {
    std::vector<MultiIndex> out{MultiIndex{}};
    for (int j = 0; j < sp.size(); ++j) {
        std::vector<MultiIndex> next;
        for (const auto& m : out)
            for (int a = 0; a < sp.factor(j).dim(); ++a) {
                auto x = m;
                x.push_back(a);
                next.push_back(x);
            }
        out = std::move(next);
    }
    return out;
}

Outcome operator_algebra() {
    std::mt19937_64 rng(8000);
    std::vector<std::vector<Weight>> configs{
        {Weight{1, 1}, Weight{2, 0}},
        {Weight{1, 0}, Weight{0, 1}, Weight{1, 1}},
        {Weight{3}, Weight{2}, Weight{4}},
        {Weight{0, 1, 0}, Weight{1, 0, 1}},
        {Weight{1, 0, 0}, Weight{0, 0, 1}, Weight{2, 0, 0}},
    };
    int states = 0, violations = 0;
    std::int64_t max_dim = 0;
    for (const auto& ws : configs) {
        auto z = oracle::distinct_rationals(rng, static_cast<int>(ws.size()), {});
        std::vector<ModulePtr> ms;
        for (const auto& w : ws) ms.push_back(irreducible_module(w));
        TensorSpace sp = tensor_space(ms, z);
        max_dim = std::max(max_dim, sp.dim());
        auto idx = all_indices(sp);
        int n = sp.size();
        for (int s = 0; s < 20; ++s) {
            TensorState<Rational> v;
            for (const auto& m : idx)
                if (uniform_int(rng, 0, 2) == 0) v.add(m, random_rational(rng, 9, 5));
            v.prune();
            std::vector<TensorState<Rational>> hv;
            TensorState<Rational> sum;
            for (int j = 0; j < n; ++j) {
                hv.push_back(apply_hamiltonian(sp, j, v));
                sum = sum + hv.back();
            }
            if (!sum.is_zero()) ++violations;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!(apply_hamiltonian(sp, i, hv[j]) - apply_hamiltonian(sp, j, hv[i])).is_zero()) ++violations;
            for (int a = 1; a <= sp.rank(); ++a)
                for (auto g : {Generator::e(a), Generator::f(a), Generator::h(a)}) {
                    auto dv = apply_diagonal(sp, g, v);
                    for (int j = 0; j < n; ++j)
                        if (!(apply_hamiltonian(sp, j, dv) - apply_diagonal(sp, g, hv[j])).is_zero()) ++violations;
                }
            ++states;
        }
    }
    return {violations == 0 && max_dim <= 200, std::to_string(violations) + " violations over " + std::to_string(states) +
                                                   " states in 5 spaces (largest dimension " + std::to_string(max_dim) + ")"};
}

Outcome representation_integrity() {
    int modules = 0, bad_dim = 0, bad_rel = 0;
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : dominant_weights_up_to(n, 300)) {
            auto m = irreducible_module(w, 300);
            if (m->dim() != weyl_dim(w)) ++bad_dim;
            if (!check_relations(*m).empty()) ++bad_rel;
            ++modules;
        }
    return {bad_dim == 0 && bad_rel == 0, std::to_string(modules) + " modules, " + std::to_string(bad_dim) + " dimension mismatches, " +
                                              std::to_string(bad_rel) + " relation failures"};
}

Outcome reduction_consistency() {
    std::mt19937_64 rng(10000);
    Real tol = default_tolerance(kBits);
    Real bar = tol * Rational(10);
    int problems = 0, solutions = 0, bad = 0, empty = 0;
    double worst = 0;
    while (problems < 20) {
        int rank = static_cast<int>(uniform_int(rng, 1, 2));
        BetheProblem p;
        p.rank = rank;
        p.weights = {random_dominant(rng, rank, 0, 2), random_dominant(rng, rank, 0, 2)};
        p.marks = oracle::distinct_rationals(rng, 2, {});
        p.k.mult.assign(rank, 0);
        p.k.mult[0] = static_cast<int>(uniform_int(rng, 1, 2));
        if (rank == 2) p.k.mult[1] = static_cast<int>(uniform_int(rng, 0, 1));
        if (!is_dominant(p.target_weight())) continue;
        if (singular_basis(space_of(p), p.target_weight()).empty()) continue;
        ++problems;
        auto [q, norm] = reduce_to_01(p);
        MultiStartOptions opt;
        opt.precision_bits = kBits;
        opt.num_starts = 32;
        opt.seed = static_cast<std::uint64_t>(problems);
        auto sols = multi_start_solve(q, opt);
        if (sols.empty()) ++empty;
        for (const auto& s : sols) {
            auto t = norm.pull_back(s.t);
            Real r(0L, kBits);
            for (const auto& x : bethe_residual(p, t)) r += x.norm2();
            r = sqrt(r);
            worst = std::max(worst, r.to_double());
            if (!(r < bar)) ++bad;
            ++solutions;
        }
    }
    return {bad == 0 && empty == 0, std::to_string(problems) + " problems, " + std::to_string(solutions) + " solutions, " +
                                        std::to_string(empty) + " problems without solutions, worst residual " + fmt(worst) +
                                        " (bar " + fmt(bar.to_double()) + ")"};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"identity suite I/II/III (k=1..6) and IV (k=2..5)", identity_suite},
        {"P1a and P1b for k=2..8", polynomial_route},
        {"single-root projection for k=1..6", single_root_projection},
        {"distributed projection n=3, N=3, k=(1,1,1)", general_n},
        {"symmetric power omegas and weighted sum for k=1..5", sympower_omegas},
        {"sl2 end to end", sl2_end_to_end},
        {"sl4 instance with Lambda(0) = 2 omega_1", sympower_instance},
        {"Gaudin operator algebra", operator_algebra},
        {"representation integrity N<=4, dim<=300", representation_integrity},
        {"reduction to marks (0,1)", reduction_consistency},
    };
    int failed = 0;
    for (std::size_t c = 0; c < criteria.size(); ++c) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[c].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %zu: %s -- %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c + 1, criteria[c].name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
