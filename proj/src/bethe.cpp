#include "gaudin/bethe.hpp"

#include "gaudin/identities.hpp"
#include "gaudin/poly.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

namespace gaudin {

void BetheProblem::validate() const {
    if (rank < 1) throw std::invalid_argument("rank N must be >= 1");
    if (weights.empty()) throw std::invalid_argument("a Bethe problem needs at least one weight");
    if (marks.size() != weights.size()) throw std::invalid_argument("one mark per weight is required");
    for (const auto& w : weights) {
        if (w.rank() != rank) throw RankMismatch("weight " + w.to_string() + " has the wrong rank");
        if (!is_dominant(w)) throw NotDominant("weight " + w.to_string() + " is not integral dominant");
    }
    if (k.rank() != rank) throw RankMismatch("root vector k has the wrong rank");
    for (int m : k.mult)
        if (m < 0) throw std::invalid_argument("negative root multiplicity");
    for (std::size_t a = 0; a < marks.size(); ++a)
        for (std::size_t b = a + 1; b < marks.size(); ++b)
            if (marks[a] == marks[b]) throw std::invalid_argument("marks must be pairwise distinct");
}

namespace {

std::string var_name(int i, int l) { return "t_" + std::to_string(l + 1) + "(" + std::to_string(i + 1) + ")"; }

template <class S>
void check_shape(const BetheProblem& p, const BetheVariables<S>& t) {
    if (static_cast<int>(t.size()) != p.rank) throw RankMismatch("variables need one group per simple root");
    for (int i = 0; i < p.rank; ++i)
        if (static_cast<int>(t[i].size()) != p.k.mult[i])
            throw std::invalid_argument("variable group " + std::to_string(i + 1) + " has the wrong size");
}

template <class S>
S nonzero_diff(const S& a, const S& b, const std::string& what) {
    S d = a - b;
    if (is_zero(d)) throw PoleError("pole: " + what);
    return d;
}

template <class S>
const S& proto_of(const BetheVariables<S>& t) {
    for (const auto& g : t)
        if (!g.empty()) return g.front();
    throw std::invalid_argument("the Bethe system has no variables (k = 0)");
}

} // namespace

template <class S>
std::vector<S> bethe_residual(const BetheProblem& p, const BetheVariables<S>& t) {
    check_shape(p, t);
    const S& proto = proto_of(t);
    std::vector<S> out;
    for (int i = 0; i < p.rank; ++i)
        for (int l = 0; l < p.k.mult[i]; ++l) {
            const S& x = t[i][l];
            S r = zero_like(proto);
            for (int s = 0; s < p.k.mult[i]; ++s)
                if (s != l) r += Rational(2) / nonzero_diff(x, t[i][s], var_name(i, l) + " = " + var_name(i, s));
            for (int adj : {i - 1, i + 1}) {
                if (adj < 0 || adj >= p.rank) continue;
                for (int s = 0; s < p.k.mult[adj]; ++s)
                    r -= Rational(1) / nonzero_diff(x, t[adj][s], var_name(i, l) + " = " + var_name(adj, s));
            }
            for (int j = 0; j < p.size(); ++j) {
                const Rational& a = p.pairing(j, i);
                if (sgn(a) == 0) continue;
                r -= a / nonzero_diff(x, lift_like(proto, p.marks[j]), var_name(i, l) + " = z_" + std::to_string(j + 1));
            }
            out.push_back(std::move(r));
        }
    return out;
}

template <class S>
std::vector<S> bethe_residual_polyform(const BetheProblem& p, const BetheVariables<S>& t) {
    check_shape(p, t);
    const S& proto = proto_of(t);
    std::vector<std::vector<S>> T, dT, ddT;
    for (int i = 0; i < p.rank; ++i) {
        T.push_back(poly_from_roots(t[i], proto));
        dT.push_back(poly_derivative(T.back()));
        ddT.push_back(poly_derivative(dT.back()));
    }
    std::vector<S> out;
    for (int i = 0; i < p.rank; ++i)
        for (int l = 0; l < p.k.mult[i]; ++l) {
            const S& x = t[i][l];
            S d1 = poly_eval(dT[i], x);
            if (is_zero(d1)) throw PoleError("T_" + std::to_string(i + 1) + " has a repeated root at " + var_name(i, l));
            S r = poly_eval(ddT[i], x) / d1;
            for (int adj : {i - 1, i + 1}) {
                if (adj < 0 || adj >= p.rank || p.k.mult[adj] == 0) continue;
                S v = poly_eval(T[adj], x);
                if (is_zero(v)) throw PoleError("T_" + std::to_string(adj + 1) + " vanishes at " + var_name(i, l));
                r -= poly_eval(dT[adj], x) / v;
            }
            for (int j = 0; j < p.size(); ++j) {
                const Rational& a = p.pairing(j, i);
                if (sgn(a) == 0) continue;
                r -= a / nonzero_diff(x, lift_like(proto, p.marks[j]), var_name(i, l) + " = z_" + std::to_string(j + 1));
            }
            out.push_back(std::move(r));
        }
    return out;
}

template <class S>
std::vector<std::vector<S>> bethe_jacobian(const BetheProblem& p, const BetheVariables<S>& t) {
    check_shape(p, t);
    const S& proto = proto_of(t);
    std::vector<int> offset(p.rank + 1, 0);
    for (int i = 0; i < p.rank; ++i) offset[i + 1] = offset[i] + p.k.mult[i];
    int n = offset[p.rank];
    std::vector<std::vector<S>> J(n, std::vector<S>(n, zero_like(proto)));
    for (int i = 0; i < p.rank; ++i)
        for (int l = 0; l < p.k.mult[i]; ++l) {
            int row = offset[i] + l;
            const S& x = t[i][l];
            S& diag = J[row][row];
            for (int s = 0; s < p.k.mult[i]; ++s) {
                if (s == l) continue;
                S d = nonzero_diff(x, t[i][s], var_name(i, l) + " = " + var_name(i, s));
                S w = Rational(2) / (d * d);
                diag -= w;
                J[row][offset[i] + s] += w;
            }
            for (int adj : {i - 1, i + 1}) {
                if (adj < 0 || adj >= p.rank) continue;
                for (int s = 0; s < p.k.mult[adj]; ++s) {
                    S d = nonzero_diff(x, t[adj][s], var_name(i, l) + " = " + var_name(adj, s));
                    S w = Rational(1) / (d * d);
                    diag += w;
                    J[row][offset[adj] + s] -= w;
                }
            }
            for (int j = 0; j < p.size(); ++j) {
                const Rational& a = p.pairing(j, i);
                if (sgn(a) == 0) continue;
                S d = nonzero_diff(x, lift_like(proto, p.marks[j]), var_name(i, l) + " = z_" + std::to_string(j + 1));
                diag += a / (d * d);
            }
        }
    return J;
}

namespace {

// One equation as a list of (coefficient, denominator partner): residual_l =
// sum_f c_f / (x_l - y_f); a partner is a variable (flat index) or a mark.
struct Term {
    Rational coef;
    int var = -1;
    Rational mark;
};

std::vector<std::vector<Term>> equation_terms(const BetheProblem& p) {
    std::vector<int> offset(p.rank + 1, 0);
    for (int i = 0; i < p.rank; ++i) offset[i + 1] = offset[i] + p.k.mult[i];
    std::vector<std::vector<Term>> eqs;
    for (int i = 0; i < p.rank; ++i)
        for (int l = 0; l < p.k.mult[i]; ++l) {
            std::vector<Term> e;
            for (int s = 0; s < p.k.mult[i]; ++s)
                if (s != l) e.push_back({Rational(2), offset[i] + s, Rational(0)});
            for (int adj : {i - 1, i + 1})
                if (adj >= 0 && adj < p.rank)
                    for (int s = 0; s < p.k.mult[adj]; ++s) e.push_back({Rational(-1), offset[adj] + s, Rational(0)});
            for (int j = 0; j < p.size(); ++j)
                if (sgn(p.pairing(j, i)) != 0) e.push_back({-p.pairing(j, i), -1, p.marks[j]});
            eqs.push_back(std::move(e));
        }
    return eqs;
}

template <class S>
std::vector<S> flatten(const BetheVariables<S>& t) {
    std::vector<S> x;
    for (const auto& g : t) x.insert(x.end(), g.begin(), g.end());
    return x;
}

// Cleared equations F_l = sum_f c_f prod_{g != f} (x_l - y_g) and, when J is
// given, their exact Jacobian.
template <class S>
std::vector<S> cleared_system(const BetheProblem& p, const BetheVariables<S>& t, std::vector<std::vector<S>>* J) {
    check_shape(p, t);
    const S& proto = proto_of(t);
    auto x = flatten(t);
    auto eqs = equation_terms(p);
    std::size_t n = x.size();
    std::vector<S> F;
    if (J) J->assign(n, std::vector<S>(n, zero_like(proto)));
    for (std::size_t row = 0; row < n; ++row) {
        const auto& e = eqs[row];
        std::size_t m = e.size();
        std::vector<S> d;
        for (const auto& term : e) d.push_back(term.var >= 0 ? S(x[row] - x[term.var]) : S(x[row] - lift_like(proto, term.mark)));
        // prod over all factors except the listed ones.
        auto prod_except = [&](std::size_t a, std::size_t b) {
            S v = lift_like(proto, Rational(1));
            for (std::size_t h = 0; h < m; ++h)
                if (h != a && h != b) v = v * d[h];
            return v;
        };
        S f = zero_like(proto);
        for (std::size_t a = 0; a < m; ++a) f += prod_except(a, m) * e[a].coef;
        F.push_back(std::move(f));
        if (!J) continue;
        // d/dx_row hits every factor; d/dy_g hits factor g with a minus sign.
        for (std::size_t g = 0; g < m; ++g) {
            S dg = zero_like(proto);
            for (std::size_t a = 0; a < m; ++a)
                if (a != g) dg += prod_except(a, g) * e[a].coef;
            (*J)[row][row] += dg;
            if (e[g].var >= 0) (*J)[row][e[g].var] -= dg;
        }
    }
    return F;
}

} // namespace

template <class S>
std::vector<S> bethe_residual_cleared(const BetheProblem& p, const BetheVariables<S>& t) {
    return cleared_system<S>(p, t, nullptr);
}

template <class S>
std::vector<std::vector<S>> bethe_jacobian_cleared(const BetheProblem& p, const BetheVariables<S>& t) {
    std::vector<std::vector<S>> J;
    cleared_system(p, t, &J);
    return J;
}

Real default_tolerance(unsigned precision_bits) {
    return pow2(-static_cast<long>(precision_bits / 2), precision_bits);
}

Real collision_margin(const Real& tol) { return tol * Rational(1000000); }

Real min_separation(const BetheProblem& p, const BetheVariables<Complex>& t) {
    check_shape(p, t);
    unsigned bits = proto_of(t).precision();
    std::optional<Real> best;
    auto consider = [&](const Complex& a, const Complex& b) {
        Real d = (a - b).abs();
        if (!best || d < *best) best = d;
    };
    for (int i = 0; i < p.rank; ++i)
        for (int l = 0; l < p.k.mult[i]; ++l) {
            for (int s = l + 1; s < p.k.mult[i]; ++s) consider(t[i][l], t[i][s]);
            if (i + 1 < p.rank)
                for (const auto& y : t[i + 1]) consider(t[i][l], y);
            for (const auto& z : p.marks) consider(t[i][l], Complex(z, bits));
        }
    return *best;
}

void canonicalize(BetheVariables<Complex>& t, const Real& eps) {
    for (auto& g : t) {
        std::sort(g.begin(), g.end(), [](const Complex& a, const Complex& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        // Runs of real parts that agree up to eps are ordered by imaginary part.
        std::size_t start = 0;
        for (std::size_t q = 1; q <= g.size(); ++q) {
            if (q < g.size() && abs(g[q].real() - g[q - 1].real()) <= eps) continue;
            std::sort(g.begin() + start, g.begin() + q,
                      [](const Complex& a, const Complex& b) { return a.imag() < b.imag(); });
            start = q;
        }
    }
}

bool same_solution(const BetheVariables<Complex>& a, const BetheVariables<Complex>& b, const Real& eps) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        std::vector<bool> used(b[i].size(), false);
        for (const auto& x : a[i]) {
            bool matched = false;
            for (std::size_t q = 0; q < b[i].size() && !matched; ++q) {
                if (used[q]) continue;
                if (abs(x.real() - b[i][q].real()) <= eps && abs(x.imag() - b[i][q].imag()) <= eps) {
                    used[q] = true;
                    matched = true;
                }
            }
            if (!matched) return false;
        }
    }
    return true;
}

namespace {

Real with_precision(const Real& x, unsigned bits) {
    Real r(bits);
    mpfr_set(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Complex with_precision(const Complex& z, unsigned bits) {
    return Complex(with_precision(z.real(), bits), with_precision(z.imag(), bits));
}

Real vector_norm(const std::vector<Complex>& v, unsigned bits) {
    Real s(0L, bits);
    for (const auto& x : v) s += x.norm2();
    return sqrt(s);
}

// Gaussian elimination with partial pivoting; solves J x = rhs.
std::vector<Complex> solve_linear(std::vector<std::vector<Complex>> J, std::vector<Complex> rhs, unsigned bits) {
    std::size_t n = rhs.size();
    Real scale(0L, bits);
    for (const auto& row : J)
        for (const auto& x : row)
            if (Real m = x.abs(); m > scale) scale = m;
    Real threshold = scale * pow2(-static_cast<long>(bits) + 8, bits);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        Real best = J[c][c].norm2();
        for (std::size_t r = c + 1; r < n; ++r)
            if (Real m = J[r][c].norm2(); m > best) {
                best = m;
                piv = r;
            }
        if (scale.is_zero() || sqrt(best) <= threshold)
            throw SingularJacobian("Jacobian is singular at column " + std::to_string(c + 1));
        std::swap(J[c], J[piv]);
        std::swap(rhs[c], rhs[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (J[r][c].is_zero()) continue;
            Complex f = J[r][c] / J[c][c];
            for (std::size_t q = c; q < n; ++q) J[r][q] -= f * J[c][q];
            rhs[r] -= f * rhs[c];
        }
    }
    std::vector<Complex> x(n, Complex(bits));
    for (std::size_t c = n; c-- > 0;) {
        Complex acc = rhs[c];
        for (std::size_t q = c + 1; q < n; ++q) acc -= J[c][q] * x[q];
        x[c] = acc / J[c][c];
    }
    return x;
}

BetheVariables<Complex> step(const BetheVariables<Complex>& t, const std::vector<Complex>& delta, const Rational& lambda) {
    BetheVariables<Complex> out = t;
    std::size_t q = 0;
    for (auto& g : out)
        for (auto& x : g) x += delta[q++] * lambda;
    return out;
}

} // namespace

BetheSolution newton_solve(const BetheProblem& p, const BetheVariables<Complex>& start, unsigned precision_bits,
                           int max_iter, const Real& tol) {
    p.validate();
    check_shape(p, start);
    if (p.k.is_zero()) throw std::invalid_argument("the Bethe system has no variables (k = 0)");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    BetheVariables<Complex> t = start;
    for (auto& g : t)
        for (auto& x : g) x = with_precision(x, precision_bits);
    bethe_residual(p, t);  // a start on a pole is rejected here

    // Iterate on the cleared equations: the rational residual decays like 1/t
    // at infinity, which makes its norm a useless merit function.
    std::vector<std::vector<Complex>> J;
    std::vector<Complex> F = cleared_system(p, t, &J);
    Real fn = vector_norm(F, precision_bits);
    for (int iter = 1; iter <= max_iter; ++iter) {
        std::vector<Complex> rhs;
        for (const auto& f : F) rhs.push_back(-f);
        auto delta = solve_linear(std::move(J), std::move(rhs), precision_bits);
        Real sn = vector_norm(delta, precision_bits);

        BetheVariables<Complex> next;
        std::vector<Complex> nextF;
        Real nextn(precision_bits);
        bool accepted = false;
        if (fn <= tol) {
            next = step(t, delta, Rational(1));
            nextF = cleared_system<Complex>(p, next, nullptr);
            nextn = vector_norm(nextF, precision_bits);
            accepted = true;
        } else {
            Rational lambda = 1;
            for (int halving = 0; halving <= 30 && !accepted; ++halving, lambda /= 2) {
                next = step(t, delta, lambda);
                nextF = cleared_system<Complex>(p, next, nullptr);
                nextn = vector_norm(nextF, precision_bits);
                if (nextn < fn) {
                    accepted = true;
                    sn = sn * lambda;
                }
            }
        }
        if (!accepted) throw DampingFailed("damped Newton step failed to reduce the residual after 30 halvings");
        t = std::move(next);
        fn = nextn;
        if (fn <= tol && sn < tol) {
            // Cleared roots include collisions; those hit a pole or fail the margin.
            Real rn = vector_norm(bethe_residual(p, t), precision_bits);
            BetheSolution sol{t, rn, precision_bits, false, iter};
            canonicalize(sol.t, tol * Rational(10));
            sol.converged = rn <= tol && min_separation(p, sol.t) > collision_margin(tol);
            return sol;
        }
        F = cleared_system(p, t, &J);
    }
    throw MaxIterationsExceeded("Newton did not converge within " + std::to_string(max_iter) + " iterations");
}

std::vector<BetheSolution> multi_start_solve(const BetheProblem& p, const MultiStartOptions& options, MultiStartStats* stats) {
    p.validate();
    if (p.k.is_zero()) throw std::invalid_argument("the Bethe system has no variables (k = 0)");
    if (options.num_starts < 0) throw std::invalid_argument("num_starts must be >= 0");
    unsigned bits = options.precision_bits;
    Real tol = default_tolerance(bits);

    // Starting box: centred on the mean mark, half-width 1.5 max(1, spread).
    double center = 0;
    for (const auto& z : p.marks) center += z.get_d();
    center /= static_cast<double>(p.marks.size());
    double radius = 1;
    for (const auto& z : p.marks) radius = std::max(radius, std::abs(z.get_d() - center));
    radius *= 1.5;

    auto draw = [&](int index) {
        std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(index)));
        auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2 - 1; };
        BetheVariables<Complex> t(p.rank);
        for (int i = 0; i < p.rank; ++i)
            for (int l = 0; l < p.k.mult[i]; ++l) {
                double re = center + radius * unit();
                double im = radius * unit();
                t[i].emplace_back(Real(re, bits), Real(im, bits));
            }
        return t;
    };

    enum class Outcome { Solved, Pole, Singular, Damping, MaxIter };
    std::vector<std::optional<BetheSolution>> results(options.num_starts);
    std::vector<Outcome> outcomes(options.num_starts, Outcome::Solved);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int index = next++; index < options.num_starts; index = next++) {
            try {
                results[index] = newton_solve(p, draw(index), bits, options.max_iter, tol);
            } catch (const PoleError&) {
                outcomes[index] = Outcome::Pole;
            } catch (const SingularJacobian&) {
                outcomes[index] = Outcome::Singular;
            } catch (const DampingFailed&) {
                outcomes[index] = Outcome::Damping;
            } catch (const MaxIterationsExceeded&) {
                outcomes[index] = Outcome::MaxIter;
            }
        }
    };
    int threads = std::max(1, std::min(options.threads, options.num_starts));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (stats) {
        *stats = MultiStartStats{};
        for (int index = 0; index < options.num_starts; ++index) {
            switch (outcomes[index]) {
                case Outcome::Solved: ++(results[index]->converged ? stats->converged : stats->rejected); break;
                case Outcome::Pole: ++stats->pole; break;
                case Outcome::Singular: ++stats->singular_jacobian; break;
                case Outcome::Damping: ++stats->damping_failed; break;
                case Outcome::MaxIter: ++stats->max_iterations; break;
            }
        }
    }

    std::vector<BetheSolution> found;
    for (auto& r : results)
        if (r && r->converged) found.push_back(std::move(*r));
    auto less = [](const BetheSolution& a, const BetheSolution& b) {
        for (std::size_t i = 0; i < a.t.size(); ++i)
            for (std::size_t l = 0; l < a.t[i].size(); ++l) {
                const auto& x = a.t[i][l];
                const auto& y = b.t[i][l];
                if (x.real() != y.real()) return x.real() < y.real();
                if (x.imag() != y.imag()) return x.imag() < y.imag();
            }
        return false;
    };
    std::stable_sort(found.begin(), found.end(), less);
    Real eps = tol * Rational(10);
    std::vector<BetheSolution> unique;
    for (auto& s : found) {
        bool dup = false;
        for (const auto& u : unique)
            if (same_solution(s.t, u.t, eps)) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(std::move(s));
    }
    return unique;
}

std::pair<BetheProblem, AffineNormalization> reduce_to_01(const BetheProblem& p) {
    if (p.size() != 2) throw std::invalid_argument("reduce_to_01 needs exactly two marked points");
    p.validate();
    AffineNormalization map{p.marks[0], p.marks[1] - p.marks[0]};
    BetheProblem q = p;
    q.marks = {Rational(0), Rational(1)};
    return {q, map};
}

template std::vector<Rational> bethe_residual(const BetheProblem&, const BetheVariables<Rational>&);
template std::vector<Complex> bethe_residual(const BetheProblem&, const BetheVariables<Complex>&);
template std::vector<Rational> bethe_residual_polyform(const BetheProblem&, const BetheVariables<Rational>&);
template std::vector<Complex> bethe_residual_polyform(const BetheProblem&, const BetheVariables<Complex>&);
template std::vector<std::vector<Rational>> bethe_jacobian(const BetheProblem&, const BetheVariables<Rational>&);
template std::vector<std::vector<Complex>> bethe_jacobian(const BetheProblem&, const BetheVariables<Complex>&);
template std::vector<Rational> bethe_residual_cleared(const BetheProblem&, const BetheVariables<Rational>&);
template std::vector<Complex> bethe_residual_cleared(const BetheProblem&, const BetheVariables<Complex>&);
template std::vector<std::vector<Rational>> bethe_jacobian_cleared(const BetheProblem&, const BetheVariables<Rational>&);
template std::vector<std::vector<Complex>> bethe_jacobian_cleared(const BetheProblem&, const BetheVariables<Complex>&);

} // namespace gaudin
