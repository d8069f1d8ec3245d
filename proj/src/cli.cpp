#include "gaudin/cli.hpp"

#include "gaudin/json_io.hpp"
#include "gaudin/poly.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <sstream>

namespace gaudin::cli {

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int max_dim_default() {
    if (const char* env = std::getenv("GAUDIN_MAX_DIM")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw MalformedInput(std::string("GAUDIN_MAX_DIM must be a positive integer, got '") + env + "'");
    }
    return kDefaultMaxModuleDim;
}

Weight parse_weight_list(const std::string& text) {
    std::vector<Rational> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            coords.push_back(parse_rational(item));
        } catch (const std::invalid_argument& e) {
            throw MalformedInput("bad weight entry '" + item + "': " + e.what());
        }
    }
    if (coords.empty()) throw MalformedInput("empty weight");
    return Weight(std::move(coords));
}

TensorSpace build_space(const BetheProblem& p, int max_dim) {
    std::vector<ModulePtr> factors;
    for (const auto& w : p.weights) factors.push_back(factor_module(w, max_dim));
    return tensor_space(std::move(factors), p.marks);
}

Real parse_tolerance(const std::string& text, unsigned bits) {
    try {
        Real r(std::string_view(text), bits);
        if (r.sign() < 0) throw MalformedInput("tolerance must be nonnegative");
        return r;
    } catch (const MalformedInput&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(std::string("bad tolerance: ") + e.what());
    }
}

// Scalar comparison used by `project`: exact equality, or relative agreement for floats.
bool agrees(const Rational& a, const Rational& b, const Real&) { return a == b; }
bool agrees(const Complex& a, const Complex& b, const Real& tol) {
    Real scale = b.abs();
    if (scale < Real(1L, scale.precision())) scale = Real(1L, scale.precision());
    return (a - b).abs() <= tol * scale;
}
bool nonzero_at(const Rational& a, const Real&) { return sgn(a) != 0; }
bool nonzero_at(const Complex& a, const Real& tol) { return a.abs() > tol * Rational(10); }

Json scalar(const Rational& q) { return to_json(q); }
Json scalar(const Complex& c) { return to_json(c); }

struct VerifyOutcome {
    Json report;
    bool ok;
};

// Residual, domain margin, eigenvector and non-triviality checks for one point.
VerifyOutcome verify_point(const BetheProblem& p, const TensorSpace& space, const BetheVariables<Complex>& t,
                           const Real& tol, unsigned bits) {
    Json j;
    bool ok = true;
    Real res(bits);
    try {
        Real s(0L, bits);
        for (const auto& r : bethe_residual(p, t)) s += r.norm2();
        res = sqrt(s);
    } catch (const PoleError& e) {
        return {Json{{"error", e.what()}, {"ok", false}}, false};
    }
    j["residual"] = res.to_string(6);
    bool res_ok = res <= tol;
    j["residual_ok"] = res_ok;
    ok = ok && res_ok;

    Real sep = min_separation(p, t);
    bool sep_ok = sep > collision_margin(tol);
    j["min_separation"] = sep.to_string(6);
    j["domain_ok"] = sep_ok;
    ok = ok && sep_ok;

    auto v = universal_weight_state(space, p.k, t);
    Real vmax(0L, bits);
    for (const auto& [idx, c] : v.terms)
        if (Real m = c.abs(); m > vmax) vmax = m;
    bool nontrivial = vmax > tol * Rational(10);
    j["vector_max_coordinate"] = vmax.to_string(6);
    j["nonzero"] = nontrivial;
    ok = ok && nontrivial;
    if (nontrivial) {
        auto rep = check_common_eigenvector(space, v, tol.to_double());
        j["eigen"] = to_json(rep);
        ok = ok && rep.ok;
    }

    // The s-equation of the k = (k,1,1) family forbids T'(s) = 0 at a solution.
    if (p.rank >= 3 && p.k.mult[0] >= 1 && p.k.mult[1] == 1 && p.k.mult[2] == 1) {
        bool tail_zero = true;
        for (int i = 3; i < p.rank; ++i) tail_zero = tail_zero && p.k.mult[i] == 0;
        if (tail_zero) {
            auto T = poly_from_roots(t[0], t[1][0]);
            Real d = poly_eval(poly_derivative(T), t[1][0]).abs();
            bool d_ok = d > Real(1e-10, bits);
            j["t_prime_at_s"] = d.to_string(6);
            j["t_prime_ok"] = d_ok;
            ok = ok && d_ok;
        }
    }
    j["ok"] = ok;
    return {j, ok};
}

template <class S>
Json project_report(const BetheProblem& p, const TensorSpace& space, const BetheVariables<S>& t, const std::string& target,
                    const Real& tol, bool& ok) {
    Json j{{"target", target}};
    auto v = universal_weight_state(space, p.k, t);
    auto check = [&](const S& got, const S& want, Json& into) {
        bool m = agrees(got, want, tol);
        into["coefficient"] = scalar(got);
        into["closed_form"] = scalar(want);
        into["match"] = m;
        return m;
    };
    if (target == "thm2") {
        if (p.size() != 2) throw MalformedInput("thm2 needs two tensor factors");
        for (int i = 1; i < p.rank; ++i)
            if (p.k.mult[i] != 0) throw MalformedInput("thm2 needs k = (k, 0, ..., 0)");
        WordAssignment a{{{}, std::vector<int>(p.k.mult[0], 0)}};
        j["assignment"] = a.to_string();
        S got = projection_coefficient(space, v, a);
        ok = check(got, projection_closed_form_single_root(t[0], p.marks[1]), j) && ok;
        j["nonzero"] = nonzero_at(got, tol);
        ok = ok && nonzero_at(got, tol);
    } else if (target == "general-n") {
        WordAssignment a;
        a.words.resize(p.size());
        for (int i = 0; i < p.rank; ++i) {
            if (p.k.mult[i] == 0) continue;
            if (i >= p.size()) throw MalformedInput("general-n needs k_i = 0 for i > n");
            a.words[i].assign(p.k.mult[i], i);
        }
        j["assignment"] = a.to_string();
        S got = projection_coefficient(space, v, a);
        ok = check(got, projection_closed_form_distributed(t, p.marks), j) && ok;
        j["nonzero"] = nonzero_at(got, tol);
        ok = ok && nonzero_at(got, tol);
    } else if (target == "thm3") {
        if (p.size() != 2 || p.rank < 3) throw MalformedInput("thm3 needs N >= 3 and two tensor factors");
        if (p.marks[0] != 1 || p.marks[1] != 0) throw MalformedInput("thm3 needs z = (1, 0)");
        int k = p.k.mult[0];
        bool shape = k >= 1 && p.k.mult[1] == 1 && p.k.mult[2] == 1;
        for (int i = 3; i < p.rank; ++i) shape = shape && p.k.mult[i] == 0;
        if (!shape) throw MalformedInput("thm3 needs k = (k, 1, 1, 0, ..., 0) with k >= 1");
        const auto& w0 = p.weights[1];
        for (int i = 1; i < p.rank; ++i)
            if (w0[i] != 0) throw MalformedInput("thm3 needs the second weight to be m omega_1");
        const S& s = t[1][0];
        const S& r = t[2][0];
        Json omegas = Json::array();
        for (int i = 1; i <= k; ++i) {
            Json o{{"i", i}};
            S got = omega_value(sympower_assignment(k, i), t, p.marks);
            ok = check(got, omega_closed_form_sympower(t[0], s, r, i), o) && ok;
            omegas.push_back(o);
        }
        j["omegas"] = omegas;
        WordAssignment a = sympower_assignment(k, 1);
        j["assignment"] = a.to_string();
        // Coefficient along w_1 = k m(m-1)...(m-k+1) f_3 v_1 (x) e_1^{m-k} e_2^{k-1} e_3.
        S got = projection_coefficient(space, v, a);
        S want = weighted_omega_sum_closed_form(t[0], s, r) / Rational(k);
        ok = check(got, want, j) && ok;
        j["nonzero"] = nonzero_at(got, tol);
        ok = ok && nonzero_at(got, tol);
    } else {
        throw MalformedInput("unknown projection target '" + target + "'");
    }
    return j;
}

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"error", message}, {"kind", kind}};
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Bethe vectors of the sl(N+1) Gaudin model", "gaudin"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    int threads = 1;
    app.add_option("--seed", seed, "master random seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    // identities
    auto* ids = app.add_subcommand("identities", "verify a symmetrization identity at random rational points");
    ids->fallthrough();
    std::string kind_tag;
    int id_k = 0, id_i = 1, trials = 100;
    ids->add_option("--kind", kind_tag, "I, II, III, IV, P1a or P1b")->required();
    ids->add_option("--k", id_k, "number of variables")->required();
    ids->add_option("--i", id_i, "index for IV and P1b")->capture_default_str();
    ids->add_option("--trials", trials, "random points")->capture_default_str();

    // module
    auto* mod = app.add_subcommand("module", "build an irreducible module");
    mod->fallthrough();
    int mod_rank = 0;
    std::string mod_weight;
    bool check_dim = false, check_rel = false, show_basis = false;
    int max_dim = 0;
    mod->add_option("--N", mod_rank, "rank N of sl(N+1)")->required();
    mod->add_option("--weight", mod_weight, "highest weight, comma separated fundamental coordinates")->required();
    mod->add_flag("--check-dim", check_dim, "compare with the Weyl dimension formula");
    mod->add_flag("--check-relations", check_rel, "verify the Chevalley relations exactly");
    mod->add_flag("--basis", show_basis, "list basis labels and weights");
    mod->add_option("--max-dim", max_dim, "dimension cap (default GAUDIN_MAX_DIM or 10000)");

    // bethe-solve
    auto* solve = app.add_subcommand("bethe-solve", "multi-start Newton search for Bethe solutions");
    solve->fallthrough();
    std::string problem_path;
    int starts = 64, max_iter = 200;
    unsigned precision = kDefaultPrecisionBits;
    solve->add_option("--problem", problem_path, "problem JSON")->required();
    solve->add_option("--starts", starts, "number of random starts")->capture_default_str();
    solve->add_option("--precision", precision, "working precision in bits")->capture_default_str();
    solve->add_option("--max-iter", max_iter, "Newton iteration cap")->capture_default_str();

    // bethe-verify
    auto* verify = app.add_subcommand("bethe-verify", "check Bethe solutions and their Bethe vectors");
    verify->fallthrough();
    std::string solutions_path, tol_text;
    verify->add_option("--problem", problem_path, "problem JSON")->required();
    verify->add_option("--solutions", solutions_path, "solutions JSON")->required();
    verify->add_option("--tol", tol_text, "tolerance (default 10^(-precision/5))");
    verify->add_option("--precision", precision, "working precision in bits")->capture_default_str();

    // project
    auto* project = app.add_subcommand("project", "projection coefficient of v(t) against its closed form");
    project->fallthrough();
    std::string t_path, target;
    project->add_option("--problem", problem_path, "problem JSON")->required();
    project->add_option("--t", t_path, "variables JSON")->required();
    project->add_option("--target", target, "thm2, thm3 or general-n")
        ->required()
        ->check(CLI::IsMember({"thm2", "thm3", "general-n"}));
    project->add_option("--tol", tol_text, "tolerance for float variables");
    project->add_option("--precision", precision, "working precision in bits")->capture_default_str();

    // certify
    auto* certify = app.add_subcommand("certify", "solve, build Bethe vectors and certify them");
    certify->fallthrough();
    certify->add_option("--problem", problem_path, "problem JSON")->required();
    certify->add_option("--starts", starts, "number of random starts")->capture_default_str();
    certify->add_option("--precision", precision, "working precision in bits")->capture_default_str();
    certify->add_option("--max-iter", max_iter, "Newton iteration cap")->capture_default_str();
    certify->add_option("--tol", tol_text, "certification tolerance (default 10^(-precision/5))");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        out << error_json("usage", e.what()).dump(2) << "\n";
        return 2;
    }

    try {
        if (precision < 32 || precision > 65536) throw MalformedInput("precision must lie in [32, 65536] bits");
        auto default_tol = [&] {
            return tol_text.empty() ? pow10(-static_cast<long>(precision / 5), precision) : parse_tolerance(tol_text, precision);
        };
        Json result;
        bool ok = true;

        if (*ids) {
            IdentitySpec spec{parse_identity_kind(kind_tag), id_k, id_i};
            auto report = verify_identity(spec, trials, seed);
            result = to_json(report);
            result["seed"] = seed;
            ok = report.failures == 0;
        } else if (*mod) {
            Weight w = parse_weight_list(mod_weight);
            if (w.rank() != mod_rank) throw MalformedInput("weight length differs from N");
            if (!is_dominant(w)) throw MalformedInput("weight " + w.to_string() + " is not integral dominant");
            auto m = irreducible_module(w, max_dim > 0 ? max_dim : max_dim_default());
            result = Json{{"domain", "exact"}, {"N", mod_rank}, {"weight", to_json(w)}, {"dim", m->dim()}};
            if (check_dim) {
                auto wd = weyl_dim(w);
                result["weyl_dim"] = wd;
                ok = ok && wd == m->dim();
            }
            if (check_rel) {
                auto msg = check_relations(*m);
                result["relations_ok"] = msg.empty();
                if (!msg.empty()) result["relations_error"] = msg;
                ok = ok && msg.empty();
            }
            if (show_basis) {
                Json b = Json::array();
                for (int idx = 0; idx < m->dim(); ++idx)
                    b.push_back(Json{{"label", m->label(idx)}, {"weight", to_json(m->weight_of(idx))}});
                result["basis"] = b;
            }
            result["ok"] = ok;
        } else if (*solve) {
            auto p = problem_from_json(load_json_file(problem_path));
            MultiStartOptions opt{starts, seed, precision, max_iter, threads};
            MultiStartStats stats;
            auto sols = multi_start_solve(p, opt, &stats);
            result = solutions_to_json(sols, precision);
            result["start_outcomes"] = to_json(stats);
            result["seed"] = seed;
            result["starts"] = starts;
            result["tolerance"] = default_tolerance(precision).to_string(6);
        } else if (*verify) {
            auto p = problem_from_json(load_json_file(problem_path));
            auto points = solutions_from_json(load_json_file(solutions_path), precision);
            Real tol = default_tol();
            auto space = build_space(p, max_dim_default());
            Json results = Json::array();
            for (const auto& t : points) {
                auto outcome = verify_point(p, space, t, tol, precision);
                results.push_back(outcome.report);
                ok = ok && outcome.ok;
            }
            result = Json{{"domain", "float"}, {"precision_bits", precision}, {"tol", tol.to_string(6)},
                          {"results", results}, {"ok", ok}};
        } else if (*project) {
            auto p = problem_from_json(load_json_file(problem_path));
            auto tj = load_json_file(t_path);
            auto space = build_space(p, max_dim_default());
            Real tol = default_tol();
            if (auto exact = exact_variables_from_json(tj)) {
                result = Json{{"domain", "exact"}};
                result.update(project_report(p, space, *exact, target, tol, ok));
            } else {
                auto t = complex_variables_from_json(tj, precision);
                result = Json{{"domain", "float"}, {"precision_bits", precision}, {"tol", tol.to_string(6)}};
                result.update(project_report(p, space, t, target, tol, ok));
            }
            result["ok"] = ok;
        } else if (*certify) {
            auto p = problem_from_json(load_json_file(problem_path));
            Real tol = default_tol();
            MultiStartOptions opt{starts, seed, precision, max_iter, threads};
            MultiStartStats stats;
            auto sols = multi_start_solve(p, opt, &stats);
            auto space = build_space(p, max_dim_default());
            auto sing = singular_basis(space, p.target_weight());
            Json results = Json::array();
            for (const auto& s : sols) {
                auto outcome = verify_point(p, space, s.t, tol, precision);
                Json entry = to_json(s);
                entry["checks"] = outcome.report;
                results.push_back(entry);
                ok = ok && outcome.ok;
            }
            ok = ok && !sols.empty();
            result = Json{{"domain", "float"},
                          {"precision_bits", precision},
                          {"seed", seed},
                          {"starts", starts},
                          {"tol", tol.to_string(6)},
                          {"problem", to_json(p)},
                          {"target_weight", to_json(p.target_weight())},
                          {"sing_dim", sing.size()},
                          {"solutions_found", sols.size()},
                          {"start_outcomes", to_json(stats)},
                          {"solutions", results},
                          {"ok", ok}};
        }
        out << result.dump(2) << "\n";
        return ok ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        out << error_json("invalid_input", e.what()).dump(2) << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        out << error_json("domain", e.what()).dump(2) << "\n";
        return 2;
    } catch (const std::length_error& e) {
        out << error_json("limit", e.what()).dump(2) << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        out << error_json("invalid_input", e.what()).dump(2) << "\n";
        return 2;
    } catch (const DimensionCapExceeded& e) {
        out << error_json("limit", e.what()).dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << error_json("failure", e.what()).dump(2) << "\n";
        return 1;
    }
}

} // namespace gaudin::cli
