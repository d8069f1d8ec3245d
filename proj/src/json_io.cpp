#include "gaudin/json_io.hpp"

#include <fstream>

namespace gaudin {

Rational rational_from_json(const Json& j) {
    try {
        if (j.is_number_integer()) return Rational(j.dump());
        if (j.is_number_float()) return parse_rational(j.dump());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(std::string("bad rational: ") + e.what());
    }
    throw MalformedInput("expected a rational, got " + j.dump());
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Weight& w) {
    Json a = Json::array();
    for (const auto& c : w.coords()) {
        if (c.get_den() == 1 && c.get_num().fits_slong_p())
            a.push_back(c.get_num().get_si());
        else
            a.push_back(to_string(c));
    }
    return a;
}

Weight weight_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw MalformedInput("a weight must be a nonempty array, got " + j.dump());
    std::vector<Rational> coords;
    for (const auto& c : j) coords.push_back(rational_from_json(c));
    return Weight(std::move(coords));
}

Json to_json(const Complex& c) { return Json{{"re", c.real().to_string()}, {"im", c.imag().to_string()}}; }

Complex complex_from_json(const Json& j, unsigned precision_bits) {
    if (j.is_object()) {
        if (!j.contains("re") || !j.contains("im")) throw MalformedInput("complex value needs re and im: " + j.dump());
        auto part = [&](const Json& x) {
            try {
                if (x.is_string()) {
                    const auto& s = x.get_ref<const std::string&>();
                    if (s.find('/') != std::string::npos) return Real(parse_rational(s), precision_bits);
                    return Real(std::string_view(s), precision_bits);
                }
                if (x.is_number()) return Real(rational_from_json(x), precision_bits);
            } catch (const std::invalid_argument& e) {
                throw MalformedInput(std::string("bad real part: ") + e.what());
            }
            throw MalformedInput("bad real value " + x.dump());
        };
        return Complex(part(j["re"]), part(j["im"]));
    }
    return Complex(rational_from_json(j), precision_bits);
}

Json to_json(const BetheProblem& p) {
    Json weights = Json::array();
    for (const auto& w : p.weights) weights.push_back(to_json(w));
    Json z = Json::array();
    for (const auto& m : p.marks) z.push_back(to_json(m));
    return Json{{"N", p.rank}, {"weights", weights}, {"z", z}, {"k", p.k.mult}};
}

BetheProblem problem_from_json(const Json& j) {
    if (!j.is_object()) throw MalformedInput("problem must be a JSON object");
    for (const char* key : {"N", "weights", "z", "k"})
        if (!j.contains(key)) throw MalformedInput(std::string("problem is missing field '") + key + "'");
    BetheProblem p;
    if (!j["N"].is_number_integer()) throw MalformedInput("N must be an integer");
    p.rank = j["N"].get<int>();
    if (!j["weights"].is_array() || !j["z"].is_array() || !j["k"].is_array())
        throw MalformedInput("weights, z and k must be arrays");
    for (const auto& w : j["weights"]) p.weights.push_back(weight_from_json(w));
    for (const auto& z : j["z"]) p.marks.push_back(rational_from_json(z));
    for (const auto& m : j["k"]) {
        if (!m.is_number_integer()) throw MalformedInput("k entries must be integers");
        p.k.mult.push_back(m.get<int>());
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(e.what());
    }
    return p;
}

Json to_json(const BetheVariables<Rational>& t) {
    Json groups = Json::array();
    for (const auto& g : t) {
        Json a = Json::array();
        for (const auto& x : g) a.push_back(to_json(x));
        groups.push_back(a);
    }
    return Json{{"domain", "exact"}, {"t", groups}};
}

Json to_json(const BetheVariables<Complex>& t) {
    Json groups = Json::array();
    unsigned bits = 0;
    for (const auto& g : t) {
        Json a = Json::array();
        for (const auto& x : g) {
            a.push_back(to_json(x));
            bits = std::max(bits, x.precision());
        }
        groups.push_back(a);
    }
    return Json{{"domain", "float"}, {"precision_bits", bits}, {"t", groups}};
}

namespace {

const Json& groups_of(const Json& j) {
    const Json& g = j.is_object() && j.contains("t") ? j["t"] : j;
    if (!g.is_array()) throw MalformedInput("variables must be {\"t\": [[...], ...]}");
    for (const auto& grp : g)
        if (!grp.is_array()) throw MalformedInput("each variable group must be an array");
    return g;
}

} // namespace

BetheVariables<Complex> complex_variables_from_json(const Json& j, unsigned precision_bits) {
    BetheVariables<Complex> t;
    for (const auto& grp : groups_of(j)) {
        t.emplace_back();
        for (const auto& x : grp) t.back().push_back(complex_from_json(x, precision_bits));
    }
    return t;
}

std::optional<BetheVariables<Rational>> exact_variables_from_json(const Json& j) {
    BetheVariables<Rational> t;
    for (const auto& grp : groups_of(j)) {
        t.emplace_back();
        for (const auto& x : grp) {
            if (x.is_object()) return std::nullopt;
            t.back().push_back(rational_from_json(x));
        }
    }
    return t;
}

Json to_json(const BetheSolution& s) {
    Json j = to_json(s.t);
    j["residual"] = s.residual_norm.to_string(6);
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    return j;
}

Json solutions_to_json(const std::vector<BetheSolution>& solutions, unsigned precision_bits) {
    Json a = Json::array();
    for (const auto& s : solutions) a.push_back(to_json(s));
    return Json{{"domain", "float"}, {"precision_bits", precision_bits}, {"solutions", a}};
}

Json to_json(const MultiStartStats& s) {
    return Json{{"converged", s.converged},
                {"rejected", s.rejected},
                {"pole", s.pole},
                {"singular_jacobian", s.singular_jacobian},
                {"damping_failed", s.damping_failed},
                {"max_iterations", s.max_iterations}};
}

std::vector<BetheVariables<Complex>> solutions_from_json(const Json& j, unsigned precision_bits) {
    if (!j.is_object() || !j.contains("solutions") || !j["solutions"].is_array())
        throw MalformedInput("solutions file must be {\"solutions\": [...]}");
    std::vector<BetheVariables<Complex>> out;
    for (const auto& s : j["solutions"]) out.push_back(complex_variables_from_json(s, precision_bits));
    return out;
}

namespace {

Json scalar_json(const Rational& q) { return to_json(q); }
Json scalar_json(const Complex& c) { return to_json(c); }

} // namespace

template <class S>
Json to_json(const ModuleState<S>& v) {
    Json m = Json::object();
    for (const auto& [idx, c] : v.coeffs) m[std::to_string(idx)] = scalar_json(c);
    return m;
}

template <class S>
Json to_json(const EigenReport<S>& r) {
    Json ev = Json::array();
    for (const auto& x : r.eigenvalues) ev.push_back(scalar_json(x));
    Json j{{"domain", std::string(domain_name<S>())}};
    if (r.precision_bits) j["precision_bits"] = r.precision_bits;
    j["eigenvalues"] = ev;
    j["residuals"] = r.residuals;
    j["singular_residuals"] = r.singular_residuals;
    j["ok"] = r.ok;
    return j;
}

Json to_json(const IdentityReport& r) {
    Json j{{"domain", "exact"}, {"kind", std::string(to_string(r.spec.kind))}, {"k", r.spec.k}};
    if (r.spec.kind == IdentityKind::IV || r.spec.kind == IdentityKind::P1b) j["i"] = r.spec.i;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    if (r.witness) {
        Json t = Json::array();
        for (const auto& x : r.witness->t) t.push_back(to_json(x));
        j["witness"] = Json{{"trial", *r.witness_trial},
                            {"t", t},
                            {"s", to_json(r.witness->s)},
                            {"s1", to_json(r.witness->s1)},
                            {"s2", to_json(r.witness->s2)}};
    }
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInput(path + ": " + e.what());
    }
}

template Json to_json(const ModuleState<Rational>&);
template Json to_json(const ModuleState<Complex>&);
template Json to_json(const EigenReport<Rational>&);
template Json to_json(const EigenReport<Complex>&);

} // namespace gaudin
