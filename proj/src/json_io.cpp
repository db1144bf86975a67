#include "qeswell/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qeswell {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("JSON parse error in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("short write to " + path);
}

void require_object(const Json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional, const std::string& where) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected a JSON object");
    std::set<std::string> known;
    for (const char* k : required) known.insert(k);
    for (const char* k : optional) known.insert(k);
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw std::invalid_argument(where + ": unknown key \"" + it.key() + "\"");
    }
    for (const char* k : required) {
        if (!j.contains(k))
            throw std::invalid_argument(where + ": missing key \"" + std::string(k) + "\"");
    }
}

double num_at(const Json& j, const char* key, const std::string& where) {
    const Json& v = j.at(key);
    if (!v.is_number())
        throw std::invalid_argument(where + ": \"" + key + "\" must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x))
        throw std::invalid_argument(where + ": \"" + key + "\" must be finite");
    return x;
}

double num_or(const Json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    return num_at(j, key, "config");
}

GaussianSuperposition ansatz_from_json(const Json& j) {
    require_object(j, {}, {"terms", "equidistant"}, "ansatz");
    const bool has_terms = j.contains("terms");
    const bool has_equi = j.contains("equidistant");
    if (has_terms == has_equi)
        throw std::invalid_argument("ansatz: give exactly one of \"terms\", \"equidistant\"");

    if (has_terms) {
        const Json& arr = j.at("terms");
        if (!arr.is_array() || arr.empty())
            throw std::invalid_argument("ansatz.terms: expected a non-empty array");
        std::vector<GaussianTerm> terms;
        for (const Json& t : arr) {
            require_object(t, {"center"}, {"width", "weight"}, "ansatz.terms[]");
            GaussianTerm g;
            g.center = num_at(t, "center", "ansatz.terms[]");
            g.width = num_or(t, "width", 1.0);
            g.weight = num_or(t, "weight", 1.0);
            terms.push_back(g);
        }
        return make_superposition(std::move(terms));
    }

    const Json& e = j.at("equidistant");
    require_object(e, {"M", "spacing"}, {"width", "pattern"}, "ansatz.equidistant");
    double Md = num_at(e, "M", "ansatz.equidistant");
    int M = static_cast<int>(Md);
    if (M != Md || M < 1 || M > 64)
        throw std::invalid_argument("ansatz.equidistant.M: expected an integer in [1, 64]");
    double spacing = num_at(e, "spacing", "ansatz.equidistant");
    double width = num_or(e, "width", 1.0);
    if (!e.contains("pattern")) return equidistant_ansatz(M, spacing, width);

    const Json& p = e.at("pattern");
    if (!p.is_array() || static_cast<int>(p.size()) != M)
        throw std::invalid_argument("ansatz.equidistant.pattern: expected an array of M signs");
    std::vector<int> pattern;
    for (const Json& s : p) {
        if (!s.is_number_integer())
            throw std::invalid_argument("ansatz.equidistant.pattern: entries must be +1 or -1");
        pattern.push_back(s.get<int>());
    }
    return sign_pattern_ansatz(M, pattern, spacing, width);
}

EnergyGauge gauge_from_json(const Json& j) {
    require_object(j, {"mode"}, {"lo", "hi"}, "gauge");
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "raw") return EnergyGauge::raw();
    if (mode == "origin") return EnergyGauge::origin();
    if (mode == "min_zero") {
        if (!j.contains("lo") || !j.contains("hi"))
            throw std::invalid_argument("gauge: min_zero needs \"lo\" and \"hi\"");
        double lo = num_at(j, "lo", "gauge");
        double hi = num_at(j, "hi", "gauge");
        if (!(lo < hi)) throw std::invalid_argument("gauge: need lo < hi");
        return EnergyGauge::min_zero(lo, hi);
    }
    throw std::invalid_argument("gauge.mode: expected raw | origin | min_zero, got \"" + mode + "\"");
}

PotentialSpec potential_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("potential: expected an object with \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    PotentialSpec spec;
    spec.kind = kind;

    if (kind == "qes") {
        require_object(j, {"kind", "ansatz"}, {"gauge"}, "potential(qes)");
        GaussianSuperposition g = ansatz_from_json(j.at("ansatz"));
        EnergyGauge gauge = j.contains("gauge") ? gauge_from_json(j.at("gauge"))
                                                : EnergyGauge::raw();
        spec.qes = reconstruct(g, gauge);
        spec.has_qes = true;
        spec.potential = make_potential(spec.qes);
        return spec;
    }
    if (kind == "sextic") {
        require_object(j, {"kind", "alpha"}, {}, "potential(sextic)");
        spec.sextic = sextic_qes(num_at(j, "alpha", "potential(sextic)"));
        spec.has_sextic = true;
        spec.potential = make_potential(spec.sextic);
        return spec;
    }
    if (kind == "rect" || kind == "smoothed_rect") {
        require_object(j, {"kind", "a2", "b2", "c2"},
                       kind == "rect" ? std::initializer_list<const char*>{}
                                      : std::initializer_list<const char*>{"ramp"},
                       "potential(" + kind + ")");
        spec.a2 = num_at(j, "a2", kind);
        spec.b2 = num_at(j, "b2", kind);
        spec.c2 = num_at(j, "c2", kind);
        double ramp = num_or(j, "ramp", 0.01);
        spec.potential = smoothed_rect_potential(spec.a2, spec.b2, spec.c2,
                                                 kind == "rect" ? 1e-9 : ramp);
        spec.potential.label = kind;
        return spec;
    }
    if (kind == "tabulated") {
        require_object(j, {"kind", "r", "v"}, {}, "potential(tabulated)");
        auto vec = [](const Json& a, const char* name) {
            if (!a.is_array() || a.size() < 2)
                throw std::invalid_argument(std::string("potential(tabulated): \"") + name +
                                            "\" must be an array with >= 2 entries");
            std::vector<double> out;
            for (const Json& x : a) {
                if (!x.is_number())
                    throw std::invalid_argument(
                        std::string("potential(tabulated): non-numeric entry in \"") + name + "\"");
                out.push_back(x.get<double>());
            }
            return out;
        };
        std::vector<double> rs = vec(j.at("r"), "r");
        std::vector<double> ws = vec(j.at("v"), "v");
        spec.tab_lo = rs.front();
        spec.tab_hi = rs.back();
        spec.potential = tabulated_potential(std::move(rs), std::move(ws));
        return spec;
    }
    throw std::invalid_argument("potential.kind: unknown kind \"" + kind + "\"");
}

} // namespace qeswell
