#pragma once
#include "qeswell/ansatz.hpp"
#include "qeswell/potential.hpp"
#include "qeswell/qes_inverse.hpp"

#include <json.hpp>

#include <string>

namespace qeswell {

using Json = nlohmann::json;

// parse errors and schema violations all surface as std::invalid_argument
Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// rejects unknown keys so config typos fail loudly instead of being ignored
void require_object(const Json& j, std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional, const std::string& where);

double num_at(const Json& j, const char* key, const std::string& where);
double num_or(const Json& j, const char* key, double fallback);

GaussianSuperposition ansatz_from_json(const Json& j);
EnergyGauge gauge_from_json(const Json& j);

// parsed potential config plus the pieces commands need beyond the evaluator
struct PotentialSpec {
    std::string kind;  // qes | sextic | rect | smoothed_rect | tabulated
    Potential potential;
    // populated per kind:
    bool has_qes = false;
    QesPotential qes{GaussianSuperposition{}, 0.0, false};
    bool has_sextic = false;
    SexticQes sextic{};
    double a2 = 0.0, b2 = 0.0, c2 = 0.0;   // rect / smoothed_rect
    double tab_lo = 0.0, tab_hi = 0.0;     // tabulated sample range
};

PotentialSpec potential_from_json(const Json& j);

} // namespace qeswell
