#include "choreo/orbit_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace choreo {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPeriod = 6.283185307179586;
constexpr int kComponents = 4;

const char* status_name(StartStatus s) {
    switch (s) {
        case StartStatus::kConverged: return "converged";
        case StartStatus::kSquareBasin: return "square-basin";
        case StartStatus::kCollision: return "collision";
        case StartStatus::kBudget: return "budget";
    }
    return "unknown";
}

// Shortest decimal that parses back to the same double (CSV cells; the JSON
// writer gets the same guarantee from its own serializer).
std::string shortest(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

// Storage is mode-major (entry (l, j) at l*4+j, l = 0..k); the file stores
// one array per component, each listing modes l = 0..k.
std::vector<std::vector<double>> component_blocks(const std::vector<double>& flat, int k) {
    std::vector<std::vector<double>> out(kComponents);
    for (int c = 0; c < kComponents; ++c) {
        auto& block = out[static_cast<std::size_t>(c)];
        block.resize(static_cast<std::size_t>(k) + 1);
        for (int l = 0; l <= k; ++l)
            block[static_cast<std::size_t>(l)] = flat[static_cast<std::size_t>(l) * 4 + c];
    }
    return out;
}

double finite_number(const ordered_json& j, const char* where) {
    if (!j.is_number()) throw FormatError(std::string(where) + ": not a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw FormatError(std::string(where) + ": not finite");
    return v;
}

const ordered_json& field(const ordered_json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw FormatError(std::string("missing key: ") + key);
    return *it;
}

std::vector<double> flat_coefficients(const ordered_json& blocks, int k, const char* name) {
    if (!blocks.is_array() || blocks.size() != kComponents)
        throw FormatError(std::string(name) + ": expected 4 component arrays");
    std::vector<double> flat(static_cast<std::size_t>(kComponents) * (k + 1), 0.0);
    for (int c = 0; c < kComponents; ++c) {
        const auto& block = blocks[static_cast<std::size_t>(c)];
        if (!block.is_array() || static_cast<int>(block.size()) != k + 1)
            throw FormatError(std::string(name) + ": component length != truncation + 1");
        for (int l = 0; l <= k; ++l)
            flat[static_cast<std::size_t>(l) * 4 + c] =
                finite_number(block[static_cast<std::size_t>(l)], name);
    }
    return flat;
}

}  // namespace

std::string orbit_to_json(const OrbitResult& orbit, int quadrature) {
    const int k = orbit.loop.k;
    ordered_json j;
    j["format_version"] = 1;
    j["period"] = kPeriod;
    j["truncation"] = k;
    j["quadrature"] = quadrature;
    j["coefficients"]["xi"] = component_blocks(orbit.loop.xi, k);
    j["coefficients"]["eta"] = component_blocks(orbit.loop.eta, k);
    j["action"] = orbit.action.total;
    ordered_json hist = ordered_json::array();
    for (const auto& [eps, value] : orbit.eps_history)
        hist.push_back(ordered_json::array({eps, value}));
    j["eps_history"] = std::move(hist);
    ordered_json diag;
    diag["kinetic"] = orbit.action.kinetic;
    diag["potential"] = orbit.action.potential;
    diag["min_separation"] = orbit.min_separation;
    diag["grad_norm"] = orbit.grad_norm;
    diag["omega_signs"] = orbit.omega_signs;
    diag["converged"] = orbit.converged;
    diag["collision_restart"] = orbit.collision_restart;
    j["diagnostics"] = std::move(diag);
    return j.dump();
}

OrbitResult orbit_from_json(const std::string& text, int* quadrature_out) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("orbit file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("orbit file: top level is not an object");

    if (field(j, "format_version") != 1) throw FormatError("unsupported format_version");
    const double period = finite_number(field(j, "period"), "period");
    if (std::abs(period - kPeriod) > 1e-12) throw FormatError("period: expected 2*pi");

    const ordered_json& jk = field(j, "truncation");
    if (!jk.is_number_integer() || jk.get<int>() < 1)
        throw FormatError("truncation: expected positive integer");
    const int k = jk.get<int>();

    const ordered_json& jm = field(j, "quadrature");
    if (!jm.is_number_integer() || jm.get<int>() < 8)
        throw FormatError("quadrature: expected integer >= 8");
    if (quadrature_out) *quadrature_out = jm.get<int>();

    OrbitResult orbit;
    orbit.loop = FourierLoop(k);
    const ordered_json& coeff = field(j, "coefficients");
    orbit.loop.xi = flat_coefficients(field(coeff, "xi"), k, "coefficients.xi");
    orbit.loop.eta = flat_coefficients(field(coeff, "eta"), k, "coefficients.eta");

    orbit.action.total = finite_number(field(j, "action"), "action");
    orbit.action.eps = 0.0;
    orbit.action.strong_force = 0.0;

    const ordered_json& hist = field(j, "eps_history");
    if (!hist.is_array()) throw FormatError("eps_history: expected array");
    for (const auto& row : hist) {
        if (!row.is_array() || row.size() != 2)
            throw FormatError("eps_history: expected [eps, value] pairs");
        orbit.eps_history.emplace_back(finite_number(row[0], "eps_history.eps"),
                                       finite_number(row[1], "eps_history.value"));
    }

    const ordered_json& diag = field(j, "diagnostics");
    orbit.action.kinetic = finite_number(field(diag, "kinetic"), "diagnostics.kinetic");
    orbit.action.potential = finite_number(field(diag, "potential"), "diagnostics.potential");
    orbit.min_separation =
        finite_number(field(diag, "min_separation"), "diagnostics.min_separation");
    orbit.grad_norm = finite_number(field(diag, "grad_norm"), "diagnostics.grad_norm");
    const ordered_json& omega = field(diag, "omega_signs");
    if (!omega.is_array() || omega.size() != 4)
        throw FormatError("diagnostics.omega_signs: expected 4 entries");
    for (int i = 0; i < 4; ++i)
        orbit.omega_signs[static_cast<std::size_t>(i)] =
            finite_number(omega[static_cast<std::size_t>(i)], "diagnostics.omega_signs");
    const ordered_json& conv = field(diag, "converged");
    const ordered_json& coll = field(diag, "collision_restart");
    if (!conv.is_boolean() || !coll.is_boolean())
        throw FormatError("diagnostics: converged/collision_restart must be booleans");
    orbit.converged = conv.get<bool>();
    orbit.collision_restart = coll.get<bool>();
    return orbit;
}

std::string samples_to_csv(const FourierLoop& loop, int samples) {
    if (samples < 1) throw FormatError("samples must be positive");
    std::string out = "t,q1x,q1y,q2x,q2y,q3x,q3y,q4x,q4y\n";
    for (int i = 0; i < samples; ++i) {
        const double t = kPeriod * i / samples;
        const auto [q1, q2] = evaluate(loop, t);
        out += shortest(t);
        for (double v : {q1.x, q1.y, q2.x, q2.y, -q1.x, -q1.y, -q2.x, -q2.y}) {
            out += ',';
            out += shortest(v);
        }
        out += '\n';
    }
    return out;
}

std::string samples_to_json(const FourierLoop& loop, int samples) {
    if (samples < 1) throw FormatError("samples must be positive");
    ordered_json j;
    j["format_version"] = 1;
    j["samples"] = samples;
    j["columns"] = {"t", "q1x", "q1y", "q2x", "q2y", "q3x", "q3y", "q4x", "q4y"};
    ordered_json data = ordered_json::array();
    for (int i = 0; i < samples; ++i) {
        const double t = kPeriod * i / samples;
        const auto [q1, q2] = evaluate(loop, t);
        data.push_back(
            ordered_json::array({t, q1.x, q1.y, q2.x, q2.y, -q1.x, -q1.y, -q2.x, -q2.y}));
    }
    j["data"] = std::move(data);
    return j.dump();
}

std::string minimize_log_csv(const MinimizeResult& result) {
    std::string out = "iter,eps,action,grad_norm,min_sep\n";
    for (const auto& start : result.starts) {
        out += "# start " + std::to_string(start.seed_index) + " seed " +
               std::to_string(start.seed) + " attempts " + std::to_string(start.attempts) +
               " status " + status_name(start.status) + "\n";
        for (const auto& row : start.log) {
            out += std::to_string(row.iter);
            for (double v : {row.eps, row.action, row.grad_norm, row.min_separation}) {
                out += ',';
                out += shortest(v);
            }
            out += '\n';
        }
    }
    return out;
}

}  // namespace choreo
