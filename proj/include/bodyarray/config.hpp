// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: a JSON document that fully determines a run.
//
//   {
//     "name": "paper_fig4",
//     "scene":      { "carrier_frequency_hz", "central_distance_m", "half_count",
//                     "spacing_m" | "spacing_wavelengths", "link_height_m" },
//     "target":     { "half_width_m", "half_height_m", "rotation_deg" (0),
//                     "positions": [[x, y], ...],
//                     "grid": { "x": {"start","stop","count"}, "y": {...} } },
//     "processing": { "n_fft" (257), "quadrature_step_m" | "quadrature_step_wavelengths" (0.1),
//                     "quadrature_rule" ("curvature_corrected" | "midpoint"),
//                     "converge" (false), "convergence_tolerance" (1e-4),
//                     "noise_std" (0), "seed" },
//     "outputs":    [ "per_antenna", "mean_attenuation", "doa_spectrum",
//                     "array_factor", "knife_edge" ],
//     "array_factor": { "half_count" (4), "spacings_wavelengths" ([0.1 .. 0.5]),
//                       "gamma_points" (359) },
//     "knife_edge":   { "nu_min" (-2), "nu_max" (2), "count" (17),
//                       "tx_distance_m" (d_0/2), "extent_fresnel_radii" (40) }
//   }
//
// Unknown keys are errors. All problems found are reported together.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "core.hpp"
#include "em_model.hpp"
#include "geometry.hpp"
#include "sensing.hpp"

namespace bodyarray {

struct OutputSelection {
    bool per_antenna = false;
    bool mean_attenuation = false;
    bool doa_spectrum = false;
    bool array_factor = false;
    bool knife_edge = false;

    bool needs_target() const { return per_antenna || mean_attenuation || doa_spectrum; }
};

struct ArrayFactorSpec {
    int half_count = 4;
    std::vector<double> spacings_wavelengths{0.1, 0.2, 0.3, 0.4, 0.5};
    int gamma_points = 359; // interior points of (0, 180) deg; odd keeps 90 deg on the grid
};

struct KnifeEdgeSpec {
    double nu_min = -2.0;
    double nu_max = 2.0;
    int count = 17;
    double tx_distance = 0.0; // d1 [m]; 0 -> d_0 / 2
    double extent_fresnel_radii = 40.0;
};

struct ScenarioConfig {
    std::string name;

    double carrier_frequency = 0.0;
    double central_distance = 0.0;
    int half_count = 0;
    double spacing = 0.0; // [m]
    double link_height = 0.0;

    bool has_target = false;
    double half_width = 0.0;
    double half_height = 0.0;
    double rotation = 0.0; // [rad]
    std::vector<Vec2> positions;

    int n_fft = default_n_fft;
    QuadratureOptions quadrature; // step_hint resolved to metres
    double noise_std = 0.0;
    std::optional<std::uint64_t> seed;

    OutputSelection outputs;
    ArrayFactorSpec array_factor;
    KnifeEdgeSpec knife_edge;

    std::vector<std::string> warnings;

    double wavelength() const { return speed_of_light / carrier_frequency; }

    Scene scene() const {
        Scene s;
        s.carrier_frequency = carrier_frequency;
        s.array = ArraySpec{half_count, spacing, central_distance};
        s.tx_position = Vec3(0.0, 0.0, link_height);
        return s;
    }

    TargetSheet target_at(const Vec2& position) const {
        return TargetSheet{position, half_width, half_height, rotation};
    }
};

namespace detail {

using nlohmann::json;

// Walks one JSON object, records every problem instead of stopping at the first.
class ObjectReader {
public:
    ObjectReader(const json* obj, std::string path, std::vector<std::string>& problems)
        : obj_(obj), path_(std::move(path)), problems_(problems) {
        if (obj_ != nullptr && !obj_->is_object()) {
            fail("", "expected an object");
            obj_ = nullptr;
        }
    }

    bool present() const { return obj_ != nullptr; }
    bool has(const std::string& key) const { return obj_ != nullptr && obj_->contains(key); }

    const json* child(const std::string& key) {
        seen_.insert(key);
        if (!has(key)) return nullptr;
        return &obj_->at(key);
    }

    std::optional<double> number(const std::string& key, bool required) {
        const json* v = child(key);
        if (v == nullptr) {
            if (required) fail(key, "missing required number");
            return std::nullopt;
        }
        if (!v->is_number()) {
            fail(key, "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<std::int64_t> integer(const std::string& key, bool required) {
        const json* v = child(key);
        if (v == nullptr) {
            if (required) fail(key, "missing required integer");
            return std::nullopt;
        }
        if (!v->is_number_integer()) {
            fail(key, "expected an integer");
            return std::nullopt;
        }
        return v->get<std::int64_t>();
    }

    std::optional<bool> boolean(const std::string& key) {
        const json* v = child(key);
        if (v == nullptr) return std::nullopt;
        if (!v->is_boolean()) {
            fail(key, "expected true or false");
            return std::nullopt;
        }
        return v->get<bool>();
    }

    std::optional<std::string> string(const std::string& key, bool required) {
        const json* v = child(key);
        if (v == nullptr) {
            if (required) fail(key, "missing required string");
            return std::nullopt;
        }
        if (!v->is_string()) {
            fail(key, "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    void fail(const std::string& key, const std::string& message) {
        problems_.push_back(field(key) + ": " + message);
    }

    std::string field(const std::string& key) const {
        if (key.empty()) return path_.empty() ? "<root>" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    void reject_unknown_keys() {
        if (obj_ == nullptr) return;
        for (const auto& item : obj_->items())
            if (!seen_.count(item.key())) fail(item.key(), "unknown key");
    }

private:
    const json* obj_;
    std::string path_;
    std::vector<std::string>& problems_;
    std::set<std::string> seen_;
};

inline std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline void read_positions(const json* list, const std::string& path, std::vector<Vec2>& out,
                           std::vector<std::string>& problems) {
    if (list == nullptr) return;
    if (!list->is_array()) {
        problems.push_back(path + ": expected an array of [x, y] pairs");
        return;
    }
    for (std::size_t i = 0; i < list->size(); ++i) {
        const json& p = (*list)[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            problems.push_back(path + "[" + std::to_string(i) + "]: expected [x, y] numbers");
            continue;
        }
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
}

struct AxisRange {
    double start = 0.0, stop = 0.0;
    std::int64_t count = 0;
};

inline std::optional<AxisRange> read_axis(ObjectReader& parent, const std::string& key,
                                          std::vector<std::string>& problems) {
    const json* node = parent.child(key);
    if (node == nullptr) {
        parent.fail(key, "missing axis range");
        return std::nullopt;
    }
    ObjectReader r(node, parent.field(key), problems);
    auto start = r.number("start", true);
    auto stop = r.number("stop", true);
    auto count = r.integer("count", true);
    r.reject_unknown_keys();
    if (!start || !stop || !count) return std::nullopt;
    if (*count < 1) {
        r.fail("count", "must be >= 1");
        return std::nullopt;
    }
    return AxisRange{*start, *stop, *count};
}

inline double axis_value(const AxisRange& a, std::int64_t i) {
    if (a.count == 1) return a.start;
    return a.start + (a.stop - a.start) * static_cast<double>(i) / static_cast<double>(a.count - 1);
}

} // namespace detail

// Parses and validates a scenario document. `source` names it in diagnostics.
inline ScenarioConfig parse_scenario(std::string_view text, const std::string& source = "<config>") {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        if (const auto pos = msg.find("parse error"); pos != std::string::npos) msg = msg.substr(pos);
        throw validation_error({source + ": " + detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1) +
                                ": " + msg});
    }

    std::vector<std::string> problems;
    ScenarioConfig cfg;
    detail::ObjectReader root(&doc, "", problems);

    cfg.name = root.string("name", false).value_or("unnamed");
    root.string("description", false);

    // scene
    detail::ObjectReader scene(root.child("scene"), "scene", problems);
    if (!scene.present()) root.fail("scene", "missing required object");
    const auto fc = scene.number("carrier_frequency_hz", true);
    const auto d0 = scene.number("central_distance_m", true);
    const auto m = scene.integer("half_count", true);
    const auto da_m = scene.number("spacing_m", false);
    const auto da_wl = scene.number("spacing_wavelengths", false);
    const auto h = scene.number("link_height_m", true);
    scene.reject_unknown_keys();

    if (fc) {
        if (!(*fc > 0.0) || !std::isfinite(*fc)) scene.fail("carrier_frequency_hz", "must be > 0");
        else cfg.carrier_frequency = *fc;
    }
    if (d0) {
        if (!(*d0 > 0.0)) scene.fail("central_distance_m", "must be > 0");
        else cfg.central_distance = *d0;
    }
    if (m) {
        if (*m < 0 || *m > 10000) scene.fail("half_count", "must be in 0..10000");
        else cfg.half_count = static_cast<int>(*m);
    }
    if (h) {
        if (!(*h > 0.0)) scene.fail("link_height_m", "must be > 0");
        else cfg.link_height = *h;
    }
    if (scene.present() && da_m.has_value() == da_wl.has_value()) {
        scene.fail("spacing_m", "exactly one of spacing_m or spacing_wavelengths is required");
    } else if (da_m) {
        if (!(*da_m > 0.0)) scene.fail("spacing_m", "d_a must be > 0");
        else cfg.spacing = *da_m;
    } else if (da_wl) {
        if (!(*da_wl > 0.0)) scene.fail("spacing_wavelengths", "d_a must be > 0");
        else if (cfg.carrier_frequency > 0.0) cfg.spacing = *da_wl * cfg.wavelength();
    }

    // target
    detail::ObjectReader target(root.child("target"), "target", problems);
    if (target.present()) {
        cfg.has_target = true;
        const auto ay = target.number("half_width_m", true);
        const auto az = target.number("half_height_m", true);
        const auto rot = target.number("rotation_deg", false);
        if (ay) {
            if (!(*ay > 0.0)) target.fail("half_width_m", "must be > 0");
            else cfg.half_width = *ay;
        }
        if (az) {
            if (!(*az > 0.0)) target.fail("half_height_m", "must be > 0");
            else cfg.half_height = *az;
        }
        if (rot) {
            if (!std::isfinite(*rot)) target.fail("rotation_deg", "must be finite");
            else cfg.rotation = deg_to_rad(*rot);
        }
        detail::read_positions(target.child("positions"), target.field("positions"), cfg.positions,
                               problems);
        if (const json* g = target.child("grid")) {
            detail::ObjectReader grid(g, target.field("grid"), problems);
            const auto xs = detail::read_axis(grid, "x", problems);
            const auto ys = detail::read_axis(grid, "y", problems);
            grid.reject_unknown_keys();
            if (xs && ys) {
                for (std::int64_t i = 0; i < xs->count; ++i)
                    for (std::int64_t j = 0; j < ys->count; ++j)
                        cfg.positions.emplace_back(detail::axis_value(*xs, i), detail::axis_value(*ys, j));
            }
        }
        target.reject_unknown_keys();
    }

    // processing
    detail::ObjectReader proc(root.child("processing"), "processing", problems);
    if (const auto n = proc.integer("n_fft", false)) {
        if (*n < 1 || *n > (1 << 22)) proc.fail("n_fft", "must be in 1..4194304");
        else cfg.n_fft = static_cast<int>(*n);
    }
    const auto step_m = proc.number("quadrature_step_m", false);
    const auto step_wl = proc.number("quadrature_step_wavelengths", false);
    if (step_m && step_wl) {
        proc.fail("quadrature_step_m", "give quadrature_step_m or quadrature_step_wavelengths, not both");
    } else if (step_m) {
        if (!(*step_m > 0.0)) proc.fail("quadrature_step_m", "must be > 0");
        else cfg.quadrature.step_hint = *step_m;
    } else {
        const double wl = step_wl.value_or(0.1);
        if (!(wl > 0.0)) proc.fail("quadrature_step_wavelengths", "must be > 0");
        else if (cfg.carrier_frequency > 0.0) cfg.quadrature.step_hint = wl * cfg.wavelength();
    }
    if (const auto rule = proc.string("quadrature_rule", false)) {
        if (*rule == "midpoint") cfg.quadrature.rule = QuadratureRule::midpoint;
        else if (*rule == "curvature_corrected") cfg.quadrature.rule = QuadratureRule::curvature_corrected;
        else proc.fail("quadrature_rule", "expected \"midpoint\" or \"curvature_corrected\"");
    }
    if (const auto c = proc.boolean("converge")) cfg.quadrature.converge = *c;
    if (const auto tol = proc.number("convergence_tolerance", false)) {
        if (!(*tol > 0.0)) proc.fail("convergence_tolerance", "must be > 0");
        else cfg.quadrature.tolerance = *tol;
    }
    if (const auto sigma = proc.number("noise_std", false)) {
        if (!(*sigma >= 0.0) || !std::isfinite(*sigma)) proc.fail("noise_std", "must be >= 0");
        else cfg.noise_std = *sigma;
    }
    if (const auto seed = proc.integer("seed", false)) {
        if (*seed < 0) proc.fail("seed", "must be >= 0");
        else cfg.seed = static_cast<std::uint64_t>(*seed);
    }
    proc.reject_unknown_keys();

    // outputs
    if (const json* outs = root.child("outputs")) {
        if (!outs->is_array()) {
            root.fail("outputs", "expected an array of output names");
        } else {
            for (const auto& o : *outs) {
                const std::string s = o.is_string() ? o.get<std::string>() : std::string{};
                if (s == "per_antenna") cfg.outputs.per_antenna = true;
                else if (s == "mean_attenuation") cfg.outputs.mean_attenuation = true;
                else if (s == "doa_spectrum") cfg.outputs.doa_spectrum = true;
                else if (s == "array_factor") cfg.outputs.array_factor = true;
                else if (s == "knife_edge") cfg.outputs.knife_edge = true;
                else root.fail("outputs", "unknown output " + o.dump());
            }
        }
    } else {
        root.fail("outputs", "missing required array");
    }

    // array factor
    detail::ObjectReader af(root.child("array_factor"), "array_factor", problems);
    if (const auto hc = af.integer("half_count", false)) {
        if (*hc < 0 || *hc > 10000) af.fail("half_count", "must be in 0..10000");
        else cfg.array_factor.half_count = static_cast<int>(*hc);
    }
    if (const json* sp = af.child("spacings_wavelengths")) {
        cfg.array_factor.spacings_wavelengths.clear();
        if (!sp->is_array() || sp->empty()) {
            af.fail("spacings_wavelengths", "expected a non-empty array of numbers");
        } else {
            for (const auto& v : *sp) {
                if (!v.is_number() || !(v.get<double>() > 0.0))
                    af.fail("spacings_wavelengths", "entries must be numbers > 0");
                else
                    cfg.array_factor.spacings_wavelengths.push_back(v.get<double>());
            }
        }
    }
    if (const auto gp = af.integer("gamma_points", false)) {
        if (*gp < 3 || *gp > 1000000) af.fail("gamma_points", "must be in 3..1000000");
        else cfg.array_factor.gamma_points = static_cast<int>(*gp);
    }
    af.reject_unknown_keys();

    // knife edge
    detail::ObjectReader ke(root.child("knife_edge"), "knife_edge", problems);
    if (const auto v = ke.number("nu_min", false)) cfg.knife_edge.nu_min = *v;
    if (const auto v = ke.number("nu_max", false)) cfg.knife_edge.nu_max = *v;
    if (cfg.knife_edge.nu_min > cfg.knife_edge.nu_max) ke.fail("nu_min", "must be <= nu_max");
    if (const auto v = ke.integer("count", false)) {
        if (*v < 1 || *v > 10000) ke.fail("count", "must be in 1..10000");
        else cfg.knife_edge.count = static_cast<int>(*v);
    }
    if (const auto v = ke.number("tx_distance_m", false)) {
        if (!(*v > 0.0) || (cfg.central_distance > 0.0 && !(*v < cfg.central_distance)))
            ke.fail("tx_distance_m", "must lie strictly between 0 and central_distance_m");
        else cfg.knife_edge.tx_distance = *v;
    }
    if (cfg.knife_edge.tx_distance == 0.0) cfg.knife_edge.tx_distance = 0.5 * cfg.central_distance;
    if (const auto v = ke.number("extent_fresnel_radii", false)) {
        if (!(*v > 0.0)) ke.fail("extent_fresnel_radii", "must be > 0");
        else cfg.knife_edge.extent_fresnel_radii = *v;
    }
    ke.reject_unknown_keys();

    root.reject_unknown_keys();

    // cross-field checks
    if (cfg.outputs.needs_target()) {
        if (!cfg.has_target) root.fail("target", "required by per_antenna/mean_attenuation/doa_spectrum outputs");
        else if (cfg.positions.empty()) target.fail("positions", "position list must be non-empty");
    }
    if (cfg.outputs.doa_spectrum && cfg.n_fft < 2 * cfg.half_count + 1)
        proc.fail("n_fft", "must be >= 2M+1 = " + std::to_string(2 * cfg.half_count + 1));

    if (!problems.empty()) {
        for (auto& p : problems) p = source + ": " + p;
        throw validation_error(std::move(problems));
    }

    if (spacing_violates_coupling_limit(cfg.scene()))
        cfg.warnings.push_back("d_a <= lambda/4: mutual-coupling assumption violated");
    if (cfg.outputs.doa_spectrum && cfg.spacing < 0.5 * cfg.wavelength())
        cfg.warnings.push_back("d_a < lambda/2: part of the DoA range is unreachable");
    return cfg;
}

inline ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error({path + ": cannot open file"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

// Canonical, fully-resolved form of a configuration (SI units, defaults filled in).
inline nlohmann::json to_json(const ScenarioConfig& cfg) {
    using nlohmann::json;
    json j;
    j["name"] = cfg.name;
    j["scene"] = {{"carrier_frequency_hz", cfg.carrier_frequency},
                  {"central_distance_m", cfg.central_distance},
                  {"half_count", cfg.half_count},
                  {"spacing_m", cfg.spacing},
                  {"link_height_m", cfg.link_height}};
    if (cfg.has_target) {
        json positions = json::array();
        for (const auto& p : cfg.positions) positions.push_back({p.x(), p.y()});
        j["target"] = {{"half_width_m", cfg.half_width},
                       {"half_height_m", cfg.half_height},
                       {"rotation_deg", rad_to_deg(cfg.rotation)},
                       {"positions", positions}};
    }
    j["processing"] = {{"n_fft", cfg.n_fft},
                       {"quadrature_step_m", cfg.quadrature.step_hint},
                       {"quadrature_rule", cfg.quadrature.rule == QuadratureRule::midpoint
                                               ? "midpoint"
                                               : "curvature_corrected"},
                       {"converge", cfg.quadrature.converge},
                       {"convergence_tolerance", cfg.quadrature.tolerance},
                       {"noise_std", cfg.noise_std}};
    if (cfg.seed) j["processing"]["seed"] = *cfg.seed;
    json outs = json::array();
    if (cfg.outputs.per_antenna) outs.push_back("per_antenna");
    if (cfg.outputs.mean_attenuation) outs.push_back("mean_attenuation");
    if (cfg.outputs.doa_spectrum) outs.push_back("doa_spectrum");
    if (cfg.outputs.array_factor) outs.push_back("array_factor");
    if (cfg.outputs.knife_edge) outs.push_back("knife_edge");
    j["outputs"] = outs;
    if (cfg.outputs.array_factor)
        j["array_factor"] = {{"half_count", cfg.array_factor.half_count},
                             {"spacings_wavelengths", cfg.array_factor.spacings_wavelengths},
                             {"gamma_points", cfg.array_factor.gamma_points}};
    if (cfg.outputs.knife_edge)
        j["knife_edge"] = {{"nu_min", cfg.knife_edge.nu_min},
                           {"nu_max", cfg.knife_edge.nu_max},
                           {"count", cfg.knife_edge.count},
                           {"tx_distance_m", cfg.knife_edge.tx_distance},
                           {"extent_fresnel_radii", cfg.knife_edge.extent_fresnel_radii}};
    return j;
}

// FNV-1a 64 of the canonical JSON, as 16 hex digits.
inline std::string config_hash(const ScenarioConfig& cfg) {
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

// Built-in scenarios; the same documents ship as scenarios/<name>.json.
inline const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> table = {
        {"paper_fig3", R"({
  "name": "paper_fig3",
  "description": "Uniform-weight array factor, 9 elements, spacing 0.1 to 0.5 wavelengths",
  "scene": {
    "carrier_frequency_hz": 2.4868e9,
    "central_distance_m": 4.0,
    "half_count": 4,
    "spacing_wavelengths": 0.5,
    "link_height_m": 0.9
  },
  "outputs": ["array_factor"],
  "array_factor": {
    "half_count": 4,
    "spacings_wavelengths": [0.1, 0.2, 0.3, 0.4, 0.5],
    "gamma_points": 359
  }
}
)"},
        {"paper_fig4", R"({
  "name": "paper_fig4",
  "description": "5-element array, target 0.55 m x 1.8 m at x = 1 m, y in {-0.25, 0, 0.25}",
  "scene": {
    "carrier_frequency_hz": 2.4868e9,
    "central_distance_m": 4.0,
    "half_count": 2,
    "spacing_wavelengths": 0.5,
    "link_height_m": 0.9
  },
  "target": {
    "half_width_m": 0.275,
    "half_height_m": 0.9,
    "rotation_deg": 0.0,
    "positions": [[1.0, -0.25], [1.0, 0.0], [1.0, 0.25]]
  },
  "processing": { "n_fft": 257, "seed": 1 },
  "outputs": ["per_antenna", "mean_attenuation", "doa_spectrum"]
}
)"},
        {"paper_fig5", R"({
  "name": "paper_fig5",
  "description": "Closely spaced target positions, y in {-0.05, 0, 0.05}",
  "scene": {
    "carrier_frequency_hz": 2.4868e9,
    "central_distance_m": 4.0,
    "half_count": 2,
    "spacing_wavelengths": 0.5,
    "link_height_m": 0.9
  },
  "target": {
    "half_width_m": 0.275,
    "half_height_m": 0.9,
    "rotation_deg": 0.0,
    "positions": [[1.0, -0.05], [1.0, 0.0], [1.0, 0.05]]
  },
  "processing": { "n_fft": 257, "seed": 1 },
  "outputs": ["per_antenna", "mean_attenuation", "doa_spectrum"]
}
)"},
        {"paper_fig6", R"({
  "name": "paper_fig6",
  "description": "Widely spaced target positions, y in {-1, 0, 1}",
  "scene": {
    "carrier_frequency_hz": 2.4868e9,
    "central_distance_m": 4.0,
    "half_count": 2,
    "spacing_wavelengths": 0.5,
    "link_height_m": 0.9
  },
  "target": {
    "half_width_m": 0.275,
    "half_height_m": 0.9,
    "rotation_deg": 0.0,
    "positions": [[1.0, -1.0], [1.0, 0.0], [1.0, 1.0]]
  },
  "processing": { "n_fft": 257, "seed": 1 },
  "outputs": ["per_antenna", "mean_attenuation", "doa_spectrum"]
}
)"},
        {"knife_edge_validation", R"({
  "name": "knife_edge_validation",
  "description": "Tall absorbing half-plane vs closed-form knife-edge loss, nu in [-2, 2]",
  "scene": {
    "carrier_frequency_hz": 2.4868e9,
    "central_distance_m": 4.0,
    "half_count": 0,
    "spacing_wavelengths": 0.5,
    "link_height_m": 0.9
  },
  "outputs": ["knife_edge"],
  "knife_edge": {
    "nu_min": -2.0,
    "nu_max": 2.0,
    "count": 17,
    "tx_distance_m": 2.0,
    "extent_fresnel_radii": 40.0
  }
}
)"},
    };
    return table;
}

inline ScenarioConfig preset_scenario(const std::string& name) {
    const auto& table = presets();
    const auto it = table.find(name);
    if (it == table.end()) throw validation_error({"unknown preset '" + name + "'"});
    return parse_scenario(it->second, "preset:" + name);
}

} // namespace bodyarray
