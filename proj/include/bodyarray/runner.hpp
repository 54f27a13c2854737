// SPDX-License-Identifier: Apache-2.0
//
// Experiment orchestration: evaluates the quantities selected in a scenario
// for every target position and writes plot-ready tables.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "array_model.hpp"
#include "config.hpp"
#include "core.hpp"
#include "em_model.hpp"
#include "oracles.hpp"
#include "sensing.hpp"

namespace bodyarray {

struct ResultRow {
    std::optional<Vec2> position; // empty for position-independent outputs
    std::string series;           // e.g. "d_a=0.5lambda"; empty when unused
    std::string index_name;       // "antenna", "gamma_deg", "nu", or empty for scalars
    double index = 0.0;
    std::string quantity;
    double value = 0.0;
    std::string units;
};

struct ResultTable {
    std::string config_name;
    std::string config_hash;
    std::vector<ResultRow> rows;
};

struct RunOptions {
    int jobs = 1;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t double_bits(double v) {
    std::uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(v));
    return bits;
}

// Noise seed of one position; depends on the position, not on its rank in the sweep.
inline std::uint64_t position_seed(std::uint64_t seed, const Vec2& p, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(double_bits(p.x()) ^ splitmix64(double_bits(p.y()) + stream)));
}

inline std::string spacing_label(double wavelengths) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "d_a=%glambda", wavelengths);
    return buf;
}

} // namespace detail

inline std::vector<ResultRow> evaluate_position(const ScenarioConfig& cfg, const Vec2& position) {
    const Scene scene = cfg.scene();
    const TargetSheet target = cfg.target_at(position);
    std::vector<ResultRow> rows;
    auto add = [&](std::string index_name, double index, std::string quantity, double value,
                   std::string units) {
        rows.push_back({position, "", std::move(index_name), index, std::move(quantity), value,
                        std::move(units)});
    };

    link_geometry(scene, target); // rejects a barycenter on TX or an antenna
    link_geometry(scene, target); // rejects a barycenter on TX or an antenna
    const FieldRatioVector ratios = compute_field_ratios(scene, target, cfg.quadrature);

    if (cfg.outputs.per_antenna) {
        for (int m = -cfg.half_count; m <= cfg.half_count; ++m)
            add("antenna", m, "excess_attenuation_antenna_db",
                excess_attenuation_db(ratios(static_cast<Eigen::Index>(scene.array.slot(m)))), "dB");
    }

    if (cfg.outputs.mean_attenuation) {
        const BeamWeights w = uniform_weights(cfg.half_count);
        add("", 0.0, "mean_excess_attenuation_db", mean_excess_attenuation(w, scene, ratios), "dB");
        if (cfg.noise_std > 0.0 && cfg.seed) {
            const Snapshot r0 = snapshot_from_ratios(scene, nullptr, Occupancy::empty, cfg.noise_std,
                                                     detail::position_seed(*cfg.seed, position, 0));
            const Snapshot r1 = snapshot_from_ratios(scene, &ratios, Occupancy::occupied, cfg.noise_std,
                                                     detail::position_seed(*cfg.seed, position, 1));
            const double p0 = std::norm(beamform(w, r0));
            const double p1 = std::norm(beamform(w, r1));
            add("", 0.0, "noisy_excess_attenuation_db", db_from_power_ratio(p0 / p1), "dB");
        }
    }

    if (cfg.outputs.doa_spectrum) {
        const DoaSpectrum spec = doa_attenuation_spectrum(scene, ratios, cfg.n_fft);
        const SpectrumPeak peak = peak_excess_attenuation(spec);
        const SpectrumPeak main = main_lobe_excess_attenuation(spec);
        add("", 0.0, "peak_excess_attenuation_db", peak.excess_db, "dB");
        add("", 0.0, "peak_gamma_deg", rad_to_deg(peak.gamma), "deg");
        add("", 0.0, "main_lobe_excess_attenuation_db", main.excess_db, "dB");
        for (std::size_t i = 0; i < spec.gamma.size(); ++i)
            add("gamma_deg", rad_to_deg(spec.gamma[i]), "excess_attenuation_db",
                spec.excess_attenuation_db[i], "dB");
        for (std::size_t i = 0; i < spec.gamma.size(); ++i)
            add("gamma_deg", rad_to_deg(spec.gamma[i]), "empty_response_db",
                spec.empty_response_db[i], "dB");
        for (std::size_t i = 0; i < spec.gamma.size(); ++i)
            add("gamma_deg", rad_to_deg(spec.gamma[i]), "occupied_response_db",
                spec.occupied_response_db[i], "dB");
    }
    return rows;
}

inline std::vector<ResultRow> evaluate_array_factor(const ScenarioConfig& cfg) {
    std::vector<ResultRow> rows;
    const auto& spec = cfg.array_factor;
    const double lambda = cfg.wavelength();
    const BeamWeights w = uniform_weights(spec.half_count);
    for (double da_wl : spec.spacings_wavelengths) {
        const std::string series = detail::spacing_label(da_wl);
        const double da = da_wl * lambda;
        const LobeWidth lobe = [&] {
            try {
                return first_lobe_width(spec.half_count, da, lambda);
            } catch (const invalid_argument&) {
                return LobeWidth{std::nan(""), std::nan(""), 2.0 * lambda / ((2 * spec.half_count + 1) * da)};
            }
        }();
        rows.push_back({std::nullopt, series, "", 0.0, "first_lobe_width_approx_deg",
                        rad_to_deg(lobe.approximate), "deg"});
        rows.push_back({std::nullopt, series, "", 0.0, "first_lobe_width_deg",
                        rad_to_deg(lobe.about_broadside), "deg"});
        for (int i = 0; i < spec.gamma_points; ++i) {
            const double gamma = pi * (i + 1) / (spec.gamma_points + 1);
            const cplx fa = array_factor(w, planar_steering(spec.half_count, da, lambda, gamma));
            rows.push_back({std::nullopt, series, "gamma_deg", rad_to_deg(gamma), "array_factor_db",
                            db_from_amplitude_ratio(std::abs(fa)), "dB"});
        }
    }
    return rows;
}

namespace detail {

// Calls fn(i) for i in [0, count) on up to `jobs` threads, striding by thread.
// fn must not throw.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    const auto n = static_cast<std::size_t>(std::max(1, jobs));
    if (n == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(n, count); ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += n) fn(i);
        });
}

} // namespace detail

inline std::vector<ResultRow> evaluate_knife_edge(const ScenarioConfig& cfg, int jobs = 1) {
    // Sheet edge moves across the central link at distance d1 from TX.
    Scene scene = cfg.scene();
    scene.array.half_count = 0;
    const auto& spec = cfg.knife_edge;
    const double lambda = cfg.wavelength();
    const double d1 = spec.tx_distance;
    const double d2 = cfg.central_distance - d1;
    const double extent = spec.extent_fresnel_radii * oracles::fresnel_radius(d1, d2, lambda);
    QuadratureOptions q = cfg.quadrature;
    q.converge = false;

    const auto count = static_cast<std::size_t>(spec.count);
    std::vector<double> nus(count), sheet_db(count);
    std::vector<std::exception_ptr> failures(count);
    detail::parallel_for(count, jobs, [&](std::size_t i) {
        try {
            nus[i] = count == 1 ? spec.nu_min
                                : spec.nu_min + (spec.nu_max - spec.nu_min) * static_cast<double>(i) / (count - 1);
            const double edge = nus[i] / std::sqrt(2.0 * (d1 + d2) / (lambda * d1 * d2));
            const TargetSheet sheet = oracles::knife_edge_sheet(d1, edge, extent, extent);
            sheet_db[i] = excess_attenuation_db(compute_field_ratios(scene, sheet, q)(0));
        } catch (...) {
            failures[i] = std::current_exception();
        }
    });

    std::vector<ResultRow> rows;
    for (std::size_t i = 0; i < count; ++i) {
        if (failures[i]) std::rethrow_exception(failures[i]);
        rows.push_back({std::nullopt, "", "nu", nus[i], "knife_edge_closed_form_db",
                        oracles::knife_edge_attenuation(nus[i]), "dB"});
        rows.push_back({std::nullopt, "", "nu", nus[i], "knife_edge_sheet_db", sheet_db[i], "dB"});
    }
    return rows;
}

// Rows are ordered: position-independent outputs first, then positions sorted
// by (x, y), each with its quantities in a fixed order.
inline ResultTable run(const ScenarioConfig& cfg, const RunOptions& options = {}) {
    ResultTable table;
    table.config_name = cfg.name;
    table.config_hash = config_hash(cfg);

    if (cfg.outputs.array_factor) {
        auto rows = evaluate_array_factor(cfg);
        table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
    if (cfg.outputs.knife_edge) {
        auto rows = evaluate_knife_edge(cfg, options.jobs);
        table.rows.insert(table.rows.end(), rows.begin(), rows.end());
    }
    if (!cfg.outputs.needs_target()) return table;

    std::vector<Vec2> positions = cfg.positions;
    std::sort(positions.begin(), positions.end(), [](const Vec2& a, const Vec2& b) {
        return std::tie(a.x(), a.y()) < std::tie(b.x(), b.y());
    });

    std::vector<std::vector<ResultRow>> per_position(positions.size());
    std::vector<std::exception_ptr> failures(positions.size());
    auto work = [&](std::size_t i) {
        try {
            per_position[i] = evaluate_position(cfg, positions[i]);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    detail::parallel_for(positions.size(), options.jobs, work);

    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (failures[i]) {
            char where[96];
            std::snprintf(where, sizeof where, "at position (%g, %g): ", positions[i].x(), positions[i].y());
            try {
                std::rethrow_exception(failures[i]);
            } catch (const std::exception& e) {
                throw error(where + std::string(e.what()));
            }
        }
        table.rows.insert(table.rows.end(), per_position[i].begin(), per_position[i].end());
    }
    return table;
}

// ---------------------------------------------------------------- export

enum class ExportFormat { csv, jsonl, gnuplot };

inline ExportFormat parse_export_format(const std::string& name) {
    if (name == "csv") return ExportFormat::csv;
    if (name == "jsonl") return ExportFormat::jsonl;
    if (name == "gnuplot") return ExportFormat::gnuplot;
    throw invalid_argument("unknown export format '" + name + "' (csv, jsonl, gnuplot)");
}

inline const char* file_extension(ExportFormat f) {
    switch (f) {
    case ExportFormat::csv: return ".csv";
    case ExportFormat::jsonl: return ".jsonl";
    case ExportFormat::gnuplot: return ".dat";
    }
    return "";
}

// Fixed 9-significant-digit formatting.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0"; // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string header_line(const ResultTable& table) {
    return std::string("bodyarray ") + version + " config=" + table.config_name +
           " config_hash=" + table.config_hash;
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot open '" + path + "' for writing");
    return out;
}

inline void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw error("write to '" + path + "' failed");
}

inline std::string json_number(double v) {
    return std::isfinite(v) ? format_number(v) : "null";
}

struct CurveKey {
    std::optional<Vec2> position;
    std::string series;
    std::string quantity;
    std::string index_name;
};

inline bool same_curve(const CurveKey& k, const ResultRow& r) {
    if (k.position.has_value() != r.position.has_value()) return false;
    if (k.position && (k.position->x() != r.position->x() || k.position->y() != r.position->y()))
        return false;
    return k.series == r.series && k.quantity == r.quantity && k.index_name == r.index_name;
}

// Groups indexed rows into curves, preserving table order.
inline std::vector<std::pair<CurveKey, std::vector<const ResultRow*>>> curves(const ResultTable& t) {
    std::vector<std::pair<CurveKey, std::vector<const ResultRow*>>> out;
    for (const auto& r : t.rows) {
        if (r.index_name.empty()) continue;
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const auto& c) { return same_curve(c.first, r); });
        if (it == out.end()) {
            out.push_back({CurveKey{r.position, r.series, r.quantity, r.index_name}, {}});
            it = std::prev(out.end());
        }
        it->second.push_back(&r);
    }
    return out;
}

inline std::string curve_label(const CurveKey& k) {
    std::string label = k.quantity;
    if (k.position) label += "_x" + format_number(k.position->x()) + "_y" + format_number(k.position->y());
    if (!k.series.empty()) label += "_" + k.series;
    for (auto& c : label)
        if (c == '=' || c == ' ' || c == '/') c = '_';
    return label;
}

} // namespace detail

// Writes the whole table to one file.
inline void export_table(const ResultTable& table, ExportFormat format, const std::string& path) {
    std::ofstream out = detail::open_output(path);
    switch (format) {
    case ExportFormat::csv:
        out << "# " << header_line(table) << "\n";
        out << "config_hash,x_m,y_m,series,index_name,index,quantity,value,units\n";
        for (const auto& r : table.rows) {
            out << table.config_hash << ','
                << (r.position ? format_number(r.position->x()) : "") << ','
                << (r.position ? format_number(r.position->y()) : "") << ',' << r.series << ','
                << r.index_name << ',' << (r.index_name.empty() ? "" : format_number(r.index)) << ','
                << r.quantity << ',' << format_number(r.value) << ',' << r.units << '\n';
        }
        break;
    case ExportFormat::jsonl: {
        out << nlohmann::json{{"artifact", "bodyarray"},
                              {"version", version},
                              {"config", table.config_name},
                              {"config_hash", table.config_hash}}
                   .dump()
            << '\n';
        for (const auto& r : table.rows) {
            out << "{\"config_hash\":\"" << table.config_hash << "\",\"x_m\":"
                << (r.position ? detail::json_number(r.position->x()) : "null")
                << ",\"y_m\":" << (r.position ? detail::json_number(r.position->y()) : "null")
                << ",\"series\":" << nlohmann::json(r.series).dump()
                << ",\"index_name\":" << nlohmann::json(r.index_name).dump()
                << ",\"index\":" << (r.index_name.empty() ? "null" : detail::json_number(r.index))
                << ",\"quantity\":" << nlohmann::json(r.quantity).dump()
                << ",\"value\":" << detail::json_number(r.value)
                << ",\"units\":" << nlohmann::json(r.units).dump() << "}\n";
        }
        break;
    }
    case ExportFormat::gnuplot: {
        out << "# " << header_line(table) << "\n";
        for (const auto& r : table.rows) {
            if (!r.index_name.empty()) continue;
            out << "# " << r.quantity;
            if (r.position)
                out << " x_m=" << format_number(r.position->x()) << " y_m=" << format_number(r.position->y());
            if (!r.series.empty()) out << " " << r.series;
            out << " = " << format_number(r.value) << " " << r.units << "\n";
        }
        for (const auto& [key, rows] : detail::curves(table)) {
            out << "\n\n# " << detail::curve_label(key) << "\n";
            out << "# " << key.index_name << ' ' << key.quantity << '\n';
            for (const ResultRow* r : rows)
                out << format_number(r->index) << ' ' << format_number(r->value) << '\n';
        }
        break;
    }
    }
    detail::finish_output(out, path);
}

// Two-column CSV of one curve, e.g. header "gamma_deg,excess_attenuation_db".
inline void export_curve_csv(const ResultTable& table, const std::vector<const ResultRow*>& rows,
                             const std::string& path) {
    if (rows.empty()) throw invalid_argument("export_curve_csv: empty curve");
    std::ofstream out = detail::open_output(path);
    out << "# " << header_line(table) << "\n";
    out << rows.front()->index_name << ',' << rows.front()->quantity << '\n';
    for (const ResultRow* r : rows) out << format_number(r->index) << ',' << format_number(r->value) << '\n';
    detail::finish_output(out, path);
}

// One two-column file per curve in `dir`; returns the written paths.
inline std::vector<std::string> export_curves(const ResultTable& table, ExportFormat format,
                                              const std::string& dir) {
    std::vector<std::string> written;
    for (const auto& [key, rows] : detail::curves(table)) {
        const std::string path = dir + "/" + detail::curve_label(key) + file_extension(format);
        if (format == ExportFormat::csv) {
            export_curve_csv(table, rows, path);
        } else {
            std::ofstream out = detail::open_output(path);
            out << "# " << header_line(table) << "\n# " << key.index_name << ' ' << key.quantity << '\n';
            for (const ResultRow* r : rows) out << format_number(r->index) << ' ' << format_number(r->value) << '\n';
            detail::finish_output(out, path);
        }
        written.push_back(path);
    }
    return written;
}

} // namespace bodyarray
