#include "orbits/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace orbits {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ExperimentConfig::validate() const {
    if (group.kind != "SL2Z" && group.kind != "GammaN")
        throw std::invalid_argument("group.kind must be SL2Z or GammaN");
    if (group.kind == "GammaN" && group.level < 1)
        throw std::invalid_argument("group.N must be >= 1");
    for (const auto* p : {&points.z0, &points.z1, &points.w})
        if (!((*p)[1] > 0.0))
            throw std::invalid_argument("points must have y > 0");
    if (thresholds.empty()) throw std::invalid_argument("thresholds must be nonempty");
    for (double x : thresholds)
        if (!(x >= 1.0)) throw std::invalid_argument("thresholds must be >= 1");
    if (!(interval.length > 0.0 && interval.length <= 1.0))
        throw std::invalid_argument("interval.length must be in (0, 1]");
    if (bins < 2) throw std::invalid_argument("bins must be >= 2");
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (m_max < 1) throw std::invalid_argument("M must be >= 1");
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (!(s > 1.0)) throw std::invalid_argument("s must be > 1");
    if (output.format != "csv" && output.format != "json")
        throw std::invalid_argument("output.format must be csv or json");
}

GroupSpec ExperimentConfig::group_spec() const {
    return make_group(group.kind == "SL2Z" ? GroupKind::SL2Z : GroupKind::GammaN, group.level);
}

double ExperimentConfig::max_threshold() const {
    double m = 1.0;
    for (double x : thresholds) m = std::max(m, x);
    return m;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
    return nlohmann::json{
        {"group", {{"kind", cfg.group.kind}, {"N", cfg.group.level}}},
        {"points", {{"z0", cfg.points.z0}, {"z1", cfg.points.z1}, {"w", cfg.points.w}}},
        {"thresholds", cfg.thresholds},
        {"interval", {{"start", cfg.interval.start}, {"length", cfg.interval.length}}},
        {"bins", cfg.bins},
        {"n_max", cfg.n_max},
        {"M", cfg.m_max},
        {"budget", cfg.budget},
        {"threads", cfg.threads},
        {"s", cfg.s},
        {"output", {{"format", cfg.output.format}, {"path", cfg.output.path}}},
    };
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("group")) {
        const auto& g = j.at("group");
        if (g.contains("kind")) cfg.group.kind = g.at("kind").get<std::string>();
        if (g.contains("N")) cfg.group.level = g.at("N").get<int>();
    }
    if (j.contains("points")) {
        const auto& p = j.at("points");
        if (p.contains("z0")) cfg.points.z0 = p.at("z0").get<std::array<double, 2>>();
        if (p.contains("z1")) cfg.points.z1 = p.at("z1").get<std::array<double, 2>>();
        if (p.contains("w")) cfg.points.w = p.at("w").get<std::array<double, 2>>();
    }
    if (j.contains("thresholds")) cfg.thresholds = j.at("thresholds").get<std::vector<double>>();
    if (j.contains("interval")) {
        const auto& iv = j.at("interval");
        if (iv.contains("start")) cfg.interval.start = iv.at("start").get<double>();
        if (iv.contains("length")) cfg.interval.length = iv.at("length").get<double>();
    }
    if (j.contains("bins")) cfg.bins = j.at("bins").get<int>();
    if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
    if (j.contains("M")) cfg.m_max = j.at("M").get<int>();
    if (j.contains("budget")) cfg.budget = j.at("budget").get<std::size_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("s")) cfg.s = j.at("s").get<double>();
    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (o.contains("format")) cfg.output.format = o.at("format").get<std::string>();
        if (o.contains("path")) cfg.output.path = o.at("path").get<std::string>();
    }
    return cfg;
}

std::string orbit_csv(std::span<const OrbitRecord> records) {
    std::string out;
    out.reserve(records.size() * 64);
    for (const auto& r : records) {
        out += std::to_string(r.element.a);
        out += ',';
        out += std::to_string(r.element.b);
        out += ',';
        out += std::to_string(r.element.c);
        out += ',';
        out += std::to_string(r.element.d);
        out += ',';
        out += format_double(r.cosh_dist);
        out += ',';
        out += format_double(r.omega.omega);
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json point_json(const Point& p) { return nlohmann::json::array({p.x, p.y}); }

nlohmann::json group_json(const GroupSpec& g) {
    return nlohmann::json{{"kind", g.kind == GroupKind::SL2Z ? "SL2Z" : "GammaN"},
                          {"N", g.level},
                          {"covolume", g.covolume},
                          {"kappa", g.kappa}};
}

}  // namespace

nlohmann::json to_json(const EquidistributionReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"X", r.x}, {"N", r.n_total}, {"N_I", r.n_sector}, {"error", r.error}});
    nlohmann::json j{
        {"group", group_json(rep.group)},
        {"z0", point_json(rep.z0)},
        {"z1", point_json(rep.z1)},
        {"interval", {{"start", rep.interval.start.omega}, {"length", rep.interval.length}}},
        {"rows", rows},
    };
    if (rep.has_fit) {
        j["fitted_exponent"] = rep.fit.slope;
        j["residual"] = rep.fit.residual;
    } else {
        j["fitted_exponent"] = nullptr;
        j["residual"] = nullptr;
    }
    return j;
}

nlohmann::json to_json(const Theorem3Report& rep) {
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : rep.bins)
        bins.push_back({{"interval", {b.lo, b.hi}},
                        {"empirical", b.empirical},
                        {"predicted", b.predicted},
                        {"diff", b.diff}});
    return nlohmann::json{{"group", group_json(rep.group)},
                          {"z0", point_json(rep.z0)},
                          {"z1", point_json(rep.z1)},
                          {"w", point_json(rep.w)},
                          {"X", rep.x},
                          {"R", rep.r},
                          {"N", rep.n_total},
                          {"bins", bins},
                          {"max_abs_diff", rep.max_abs_diff}};
}

nlohmann::json to_json(const Theorem2Report& rep) {
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : rep.bins)
        bins.push_back({{"interval", {b.t_lo, b.t_hi}},
                        {"empirical", b.empirical},
                        {"predicted", b.predicted_eta},
                        {"predicted_folded_rho", b.predicted_rho},
                        {"diff", b.diff}});
    return nlohmann::json{{"group", group_json(rep.group)},
                          {"z0", point_json(rep.z0)},
                          {"z1", point_json(rep.z1)},
                          {"w", point_json(rep.z1)},
                          {"X", rep.x},
                          {"R", rep.r},
                          {"N", rep.n_total},
                          {"bins", bins},
                          {"max_abs_diff", rep.max_abs_diff},
                          {"max_prediction_gap", rep.max_prediction_gap}};
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << contents;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed for " + path);
    }
}

}  // namespace orbits
