#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbits/angular.hpp"
#include "orbits/density.hpp"
#include "orbits/lattice.hpp"

namespace orbits {

/// Shortest decimal that round-trips; at most 17 significant digits.
std::string format_double(double v);

/// One experiment recipe; every CLI flag maps onto one field here.
struct ExperimentConfig {
    struct Group {
        std::string kind = "SL2Z";  // "SL2Z" | "GammaN"
        int level = 1;
        friend bool operator==(const Group&, const Group&) = default;
    };
    struct Points {
        std::array<double, 2> z0{0.0, 1.0};
        std::array<double, 2> z1{0.0, 1.0};
        std::array<double, 2> w{0.0, 1.0};
        friend bool operator==(const Points&, const Points&) = default;
    };
    struct Interval {
        double start = 0.0;
        double length = 0.25;
        friend bool operator==(const Interval&, const Interval&) = default;
    };
    struct Output {
        std::string format = "csv";  // "csv" | "json"
        std::string path;            // empty = stdout
        friend bool operator==(const Output&, const Output&) = default;
    };

    Group group;
    Points points;
    std::vector<double> thresholds{1000.0};
    Interval interval;
    int bins = 8;
    int n_max = 3;
    int m_max = 50;
    std::size_t budget = 50'000'000;
    int threads = 0;
    double s = 1.1;  // g-series exponent
    Output output;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

    /// Throws std::invalid_argument with a message on any bad field.
    void validate() const;

    GroupSpec group_spec() const;
    Point z0() const { return Point(points.z0[0], points.z0[1]); }
    Point z1() const { return Point(points.z1[0], points.z1[1]); }
    Point w() const { return Point(points.w[0], points.w[1]); }
    double max_threshold() const;
    EnumerationOptions enumeration_options() const { return {budget, threads}; }
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Orbit CSV: one `a,b,c,d,cosh_dist,omega` line per record, no header.
std::string orbit_csv(std::span<const OrbitRecord> records);

nlohmann::json to_json(const EquidistributionReport& rep);
nlohmann::json to_json(const Theorem3Report& rep);
nlohmann::json to_json(const Theorem2Report& rep);

/// Writes via a temp file in the same directory plus rename, so failures
/// leave no partial output. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace orbits
