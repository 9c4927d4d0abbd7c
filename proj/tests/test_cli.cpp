#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(HORBIT_PATH) + " " + args + " > /dev/null 2> /dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("enumerate writes the expected orbit CSV") {
    CHECK(run("enumerate --thresholds 1.5 --output cli_orbit.csv") == 0);
    std::string csv = slurp("cli_orbit.csv");
    CHECK(count_lines(csv) == 20);
    std::remove("cli_orbit.csv");
}

TEST_CASE("validation failures exit 2") {
    CHECK(run("enumerate --z0 0 -1") == 2);
    CHECK(run("enumerate --thresholds 0.25") == 2);
    CHECK(run("enumerate --kind Nope") == 2);
    CHECK(run("bogus-subcommand") == 2);
}

TEST_CASE("budget exhaustion exits 3") {
    CHECK(run("enumerate --thresholds 10000 --budget 10") == 3);
}

TEST_CASE("io failure exits 1 and leaves no partial file") {
    CHECK(run("enumerate --thresholds 1.5 --output missing_dir_xyz/out.csv") == 1);
    std::ifstream probe("missing_dir_xyz/out.csv");
    CHECK_FALSE(probe.good());
}

TEST_CASE("outputs are byte-identical across thread counts") {
    CHECK(run("enumerate --thresholds 2000 --z0 0.3 1.1 --z1 -0.2 0.8 --threads 1 "
              "--output cli_t1.csv") == 0);
    CHECK(run("enumerate --thresholds 2000 --z0 0.3 1.1 --z1 -0.2 0.8 --threads 4 "
              "--output cli_t4.csv") == 0);
    CHECK(slurp("cli_t1.csv") == slurp("cli_t4.csv"));
    std::remove("cli_t1.csv");
    std::remove("cli_t4.csv");
}

TEST_CASE("config file plus flag overrides") {
    {
        std::ofstream cfg("cli_cfg.json");
        cfg << R"({"group":{"kind":"GammaN","N":2},"thresholds":[1.5]})";
    }
    CHECK(run("enumerate --config cli_cfg.json --output cli_g2.csv") == 0);
    CHECK(count_lines(slurp("cli_g2.csv")) == 2);  // Gamma(2): only +-I in this ball
    // flag overrides config back to SL2Z
    CHECK(run("enumerate --config cli_cfg.json --kind SL2Z --output cli_sl2z.csv") == 0);
    CHECK(count_lines(slurp("cli_sl2z.csv")) == 20);
    std::remove("cli_cfg.json");
    std::remove("cli_g2.csv");
    std::remove("cli_sl2z.csv");
}

TEST_CASE("expsum reports S_0 = N") {
    CHECK(run("expsum --thresholds 100 --n-max 2 --output cli_expsum.csv") == 0);
    std::string csv = slurp("cli_expsum.csv");
    std::istringstream in(csv);
    std::string header, row0;
    std::getline(in, header);
    CHECK(header == "n,abs_S_n,abs_S_n_over_N");
    std::getline(in, row0);
    CHECK(row0.substr(row0.rfind(',') + 1) == "1");
    std::remove("cli_expsum.csv");
}

TEST_CASE("qdist concentric case has Q_exact = R and zero gap") {
    CHECK(run("qdist --thresholds 10000 --bins 8 --output cli_qdist.csv") == 0);
    std::istringstream in(slurp("cli_qdist.csv"));
    std::string line;
    std::getline(in, line);  // header
    double r_expect = std::acosh(10000.0);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string t, qe, qa, gap;
        std::getline(fields, t, ',');
        std::getline(fields, qe, ',');
        std::getline(fields, qa, ',');
        std::getline(fields, gap, ',');
        CHECK(std::stod(qe) == doctest::Approx(r_expect).epsilon(1e-10));
        CHECK(std::stod(gap) <= 1e-6);
    }
    CHECK(rows == 8);
    std::remove("cli_qdist.csv");
}

TEST_CASE("theorem3 JSON report parses and is sane") {
    CHECK(run("theorem3 --thresholds 10000 --bins 4 --output cli_t3.json") == 0);
    nlohmann::json j = nlohmann::json::parse(slurp("cli_t3.json"));
    CHECK(j.at("bins").size() == 4);
    for (const auto& b : j.at("bins"))
        CHECK(b.at("predicted").get<double>() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(j.at("max_abs_diff").get<double>() <= 0.05);
    std::remove("cli_t3.json");
}

TEST_CASE("equidist JSON report has rows and a fit") {
    CHECK(run("equidist --thresholds 100 1000 10000 --interval-start 0 "
              "--interval-length 0.25 --output cli_eq.json") == 0);
    nlohmann::json j = nlohmann::json::parse(slurp("cli_eq.json"));
    CHECK(j.at("rows").size() == 3);
    for (const auto& r : j.at("rows"))
        CHECK(r.at("N_I").get<std::size_t>() <= r.at("N").get<std::size_t>());
    std::remove("cli_eq.json");
}

TEST_CASE("single threshold yields null fit") {
    CHECK(run("equidist --thresholds 1000 --output cli_eq1.json") == 0);
    nlohmann::json j = nlohmann::json::parse(slurp("cli_eq1.json"));
    CHECK(j.at("fitted_exponent").is_null());
    std::remove("cli_eq1.json");
}

TEST_CASE("full-circle interval gives zero error rows") {
    CHECK(run("equidist --thresholds 100 1000 --interval-length 1 --output cli_eqf.json") == 0);
    nlohmann::json j = nlohmann::json::parse(slurp("cli_eqf.json"));
    for (const auto& r : j.at("rows")) CHECK(r.at("error").get<double>() == 0.0);
    std::remove("cli_eqf.json");
}

TEST_CASE("density table") {
    CHECK(run("density --z0 0 2 --z1 0 1 --bins 4 --output cli_density.csv") == 0);
    std::istringstream in(slurp("cli_density.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "omega,rho,eta,k");
    std::getline(in, line);  // omega = 0 row
    std::istringstream fields(line);
    std::string w, rho_s, eta_s, k_s;
    std::getline(fields, w, ',');
    std::getline(fields, rho_s, ',');
    std::getline(fields, eta_s, ',');
    std::getline(fields, k_s, ',');
    CHECK(std::stod(rho_s) == doctest::Approx(0.5));
    CHECK(std::stod(eta_s) == doctest::Approx(1.25));
    CHECK(std::stod(k_s) == doctest::Approx(0.5));
    std::remove("cli_density.csv");
}

TEST_CASE("gseries scaled value approaches the residue") {
    CHECK(run("gseries --thresholds 100000 --n-max 0 --s 1.1 --output cli_gs.csv") == 0);
    std::istringstream in(slurp("cli_gs.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,X,re,im,scaled_re");
    std::getline(in, line);
    double scaled = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(scaled == doctest::Approx(12.0).epsilon(0.15));
    std::remove("cli_gs.csv");
}
