#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qphase/io.hpp"

using namespace qphase;

namespace {

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double round-trips")
{
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(-2.0) == "-2");
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> value(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = value(rng);
        CHECK(std::stod(io::format_double(x)) == x);
    }
}

TEST_CASE("pdf CSV for N00N j = 4")
{
    const PhaseDistribution dist(build_state(StateSpec::noon(4)));
    const auto rows = lines(io::pdf_csv(dist, 8));
    REQUIRE(rows.size() == 9);
    CHECK(rows[0] == "phi,pdf");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const auto comma = rows[k].find(',');
        const double phi = std::stod(rows[k].substr(0, comma));
        const double p = std::stod(rows[k].substr(comma + 1));
        CHECK(phi == doctest::Approx(-M_PI + 2.0 * M_PI * double(k - 1) / 8.0));
        // Every sample sits on a peak of 1/pi.
        CHECK(std::abs(p - 1.0 / M_PI) < 1e-14);
    }
    CHECK_THROWS_AS(io::pdf_csv(dist, 1), InvalidSpecError);
}

TEST_CASE("sweep and objective CSV layout")
{
    const std::vector<SweepRow> rows{{1e-6, 0.001, 0.002, 0.003, 40000, 0.0, 2000}};
    const auto text = lines(io::sweep_csv(rows));
    REQUIRE(text.size() == 2);
    CHECK(text[0] == "sigma2,mean_error,mean_abs_error,std_error,trials");
    CHECK(text[1] == "9.9999999999999995e-07,0.001,0.002,0.0030000000000000001,40000");

    const std::vector<ObjectiveSample> samples{{0.0, 1.0}, {0.5, 0.25}};
    CHECK(io::objective_csv(samples) == "x,objective\n0,1\n0.5,0.25\n");
}

TEST_CASE("FNV-1a test vectors")
{
    CHECK(io::fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(io::fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(io::fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("manifest JSON round trip")
{
    io::RunManifest m;
    m.command = "estimate";
    m.params = {{"spec_kind", "noon"}, {"jmax", 2}, {"phi", 0.1}};
    m.seed = 7;
    m.tool_version = std::string(io::tool_version);
    m.output_checksum = io::fnv1a64_hex("payload");
    const nlohmann::json doc = m;
    CHECK(doc.at("seed") == 7);
    CHECK(doc.at("output_checksum").get<std::string>().size() == 16);
    CHECK(doc.get<io::RunManifest>() == m);
    CHECK(nlohmann::json::parse(doc.dump()).get<io::RunManifest>() == m);
}

TEST_CASE("sweep row and metric report JSON")
{
    const SweepRow row{1e-4, -0.001, 0.01, 0.02, 400, 0.005, 20};
    const nlohmann::json r = row;
    CHECK(r.at("sigma2") == 1e-4);
    CHECK(r.at("trials") == 400);

    const nlohmann::json report = compute_metrics(StateSpec::noon(4));
    CHECK(report.at("spec").at("kind") == "noon");
    CHECK(report.at("hwhm").at("agree") == true);
    CHECK(report.at("bin_variance").at("agree") == true);
    CHECK(!report.contains("p_drop"));
}

}  // TEST_SUITE
