#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles/series_exp.hpp"
#include "qphase/io.hpp"
#include "qphase/rotation.hpp"

using namespace qphase;
using cd = std::complex<double>;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// P_m from the series oracle, block by block.
std::map<int, double> oracle_probs(const QuantumState& state, double phi)
{
    std::map<int, Eigen::VectorXcd> blocks;
    for (const auto& e : state.entries()) {
        auto& v = blocks[e.j.twice()];
        if (v.size() == 0) v = Eigen::VectorXcd::Zero(e.j.twice() + 1);
        v((e.m.twice() + e.j.twice()) / 2) = e.amp;
    }
    std::map<int, double> probs;
    for (const auto& [tj, amps] : blocks) {
        const Eigen::VectorXcd out = oracle::series_rotation(tj, phi) * amps;
        for (int k = 0; k <= tj; ++k) probs[-tj + 2 * k] += std::norm(out(k));
    }
    return probs;
}

}  // namespace

TEST_SUITE("rotation") {

TEST_CASE("J_x for j = 1/2 is sigma_x / 2")
{
    const auto jx = jx_matrix(HalfInt::from_twice(1)).matrix;
    REQUIRE(jx.rows() == 2);
    CHECK(jx(0, 0) == cd(0.0));
    CHECK(jx(1, 1) == cd(0.0));
    CHECK(std::abs(jx(0, 1) - 0.5) < 1e-15);
    CHECK(std::abs(jx(1, 0) - 0.5) < 1e-15);
}

TEST_CASE("J_x for j = 1 has off-diagonals 1/sqrt2")
{
    const auto jx = jx_matrix(HalfInt::from_int(1)).matrix;
    CHECK(std::abs(jx(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(jx(1, 2) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(jx(0, 2)) == 0.0);
}

TEST_CASE("J_x is real symmetric, zero-diagonal, with spectrum -j..j")
{
    for (int tj = 0; tj <= 16; ++tj) {
        const auto jx = jx_matrix(HalfInt::from_twice(tj)).matrix;
        CHECK(max_abs(jx - jx.transpose()) == 0.0);
        CHECK(jx.imag().cwiseAbs().maxCoeff() == 0.0);
        CHECK(jx.diagonal().cwiseAbs().maxCoeff() == 0.0);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jx.real());
        for (int k = 0; k <= tj; ++k) {
            CHECK(std::abs(solver.eigenvalues()(k) - (-0.5 * tj + k)) < 1e-12);
        }
    }
}

TEST_CASE("rotation at phi = 0 is the identity")
{
    for (int tj = 0; tj <= 8; ++tj) {
        const auto u = rotation_block(HalfInt::from_twice(tj), 0.0).matrix;
        CHECK(max_abs(u - Eigen::MatrixXcd::Identity(tj + 1, tj + 1)) < 1e-14);
    }
}

TEST_CASE("j = 1/2 rotation matches the closed form")
{
    for (double phi : {0.1, 1.0, 2.5, -0.7}) {
        const auto u = rotation_block(HalfInt::from_twice(1), phi).matrix;
        const cd c = std::cos(phi / 2.0);
        const cd s = cd(0.0, -std::sin(phi / 2.0));
        CHECK(std::abs(u(0, 0) - c) < 1e-14);
        CHECK(std::abs(u(1, 1) - c) < 1e-14);
        CHECK(std::abs(u(0, 1) - s) < 1e-14);
        CHECK(std::abs(u(1, 0) - s) < 1e-14);
    }
}

TEST_CASE("j = 2, phi = 0.3 matches the series oracle")
{
    const auto u = rotation_block(HalfInt::from_int(2), 0.3).matrix;
    CHECK(max_abs(u - oracle::series_rotation(4, 0.3)) < 1e-10);
}

TEST_CASE("property: unitarity for j <= 8 on a 32-point grid")
{
    double worst = 0.0;
    for (int tj = 1; tj <= 16; ++tj) {
        for (int k = 0; k < 32; ++k) {
            const auto u = rotation_block(HalfInt::from_twice(tj), 2.0 * M_PI * k / 32.0).matrix;
            worst = std::max(worst, max_abs(u * u.adjoint() - Eigen::MatrixXcd::Identity(tj + 1, tj + 1)));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("property: composition D(a) D(b) = D(a + b)")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-2.0 * M_PI, 2.0 * M_PI);
    std::uniform_int_distribution<int> twice_j(0, 16);
    for (int i = 0; i < 200; ++i) {
        const auto j = HalfInt::from_twice(twice_j(rng));
        const double a = angle(rng), b = angle(rng);
        const Eigen::MatrixXcd lhs = rotation_block(j, a).matrix * rotation_block(j, b).matrix;
        CHECK(max_abs(lhs - rotation_block(j, a + b).matrix) < 1e-11);
    }
}

TEST_CASE("property: spectral and series exponentials agree for j <= 4")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-2.0 * M_PI, 2.0 * M_PI);
    for (int tj = 0; tj <= 8; ++tj) {
        for (int i = 0; i < 20; ++i) {
            const double phi = angle(rng);
            CHECK(max_abs(rotation_block(HalfInt::from_twice(tj), phi).matrix -
                          oracle::series_rotation(tj, phi)) < 1e-10);
        }
    }
}

TEST_CASE("interferometer statistics for N00N j = 2")
{
    const auto state = build_state(StateSpec::noon(2));
    const auto at0 = interferometer_probs(state, 0.0);
    REQUIRE(at0.probs.size() == 5);
    CHECK(std::abs(at0.at(HalfInt::from_int(2)) - 0.5) < 1e-14);
    CHECK(std::abs(at0.at(HalfInt::from_int(-2)) - 0.5) < 1e-14);
    for (int m : {-1, 0, 1}) CHECK(std::abs(at0.at(HalfInt::from_int(m))) < 1e-14);

    const auto at07 = interferometer_probs(state, 0.7);
    const auto expected = oracle_probs(state, 0.7);
    for (const auto& [tm, p] : expected) CHECK(std::abs(at07.probs.at(tm) - p) < 1e-10);
}

TEST_CASE("blocks of different j add incoherently")
{
    const auto state = build_state(StateSpec::general(4, 0.8, 1.3));
    for (double phi : {0.2, 1.1, 2.9}) {
        const auto got = interferometer_probs(state, phi);
        const auto expected = oracle_probs(state, phi);
        REQUIRE(got.probs.size() == expected.size());
        for (const auto& [tm, p] : expected) CHECK(std::abs(got.probs.at(tm) - p) < 1e-10);
    }
}

TEST_CASE("property: probabilities sum to one")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (const auto& spec : {StateSpec::noon(3), StateSpec::substate(6, 0.7),
                             StateSpec::noon_vac(9, 5.0), StateSpec::general(3, 1.0, 0.4)}) {
        const Interferometer interferometer(build_state(spec));
        for (int i = 0; i < 50; ++i) {
            const auto dist = interferometer.distribution(angle(rng));
            CHECK(std::abs(dist.total() - 1.0) < 1e-12);
            for (const auto& [tm, p] : dist.probs) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("MeasurementDistribution JSON uses doubled-m keys")
{
    const auto dist = interferometer_probs(build_state(StateSpec::noon_vac(3, 2.0)), 0.4);
    const nlohmann::json doc = dist;
    CHECK(doc.at("probs").contains("-6"));
    CHECK(doc.at("probs").contains("6"));
    CHECK(doc.at("probs").contains("0"));
    const auto back = doc.get<MeasurementDistribution>();
    CHECK(back.phi == dist.phi);
    CHECK(back.probs == dist.probs);
}

}  // TEST_SUITE
