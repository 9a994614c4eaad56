#include "qphase/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qphase {

namespace {

Eigen::MatrixXd jx_real(HalfInt j)
{
    const int tj = j.twice();
    if (tj < 0) throw InvalidSpecError("j must be non-negative");
    const int dim = tj + 1;
    const double jv = j.value();
    Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(dim, dim);
    // Row/column k holds m = -j + k. <m+1|J+|m> = sqrt(j(j+1) - m(m+1)).
    for (int k = 0; k + 1 < dim; ++k) {
        const double m = -jv + k;
        const double element = 0.5 * std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
        jx(k + 1, k) = element;
        jx(k, k + 1) = element;
    }
    return jx;
}

Eigen::MatrixXcd spectral_exponential(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& values,
                                      double phi)
{
    Eigen::VectorXcd phases(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) phases(i) = std::polar(1.0, -phi * values(i));
    const Eigen::MatrixXcd v = vectors.cast<std::complex<double>>();
    return v * phases.asDiagonal() * v.transpose();
}

}  // namespace

AngularBlock jx_matrix(HalfInt j)
{
    return {j, jx_real(j).cast<std::complex<double>>()};
}

AngularBlock rotation_block(HalfInt j, double phi)
{
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jx_real(j));
    return {j, spectral_exponential(solver.eigenvectors(), solver.eigenvalues(), phi)};
}

double MeasurementDistribution::at(HalfInt m) const
{
    const auto it = probs.find(m.twice());
    return it == probs.end() ? 0.0 : it->second;
}

double MeasurementDistribution::total() const
{
    double sum = 0.0;
    for (const auto& [key, p] : probs) sum += p;
    return sum;
}

Interferometer::Interferometer(const QuantumState& state)
{
    std::set<int> js;
    for (const auto& e : state.entries()) js.insert(e.j.twice());

    std::set<int> support;
    for (int tj : js) {
        for (int tm = -tj; tm <= tj; tm += 2) support.insert(tm);
    }
    support_.assign(support.begin(), support.end());

    for (int tj : js) {
        const HalfInt j = HalfInt::from_twice(tj);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jx_real(j));
        Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(tj + 1);
        for (const auto& e : state.entries()) {
            if (e.j.twice() == tj) amplitudes((e.m.twice() + tj) / 2) = e.amp;
        }
        Block block{tj, solver.eigenvectors(), solver.eigenvalues(),
                    solver.eigenvectors().cast<std::complex<double>>().transpose() * amplitudes,
                    {}};
        for (int tm = -tj; tm <= tj; tm += 2) {
            const auto pos = std::lower_bound(support_.begin(), support_.end(), tm);
            block.slot.push_back(static_cast<std::size_t>(pos - support_.begin()));
        }
        blocks_.push_back(std::move(block));
    }
}

void Interferometer::probabilities(double phi, std::span<double> out) const
{
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& block : blocks_) {
        const Eigen::Index dim = block.eigenvalues.size();
        Eigen::VectorXcd rotated(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            rotated(i) = std::polar(1.0, -phi * block.eigenvalues(i)) * block.projected(i);
        }
        for (Eigen::Index row = 0; row < dim; ++row) {
            std::complex<double> component = 0.0;
            for (Eigen::Index k = 0; k < dim; ++k) component += block.eigenvectors(row, k) * rotated(k);
            out[block.slot[static_cast<std::size_t>(row)]] += std::norm(component);
        }
    }
}

MeasurementDistribution Interferometer::distribution(double phi) const
{
    std::vector<double> values(support_.size());
    probabilities(phi, values);
    MeasurementDistribution dist;
    dist.phi = phi;
    for (std::size_t i = 0; i < support_.size(); ++i) dist.probs.emplace(support_[i], values[i]);
    return dist;
}

MeasurementDistribution interferometer_probs(const QuantumState& state, double phi)
{
    return Interferometer(state).distribution(phi);
}

}  // namespace qphase
