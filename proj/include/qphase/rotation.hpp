#pragma once

#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qphase/states.hpp"

namespace qphase {

/// A (2j+1) x (2j+1) operator on one angular-momentum block, rows and
/// columns ordered by ascending m = -j .. +j.
struct AngularBlock {
    HalfInt j;
    Eigen::MatrixXcd matrix;
};

/// J_x = (J+ + J-)/2 built from the ladder matrix elements.
AngularBlock jx_matrix(HalfInt j);

/// D_x(phi) = exp(-i phi J_x) via the eigendecomposition of J_x.
AngularBlock rotation_block(HalfInt j, double phi);

/// Interferometer output statistics P_m at arm phase `phi`. Keys are 2m.
struct MeasurementDistribution {
    double phi = 0.0;
    std::map<int, double> probs;

    /// P_m, 0 for m outside the support.
    double at(HalfInt m) const;
    double total() const;
};

/**
 * Output statistics of a fixed input state under an x-rotation.
 *
 * Diagonalizes J_x once per j block present in the state, so repeated
 * evaluation costs one small matrix-vector product per block. Immutable
 * after construction and safe to share between threads.
 */
class Interferometer {
public:
    explicit Interferometer(const QuantumState& state);

    /// Ascending 2m values that can be observed.
    const std::vector<int>& support() const { return support_; }

    /// Writes P_m for each support entry into `out` (same order as support()).
    void probabilities(double phi, std::span<double> out) const;

    MeasurementDistribution distribution(double phi) const;

private:
    struct Block {
        int twice_j;
        Eigen::MatrixXd eigenvectors;
        Eigen::VectorXd eigenvalues;
        Eigen::VectorXcd projected;  // V^T a
        std::vector<std::size_t> slot;  // local index -> support index
    };

    std::vector<Block> blocks_;
    std::vector<int> support_;
};

/// P_m = sum_j |<j, m| D_x(phi) |psi>|^2.
MeasurementDistribution interferometer_probs(const QuantumState& state, double phi);

}  // namespace qphase
