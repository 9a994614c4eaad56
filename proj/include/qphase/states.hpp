#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qphase {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSpecError : public Error {
public:
    using Error::Error;
};

/// Raised when a sub-state is requested with odd j_max.
class ParityError : public InvalidSpecError {
public:
    using InvalidSpecError::InvalidSpecError;
};

/// Raised for a state whose number-difference support has a single value.
class AperiodicStateError : public Error {
public:
    using Error::Error;
};

/// A half-integer quantum number, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int twice) { return HalfInt{twice}; }
    static constexpr HalfInt from_int(int value) { return HalfInt{2 * value}; }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

private:
    explicit constexpr HalfInt(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// One (j, m) component of a state in the angular-momentum basis.
struct AmplitudeEntry {
    HalfInt j;
    HalfInt m;
    std::complex<double> amp;
};

/// Photon numbers in the two arms for a basis ket.
struct FockPair {
    int n_up = 0;
    int n_down = 0;
};

/// Schwinger mapping: j = (n_u + n_d)/2, m = (n_u - n_d)/2.
constexpr std::pair<HalfInt, HalfInt> schwinger_map(FockPair ket)
{
    return {HalfInt::from_twice(ket.n_up + ket.n_down),
            HalfInt::from_twice(ket.n_up - ket.n_down)};
}

enum class StateKind { Noon, SubState, NoonVac, GeneralEq1 };

std::string_view to_string(StateKind kind);
/// Accepts "noon", "substate", "noonvac", "general"; case, '-', '_' and
/// the N00N spelling are ignored.
StateKind parse_state_kind(std::string_view text);

/**
 * Parameters of the superposition
 *   r2 (|2J,0> + |0,2J>) + r1 (|J,0> + |0,J>) + |0,0>
 * with J = j_max, restricted to one of its three analyzed families or left
 * general.
 *
 * Use the named constructors; they fix the family's tied parameters.
 */
struct StateSpec {
    StateKind kind = StateKind::Noon;
    int j_max = 1;
    double r1 = 0.0;
    double r2 = 1.0;
    double n = 1.0;

    static StateSpec noon(int j_max);
    static StateSpec substate(int j_max, double r1);
    static StateSpec noon_vac(int j_max, double n);
    static StateSpec general(int j_max, double r1, double r2);

    /// Throws InvalidSpecError / ParityError when the family constraints fail.
    void validate() const;

    friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

/// Normalized pure state; immutable after construction.
class QuantumState {
public:
    /// Normalizes `entries`; rejects duplicate (j, m), |m| > j, parity
    /// mismatch, and zero norm.
    explicit QuantumState(std::vector<AmplitudeEntry> entries,
                          std::optional<StateSpec> origin = std::nullopt);

    const std::vector<AmplitudeEntry>& entries() const { return entries_; }
    /// The spec the state was built from, if any.
    const std::optional<StateSpec>& origin() const { return origin_; }

    /// Largest 2j over the entries.
    int max_twice_j() const;

private:
    std::vector<AmplitudeEntry> entries_;
    std::optional<StateSpec> origin_;
};

/// Builds the state for `spec`; zero-weight components are omitted.
QuantumState build_state(const StateSpec& spec);

/// Sum of |amp|^2 j.
double expected_j(const QuantumState& state);

/// Expected photon number N = 2<j>.
double photon_cost(const QuantumState& state);

/// Fundamental m-spacing (gcd of differences of m over nonzero
/// coefficients). The phase PDF has period 2 pi / gap. Returns nullopt for
/// a state with a single nonzero m.
std::optional<HalfInt> m_gap(const QuantumState& state);

/// As m_gap, but throws AperiodicStateError for the single-m case.
HalfInt require_m_gap(const QuantumState& state);

}  // namespace qphase
