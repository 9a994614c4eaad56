#include "qphase/states.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace qphase {

std::string_view to_string(StateKind kind)
{
    switch (kind) {
    case StateKind::Noon: return "noon";
    case StateKind::SubState: return "substate";
    case StateKind::NoonVac: return "noonvac";
    case StateKind::GeneralEq1: return "general";
    }
    return "unknown";
}

StateKind parse_state_kind(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return c == '0' ? 'o' : static_cast<char>(std::tolower(c)); });
    lower.erase(std::remove_if(lower.begin(), lower.end(),
                               [](char c) { return c == '-' || c == '_'; }),
                lower.end());
    if (lower == "noon") return StateKind::Noon;
    if (lower == "substate") return StateKind::SubState;
    if (lower == "noonvac") return StateKind::NoonVac;
    if (lower == "general" || lower == "generaleq1") return StateKind::GeneralEq1;
    throw InvalidSpecError("unknown state kind '" + std::string(text) + "'");
}

StateSpec StateSpec::noon(int j_max)
{
    return StateSpec{StateKind::Noon, j_max, 0.0, 1.0, 1.0};
}

StateSpec StateSpec::substate(int j_max, double r1)
{
    return StateSpec{StateKind::SubState, j_max, r1, 1.0 / std::sqrt(2.0), 1.0};
}

StateSpec StateSpec::noon_vac(int j_max, double n)
{
    return StateSpec{StateKind::NoonVac, j_max, 0.0, 1.0 / std::sqrt(2.0 * n), n};
}

StateSpec StateSpec::general(int j_max, double r1, double r2)
{
    return StateSpec{StateKind::GeneralEq1, j_max, r1, r2, 1.0};
}

void StateSpec::validate() const
{
    if (j_max <= 0) {
        throw InvalidSpecError("j_max must be positive, got " + std::to_string(j_max));
    }
    switch (kind) {
    case StateKind::Noon:
        break;
    case StateKind::SubState:
        if (j_max % 2 != 0) {
            throw ParityError("sub-state requires even j_max, got " + std::to_string(j_max));
        }
        if (!(r1 >= 0.0) || !std::isfinite(r1)) {
            throw InvalidSpecError("sub-state requires finite r1 >= 0");
        }
        break;
    case StateKind::NoonVac:
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw InvalidSpecError("N00N-vac requires finite n > 0");
        }
        break;
    case StateKind::GeneralEq1:
        if (!(r1 >= 0.0) || !std::isfinite(r1)) {
            throw InvalidSpecError("r1 must be finite and non-negative");
        }
        if (!(r2 > 0.0) || !std::isfinite(r2)) {
            throw InvalidSpecError("r2 must be finite and positive");
        }
        break;
    }
}

QuantumState::QuantumState(std::vector<AmplitudeEntry> entries, std::optional<StateSpec> origin)
    : entries_(std::move(entries)), origin_(std::move(origin))
{
    std::set<std::pair<int, int>> seen;
    double norm2 = 0.0;
    for (const auto& e : entries_) {
        const int tj = e.j.twice();
        const int tm = e.m.twice();
        if (tj < 0 || std::abs(tm) > tj || (tj - tm) % 2 != 0) {
            throw InvalidSpecError("invalid (j, m) = (" + std::to_string(e.j.value()) + ", " +
                                   std::to_string(e.m.value()) + ")");
        }
        if (!seen.emplace(tj, tm).second) {
            throw InvalidSpecError("duplicate (j, m) entry");
        }
        norm2 += std::norm(e.amp);
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw InvalidSpecError("state has zero or non-finite norm");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& e : entries_) e.amp *= scale;
}

int QuantumState::max_twice_j() const
{
    int best = 0;
    for (const auto& e : entries_) best = std::max(best, e.j.twice());
    return best;
}

QuantumState build_state(const StateSpec& spec)
{
    spec.validate();
    const int J = spec.j_max;

    double w_outer = 1.0;  // |2J,0> and |0,2J>
    double w_inner = 0.0;  // |J,0> and |0,J>
    double w_vac = 0.0;
    switch (spec.kind) {
    case StateKind::Noon:
        break;
    case StateKind::SubState:
        w_outer = 1.0 / std::sqrt(2.0);
        w_inner = spec.r1;
        w_vac = 1.0;
        break;
    case StateKind::NoonVac:
        w_outer = 1.0 / std::sqrt(2.0 * spec.n);
        w_vac = 1.0;
        break;
    case StateKind::GeneralEq1:
        w_outer = spec.r2;
        w_inner = spec.r1;
        w_vac = 1.0;
        break;
    }

    std::vector<AmplitudeEntry> entries;
    auto add = [&entries](FockPair ket, double weight) {
        if (weight == 0.0) return;
        const auto [j, m] = schwinger_map(ket);
        entries.push_back({j, m, {weight, 0.0}});
    };
    add({2 * J, 0}, w_outer);
    add({0, 2 * J}, w_outer);
    add({J, 0}, w_inner);
    add({0, J}, w_inner);
    add({0, 0}, w_vac);
    return QuantumState(std::move(entries), spec);
}

double expected_j(const QuantumState& state)
{
    double sum = 0.0;
    for (const auto& e : state.entries()) sum += std::norm(e.amp) * e.j.value();
    return sum;
}

double photon_cost(const QuantumState& state) { return 2.0 * expected_j(state); }

std::optional<HalfInt> m_gap(const QuantumState& state)
{
    std::set<int> support;
    for (const auto& e : state.entries()) {
        if (e.amp != 0.0) support.insert(e.m.twice());
    }
    if (support.size() < 2) return std::nullopt;
    const int first = *support.begin();
    int g = 0;
    for (int tm : support) g = std::gcd(g, tm - first);
    return HalfInt::from_twice(g);
}

HalfInt require_m_gap(const QuantumState& state)
{
    auto g = m_gap(state);
    if (!g) throw AperiodicStateError("state has a single m value; its phase PDF is flat");
    return *g;
}

}  // namespace qphase
