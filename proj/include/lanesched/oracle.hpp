#ifndef LANESCHED_ORACLE_HPP
#define LANESCHED_ORACLE_HPP

#include <array>
#include <cstdint>

#include "lanesched/search.hpp"

namespace lanesched {

/// Raised when the exhaustive enumeration would exceed its state cap. The
/// oracle never returns an unverified answer.
class OracleLimitError : public std::runtime_error {
public:
    explicit OracleLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct OracleResult {
    double optimal_delay = 0.0; // minimum additional delay from the start state
    // Optimal service order: (connection, first vehicle, count) slices.
    std::vector<std::array<int, 3>> optimal_sequence;
    std::uint64_t explored = 0; // state updates performed
};

inline constexpr std::size_t kOracleVehicleGuard = 12;

/// Exhaustive depth-first enumeration of every feasible service order, using
/// the same transition function and eligibility rules as the search. Exact.
OracleResult brute_force_optimal(const Instance& inst, std::uint64_t max_states = 2000000,
                                 const SearchConfig& cfg = {});

/// Same enumeration started from an arbitrary search state (used to verify
/// heuristic admissibility). No vehicle-count guard; the cap still applies.
OracleResult brute_force_from(const SearchState& start, const Instance& inst,
                              const ServiceParams& params, std::uint64_t max_states = 2000000);

} // namespace lanesched

#endif
