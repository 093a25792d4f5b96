#ifndef LANESCHED_COMMON_HPP
#define LANESCHED_COMMON_HPP

#include <stdexcept>
#include <string>

namespace lanesched {

// Absolute tolerance for time comparisons. Planning mixes 1 s cadence with
// sub-second vehicle timing, so everything is real-valued seconds.
inline constexpr double kTimeTol = 1e-9;

inline bool time_less(double a, double b) { return a < b - kTimeTol; }
inline bool time_greater(double a, double b) { return a > b + kTimeTol; }
inline bool time_eq(double a, double b) { return !time_less(a, b) && !time_greater(a, b); }

// Input or instance data violates a documented invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke an API precondition (e.g. expanding a cluster out of FIFO order).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Internal consistency failure; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace lanesched

#endif
