#ifndef LANESCHED_INSTANCE_IO_HPP
#define LANESCHED_INSTANCE_IO_HPP

#include <string>

#include "lanesched/domain.hpp"

namespace lanesched {

inline constexpr int kInstanceFormatVersion = 1;

/// Parses and validates an instance file (JSON, format_version 1). Clustering
/// is applied from the embedded separation_gap / cluster_cap so instances are
/// reproducible bit-exactly.
Instance parse_instance(const std::string& path);
Instance parse_instance_text(const std::string& text, const std::string& origin = "<string>");

/// Canonical serialization: parse_instance(write_instance(i)) round-trips and
/// writing twice yields identical bytes.
std::string write_instance_text(const Instance& inst);
void write_instance(const Instance& inst, const std::string& path);

} // namespace lanesched

#endif
