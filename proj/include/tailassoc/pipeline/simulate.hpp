#pragma once

#include "tailassoc/copula.hpp"

#include <cstdint>
#include <string>

namespace tailassoc {

/// CSV text with header "index,x,y" and n sampled pairs, values printed
/// with 17 significant digits so load_csv recovers them exactly.
std::string simulate_csv(const CopulaModel& model, std::size_t n, std::uint64_t seed);

/// Writes simulate_csv to `path` ("-" for stdout). Throws IoError,
/// DomainError for bad parameters, InvalidN.
void simulate_command(const CopulaModel& model, std::size_t n, std::uint64_t seed, const std::string& path);

} // namespace tailassoc
