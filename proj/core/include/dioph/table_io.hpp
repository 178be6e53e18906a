#pragma once

#include <filesystem>
#include <iosfwd>

#include "dioph/primes.hpp"

namespace dioph {

// Binary prime-table layout, all integers little-endian:
//   "DPT1" | u64 limit | u64 count | count LEB128 varints (prime gaps, the
//   first gap measured from 0) | count x f64 theta prefix.
void write_table(std::ostream& out, const PrimeTable& table);
PrimeTable read_table(std::istream& in);

void save_table(const std::filesystem::path& path, const PrimeTable& table);
PrimeTable load_table(const std::filesystem::path& path);

}  // namespace dioph
