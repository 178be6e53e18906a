#include "dioph/table_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "dioph/error.hpp"

namespace dioph {

namespace {

constexpr std::array<char, 4> kMagic = {'D', 'P', 'T', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> buf;
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf.data(), buf.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> buf;
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) {
    throw FormatError("prime table: truncated header");
  }
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void put_varint(std::ostream& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.put(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.put(static_cast<char>(v));
}

std::uint64_t get_varint(std::istream& in) {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw FormatError("prime table: truncated gap stream");
    v |= static_cast<std::uint64_t>(c & 0x7f) << shift;
    if ((c & 0x80) == 0) return v;
  }
  throw FormatError("prime table: overlong varint");
}

}  // namespace

void write_table(std::ostream& out, const PrimeTable& table) {
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, table.limit());
  put_u64(out, table.size());
  std::uint64_t prev = 0;
  for (std::uint64_t p : table.primes()) {
    put_varint(out, p - prev);
    prev = p;
  }
  for (double t : table.theta_prefix()) put_u64(out, std::bit_cast<std::uint64_t>(t));
  if (!out) throw Error("prime table: write failed");
}

PrimeTable read_table(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw FormatError("prime table: bad magic (expected DPT1)");
  }
  const std::uint64_t limit = get_u64(in);
  const std::uint64_t count = get_u64(in);
  if (count == 0 || count > limit) throw FormatError("prime table: implausible prime count");
  std::vector<std::uint64_t> primes;
  primes.reserve(count);
  std::uint64_t p = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t gap = get_varint(in);
    if (gap == 0 || p + gap < p) throw FormatError("prime table: invalid gap");
    p += gap;
    primes.push_back(p);
  }
  std::vector<double> theta(count);
  for (std::uint64_t i = 0; i < count; ++i) theta[i] = std::bit_cast<double>(get_u64(in));
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("prime table: trailing bytes after theta prefix");
  }
  return PrimeTable::from_parts(limit, std::move(primes), std::move(theta));
}

void save_table(const std::filesystem::path& path, const PrimeTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_table(out, table);
}

PrimeTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open prime table " + path.string());
  return read_table(in);
}

}  // namespace dioph
