#pragma once

// Little-endian primitives for the model/dataset file formats. Reads are
// strict: a short file or a value that fails its range check throws.

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rescomp::binio {

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

inline void write_bytes(std::ostream& os, const void* p, std::size_t n) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  if (!os) throw std::runtime_error("write failed");
}

inline void read_bytes(std::istream& is, void* p, std::size_t n) {
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is.gcount()) != n)
    throw std::runtime_error("unexpected end of file");
}

template <class T>
void write_pod(std::ostream& os, T v) {
  write_bytes(os, &v, sizeof v);
}

template <class T>
T read_pod(std::istream& is) {
  T v;
  read_bytes(is, &v, sizeof v);
  return v;
}

inline void write_magic(std::ostream& os, const char (&tag)[5]) {
  write_bytes(os, tag, 4);
}

inline void expect_magic(std::istream& is, const char (&tag)[5],
                         const std::string& what) {
  char got[4];
  read_bytes(is, got, 4);
  if (std::memcmp(got, tag, 4) != 0)
    throw std::runtime_error(what + ": bad magic bytes");
}

inline void expect_eof(std::istream& is, const std::string& what) {
  if (is.peek() != std::char_traits<char>::eof())
    throw std::runtime_error(what + ": trailing bytes after payload");
}

}  // namespace rescomp::binio
