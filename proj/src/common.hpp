#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcv {

// Library-wide failure classes. Kept coarse on purpose: callers that need the
// fine-grained reason get it from the message; the C layer maps `code` to its
// status enum.
enum class ErrorCode {
  InvalidArgument,   // bad input shape, precondition violation
  NotInvertible,     // matrix or residue not invertible mod n
  CapExceeded,       // enumeration or degree cap would be exceeded
  NotASubgroup,      // containment check failed
  NotADivisor,       // divisibility precondition failed
  NotPrime,          // primality precondition failed
  BadShape,          // structured input of the wrong form
  ParseError,        // text input could not be parsed
  NotFound,          // lookup (label, table entry) failed
  FlagRequired,      // rule needs a sub-case flag the caller did not supply
  OutOfRange,        // argument outside the supported range
  Unsupported,       // valid input the implementation declines (documented)
  Internal,          // invariant violation; indicates a bug
};

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t out = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out -= out / p;
    while (n % p == 0) n /= p;
  }
  if (n > 1) out -= out / n;
  return out;
}

// Trial division; fine for the word-sized inputs this library sees.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace qcv
