#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace affode {

using Int = mpz_class;
using Rat = mpq_class;

enum class Errc {
  parse_error,
  division_by_zero,
  pole,
  unbound_symbol,
  chart_mismatch,
  not_invertible,
  precondition_violated,
  linear_solve_inconsistent,
  invariant_vanishes,
  degree_cap_exceeded,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg, std::size_t offset = npos)
      : std::runtime_error(std::move(msg)), code_(code), offset_(offset) {}

  Errc code() const { return code_; }

  // Byte offset into the source text for parse errors; npos otherwise.
  std::size_t offset() const { return offset_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Errc code_;
  std::size_t offset_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg,
                              std::size_t offset = Error::npos) {
  throw Error(code, msg, offset);
}

// Expression-swell guard. A cap of 0 disables the check. The CLI sets this
// from AFFODE_MAX_DEGREE; library callers normally leave it off.
inline int& degree_cap() {
  thread_local int cap = 0;
  return cap;
}

class DegreeCapGuard {
 public:
  explicit DegreeCapGuard(int cap) : saved_(degree_cap()) { degree_cap() = cap; }
  ~DegreeCapGuard() { degree_cap() = saved_; }
  DegreeCapGuard(const DegreeCapGuard&) = delete;
  DegreeCapGuard& operator=(const DegreeCapGuard&) = delete;

 private:
  int saved_;
};

}  // namespace affode
