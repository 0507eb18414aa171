#pragma once

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace tc {

inline constexpr const char* kVersion = "0.1.0";

using Point = std::uint32_t;
using Integer = mpz_class;
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-visible precondition failed (bad degrees, non-invariant partition, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Budget {
  std::uint64_t max_degree = 100000;       // coset actions
  std::uint64_t max_elements = 10000000;   // element enumeration
  std::uint64_t max_nodes = 50000000;      // backtrack nodes per search
  std::uint64_t max_small_group = 2000;    // Cayley-table / subgroup lattice
  double max_seconds = 0;                  // 0 = unlimited

  bool has_deadline() const { return max_seconds > 0; }
};

// Wall-clock deadline shared by a long computation.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(double seconds);
  bool expired() const;

 private:
  bool active_ = false;
  std::chrono::steady_clock::time_point end_{};
};

// Per-thread generator. Seeding is explicit so results are reproducible.
std::mt19937_64& rng();
void seed_rng(std::uint64_t seed);
std::uint64_t default_seed();
void set_default_seed(std::uint64_t seed);

// RAII reseed; restores the previous engine state on exit.
class ScopedSeed {
 public:
  explicit ScopedSeed(std::uint64_t seed);
  ~ScopedSeed();
  ScopedSeed(const ScopedSeed&) = delete;
  ScopedSeed& operator=(const ScopedSeed&) = delete;

 private:
  std::mt19937_64 saved_;
};

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

}  // namespace tc
