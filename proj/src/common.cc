#include "tc/common.hpp"

#include <atomic>

namespace tc {

namespace {
std::atomic<std::uint64_t> g_default_seed{0x5eed2c10u};
}

Deadline::Deadline(double seconds) {
  if (seconds > 0) {
    active_ = true;
    end_ = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(seconds));
  }
}

bool Deadline::expired() const {
  return active_ && std::chrono::steady_clock::now() >= end_;
}

std::mt19937_64& rng() {
  thread_local std::mt19937_64 engine(g_default_seed.load());
  return engine;
}

void seed_rng(std::uint64_t seed) { rng().seed(seed); }

std::uint64_t default_seed() { return g_default_seed.load(); }

void set_default_seed(std::uint64_t seed) {
  g_default_seed.store(seed);
  seed_rng(seed);
}

ScopedSeed::ScopedSeed(std::uint64_t seed) : saved_(rng()) { seed_rng(seed); }

ScopedSeed::~ScopedSeed() { rng() = saved_; }

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace tc
