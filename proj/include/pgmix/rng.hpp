#ifndef PGMIX_RNG_HPP
#define PGMIX_RNG_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pgmix {

// Deterministic random stream: xoshiro256++ state seeded through splitmix64
// from (seed, stream). Distribution algorithms are implemented here rather
// than taken from <random> because draw sequences are part of the
// reproducibility contract and the standard library does not pin its
// distribution algorithms across implementations.
//
// Stream derivation: a stream is addressed by a 64-bit id; independent
// consumers (parallel chains, test harnesses) must use distinct ids under
// the same seed. Chain streams use the sampler-kind ordinal; see samplers.hpp.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); never returns an endpoint.
  double uniform();
  // Standard normal via Box-Muller (trigonometric form, no cached spare, so
  // every call consumes exactly two uniforms).
  double normal();
  // Exponential with unit rate.
  double exponential();
  // Gamma(shape, rate) via Marsaglia-Tsang (2000), with the u^{1/shape}
  // boost for shape < 1.
  double gamma(double shape, double rate);

  // Scope tagging: each conditional-draw site tags the stream with its name
  // while it consumes randomness; with tracing enabled, scope transitions
  // are recorded in consumption order.
  void set_scope(const char* name) { scope_ = name; }
  const char* scope() const { return scope_; }
  void enable_trace() { tracing_ = true; }
  void disable_trace() { tracing_ = false; }
  void clear_trace() { trace_.clear(); }
  const std::vector<std::string>& trace() const { return trace_; }

private:
  std::array<std::uint64_t, 4> s_;
  const char* scope_ = "";
  bool tracing_ = false;
  std::vector<std::string> trace_;
};

// RAII scope tag; restores the previous tag on exit.
class RngScope {
public:
  RngScope(RngStream& rng, const char* name) : rng_(rng), prev_(rng.scope()) {
    rng_.set_scope(name);
  }
  ~RngScope() { rng_.set_scope(prev_); }
  RngScope(const RngScope&) = delete;
  RngScope& operator=(const RngScope&) = delete;

private:
  RngStream& rng_;
  const char* prev_;
};

}  // namespace pgmix

#endif
