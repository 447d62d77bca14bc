#pragma once

// Reproducible random variate generation. A RandomStream is a PCG64
// generator: identical (seed, stream_id) replays the same sequence
// bit-for-bit, and distinct stream_ids select distinct full-period
// sequences, so concurrent chains never share draws.
//
// Polya-Gamma draws:
//   sample_pg1  - exact PG(1, c) by the alternating-series rejection
//                 method of Devroye / Polson-Scott-Windle.
//   sample_pg   - PG(b, c) for any b > 0: integer part as a sum of
//                 exact PG(1, c) draws, fractional part by a truncated
//                 sum-of-gammas with a mean-matching tail correction.

#include <cstdint>

namespace carrisk {

class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53-bit resolution.
  double uniform();
  // Uniform on (0,1); never returns 0.
  double uniform_pos();
  double normal();                     // standard normal, Marsaglia polar
  double exponential();                // rate 1
  double gamma(double shape);          // rate 1, Marsaglia-Tsang
  double gamma(double shape, double rate);
  double inverse_gamma(double shape, double scale);
  double beta(double a, double b);
  bool bernoulli(double p);

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  unsigned __int128 state_;
  unsigned __int128 inc_;
};

struct PgParams {
  double b;  // shape, > 0
  double c;  // tilt
};

// Exact draw from PG(1, c).
double sample_pg1(double c, RandomStream& rng);

// Draw from PG(b, c), b > 0. Exact for integer b; the fractional part
// uses a 200-term series approximation (documented in the source).
double sample_pg(const PgParams& params, RandomStream& rng);

// E[PG(b, c)] = b/(2c) * tanh(c/2), with the c -> 0 limit b/4.
double pg_mean(const PgParams& params);

}  // namespace carrisk
