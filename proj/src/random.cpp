#include "carrisk/random.hpp"

#include "carrisk/error.hpp"

#include <cmath>

namespace carrisk {

namespace {

constexpr unsigned __int128 pcg_mult() {
  return (static_cast<unsigned __int128>(0x2360ed051fc65da4ULL) << 64) | 0x4385df649fccf645ULL;
}

inline std::uint64_t rotr64(std::uint64_t v, unsigned rot) {
  return (v >> rot) | (v << ((64u - rot) & 63u));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // pcg64 (XSL-RR 128/64) seeding; the stream selects the increment.
  inc_ = ((static_cast<unsigned __int128>(stream_id) << 1) | 1u);
  state_ = 0;
  next_u64();
  state_ += (static_cast<unsigned __int128>(seed) << 64) | seed;
  next_u64();
}

std::uint64_t RandomStream::next_u64() {
  state_ = state_ * pcg_mult() + inc_;
  std::uint64_t hi = static_cast<std::uint64_t>(state_ >> 64);
  std::uint64_t lo = static_cast<std::uint64_t>(state_);
  unsigned rot = static_cast<unsigned>(state_ >> 122);
  return rotr64(hi ^ lo, rot);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_pos() {
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return u;
}

double RandomStream::normal() {
  // Marsaglia polar method; the spare is discarded so a draw is a pure
  // function of the stream position.
  for (;;) {
    double u = 2.0 * uniform() - 1.0;
    double v = 2.0 * uniform() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double RandomStream::exponential() { return -std::log(uniform_pos()); }

double RandomStream::gamma(double shape) {
  require(shape > 0.0, "gamma: shape must be > 0");
  if (shape < 1.0) {
    // boost to shape+1 and scale back
    double u = uniform_pos();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform_pos();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::gamma(double shape, double rate) {
  require(rate > 0.0, "gamma: rate must be > 0");
  return gamma(shape) / rate;
}

double RandomStream::inverse_gamma(double shape, double scale) {
  require(scale > 0.0, "inverse_gamma: scale must be > 0");
  return scale / gamma(shape);
}

double RandomStream::beta(double a, double b) {
  double x = gamma(a);
  double y = gamma(b);
  return x / (x + y);
}

bool RandomStream::bernoulli(double p) { return uniform() < p; }

// ---------------------------------------------------------------------------
// Polya-Gamma
// ---------------------------------------------------------------------------

namespace {

// PG(1, c) = J*(1, c/2) / 4 where J*(1, z) has the two-sided series
// density. Constants below follow Devroye's construction: the proposal
// splits at t into a truncated inverse-Gaussian piece (left) and an
// exponential piece (right).
constexpr double kTrunc = 0.64;
constexpr double kTruncRecip = 1.0 / kTrunc;
constexpr double kPi = 3.14159265358979323846;

double log_norm_cdf(double x) {
  if (x > -37.0) return std::log(0.5 * std::erfc(-x / std::sqrt(2.0)));
  // asymptotic expansion well below erfc underflow
  double x2 = x * x;
  return -0.5 * x2 - 0.5 * std::log(2.0 * kPi) - std::log(-x) +
         std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

// Piecewise coefficients a_n(x) of the alternating series for J*(1, .).
double series_coef(int n, double x) {
  double k = (n + 0.5) * kPi;
  if (x > kTrunc) return k * std::exp(-0.5 * k * k * x);
  if (x > 0.0) {
    double expnt = -1.5 * (std::log(0.5 * kPi) + std::log(x)) + std::log(k) -
                   2.0 * (n + 0.5) * (n + 0.5) / x;
    return std::exp(expnt);
  }
  return 0.0;
}

// P(proposal falls in the exponential piece) = p / (p + q), computed on
// the log scale; q/p involves the inverse-Gaussian cdf at t.
double mass_right(double z) {
  double fz = 0.125 * kPi * kPi + 0.5 * z * z;
  double b = std::sqrt(kTruncRecip) * (kTrunc * z - 1.0);
  double a = -std::sqrt(kTruncRecip) * (kTrunc * z + 1.0);
  double x0 = std::log(fz) + fz * kTrunc;
  double xb = x0 - z + log_norm_cdf(b);
  double xa = x0 + z + log_norm_cdf(a);
  double q_over_p = 4.0 / kPi * (std::exp(xb) + std::exp(xa));
  return 1.0 / (1.0 + q_over_p);
}

// Inverse-Gaussian(mu = 1/z, lambda = 1) truncated to (0, t].
double sample_trunc_inv_gauss(double z, RandomStream& rng) {
  double x = kTrunc + 1.0;
  if (kTruncRecip > z) {
    // mu > t: rejection with a scaled inverse-chi-squared proposal
    for (;;) {
      double e1 = rng.exponential();
      double e2 = rng.exponential();
      while (e1 * e1 > 2.0 * e2 / kTrunc) {
        e1 = rng.exponential();
        e2 = rng.exponential();
      }
      x = kTrunc / ((1.0 + kTrunc * e1) * (1.0 + kTrunc * e1));
      if (rng.uniform() <= std::exp(-0.5 * z * z * x)) return x;
    }
  }
  // mu <= t: draw IG(mu, 1) until it lands in (0, t]
  double mu = 1.0 / z;
  while (x > kTrunc) {
    double y = rng.normal();
    y *= y;
    double half_mu = 0.5 * mu;
    double mu_y = mu * y;
    x = mu + half_mu * mu_y - half_mu * std::sqrt(4.0 * mu_y + mu_y * mu_y);
    if (rng.uniform() > mu / (mu + x)) x = mu * mu / x;
  }
  return x;
}

// Alternating-series rejection sampler for J*(1, z), z >= 0.
double sample_jacobi_star(double z, RandomStream& rng) {
  double fz = 0.125 * kPi * kPi + 0.5 * z * z;
  double right_mass = mass_right(z);
  for (;;) {
    double x;
    if (rng.uniform() < right_mass)
      x = kTrunc + rng.exponential() / fz;
    else
      x = sample_trunc_inv_gauss(z, rng);

    double s = series_coef(0, x);
    double y = rng.uniform() * s;
    int n = 0;
    for (;;) {
      ++n;
      if (n % 2 == 1) {
        s -= series_coef(n, x);
        if (y <= s) return x;
      } else {
        s += series_coef(n, x);
        if (y > s) break;  // reject, new proposal
      }
    }
  }
}

// Truncated sum-of-gammas draw from PG(b, c) with a deterministic
// mean-matching tail correction. Used only for fractional shapes
// (likelihood weights w < 1); the truncation error after 200 terms is
// O(1/K) in distribution but exact in expectation.
constexpr int kSeriesTerms = 200;

double sample_pg_series(double b, double c, RandomStream& rng) {
  const double tilt = c * c / (4.0 * kPi * kPi);
  double sum = 0.0;
  double partial_mean = 0.0;
  for (int k = 1; k <= kSeriesTerms; ++k) {
    double d = (k - 0.5) * (k - 0.5) + tilt;
    sum += rng.gamma(b) / d;
    partial_mean += b / d;
  }
  const double scale = 1.0 / (2.0 * kPi * kPi);
  double tail = pg_mean({b, c}) - scale * partial_mean;
  return scale * sum + tail;
}

}  // namespace

double sample_pg1(double c, RandomStream& rng) {
  require(std::isfinite(c), "sample_pg1: c must be finite");
  return 0.25 * sample_jacobi_star(0.5 * std::fabs(c), rng);
}

double sample_pg(const PgParams& params, RandomStream& rng) {
  require(params.b > 0.0, "sample_pg: b must be > 0");
  double bi = std::floor(params.b);
  double frac = params.b - bi;
  double x = 0.0;
  for (long k = 0; k < static_cast<long>(bi); ++k) x += sample_pg1(params.c, rng);
  if (frac > 0.0) x += sample_pg_series(frac, params.c, rng);
  return x;
}

double pg_mean(const PgParams& params) {
  require(params.b > 0.0, "pg_mean: b must be > 0");
  double c = params.c;
  if (std::fabs(c) < 1e-4) {
    // tanh(c/2)/(2c) = 1/4 - c^2/48 + O(c^4)
    return params.b * (0.25 - c * c / 48.0);
  }
  return params.b / (2.0 * c) * std::tanh(0.5 * c);
}

}  // namespace carrisk
