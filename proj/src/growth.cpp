#include "enumlab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace enumlab::growth {

namespace {

constexpr big_steps kMaxSteps = ~static_cast<big_steps>(0);

big_steps checked_mul(big_steps a, big_steps b) {
  if (a != 0 && b > kMaxSteps / a)
    throw ConstraintError("synthetic series value exceeds the 128-bit budget");
  return a * b;
}

big_steps ipow(unsigned base, unsigned exp) {
  big_steps v = 1;
  for (unsigned i = 0; i < exp; ++i) v = checked_mul(v, base);
  return v;
}

bool is_integral(double x) { return x == std::floor(x); }

/// round(m * v) for exact v, exact when 2m is integral.
big_steps scaled_round(big_steps v, double m_factor) {
  if (is_integral(m_factor))
    return checked_mul(v, static_cast<big_steps>(static_cast<std::uint64_t>(m_factor)));
  if (is_integral(2 * m_factor)) {
    big_steps doubled =
        checked_mul(v, static_cast<big_steps>(static_cast<std::uint64_t>(2 * m_factor)));
    return (doubled + 1) / 2;  // round halves away from zero
  }
  long double scaled = static_cast<long double>(v) * static_cast<long double>(m_factor);
  if (scaled >= std::pow(2.0L, 127))
    throw ConstraintError("synthetic series value exceeds the 128-bit budget");
  return static_cast<big_steps>(scaled + 0.5L);
}

}  // namespace

void ObservationSeries::set(unsigned n, big_steps steps) {
  if (n < 2) throw std::invalid_argument("observation sizes start at n=2");
  if (steps < 1) throw std::invalid_argument("observed steps must be >= 1");
  points[n] = steps;
}

unsigned ObservationSeries::max_n() const {
  return points.empty() ? 0 : points.rbegin()->first;
}

double g_value(big_steps steps, unsigned n) {
  if (n < 2) throw std::invalid_argument("g is defined for n >= 2");
  if (steps < 1) throw std::invalid_argument("g is defined for steps >= 1");
  return static_cast<double>(std::log(static_cast<long double>(steps)) /
                             std::log(static_cast<long double>(n)));
}

namespace {

unsigned ceiling_with_snap(double x) {
  double nearest = std::round(x);
  if (std::abs(x - nearest) <= kCeilingEpsilon) x = nearest;
  double c = std::ceil(x);
  return c < 0 ? 0u : static_cast<unsigned>(c);
}

}  // namespace

unsigned u_ceiling(const ObservationSeries& series, unsigned n_e) {
  if (n_e < 2) throw std::invalid_argument("u needs an ending point n_e >= 2");
  double max_g = 0.0;
  for (unsigned n = 2; n <= n_e; ++n) {
    auto it = series.points.find(n);
    if (it == series.points.end())
      throw std::invalid_argument("series has no observation at n=" +
                                  std::to_string(n));
    max_g = std::max(max_g, g_value(it->second, n));
  }
  return ceiling_with_snap(max_g);
}

unsigned u_from_worst_steps(const std::map<unsigned, std::uint64_t>& worst,
                            unsigned n) {
  if (n < 2) return 0;
  ObservationSeries series;
  for (const auto& [size, steps] : worst)
    if (size >= 2 && size <= n) series.set(size, steps);
  return u_ceiling(series, n);
}

GrowthMetric metric(const ObservationSeries& series, unsigned n_e) {
  GrowthMetric m;
  m.n_e = n_e;
  m.u = u_ceiling(series, n_e);
  for (unsigned n = 2; n <= n_e; ++n)
    m.g_points[n] = g_value(series.points.at(n), n);
  return m;
}

std::string_view classification_name(Classification c) {
  return c == Classification::PossiblePolynomial ? "PossiblePolynomial"
                                                 : "NotPolynomial";
}

Classification classify(const ObservationSeries& series,
                        std::span<const unsigned> checkpoints) {
  if (checkpoints.size() < 2)
    throw std::invalid_argument("classification needs at least 2 checkpoints");
  for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i)
    if (checkpoints[i] >= checkpoints[i + 1])
      throw std::invalid_argument("checkpoints must be strictly ascending");
  if (checkpoints.back() > series.max_n())
    throw std::invalid_argument("checkpoint " + std::to_string(checkpoints.back()) +
                                " is outside the series domain");
  unsigned prev = u_ceiling(series, checkpoints[0]);
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    unsigned cur = u_ceiling(series, checkpoints[i]);
    if (cur > prev) return Classification::NotPolynomial;
    prev = cur;
  }
  return Classification::PossiblePolynomial;
}

big_steps synth_point(SynthKind kind, double k, double m_factor, unsigned n) {
  if (n < 2) throw std::invalid_argument("synthetic series start at n=2");
  if (kind != SynthKind::Oscillating) {
    if (k <= 0) throw std::invalid_argument("synthetic k must be > 0");
    if (m_factor <= 0) throw std::invalid_argument("synthetic M must be > 0");
  }
  big_steps v = 0;
  switch (kind) {
    case SynthKind::Polynomial: {
      if (is_integral(k)) {
        v = scaled_round(ipow(n, static_cast<unsigned>(k)), m_factor);
      } else {
        long double x = m_factor * std::pow(static_cast<long double>(n),
                                            static_cast<long double>(k));
        if (x >= std::pow(2.0L, 127))
          throw ConstraintError("synthetic series value exceeds the 128-bit budget");
        v = static_cast<big_steps>(x + 0.5L);
      }
      break;
    }
    case SynthKind::Exponential: {
      if (!is_integral(k))
        throw std::invalid_argument("exponential synthetic series need integral k");
      big_steps e = ipow(n, static_cast<unsigned>(k));
      if (e > 126) throw ConstraintError("synthetic exponent exceeds the 128-bit budget");
      v = scaled_round(static_cast<big_steps>(1) << static_cast<unsigned>(e), m_factor);
      break;
    }
    case SynthKind::Oscillating:
      // cos(n*pi) is exactly +1 / -1 at integers: exponent 3 even, 1 odd.
      v = ipow(n, n % 2 == 0 ? 3 : 1);
      break;
  }
  return v < 1 ? static_cast<big_steps>(1) : v;
}

ObservationSeries synth_series(SynthKind kind, double k, double m_factor,
                               unsigned n_end) {
  if (n_end < 2) throw std::invalid_argument("series range must reach n >= 2");
  ObservationSeries s;
  for (unsigned n = 2; n <= n_end; ++n)
    s.set(n, synth_point(kind, k, m_factor, n));
  return s;
}

std::string format_series(const ObservationSeries& series) {
  std::ostringstream out;
  out << "# n steps\n";
  for (const auto& [n, steps] : series.points)
    out << n << ' ' << u128_to_string(steps) << '\n';
  return out.str();
}

ObservationSeries parse_series(std::string_view text) {
  ObservationSeries s;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    unsigned n = 0;
    std::string steps;
    if (!(ls >> n >> steps))
      throw std::invalid_argument("malformed series line: " + line);
    s.set(n, u128_from_string(steps));
  }
  return s;
}

}  // namespace enumlab::growth
