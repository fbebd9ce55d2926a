#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "enumlab/util.hpp"

namespace enumlab::growth {

/// Observed step counts can exceed 64 bits for synthetic exponential series;
/// 128 bits is the arithmetic budget, overflow beyond it is rejected.
using big_steps = u128;

/// Worst observed running steps per input size. Sizes start at 2 (the
/// growth-rate base needs log base n > 1) and counts are >= 1 (every
/// halting run executes at least one instruction). Violations throw on
/// insert.
struct ObservationSeries {
  std::map<unsigned, big_steps> points;

  void set(unsigned n, big_steps steps);
  unsigned max_n() const;
};

/// Comparisons against integer ceilings snap values within this distance to
/// the integer first, so u is stable under floating-point noise.
inline constexpr double kCeilingEpsilon = 1e-9;

/// Growth-rate characteristic of an observation: log base n of the step
/// count. Zero when steps == 1. Rejects n < 2 and steps < 1.
double g_value(big_steps steps, unsigned n);

/// ceil(max g over n in [2, n_e]), with the epsilon snap. Requires a point
/// at every n in [2, n_e]; a gap is rejected naming the missing n.
unsigned u_ceiling(const ObservationSeries& series, unsigned n_e);

/// u over the window [2, n] of a per-size worst-step map (64-bit counts, as
/// produced by search runs). n < 2 means no observable growth points yet
/// and yields 0.
unsigned u_from_worst_steps(const std::map<unsigned, std::uint64_t>& worst,
                            unsigned n);

struct GrowthMetric {
  unsigned n_e = 0;
  unsigned u = 0;
  std::map<unsigned, double> g_points;  // n -> g over [2, n_e]
};

GrowthMetric metric(const ObservationSeries& series, unsigned n_e);

enum class Classification { PossiblePolynomial, NotPolynomial };

std::string_view classification_name(Classification c);

/// The efficiency evaluation rule: possibly polynomial iff u never rises
/// across adjacent checkpoints. Needs >= 2 ascending checkpoints, each
/// covered by the series.
Classification classify(const ObservationSeries& series,
                        std::span<const unsigned> checkpoints);

enum class SynthKind { Polynomial, Exponential, Oscillating };

/// Synthetic observation generators for validating the limit behavior:
///   polynomial   round(M * n^k)
///   exponential  round(M * 2^(n^k))
///   oscillating  round(n^(2 + cos(n*pi)))  — exactly n^1 / n^3 alternating
/// Values are exact integers for integral k and M in halves; results are
/// clamped to >= 1. Overflow past 128 bits throws ConstraintError.
big_steps synth_point(SynthKind kind, double k, double m_factor, unsigned n);

/// Points at every n in [2, n_end].
ObservationSeries synth_series(SynthKind kind, double k, double m_factor,
                               unsigned n_end);

/// Two-column text: n and steps per line, '#' comments allowed.
std::string format_series(const ObservationSeries& series);
ObservationSeries parse_series(std::string_view text);

}  // namespace enumlab::growth
