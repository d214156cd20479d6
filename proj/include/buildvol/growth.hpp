#pragma once

#include "buildvol/affine_weyl.hpp"
#include "buildvol/bigint.hpp"
#include "buildvol/extension.hpp"
#include "buildvol/polynomial.hpp"
#include "buildvol/rootsystems.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace buildvol {

/// Affine Poincare series W(q) prod_i 1/(1 - q^{m_i}), truncated at lmax.
IntSeries affine_poincare_coeffs(const RootSystem& rs, unsigned lmax);

/// S(q, R) = sum over affine Weyl elements of length <= R of q^{l(w)}.
BigInt s_of_q_r(const RootSystem& rs, const BigInt& q, unsigned radius);

/// S(q, 0), S(q, 1), ..., S(q, rmax).
std::vector<BigInt> s_of_q_r_sequence(const RootSystem& rs, const BigInt& q, unsigned rmax);

/// Metric-ball analogue of S: the sum of q^{l(w)} over affine Weyl elements w
/// with d(w.0, 0) <= radius. Each Iwahori cell IwI counts q^{l(w)} chambers.
BigInt metric_ball_volume(const RootSystem& rs, const BigInt& q, double radius, MetricNormalization norm,
                          std::size_t budget = kDefaultAffineBudget);

struct VolumeSample {
  double radius = 0.0;
  double log_volume = 0.0;
};

std::vector<VolumeSample> log_samples(std::span<const std::pair<double, BigInt>> volumes);

enum class EntropyMethod { Regression, ClosedForm };

struct EntropyReport {
  std::vector<VolumeSample> samples;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double window_begin = 0.0;  // first radius in the fitted window
  double window_end = 0.0;    // last radius in the fitted window
  std::size_t window_size = 0;
  EntropyMethod method = EntropyMethod::Regression;
};

inline constexpr std::size_t kMinEntropySamples = 5;

/// Least-squares slope of log(volume) against radius over the trailing
/// `window_fraction` of the samples (never fewer than five). Throws
/// InsufficientSamples for fewer than five samples or radii that are not
/// strictly increasing.
EntropyReport entropy_estimate(std::span<const VolumeSample> samples, double window_fraction = 0.5);

/// Same, starting from exact volumes. Throws NonpositiveVolume for a volume
/// <= 0.
EntropyReport entropy_estimate(std::span<const std::pair<double, BigInt>> volumes, double window_fraction = 0.5);

/// What the extension entropy checks run on: the SL2 tree or the building of a split
/// group of the given type.
struct VerifyTarget {
  std::optional<CartanType> type;  // empty for the tree

  bool is_tree() const noexcept { return !type.has_value(); }
  std::string to_string() const;
};

/// "tree" or "weyl:<type>".
VerifyTarget parse_target(std::string_view text);

/// Ball volumes of the building with residue field size q at radii
/// 1..rmax: the tree sphere counts alpha_R(q), or S(q, R) in higher rank.
std::vector<BigInt> building_volumes(const VerifyTarget& target, const BigInt& q, unsigned rmax);

struct Theorem1Report {
  VerifyTarget target;
  ExtensionParams params;
  unsigned rmax = 0;
  std::vector<std::pair<double, BigInt>> samples_F;  // (d_F radius, volume)
  std::vector<std::pair<double, BigInt>> samples_E;  // (d_E radius, volume)
  EntropyReport h_FF;
  EntropyReport h_FE;
  EntropyReport h_EE;
  double defect1 = 0.0;  // |n h_FE - f h_FF|
  double defect2 = 0.0;  // |f h_FF - h_EE|
  double tolerance = 0.02;
  /// log q, log(q)/e, f log q; filled in for the tree only.
  std::optional<std::array<double, 3>> closed_form;

  bool passed() const noexcept {
    return defect1 <= tolerance * h_FF.slope && defect2 <= tolerance * h_FF.slope;
  }
};

inline constexpr unsigned kMinVerifySamples = 10;

/// Estimates h(B_F, d_F), h(B_F, d_E) and h(B_E, d_E) from exact volumes and
/// compares n h_FE, f h_FF and h_EE. The F-building volumes V(R) are reused
/// for d_E by placing them at radius e R, since d_E = e d_F on B_F.
Theorem1Report verify_theorem1(const VerifyTarget& target, const ExtensionParams& params, unsigned rmax,
                               double tolerance = 0.02);

}  // namespace buildvol
