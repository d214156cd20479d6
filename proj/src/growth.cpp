#include "buildvol/growth.hpp"

#include "buildvol/errors.hpp"
#include "buildvol/tree.hpp"

#include <algorithm>
#include <cmath>

namespace buildvol {

IntSeries affine_poincare_coeffs(const RootSystem& rs, unsigned lmax) {
  IntSeries s = IntSeries::from_polynomial(weyl_poincare_polynomial(rs), lmax);
  for (unsigned m : rs.exponents()) s.divide_by_one_minus(m);
  return s;
}

std::vector<BigInt> s_of_q_r_sequence(const RootSystem& rs, const BigInt& q, unsigned rmax) {
  const IntSeries a = affine_poincare_coeffs(rs, rmax);
  std::vector<BigInt> out;
  out.reserve(rmax + 1);
  BigInt power = 1;
  BigInt acc = 0;
  for (unsigned l = 0; l <= rmax; ++l) {
    acc += a[l] * power;
    out.push_back(acc);
    power *= q;
  }
  return out;
}

BigInt s_of_q_r(const RootSystem& rs, const BigInt& q, unsigned radius) {
  return s_of_q_r_sequence(rs, q, radius).back();
}

BigInt metric_ball_volume(const RootSystem& rs, const BigInt& q, double radius, MetricNormalization norm,
                          std::size_t budget) {
  if (!(radius >= 0.0)) throw Error(ErrorKind::DomainError, "negative radius");
  const ApartmentMetric metric(rs, norm);
  const int depth = length_bound_for_radius(rs, radius, norm);
  AffineEnumerator en(rs, budget);
  en.extend_to(depth);
  // Exact comparison: a double is a dyadic rational.
  const Rational r(radius);
  const Rational r2 = r * r;
  std::vector<BigInt> powers{1};
  for (int l = 1; l <= depth; ++l) powers.push_back(powers.back() * q);
  BigInt volume = 0;
  for (std::size_t i = 0; i < en.size(); ++i)
    if (metric.squared_norm(en.origin_image(i)) <= r2) volume += powers[static_cast<std::size_t>(en.length(i))];
  return volume;
}

std::vector<VolumeSample> log_samples(std::span<const std::pair<double, BigInt>> volumes) {
  std::vector<VolumeSample> out;
  out.reserve(volumes.size());
  for (const auto& [radius, volume] : volumes) {
    if (volume <= 0) throw Error(ErrorKind::NonpositiveVolume, "volume " + volume.str() + " at radius " + std::to_string(radius));
    out.push_back({radius, log_big(volume)});
  }
  return out;
}

EntropyReport entropy_estimate(std::span<const VolumeSample> samples, double window_fraction) {
  if (samples.size() < kMinEntropySamples)
    throw Error(ErrorKind::InsufficientSamples,
                std::to_string(samples.size()) + " samples, need " + std::to_string(kMinEntropySamples));
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].radius > samples[i - 1].radius))
      throw Error(ErrorKind::InsufficientSamples, "radii must be strictly increasing");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw Error(ErrorKind::DomainError, "window fraction must lie in (0, 1]");

  EntropyReport rep;
  rep.samples.assign(samples.begin(), samples.end());
  std::size_t window = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(samples.size())));
  window = std::clamp(window, kMinEntropySamples, samples.size());
  const auto tail = samples.subspan(samples.size() - window);

  double mean_r = 0.0, mean_y = 0.0;
  for (const auto& s : tail) {
    mean_r += s.radius;
    mean_y += s.log_volume;
  }
  mean_r /= static_cast<double>(window);
  mean_y /= static_cast<double>(window);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : tail) {
    sxx += (s.radius - mean_r) * (s.radius - mean_r);
    sxy += (s.radius - mean_r) * (s.log_volume - mean_y);
  }
  rep.slope = sxy / sxx;
  rep.intercept = mean_y - rep.slope * mean_r;
  double ss = 0.0;
  for (const auto& s : tail) {
    const double resid = s.log_volume - (rep.intercept + rep.slope * s.radius);
    ss += resid * resid;
  }
  rep.residual_rms = std::sqrt(ss / static_cast<double>(window));
  rep.window_begin = tail.front().radius;
  rep.window_end = tail.back().radius;
  rep.window_size = window;
  rep.method = EntropyMethod::Regression;
  return rep;
}

EntropyReport entropy_estimate(std::span<const std::pair<double, BigInt>> volumes, double window_fraction) {
  const auto samples = log_samples(volumes);
  return entropy_estimate(std::span<const VolumeSample>(samples), window_fraction);
}

std::string VerifyTarget::to_string() const { return is_tree() ? "tree" : "weyl:" + type->to_string(); }

VerifyTarget parse_target(std::string_view text) {
  if (text == "tree") return {};
  constexpr std::string_view prefix = "weyl:";
  if (text.substr(0, prefix.size()) == prefix) return {parse_cartan_type(text.substr(prefix.size()))};
  throw Error(ErrorKind::ParseError, "target must be 'tree' or 'weyl:<type>', got '" + std::string(text) + "'");
}

std::vector<BigInt> building_volumes(const VerifyTarget& target, const BigInt& q, unsigned rmax) {
  std::vector<BigInt> out;
  if (target.is_tree()) {
    const auto t = q.convert_to<std::int64_t>();
    for (unsigned r = 1; r <= rmax; ++r) out.push_back(alpha(t, r));
  } else {
    const RootSystem rs = build_root_system(*target.type);
    auto all = s_of_q_r_sequence(rs, q, rmax);
    out.assign(all.begin() + 1, all.end());
  }
  return out;
}

Theorem1Report verify_theorem1(const VerifyTarget& target, const ExtensionParams& params, unsigned rmax,
                               double tolerance) {
  params.validate();
  if (rmax < kMinVerifySamples)
    throw Error(ErrorKind::InsufficientSamples,
                "radius " + std::to_string(rmax) + " gives fewer than " + std::to_string(kMinVerifySamples) + " samples");
  Theorem1Report rep;
  rep.target = target;
  rep.params = params;
  rep.rmax = rmax;
  rep.tolerance = tolerance;

  const auto vol_F = building_volumes(target, params.q, rmax);
  const auto vol_E = building_volumes(target, params.q_E(), rmax);
  std::vector<std::pair<double, BigInt>> samples_FE;
  for (unsigned r = 1; r <= rmax; ++r) {
    rep.samples_F.emplace_back(r, vol_F[r - 1]);
    samples_FE.emplace_back(static_cast<double>(params.e) * r, vol_F[r - 1]);
    rep.samples_E.emplace_back(r, vol_E[r - 1]);
  }
  rep.h_FF = entropy_estimate(std::span<const std::pair<double, BigInt>>(rep.samples_F));
  rep.h_FE = entropy_estimate(std::span<const std::pair<double, BigInt>>(samples_FE));
  rep.h_EE = entropy_estimate(std::span<const std::pair<double, BigInt>>(rep.samples_E));

  const auto n = static_cast<double>(params.n());
  const auto f = static_cast<double>(params.f);
  rep.defect1 = std::abs(n * rep.h_FE.slope - f * rep.h_FF.slope);
  rep.defect2 = std::abs(f * rep.h_FF.slope - rep.h_EE.slope);

  if (target.is_tree()) {
    const double h = tree_entropy_closed_form(params.q);
    rep.closed_form = std::array<double, 3>{h, h / static_cast<double>(params.e), tree_entropy_closed_form(params.q_E())};
  }
  return rep;
}

}  // namespace buildvol
