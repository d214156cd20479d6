#include <doctest.h>

#include "buildvol/errors.hpp"
#include "buildvol/growth.hpp"
#include "buildvol/tree.hpp"

#include <cmath>

using namespace buildvol;

namespace {

RootSystem rs_of(const char* s) { return build_root_system(parse_cartan_type(s)); }

using Samples = std::vector<std::pair<double, BigInt>>;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::DomainError;
}

}  // namespace

TEST_CASE("affine Poincare coefficients") {
  CHECK(affine_poincare_coeffs(rs_of("A1"), 4).coeffs() == std::vector<BigInt>{1, 2, 2, 2, 2});
  CHECK(affine_poincare_coeffs(rs_of("A2"), 5).coeffs() == std::vector<BigInt>{1, 3, 6, 9, 12, 15});
  for (const char* t : {"A1", "B4", "E6", "F4", "G2"}) CHECK(affine_poincare_coeffs(rs_of(t), 3)[0] == 1);
  // a_l = 3l for A2, read off (1 + q + q^2) / (1 - q)^2
  const auto a2 = affine_poincare_coeffs(rs_of("A2"), 60);
  for (unsigned l = 1; l <= 60; ++l) CHECK(a2[l] == 3 * l);
}

TEST_CASE("series matches the BFS census") {
  for (const char* t : {"A1", "A2", "C2", "G2", "B3", "A3"}) {
    CAPTURE(t);
    const auto rs = rs_of(t);
    const unsigned l = 10;
    CHECK(affine_poincare_coeffs(rs, l).coeffs() == enumerate_affine_weyl(rs, l).counts);
  }
}

TEST_CASE("S(q, R)") {
  const auto a1 = rs_of("A1");
  const auto a2 = rs_of("A2");
  CHECK(s_of_q_r(a1, 5, 0) == 1);
  CHECK(s_of_q_r(rs_of("G2"), 7, 0) == 1);
  CHECK(s_of_q_r(a1, 2, 3) == 29);
  CHECK(s_of_q_r(a2, 2, 2) == 31);

  // closed form for A2 at q = 2: 1 + 3 sum_{l=1}^R l 2^l = 1 + 3((R-1) 2^{R+1} + 2)
  const auto seq = s_of_q_r_sequence(a2, 2, 120);
  for (unsigned r = 1; r <= 120; ++r) CHECK(seq[r] == 1 + 3 * ((BigInt(r) - 1) * ipow(2, r + 1) + 2));

  for (const char* t : {"A1", "C2", "G2"}) {
    const auto rs = rs_of(t);
    const auto s2 = s_of_q_r_sequence(rs, 2, 30);
    const auto s3 = s_of_q_r_sequence(rs, 3, 30);
    for (unsigned r = 1; r <= 30; ++r) {
      CHECK(s2[r] > s2[r - 1]);
      CHECK(s3[r] > s2[r]);
    }
  }
}

TEST_CASE("metric ball volumes") {
  const auto a1 = rs_of("A1");
  const auto norm = MetricNormalization::AlcoveDiameterOne;
  for (int q : {2, 3, 5}) CHECK(metric_ball_volume(a1, q, 0.0, norm) == 1 + q);
  // identity, s1, s0, s0s1, s1s0, s1s0s1
  CHECK(metric_ball_volume(a1, 2, 2.0, norm) == 1 + 2 * 2 + 2 * 4 + 8);

  // Brute force over a deep enumeration.
  for (const char* t : {"A1", "A2", "C2", "G2"}) {
    CAPTURE(t);
    const auto rs = rs_of(t);
    AffineEnumerator en(rs);
    en.extend_to(rs.rank() == 1 ? 40 : 22);
    const ApartmentMetric metric(rs, norm);
    BigInt previous = 0;
    for (double r : {0.0, 0.5, 1.0, 1.7, 2.0, 3.0, 4.5}) {
      BigInt expected = 0;
      for (std::size_t i = 0; i < en.size(); ++i)
        if (metric.norm(en.origin_image(i)) <= r + 1e-12) expected += ipow(3, static_cast<unsigned>(en.length(i)));
      const BigInt got = metric_ball_volume(rs, 3, r, norm);
      CHECK(got == expected);
      CHECK(got >= previous);
      previous = got;
    }
  }
  CHECK(kind_of([&] { metric_ball_volume(rs_of("G2"), 2, 50.0, norm, 1000); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("entropy of exact exponentials") {
  for (double t : {2.0, 3.0, 7.5}) {
    std::vector<VolumeSample> s;
    for (int r = 0; r < 30; ++r) s.push_back({static_cast<double>(r), std::log(4.2) + r * std::log(t)});
    const auto rep = entropy_estimate(s);
    CHECK(rep.slope == doctest::Approx(std::log(t)).epsilon(1e-13));
    CHECK(rep.residual_rms < 1e-12);
    CHECK(rep.window_size == 15);
    CHECK(rep.window_begin == 15.0);
    CHECK(rep.window_end == 29.0);
  }

  Samples tree;
  for (int r = 1; r <= 40; ++r) tree.emplace_back(r, alpha(2, r));
  CHECK(std::abs(entropy_estimate(tree).slope - std::log(2.0)) < 1e-6);

  // A2 at q = 2 carries a log R correction, so the slope sits a little above
  // log 2 and creeps down as the window moves out.
  const auto seq = s_of_q_r_sequence(rs_of("A2"), 2, 200);
  Samples s_near, s_far;
  for (unsigned r = 20; r <= 200; ++r) s_far.emplace_back(r, seq[r]);
  for (unsigned r = 20; r <= 100; ++r) s_near.emplace_back(r, seq[r]);
  const double h_far = entropy_estimate(s_far).slope;
  const double h_near = entropy_estimate(s_near).slope;
  CHECK(h_far > std::log(2.0));
  CHECK(h_far < std::log(2.0) + 0.01);
  CHECK(h_near > h_far);
}

TEST_CASE("entropy is unchanged by rescaling the measure") {
  const auto seq = s_of_q_r_sequence(rs_of("C2"), 3, 80);
  std::vector<VolumeSample> base;
  for (unsigned r = 1; r <= 80; ++r) base.push_back({static_cast<double>(r), log_big(seq[r])});
  const double h = entropy_estimate(base).slope;
  for (double c : {1e-6, 1.0, 1e6}) {
    auto scaled = base;
    for (auto& s : scaled) s.log_volume += std::log(c);
    CHECK(std::abs(entropy_estimate(scaled).slope - h) < 1e-12);
  }
  // stretching the radius by e divides the slope by e
  for (double e : {2.0, 3.0}) {
    auto stretched = base;
    for (auto& s : stretched) s.radius *= e;
    CHECK(entropy_estimate(stretched).slope * e == doctest::Approx(h).epsilon(1e-13));
  }
}

TEST_CASE("entropy estimate errors") {
  Samples few{{1, 2}, {2, 4}, {3, 8}, {4, 16}};
  CHECK(kind_of([&] { entropy_estimate(few); }) == ErrorKind::InsufficientSamples);
  Samples zero{{1, 2}, {2, 4}, {3, 0}, {4, 16}, {5, 32}};
  CHECK(kind_of([&] { entropy_estimate(zero); }) == ErrorKind::NonpositiveVolume);
  Samples unordered{{1, 2}, {3, 4}, {2, 8}, {4, 16}, {5, 32}};
  CHECK(kind_of([&] { entropy_estimate(unordered); }) == ErrorKind::InsufficientSamples);
  // a five-sample window is the floor even for short sequences
  Samples five{{1, 2}, {2, 4}, {3, 8}, {4, 16}, {5, 32}, {6, 64}};
  CHECK(entropy_estimate(five).window_size == 5);
}

TEST_CASE("targets and extension parameters") {
  CHECK(parse_target("tree").is_tree());
  CHECK(parse_target("weyl:A2").to_string() == "weyl:A2");
  CHECK(kind_of([] { parse_target("weyl:D2"); }) == ErrorKind::InvalidRank);
  CHECK(kind_of([] { parse_target("graph"); }) == ErrorKind::ParseError);

  ExtensionParams p{3, 2, 2};
  CHECK(p.n() == 4);
  CHECK(p.q_E() == 9);
  CHECK(kind_of([] { ExtensionParams{1, 1, 1}.validate(); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { ExtensionParams{2, 0, 1}.validate(); }) == ErrorKind::DomainError);
}

TEST_CASE("extension entropy report") {
  const auto trivial = verify_theorem1(parse_target("tree"), {2, 1, 1}, 20);
  CHECK(trivial.defect1 == 0.0);
  CHECK(trivial.defect2 == 0.0);
  CHECK(trivial.h_FF.slope == trivial.h_EE.slope);
  CHECK(trivial.passed());

  const double ln2 = std::log(2.0);
  const auto ram = verify_theorem1(parse_target("tree"), {2, 2, 1}, 40);
  CHECK(ram.h_FF.slope == doctest::Approx(ln2).epsilon(1e-12));
  CHECK(ram.h_FE.slope == doctest::Approx(ln2 / 2).epsilon(1e-12));
  CHECK(ram.h_EE.slope == doctest::Approx(ln2).epsilon(1e-12));
  CHECK(ram.defect1 < 1e-12);
  CHECK(ram.defect2 < 1e-12);
  REQUIRE(ram.closed_form.has_value());
  CHECK((*ram.closed_form)[1] == doctest::Approx(ln2 / 2));

  const auto unram = verify_theorem1(parse_target("tree"), {2, 1, 2}, 40);
  CHECK(unram.h_EE.slope == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(unram.defect2 < 1e-12);

  const auto a2 = verify_theorem1(parse_target("weyl:A2"), {2, 3, 2}, 200);
  CHECK(a2.passed());
  CHECK(a2.defect1 < 1e-9);
  CHECK(!a2.closed_form.has_value());
  CHECK(a2.samples_F.size() == 200);

  CHECK(kind_of([] { verify_theorem1(parse_target("tree"), {2, 1, 1}, 9); }) == ErrorKind::InsufficientSamples);
}
