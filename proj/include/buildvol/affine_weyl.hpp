#pragma once

#include "buildvol/bigint.hpp"
#include "buildvol/rootsystems.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace buildvol {

/// Point of the apartment in fundamental-coweight coordinates.
struct ApartmentPoint {
  RationalVector coords;

  static ApartmentPoint origin(int rank) { return {RationalVector(static_cast<std::size_t>(rank), Rational(0))}; }
  /// The fundamental coweight omega_i (0-based).
  static ApartmentPoint fundamental_coweight(int rank, int i);
  static ApartmentPoint from_integers(const IntVector& v);

  std::size_t dim() const noexcept { return coords.size(); }
  friend bool operator==(const ApartmentPoint&, const ApartmentPoint&) = default;
};

/// Element of the affine Weyl group acting by x -> L x + t, with L the image
/// of a finite Weyl element and t a coroot-lattice vector, both in coweight
/// coordinates. Equality compares the transformation only; the cached length
/// is -1 when unknown.
class AffineWeylElement {
 public:
  AffineWeylElement(IntMatrix linear, IntVector translation, int length = -1);
  static AffineWeylElement identity(int rank);
  static AffineWeylElement translation(const IntVector& mu);

  int rank() const noexcept { return static_cast<int>(translation_.size()); }
  const IntMatrix& linear() const noexcept { return linear_; }
  const IntVector& translation_part() const noexcept { return translation_; }
  int length() const noexcept { return length_; }
  void set_length(int l) noexcept { length_ = l; }

  ApartmentPoint apply(const ApartmentPoint& x) const;
  /// (*this) o other
  AffineWeylElement compose(const AffineWeylElement& other) const;

  /// Pulls the affine functional alpha + n back along this element:
  /// (alpha + n)(w x) = alpha'(x) + n'. Returns (alpha', n').
  std::pair<IntVector, std::int64_t> pullback(const IntVector& alpha, std::int64_t n) const;

  friend bool operator==(const AffineWeylElement& a, const AffineWeylElement& b) {
    return a.linear_ == b.linear_ && a.translation_ == b.translation_;
  }

 private:
  IntMatrix linear_;
  IntVector translation_;
  int length_ = -1;
};

/// alpha(x) + n, exactly. Zero iff x lies on the wall H_{alpha+n}.
Rational affine_root_value(const RootSystem& rs, const IntVector& alpha, std::int64_t n, const ApartmentPoint& x);

/// True iff alpha(x) is an integer for every root alpha.
bool vertex_lattice_member(const RootSystem& rs, const ApartmentPoint& x);

/// s_0, s_1, ..., s_r. s_i reflects in alpha_i(x) = 0 for i >= 1; s_0
/// reflects in theta(x) = 1 with theta the highest root, so the fundamental
/// alcove is {alpha_i(x) > 0, theta(x) < 1}.
std::vector<AffineWeylElement> simple_affine_reflections(const RootSystem& rs);

/// Vertices of the closed fundamental alcove: 0 and omega_i / n_i, where
/// theta = sum n_i alpha_i.
std::vector<ApartmentPoint> fundamental_alcove_vertices(const RootSystem& rs);

inline constexpr std::size_t kDefaultAffineBudget = 10'000'000;

struct AffineCensus {
  std::string type;
  int max_length = 0;
  std::vector<BigInt> counts;
  /// Shortlex-minimal reduced words (generator 0 is s_0), in enumeration
  /// order. Empty unless requested.
  std::vector<std::vector<int>> reduced_words;
};

/// Breadth-first enumeration of the affine Weyl group by length, under right
/// multiplication by the simple affine reflections. Layers are explored in
/// shortlex order, so every element's recorded parent/generator pair spells
/// its shortlex-minimal reduced word. Extending is incremental and the result
/// depends only on (type, depth).
class AffineEnumerator {
 public:
  explicit AffineEnumerator(const RootSystem& rs, std::size_t budget = kDefaultAffineBudget);
  AffineEnumerator(const AffineEnumerator&) = delete;
  AffineEnumerator& operator=(const AffineEnumerator&) = delete;

  /// Enumerates every element of length <= max_length. Throws BudgetExceeded
  /// when the element count would pass the budget.
  void extend_to(int max_length);
  /// Adds one more layer.
  void extend_one();

  const RootSystem& root_system() const noexcept { return rs_; }
  int depth() const noexcept { return static_cast<int>(layer_begin_.size()) - 2; }
  std::size_t size() const noexcept { return parent_.size(); }
  const std::vector<AffineWeylElement>& generators() const noexcept { return generators_; }

  AffineWeylElement element(std::size_t index) const;
  int length(std::size_t index) const { return length_.at(index); }
  /// w . 0, i.e. the translation part.
  IntVector origin_image(std::size_t index) const;
  std::vector<int> reduced_word(std::size_t index) const;
  /// Index range [first, last) of the elements of length l.
  std::pair<std::size_t, std::size_t> layer(int l) const;

  /// Index of `w` if it has been enumerated.
  std::optional<std::size_t> find(const AffineWeylElement& w) const;

  AffineCensus census(bool with_words = false) const;

 private:
  struct SlotHash {
    const AffineEnumerator* self;
    std::size_t operator()(std::uint32_t slot) const noexcept;
  };
  struct SlotEq {
    const AffineEnumerator* self;
    bool operator()(std::uint32_t a, std::uint32_t b) const noexcept;
  };

  const std::int32_t* slot_data(std::uint32_t slot) const { return storage_.data() + slot * stride_; }
  void push_slot(const AffineWeylElement& w) const;
  void push_product(std::size_t parent, int generator);

  RootSystem rs_;
  std::size_t budget_;
  std::size_t stride_;
  std::vector<AffineWeylElement> generators_;
  mutable std::vector<std::int32_t> storage_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::int8_t> generator_;
  std::vector<int> length_;
  std::vector<std::size_t> layer_begin_;
  std::unordered_set<std::uint32_t, SlotHash, SlotEq> index_;
};

AffineCensus enumerate_affine_weyl(const RootSystem& rs, int max_length, std::size_t budget = kDefaultAffineBudget,
                                   bool with_words = false);

struct TranslationLength {
  int length = 0;                 // BFS length of the translation element
  std::int64_t two_rho_pairing = 0;  // <2 rho, mu> = sum_{alpha > 0} alpha(mu)
  Rational rho_pairing;           // <rho, mu>
};

/// Length of the pure translation by a dominant coroot-lattice vector `mu`
/// (coweight coordinates), looked up by breadth-first search. The pairings
/// with rho and 2 rho are reported alongside for comparison.
TranslationLength translation_length(const RootSystem& rs, const IntVector& mu,
                                     std::size_t budget = kDefaultAffineBudget);

/// True iff mu is an integer combination of simple coroots.
bool in_coroot_lattice(const RootSystem& rs, const IntVector& mu);

enum class MetricNormalization { AlcoveDiameterOne, StandardEuclidean };

MetricNormalization parse_normalization(std::string_view name);
std::string to_string(MetricNormalization norm);

/// The W-invariant metric on the apartment. AlcoveDiameterOne scales it so
/// the fundamental alcove has diameter 1; StandardEuclidean so that the
/// coroot of the highest root has squared length 2. Squared distances are
/// exact rationals, distances take one floating square root.
class ApartmentMetric {
 public:
  ApartmentMetric(const RootSystem& rs, MetricNormalization norm);

  Rational squared_norm(const RationalVector& v) const;
  Rational squared_norm(const IntVector& v) const;
  Rational squared_distance(const ApartmentPoint& x, const ApartmentPoint& y) const;
  double distance(const ApartmentPoint& x, const ApartmentPoint& y) const;
  double norm(const IntVector& v) const;

  /// Unnormalized form value that corresponds to squared length 1.
  const Rational& scale() const noexcept { return scale_; }
  MetricNormalization normalization() const noexcept { return norm_; }

  /// Smallest K with sum_{alpha>0} |alpha(lambda)| <= K * |lambda| for all
  /// lambda: the dual norm of 2 rho.
  double two_rho_dual_norm() const noexcept { return two_rho_dual_; }

 private:
  IntMatrix form_;
  Rational scale_;
  MetricNormalization norm_;
  double two_rho_dual_ = 0.0;
};

double apartment_distance(const RootSystem& rs, const ApartmentPoint& x, const ApartmentPoint& y,
                          MetricNormalization norm = MetricNormalization::AlcoveDiameterOne);

/// Largest length an element w can have while d(w.0, 0) <= radius. Writing
/// w = t_lambda u with u finite gives l(w) <= sum_{alpha>0}|alpha(lambda)| + N
/// <= K |lambda| + N, N the number of positive roots.
int length_bound_for_radius(const RootSystem& rs, double radius, MetricNormalization norm);

/// Multiplication by e: the embedding of the F-apartment into the
/// E-apartment for an extension of ramification index e.
ApartmentPoint scale_embed(const ApartmentPoint& x, std::int64_t e);

/// The E-element induced by an F-element: same linear part, translation
/// scaled by e (an F-uniformizer is the e-th power of an E-uniformizer up to
/// a unit).
AffineWeylElement embed_element(const AffineWeylElement& w, std::int64_t e);

/// e (w . x) == i(w) . (e x), checked exactly.
bool check_equivariance(const AffineWeylElement& w, const ApartmentPoint& x, std::int64_t e);

/// Constants with c l - b <= d(w.0, 0) <= C l + b over a set of enumerated
/// elements.
struct DistanceBand {
  double c = 0.0;
  double C = 0.0;
  double b = 0.0;

  bool contains(int length, double distance, double slack = 1e-9) const {
    return c * length - b <= distance + slack && distance <= C * length + b + slack;
  }
};

/// Fits the band over every enumerated element of length >= 1. The lower
/// slope is the smallest d/(l - N) over elements longer than N (the finite
/// Weyl group, which fixes 0, has lengths up to N), with b = c N; the upper
/// slope is the largest d/l.
DistanceBand fit_distance_band(const AffineEnumerator& en, MetricNormalization norm);

}  // namespace buildvol
