#include "buildvol/affine_weyl.hpp"

#include "buildvol/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace buildvol {

namespace {

void require_dim(const RootSystem& rs, std::size_t dim) {
  if (dim != static_cast<std::size_t>(rs.rank()))
    throw Error(ErrorKind::DimensionMismatch,
                "point of dimension " + std::to_string(dim) + " in rank " + std::to_string(rs.rank()));
}

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Solves M x = b over the rationals for square invertible M.
RationalVector solve(const IntMatrix& m, RationalVector b) {
  const std::size_t n = m.size();
  std::vector<RationalVector> a(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorKind::DomainError, "singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational factor = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

double sqrt_rational(const Rational& r) { return std::sqrt(r.convert_to<double>()); }

}  // namespace

ApartmentPoint ApartmentPoint::fundamental_coweight(int rank, int i) {
  ApartmentPoint p = origin(rank);
  p.coords.at(static_cast<std::size_t>(i)) = 1;
  return p;
}

ApartmentPoint ApartmentPoint::from_integers(const IntVector& v) {
  ApartmentPoint p;
  for (auto c : v) p.coords.emplace_back(c);
  return p;
}

AffineWeylElement::AffineWeylElement(IntMatrix linear, IntVector translation, int length)
    : linear_(std::move(linear)), translation_(std::move(translation)), length_(length) {
  if (linear_.size() != translation_.size())
    throw Error(ErrorKind::DimensionMismatch, "linear part and translation disagree in dimension");
}

AffineWeylElement AffineWeylElement::identity(int rank) {
  return {identity_matrix(rank), IntVector(static_cast<std::size_t>(rank), 0), 0};
}

AffineWeylElement AffineWeylElement::translation(const IntVector& mu) {
  return {identity_matrix(static_cast<int>(mu.size())), mu};
}

ApartmentPoint AffineWeylElement::apply(const ApartmentPoint& x) const {
  if (x.dim() != translation_.size()) throw Error(ErrorKind::DimensionMismatch, "apply");
  ApartmentPoint out;
  out.coords.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    Rational acc = translation_[i];
    for (std::size_t j = 0; j < x.dim(); ++j) acc += linear_[i][j] * x.coords[j];
    out.coords.push_back(acc);
  }
  return out;
}

AffineWeylElement AffineWeylElement::compose(const AffineWeylElement& other) const {
  const std::size_t n = translation_.size();
  if (other.translation_.size() != n) throw Error(ErrorKind::DimensionMismatch, "compose");
  IntMatrix l(n, IntVector(n, 0));
  IntVector t = translation_;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) l[i][j] += linear_[i][k] * other.linear_[k][j];
      t[i] += linear_[i][j] * other.translation_[j];
    }
  }
  return {std::move(l), std::move(t)};
}

std::pair<IntVector, std::int64_t> AffineWeylElement::pullback(const IntVector& alpha, std::int64_t n) const {
  const std::size_t dim = translation_.size();
  if (alpha.size() != dim) throw Error(ErrorKind::DimensionMismatch, "pullback");
  // alpha(L x + t) + n = (L^T alpha)(x) + alpha(t) + n
  IntVector a(dim, 0);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) a[j] += alpha[i] * linear_[i][j];
  return {std::move(a), pair(alpha, translation_) + n};
}

Rational affine_root_value(const RootSystem& rs, const IntVector& alpha, std::int64_t n, const ApartmentPoint& x) {
  require_dim(rs, x.dim());
  require_dim(rs, alpha.size());
  return pair(alpha, x.coords) + n;
}

bool vertex_lattice_member(const RootSystem& rs, const ApartmentPoint& x) {
  require_dim(rs, x.dim());
  // Every root is an integer combination of simple roots, and alpha_i(x) = x_i.
  return std::all_of(x.coords.begin(), x.coords.end(), is_integer);
}

std::vector<AffineWeylElement> simple_affine_reflections(const RootSystem& rs) {
  const int n = rs.rank();
  const IntMatrix& a = rs.cartan();
  std::vector<AffineWeylElement> gens;

  // s_0(x) = x - (theta(x) - 1) theta^vee
  const Root& theta = rs.highest_root();
  IntMatrix l0 = identity_matrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) l0[j][k] -= theta.coroot[j] * theta.coeffs[k];
  gens.emplace_back(std::move(l0), theta.coroot, 1);

  // s_i(y) = y - y_i alpha_i^vee
  for (int i = 0; i < n; ++i) {
    IntMatrix li = identity_matrix(n);
    for (int j = 0; j < n; ++j) li[j][i] -= a[i][j];
    gens.emplace_back(std::move(li), IntVector(n, 0), 1);
  }
  return gens;
}

std::vector<ApartmentPoint> fundamental_alcove_vertices(const RootSystem& rs) {
  const int n = rs.rank();
  std::vector<ApartmentPoint> v{ApartmentPoint::origin(n)};
  const Root& theta = rs.highest_root();
  for (int i = 0; i < n; ++i) {
    ApartmentPoint p = ApartmentPoint::origin(n);
    p.coords[i] = Rational(1, theta.coeffs[i]);
    v.push_back(std::move(p));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Enumeration

AffineEnumerator::AffineEnumerator(const RootSystem& rs, std::size_t budget)
    : rs_(rs),
      budget_(budget),
      stride_(static_cast<std::size_t>(rs.rank() * rs.rank() + rs.rank())),
      generators_(simple_affine_reflections(rs)),
      index_(64, SlotHash{this}, SlotEq{this}) {
  if (budget_ == 0) throw Error(ErrorKind::BudgetExceeded, "element budget is zero");
  push_slot(AffineWeylElement::identity(rs.rank()));
  parent_.push_back(0);
  generator_.push_back(-1);
  length_.push_back(0);
  index_.insert(0);
  layer_begin_ = {0, 1};
}

std::size_t AffineEnumerator::SlotHash::operator()(std::uint32_t slot) const noexcept {
  const std::int32_t* p = self->slot_data(slot);
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < self->stride_; ++i) {
    h ^= static_cast<std::uint32_t>(p[i]);
    h *= 1099511628211ull;
  }
  return h;
}

bool AffineEnumerator::SlotEq::operator()(std::uint32_t a, std::uint32_t b) const noexcept {
  return std::equal(self->slot_data(a), self->slot_data(a) + self->stride_, self->slot_data(b));
}

void AffineEnumerator::push_slot(const AffineWeylElement& w) const {
  for (const auto& row : w.linear())
    for (auto v : row) storage_.push_back(static_cast<std::int32_t>(v));
  for (auto v : w.translation_part()) storage_.push_back(static_cast<std::int32_t>(v));
}

void AffineEnumerator::push_product(std::size_t parent, int generator) {
  // Right multiplication: (L, t) (M, u) = (L M, L u + t).
  const std::size_t n = static_cast<std::size_t>(rs_.rank());
  const AffineWeylElement& g = generators_[static_cast<std::size_t>(generator)];
  const std::size_t base = storage_.size();
  storage_.resize(base + stride_);
  std::int32_t* out = storage_.data() + base;
  const std::int32_t* p = slot_data(static_cast<std::uint32_t>(parent));
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t t = p[n * n + i];
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += std::int64_t{p[i * n + k]} * g.linear()[k][j];
      out[i * n + j] = static_cast<std::int32_t>(acc);
      t += std::int64_t{p[i * n + j]} * g.translation_part()[j];
    }
    out[n * n + i] = static_cast<std::int32_t>(t);
  }
}

void AffineEnumerator::extend_one() {
  const std::size_t first = layer_begin_[layer_begin_.size() - 2];
  const std::size_t last = layer_begin_.back();
  const int next_length = depth() + 1;
  for (std::size_t idx = first; idx < last; ++idx) {
    for (int g = 0; g < static_cast<int>(generators_.size()); ++g) {
      push_product(idx, g);
      const auto slot = static_cast<std::uint32_t>(parent_.size());
      if (!index_.insert(slot).second) {
        storage_.resize(storage_.size() - stride_);
        continue;
      }
      if (parent_.size() + 1 > budget_) {
        index_.erase(slot);
        storage_.resize(storage_.size() - stride_);
        throw Error(ErrorKind::BudgetExceeded, "affine Weyl enumeration of " + rs_.type().to_string() +
                                                   " passed " + std::to_string(budget_) + " elements at length " +
                                                   std::to_string(next_length));
      }
      parent_.push_back(static_cast<std::uint32_t>(idx));
      generator_.push_back(static_cast<std::int8_t>(g));
      length_.push_back(next_length);
    }
  }
  layer_begin_.push_back(parent_.size());
}

void AffineEnumerator::extend_to(int max_length) {
  if (max_length < 0) throw Error(ErrorKind::DomainError, "negative length bound");
  while (depth() < max_length) extend_one();
}

AffineWeylElement AffineEnumerator::element(std::size_t index) const {
  const std::size_t n = static_cast<std::size_t>(rs_.rank());
  const std::int32_t* p = slot_data(static_cast<std::uint32_t>(index));
  IntMatrix l(n, IntVector(n));
  IntVector t(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) l[i][j] = p[i * n + j];
    t[i] = p[n * n + i];
  }
  return {std::move(l), std::move(t), length_.at(index)};
}

IntVector AffineEnumerator::origin_image(std::size_t index) const {
  const std::size_t n = static_cast<std::size_t>(rs_.rank());
  const std::int32_t* p = slot_data(static_cast<std::uint32_t>(index));
  return IntVector(p + n * n, p + n * n + n);
}

std::vector<int> AffineEnumerator::reduced_word(std::size_t index) const {
  std::vector<int> word;
  while (index != 0) {
    word.push_back(generator_.at(index));
    index = parent_[index];
  }
  std::reverse(word.begin(), word.end());
  return word;
}

std::pair<std::size_t, std::size_t> AffineEnumerator::layer(int l) const {
  if (l < 0 || l > depth()) throw Error(ErrorKind::DomainError, "layer " + std::to_string(l) + " not enumerated");
  return {layer_begin_[static_cast<std::size_t>(l)], layer_begin_[static_cast<std::size_t>(l) + 1]};
}

std::optional<std::size_t> AffineEnumerator::find(const AffineWeylElement& w) const {
  if (w.rank() != rs_.rank()) throw Error(ErrorKind::DimensionMismatch, "find");
  // The probe occupies the slot just past the last element while hashing.
  push_slot(w);
  const auto probe = static_cast<std::uint32_t>(parent_.size());
  const auto it = index_.find(probe);
  storage_.resize(storage_.size() - stride_);
  if (it == index_.end()) return std::nullopt;
  return *it;
}

AffineCensus AffineEnumerator::census(bool with_words) const {
  AffineCensus c;
  c.type = rs_.type().to_string();
  c.max_length = depth();
  for (int l = 0; l <= depth(); ++l) {
    const auto [first, last] = layer(l);
    c.counts.emplace_back(last - first);
  }
  if (with_words)
    for (std::size_t i = 0; i < size(); ++i) c.reduced_words.push_back(reduced_word(i));
  return c;
}

AffineCensus enumerate_affine_weyl(const RootSystem& rs, int max_length, std::size_t budget, bool with_words) {
  AffineEnumerator en(rs, budget);
  en.extend_to(max_length);
  return en.census(with_words);
}

bool in_coroot_lattice(const RootSystem& rs, const IntVector& mu) {
  require_dim(rs, mu.size());
  // mu = sum_i k_i alpha_i^vee, and alpha_i^vee is row i of the Cartan
  // matrix, so k solves A^T k = mu.
  const IntMatrix& a = rs.cartan();
  IntMatrix at(a.size(), IntVector(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) at[i][j] = a[j][i];
  RationalVector rhs(mu.begin(), mu.end());
  const RationalVector k = solve(at, rhs);
  return std::all_of(k.begin(), k.end(), is_integer);
}

TranslationLength translation_length(const RootSystem& rs, const IntVector& mu, std::size_t budget) {
  require_dim(rs, mu.size());
  if (std::any_of(mu.begin(), mu.end(), [](auto v) { return v < 0; }))
    throw Error(ErrorKind::NotDominant, "translation vector has a negative simple-root pairing");
  if (!in_coroot_lattice(rs, mu))
    throw Error(ErrorKind::NotInGroup, "translation vector is not in the coroot lattice");

  TranslationLength out;
  out.two_rho_pairing = pair(rs.two_rho(), mu);
  out.rho_pairing = pair(IntVector(rs.two_rho()), RationalVector(mu.begin(), mu.end())) / 2;

  const AffineWeylElement target = AffineWeylElement::translation(mu);
  AffineEnumerator en(rs, budget);
  while (true) {
    if (auto idx = en.find(target)) {
      out.length = en.length(*idx);
      return out;
    }
    en.extend_one();
  }
}

// ---------------------------------------------------------------------------
// Metric

MetricNormalization parse_normalization(std::string_view name) {
  std::string lower;
  for (char ch : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "alcovediameterone" || lower == "alcove") return MetricNormalization::AlcoveDiameterOne;
  if (lower == "standardeuclidean" || lower == "standard") return MetricNormalization::StandardEuclidean;
  throw Error(ErrorKind::UnknownNormalization, "'" + std::string(name) + "'");
}

std::string to_string(MetricNormalization norm) {
  return norm == MetricNormalization::AlcoveDiameterOne ? "AlcoveDiameterOne" : "StandardEuclidean";
}

ApartmentMetric::ApartmentMetric(const RootSystem& rs, MetricNormalization norm)
    : form_(rs.invariant_form()), scale_(1), norm_(norm) {
  if (norm == MetricNormalization::AlcoveDiameterOne) {
    // A simplex's diameter is its longest edge.
    const auto verts = fundamental_alcove_vertices(rs);
    Rational widest = 0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j) {
        RationalVector d(verts[i].dim());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = verts[i].coords[k] - verts[j].coords[k];
        widest = std::max(widest, squared_norm(d));
      }
    scale_ = widest;
  } else {
    scale_ = squared_norm(rs.highest_root().coroot) / 2;
  }
  // K^2 = v^T (G / scale)^{-1} v with v = 2 rho.
  const IntVector& v = rs.two_rho();
  const RationalVector g_inv_v = solve(form_, RationalVector(v.begin(), v.end()));
  two_rho_dual_ = sqrt_rational(pair(v, g_inv_v) * scale_);
}

Rational ApartmentMetric::squared_norm(const RationalVector& v) const {
  if (v.size() != form_.size()) throw Error(ErrorKind::DimensionMismatch, "squared_norm");
  Rational acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < v.size(); ++j) row += form_[i][j] * v[j];
    acc += v[i] * row;
  }
  return acc / scale_;
}

Rational ApartmentMetric::squared_norm(const IntVector& v) const {
  if (v.size() != form_.size()) throw Error(ErrorKind::DimensionMismatch, "squared_norm");
  BigInt acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) acc += BigInt(form_[i][j]) * v[i] * v[j];
  return Rational(acc) / scale_;
}

Rational ApartmentMetric::squared_distance(const ApartmentPoint& x, const ApartmentPoint& y) const {
  if (x.dim() != y.dim()) throw Error(ErrorKind::DimensionMismatch, "squared_distance");
  RationalVector d(x.dim());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = x.coords[k] - y.coords[k];
  return squared_norm(d);
}

double ApartmentMetric::distance(const ApartmentPoint& x, const ApartmentPoint& y) const {
  return sqrt_rational(squared_distance(x, y));
}

double ApartmentMetric::norm(const IntVector& v) const { return sqrt_rational(squared_norm(v)); }

double apartment_distance(const RootSystem& rs, const ApartmentPoint& x, const ApartmentPoint& y,
                          MetricNormalization norm) {
  require_dim(rs, x.dim());
  require_dim(rs, y.dim());
  return ApartmentMetric(rs, norm).distance(x, y);
}

int length_bound_for_radius(const RootSystem& rs, double radius, MetricNormalization norm) {
  if (!(radius >= 0.0)) throw Error(ErrorKind::DomainError, "negative radius");
  const ApartmentMetric metric(rs, norm);
  const double bound = metric.two_rho_dual_norm() * radius + static_cast<double>(rs.num_positive_roots());
  return static_cast<int>(std::floor(bound + 1e-6));
}

ApartmentPoint scale_embed(const ApartmentPoint& x, std::int64_t e) {
  if (e < 1) throw Error(ErrorKind::DomainError, "ramification index must be positive");
  ApartmentPoint out = x;
  for (auto& c : out.coords) c *= e;
  return out;
}

AffineWeylElement embed_element(const AffineWeylElement& w, std::int64_t e) {
  if (e < 1) throw Error(ErrorKind::DomainError, "ramification index must be positive");
  IntVector t = w.translation_part();
  for (auto& c : t) c *= e;
  return {w.linear(), std::move(t), w.length()};
}

bool check_equivariance(const AffineWeylElement& w, const ApartmentPoint& x, std::int64_t e) {
  return scale_embed(w.apply(x), e) == embed_element(w, e).apply(scale_embed(x, e));
}

DistanceBand fit_distance_band(const AffineEnumerator& en, MetricNormalization norm) {
  const RootSystem& rs = en.root_system();
  const ApartmentMetric metric(rs, norm);
  const int n_pos = static_cast<int>(rs.num_positive_roots());
  DistanceBand band;
  band.c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < en.size(); ++i) {
    const int l = en.length(i);
    const double d = metric.norm(en.origin_image(i));
    band.C = std::max(band.C, d / l);
    if (l > n_pos) band.c = std::min(band.c, d / (l - n_pos));
  }
  if (!std::isfinite(band.c))
    throw Error(ErrorKind::InsufficientSamples, "enumerate past length " + std::to_string(n_pos) + " to fit the band");
  band.b = band.c * n_pos;
  return band;
}

}  // namespace buildvol
