#include "buildvol/rootsystems.hpp"

#include "buildvol/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <unordered_set>

namespace buildvol {

namespace {

char family_letter(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

void link(IntMatrix& a, int i, int j) {
  a[i][j] = -1;
  a[j][i] = -1;
}

}  // namespace

std::string CartanType::to_string() const { return family_letter(family) + std::to_string(rank); }

void validate_cartan_type(const CartanType& t) {
  const int n = t.rank;
  bool ok = false;
  switch (t.family) {
    case Family::A: ok = n >= 1; break;
    case Family::B:
    case Family::C: ok = n >= 2; break;
    case Family::D: ok = n >= 3; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
    case Family::F: ok = n == 4; break;
    case Family::G: ok = n == 2; break;
  }
  if (!ok) throw Error(ErrorKind::InvalidRank, t.to_string() + " is not an irreducible Cartan type");
}

CartanType parse_cartan_type(std::string_view text) {
  if (text.size() < 2) throw Error(ErrorKind::ParseError, "bad type string '" + std::string(text) + "'");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const auto pos = std::string_view("ABCDEFG").find(letter);
  if (pos == std::string_view::npos)
    throw Error(ErrorKind::ParseError, "unknown family in '" + std::string(text) + "'");
  int rank = 0;
  const auto digits = text.substr(1);
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
  if (ec != std::errc{} || end != digits.data() + digits.size())
    throw Error(ErrorKind::ParseError, "bad rank in '" + std::string(text) + "'");
  CartanType t{static_cast<Family>(pos), rank};
  validate_cartan_type(t);
  return t;
}

IntMatrix cartan_matrix(const CartanType& t) {
  validate_cartan_type(t);
  const int n = t.rank;
  IntMatrix a(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(a, i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(a, i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) link(a, i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(a, i, i + 1);
      link(a, n - 3, n - 1);
      break;
    case Family::E:
      // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
      link(a, 0, 2);
      link(a, 1, 3);
      for (int i = 2; i + 1 < n; ++i) link(a, i, i + 1);
      break;
    case Family::F:
      link(a, 0, 1);
      link(a, 1, 2);
      link(a, 2, 3);
      a[2][1] = -2;
      break;
    case Family::G:
      link(a, 0, 1);
      a[0][1] = -3;  // alpha_1 short
      break;
  }
  return a;
}

Rational pair(const IntVector& root_coeffs, const RationalVector& point) {
  if (root_coeffs.size() != point.size())
    throw Error(ErrorKind::DimensionMismatch, "root and point dimensions differ");
  Rational acc = 0;
  for (std::size_t i = 0; i < point.size(); ++i) acc += root_coeffs[i] * point[i];
  return acc;
}

std::int64_t pair(const IntVector& root_coeffs, const IntVector& point) {
  if (root_coeffs.size() != point.size())
    throw Error(ErrorKind::DimensionMismatch, "root and point dimensions differ");
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < point.size(); ++i) acc += root_coeffs[i] * point[i];
  return acc;
}

bool RootSystem::is_root(const IntVector& coeffs) const {
  return std::any_of(all_.begin(), all_.end(), [&](const Root& r) { return r.coeffs == coeffs; });
}

RootSystem build_root_system(const CartanType& t) {
  RootSystem rs;
  rs.type_ = t;
  rs.cartan_ = cartan_matrix(t);
  const int n = t.rank;
  const IntMatrix& a = rs.cartan_;

  // Closure of the simple (root, coroot) pairs under simple reflections,
  // keeping positive roots only. Coroots ride along so that each coroot is
  // w(alpha_i^vee) for the same w that produced w(alpha_i).
  std::map<IntVector, IntVector> found;
  std::vector<IntVector> queue;
  for (int i = 0; i < n; ++i) {
    IntVector c(n, 0);
    c[i] = 1;
    found.emplace(c, a[i]);
    queue.push_back(c);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const IntVector beta = queue[head];
    const IntVector beta_vee = found.at(beta);
    for (int i = 0; i < n; ++i) {
      // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
      std::int64_t k = 0;
      for (int j = 0; j < n; ++j) k += beta[j] * a[i][j];
      IntVector image = beta;
      image[i] -= k;
      if (std::any_of(image.begin(), image.end(), [](auto v) { return v < 0; })) continue;
      if (found.count(image)) continue;
      // s_i(y) = y - <alpha_i, y> alpha_i^vee on coweight coordinates
      IntVector image_vee = beta_vee;
      const std::int64_t yi = beta_vee[i];
      for (int j = 0; j < n; ++j) image_vee[j] -= yi * a[i][j];
      found.emplace(image, image_vee);
      queue.push_back(image);
    }
  }

  for (const auto& [coeffs, coroot] : found) {
    Root r{coeffs, coroot, 0};
    for (auto c : coeffs) r.height += static_cast<int>(c);
    rs.positive_.push_back(std::move(r));
  }
  std::sort(rs.positive_.begin(), rs.positive_.end(), [](const Root& x, const Root& y) {
    if (x.height != y.height) return x.height < y.height;
    return x.coeffs > y.coeffs;
  });

  rs.all_ = rs.positive_;
  for (const Root& r : rs.positive_) {
    Root neg = r;
    for (auto& c : neg.coeffs) c = -c;
    for (auto& c : neg.coroot) c = -c;
    neg.height = -r.height;
    rs.all_.push_back(std::move(neg));
  }

  rs.two_rho_.assign(n, 0);
  for (const Root& r : rs.positive_)
    for (int j = 0; j < n; ++j) rs.two_rho_[j] += r.coeffs[j];
  rs.rho_.clear();
  for (auto v : rs.two_rho_) rs.rho_.push_back(Rational(v, 2));

  // Dual partition of the height distribution: m is an exponent with
  // multiplicity #{height m} - #{height m+1}.
  const int max_height = rs.positive_.back().height;
  std::vector<int> per_height(max_height + 2, 0);
  for (const Root& r : rs.positive_) ++per_height[r.height];
  for (int m = 1; m <= max_height; ++m)
    for (int k = 0; k < per_height[m] - per_height[m + 1]; ++k) rs.exponents_.push_back(m);

  rs.weyl_order_ = 1;
  for (unsigned m : rs.exponents_) rs.weyl_order_ *= (m + 1);

  rs.form_.assign(n, IntVector(n, 0));
  for (const Root& r : rs.all_)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rs.form_[i][j] += r.coeffs[i] * r.coeffs[j];
  return rs;
}

namespace {

// Elements are identified by their image of the regular coweight
// (1, ..., 1). Its coordinates are root heights, so each fits in one byte.
std::string orbit_key(const IntVector& v) {
  std::string key(v.size(), '\0');
  for (std::size_t i = 0; i < v.size(); ++i) key[i] = static_cast<char>(v[i]);
  return key;
}

IntVector reflect(const IntMatrix& a, int i, IntVector y) {
  const std::int64_t yi = y[i];
  for (std::size_t j = 0; j < y.size(); ++j) y[j] -= yi * a[i][j];
  return y;
}

}  // namespace

std::vector<std::uint64_t> enumerate_finite_weyl(const RootSystem& rs, std::size_t budget) {
  if (rs.weyl_order() > budget)
    throw Error(ErrorKind::BudgetExceeded,
                "|W| = " + rs.weyl_order().str() + " exceeds budget " + std::to_string(budget));
  const int n = rs.rank();
  // The Cayley graph is bipartite by length parity, so a layer's neighbours
  // lie only in the previous or the next layer.
  std::unordered_set<std::string> previous;
  std::unordered_set<std::string> current;
  std::vector<IntVector> frontier{IntVector(n, 1)};
  current.insert(orbit_key(frontier.front()));
  std::vector<std::uint64_t> census;
  while (!frontier.empty()) {
    census.push_back(frontier.size());
    std::unordered_set<std::string> next_keys;
    std::vector<IntVector> next;
    for (const IntVector& v : frontier) {
      for (int i = 0; i < n; ++i) {
        IntVector w = reflect(rs.cartan(), i, v);
        std::string key = orbit_key(w);
        if (previous.count(key) || next_keys.count(key)) continue;
        next_keys.insert(std::move(key));
        next.push_back(std::move(w));
      }
    }
    previous = std::move(current);
    current = std::move(next_keys);
    frontier = std::move(next);
  }
  return census;
}

IntPolynomial weyl_poincare_polynomial(const RootSystem& rs) {
  IntPolynomial p = IntPolynomial::constant(1);
  for (unsigned m : rs.exponents()) p = p * IntPolynomial::geometric(m);
  return p;
}

}  // namespace buildvol
