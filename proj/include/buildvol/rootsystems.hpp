#pragma once

#include "buildvol/bigint.hpp"
#include "buildvol/polynomial.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace buildvol {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;

enum class Family { A, B, C, D, E, F, G };

struct CartanType {
  Family family;
  int rank;

  std::string to_string() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

/// Parses "A2", "c2", "G2", ... Throws ParseError for malformed strings and
/// InvalidRank for a well-formed family/rank pair that is not an irreducible
/// type (D2, E5, F3, ...).
CartanType parse_cartan_type(std::string_view text);

/// Throws InvalidRank unless the type is one of the irreducible Dynkin types.
void validate_cartan_type(const CartanType& t);

/// A root together with its coroot.
///
/// Points of the apartment are written in the basis of fundamental coweights,
/// so a root is stored by its simple-root coefficients: these coefficients
/// are also exactly its values on the coweight basis, and alpha(x) is a plain
/// dot product. Coroots are apartment vectors and are stored in coweight
/// coordinates; coroot[j] = <alpha_j, coroot>.
struct Root {
  IntVector coeffs;
  IntVector coroot;
  int height = 0;
};

class RootSystem {
 public:
  const CartanType& type() const noexcept { return type_; }
  int rank() const noexcept { return type_.rank; }

  /// cartan()[i][j] = <alpha_i^vee, alpha_j>
  const IntMatrix& cartan() const noexcept { return cartan_; }
  /// Positive roots ordered by height, then lexicographically by coefficients.
  const std::vector<Root>& positive_roots() const noexcept { return positive_; }
  /// Positive roots followed by their negatives.
  const std::vector<Root>& roots() const noexcept { return all_; }
  const Root& simple_root(int i) const { return positive_.at(static_cast<std::size_t>(i)); }
  const Root& highest_root() const noexcept { return positive_.back(); }

  /// Half-sum of positive roots, as a functional on the apartment.
  const RationalVector& rho() const noexcept { return rho_; }
  /// Sum of positive roots; 2*rho with integer entries.
  const IntVector& two_rho() const noexcept { return two_rho_; }
  const std::vector<unsigned>& exponents() const noexcept { return exponents_; }
  const BigInt& weyl_order() const noexcept { return weyl_order_; }
  int coxeter_number() const noexcept { return highest_root().height + 1; }
  std::size_t num_positive_roots() const noexcept { return positive_.size(); }

  /// Gram matrix of the W-invariant form sum_{alpha in Phi} alpha(x) alpha(y)
  /// in coweight coordinates. Integer, symmetric, positive definite.
  const IntMatrix& invariant_form() const noexcept { return form_; }

  /// True when `coeffs` is the coefficient vector of a root.
  bool is_root(const IntVector& coeffs) const;

  friend RootSystem build_root_system(const CartanType& t);

 private:
  RootSystem() = default;

  CartanType type_{Family::A, 1};
  IntMatrix cartan_;
  std::vector<Root> positive_;
  std::vector<Root> all_;
  RationalVector rho_;
  IntVector two_rho_;
  std::vector<unsigned> exponents_;
  BigInt weyl_order_;
  IntMatrix form_;
};

IntMatrix cartan_matrix(const CartanType& t);

/// Positive roots are generated by closing the simple roots under simple
/// reflections; exponents come from the dual partition of the height
/// distribution.
RootSystem build_root_system(const CartanType& t);

inline constexpr std::size_t kDefaultFiniteWeylBudget = 10'000'000;

/// Number of elements of the finite Weyl group at each length, found by
/// breadth-first search over products of simple reflections. Throws
/// BudgetExceeded (reporting |W|) when |W| is larger than `budget`.
std::vector<std::uint64_t> enumerate_finite_weyl(const RootSystem& rs,
                                                 std::size_t budget = kDefaultFiniteWeylBudget);

/// W(q) = prod_i (1 - q^{m_i+1}) / (1 - q) = prod_i (1 + q + ... + q^{m_i}).
IntPolynomial weyl_poincare_polynomial(const RootSystem& rs);

Rational pair(const IntVector& root_coeffs, const RationalVector& point);
std::int64_t pair(const IntVector& root_coeffs, const IntVector& point);

}  // namespace buildvol
