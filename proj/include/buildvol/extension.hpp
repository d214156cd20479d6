#pragma once

#include <cstdint>

namespace buildvol {

/// Ramification data of a finite extension E/F: q is the residue field size
/// of F, e the ramification index and f the residue degree, n = e f.
struct ExtensionParams {
  std::int64_t q = 2;
  std::int64_t e = 1;
  std::int64_t f = 1;

  std::int64_t n() const noexcept { return e * f; }
  /// Residue field size of E.
  std::int64_t q_E() const;

  /// Throws DomainError unless q >= 2, e >= 1 and f >= 1.
  void validate() const;
};

}  // namespace buildvol
