#include "buildvol/extension.hpp"

#include "buildvol/errors.hpp"

#include <cmath>

namespace buildvol {

std::int64_t ExtensionParams::q_E() const {
  std::int64_t out = 1;
  for (std::int64_t i = 0; i < f; ++i) out *= q;
  return out;
}

void ExtensionParams::validate() const {
  if (q < 2) throw Error(ErrorKind::DomainError, "q must be at least 2");
  if (e < 1) throw Error(ErrorKind::DomainError, "e must be at least 1");
  if (f < 1) throw Error(ErrorKind::DomainError, "f must be at least 1");
  if (f > 62 || std::pow(static_cast<double>(q), static_cast<double>(f)) > 9.0e15)
    throw Error(ErrorKind::DomainError, "q^f does not fit in 64 bits");
}

}  // namespace buildvol
