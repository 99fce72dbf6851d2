#pragma once

#include "vilenkin/mask.hpp"

#include <iosfwd>
#include <string>

namespace vilenkin {

/// Mask format, `#` comments:
///   p 2
///   n 2
///   a 0 1/2          # coefficient a_0 (rational, optional zeta coords)
///   a 3 1/2
/// or exclusively `v <cell> <value>` lines giving the p^n step values, from
/// which the coefficients are recovered by the exact inverse transform.
/// Unlisted entries are zero. Decimal literals are parsed exactly.
Mask parse_mask(std::istream& in);
Mask parse_mask_file(const std::string& path);
std::string format_mask(const Mask& m);

} // namespace vilenkin
