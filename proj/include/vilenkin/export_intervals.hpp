#pragma once

#include "vilenkin/cylinder_set.hpp"
#include "vilenkin/mask.hpp"

#include <iosfwd>
#include <string>

namespace vilenkin {

/// TSV rows `lo<TAB>hi<TAB>value` under the lambda* coordinate, increasing,
/// adjacent equal-value rows merged. Rationals print as `num/den` with the
/// denominator omitted when 1. Sets export with value 1.
void export_intervals(const CylinderSet& s, std::ostream& out);
void export_intervals(const StepTable& t, std::ostream& out);

void export_intervals_file(const CylinderSet& s, const std::string& path);
void export_intervals_file(const StepTable& t, const std::string& path);

} // namespace vilenkin
