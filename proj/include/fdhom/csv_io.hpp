#pragma once

#include <iosfwd>
#include <string>

#include "fdhom/curve.hpp"

namespace fdhom {

// Shortest round-tripping decimal representation of a double.
std::string format_double(double value);

// Load a functional sample from CSV. The header row is the grid; if its
// first cell is not a number it names a label column and every data row
// starts with a label. Lines starting with '#' are skipped. Errors carry
// 1-based file line and column positions.
FunctionalSample load_sample_csv(const std::string& path);
FunctionalSample parse_sample_csv(std::istream& in, const std::string& origin);

// Emit a sample in the same schema load_sample_csv reads. `manifest_line`,
// when non-empty, is written first as a '#' comment.
void save_sample_csv(std::ostream& out, const FunctionalSample& sample,
                     const std::string& manifest_line = {});

}  // namespace fdhom
