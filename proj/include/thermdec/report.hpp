#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Deterministic text formatting shared by the CLI writers.  All numbers are
// rendered with %.17g and the C locale so runs are byte-stable across
// machines and thread counts.

namespace thermdec::report {

std::string fmt17(double x);

std::string csv_row(const std::vector<double>& cells);

std::uint64_t fnv1a64(const std::string& text);

// Writes text to path, creating parent directories.  Always uses "\n".
void write_text_file(const std::string& path, const std::string& text);

}  // namespace thermdec::report
