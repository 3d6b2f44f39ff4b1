#pragma once

// Plain-text matrix files: first line N, then N lines of N whitespace
// separated complex entries written as a+bi (e.g. "0.5", "-2i", "1-0.25i").

#include <iosfwd>
#include <string>
#include <string_view>

#include "loopchain/linalg.hpp"

namespace loopchain {

/// Parses a single a+bi token. Throws ParseError on malformed input.
Complex parse_complex(std::string_view token);

/// Full-precision a+bi text, e.g. "0.5+0i" or "1-2.5i".
std::string format_complex(Complex z);

ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const ComplexMatrix& m);

}  // namespace loopchain
