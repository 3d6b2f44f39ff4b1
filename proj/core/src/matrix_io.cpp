#include "loopchain/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "loopchain/errors.hpp"

namespace loopchain {

namespace {

double parse_real(std::string_view text, std::string_view whole) {
    if (text.empty()) throw ParseError("malformed complex number '" + std::string(whole) + "'");
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("malformed complex number '" + std::string(whole) + "'");
    }
    return value;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Complex parse_complex(std::string_view token) {
    if (token.empty()) throw ParseError("empty complex number");
    if (token.back() != 'i') return {parse_real(token, token), 0.0};

    const std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that is neither leading nor an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const std::string_view real_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view imag_part = split == std::string_view::npos ? body : body.substr(split);

    double imag = 0.0;
    if (imag_part.empty() || imag_part == "+") {
        imag = 1.0;
    } else if (imag_part == "-") {
        imag = -1.0;
    } else {
        imag = parse_real(imag_part, token);
    }
    const double real = real_part.empty() ? 0.0 : parse_real(real_part, token);
    return {real, imag};
}

std::string format_complex(Complex z) {
    std::string out = format_real(z.real());
    const std::string im = format_real(z.imag());
    if (im.front() != '-') out += '+';
    out += im;
    out += 'i';
    return out;
}

ComplexMatrix read_matrix(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError("matrix file is empty");
    std::size_t dim = 0;
    {
        std::istringstream header(line);
        long long n = 0;
        std::string extra;
        if (!(header >> n) || (header >> extra) || n <= 0) {
            throw ParseError("line " + std::to_string(line_no) + ": expected a positive dimension N");
        }
        dim = static_cast<std::size_t>(n);
    }

    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (std::size_t row = 0; row < dim; ++row) {
        if (!next_line()) throw ParseError("matrix file ends after " + std::to_string(row) + " of " + std::to_string(dim) + " rows");
        std::istringstream fields(line);
        std::string token;
        std::size_t count = 0;
        while (fields >> token) {
            try {
                entries.push_back(parse_complex(token));
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
            ++count;
        }
        if (count != dim) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                             " entries, got " + std::to_string(count));
        }
    }
    try {
        return ComplexMatrix(dim, std::move(entries));
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    }
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
    out << m.dim() << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j) out << ' ';
            out << format_complex(m(i, j));
        }
        out << '\n';
    }
}

}  // namespace loopchain
