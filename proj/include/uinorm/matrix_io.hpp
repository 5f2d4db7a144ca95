#pragma once
//
// JSON matrix files: {"rows": R, "cols": C, "data": [[re, im], ...]} with
// data in row-major order. Kraus lists are {"kraus": [<matrix>, ...]}.
//

#include "uinorm/linalg.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace uinorm {

/// Throws ParseError on malformed text, wrong data length or non-finite entries.
ComplexMatrix parse_matrix(std::string_view text);
std::vector<ComplexMatrix> parse_kraus(std::string_view text);

/// Doubles are written in shortest round-trip form, so parse(format(q)) == q.
std::string format_matrix(const ComplexMatrix& q);
std::string format_kraus(const std::vector<ComplexMatrix>& kraus);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
std::vector<ComplexMatrix> read_kraus_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& q);

} // namespace uinorm
