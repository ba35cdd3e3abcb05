#pragma once

#include <filesystem>

#include "kronglm/array.hpp"

namespace kronglm::io {

/// Binary array container: magic "GLAM", format version u16, dimension
/// count u16, extents as u64, payload as little-endian f64 in column-major
/// order.
inline constexpr std::uint16_t kArrayFileVersion = 1;

void write_array(const std::filesystem::path& path, const DenseArray& array);
DenseArray read_array(const std::filesystem::path& path);

/// Headerless comma-separated numeric matrix; shape inferred from the
/// file.
Matrix read_csv_matrix(const std::filesystem::path& path);
void write_csv_matrix(const std::filesystem::path& path, const Matrix& m);

}  // namespace kronglm::io
