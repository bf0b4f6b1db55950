#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lacuna/field.hpp"

namespace lacuna {

// F2D1: "F2D1", u16 version (1), u32 width, u32 height, then width*height
// little-endian f64 (re, im) pairs in row-major order.
std::string encode_f2d1(const ComplexField& f);
ComplexField decode_f2d1(std::string_view bytes);

ComplexField read_f2d1(const std::filesystem::path& path);
void write_f2d1(const std::filesystem::path& path, const ComplexField& f);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary and renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace lacuna
