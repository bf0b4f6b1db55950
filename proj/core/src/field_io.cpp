#include "lacuna/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lacuna/errors.hpp"

namespace lacuna {

namespace {

static_assert(std::endian::native == std::endian::little, "F2D1 I/O assumes a little-endian host");

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T get(std::string_view bytes, std::size_t& pos) {
  if (pos + sizeof(T) > bytes.size()) throw ValidationError("F2D1 data truncated");
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

std::string encode_f2d1(const ComplexField& f) {
  std::string out = "F2D1";
  out.reserve(14 + f.count() * 16);
  put<std::uint16_t>(out, 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.size()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.size()));
  for (const auto& z : f.values()) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  return out;
}

ComplexField decode_f2d1(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != "F2D1") throw ValidationError("not an F2D1 file (bad magic)");
  std::size_t pos = 4;
  auto version = get<std::uint16_t>(bytes, pos);
  if (version != 1) throw ValidationError("unsupported F2D1 version " + std::to_string(version));
  auto width = get<std::uint32_t>(bytes, pos);
  auto height = get<std::uint32_t>(bytes, pos);
  if (width != height) throw ValidationError("F2D1 field is not square");
  if (!is_valid_grid_size(width)) throw ValidationError("F2D1 width must be a power of two >= 32");
  const std::size_t n = width;
  if (bytes.size() != pos + n * n * 16) throw ValidationError("F2D1 payload length does not match dimensions");
  Buffer data(n * n);
  for (auto& z : data) {
    double re = get<double>(bytes, pos);
    double im = get<double>(bytes, pos);
    z = {re, im};
  }
  return ComplexField(n, std::move(data));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("failed writing " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

ComplexField read_f2d1(const std::filesystem::path& path) { return decode_f2d1(read_file(path)); }

void write_f2d1(const std::filesystem::path& path, const ComplexField& f) {
  write_file_atomic(path, encode_f2d1(f));
}

}  // namespace lacuna
