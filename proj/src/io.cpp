#include "kronglm/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kronglm::io {

namespace {

constexpr char kMagic[4] = {'G', 'L', 'A', 'M'};

void put_u16(std::string& buf, std::uint16_t v) {
  buf.push_back(static_cast<char>(v & 0xff));
  buf.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void put_f64(std::string& buf, double x) {
  put_u64(buf, std::bit_cast<std::uint64_t>(x));
}

class Reader {
 public:
  Reader(const unsigned char* data, std::size_t size, std::string name)
      : data_(data), size_(size), name_(std::move(name)) {}

  std::uint16_t u16() {
    need(2);
    const std::uint16_t v = static_cast<std::uint16_t>(data_[pos_]) |
                            static_cast<std::uint16_t>(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(data_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    }
    pos_ += 8;
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  void raw(char* dst, std::size_t count) {
    need(count);
    std::memcpy(dst, data_ + pos_, count);
    pos_ += count;
  }

  std::size_t remaining() const { return size_ - pos_; }

 private:
  void need(std::size_t count) const {
    if (size_ - pos_ < count) {
      throw std::runtime_error(name_ + ": truncated array file");
    }
  }

  const unsigned char* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
  std::string name_;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

}  // namespace

void write_array(const std::filesystem::path& path, const DenseArray& array) {
  std::string buf;
  buf.reserve(16 + static_cast<std::size_t>(array.size()) * 8);
  buf.append(kMagic, 4);
  put_u16(buf, kArrayFileVersion);
  put_u16(buf, static_cast<std::uint16_t>(array.dims().ndim()));
  for (Index j = 0; j < array.dims().ndim(); ++j) {
    put_u64(buf, static_cast<std::uint64_t>(array.dims().extent(j)));
  }
  for (Index i = 0; i < array.size(); ++i) {
    put_f64(buf, array[i]);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

DenseArray read_array(const std::filesystem::path& path) {
  const std::string content = slurp(path);
  Reader r(reinterpret_cast<const unsigned char*>(content.data()), content.size(),
           path.string());
  char magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path.string() + ": not an array file (bad magic)");
  }
  const std::uint16_t version = r.u16();
  if (version != kArrayFileVersion) {
    throw std::runtime_error(path.string() + ": unsupported array file version " +
                             std::to_string(version));
  }
  const std::uint16_t ndim = r.u16();
  if (ndim == 0) {
    throw std::runtime_error(path.string() + ": array file with zero dimensions");
  }
  std::vector<Index> extents(ndim);
  for (std::uint16_t j = 0; j < ndim; ++j) {
    extents[j] = static_cast<Index>(r.u64());
  }
  ArrayDims dims(extents);
  if (r.remaining() != static_cast<std::size_t>(dims.size()) * 8) {
    throw std::runtime_error(path.string() + ": payload size does not match the extents");
  }
  DenseArray out(dims);
  for (Index i = 0; i < out.size(); ++i) {
    out[i] = r.f64();
  }
  return out;
}

Matrix read_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    const char* ptr = line.data();
    const char* end = line.data() + line.size();
    while (ptr < end) {
      double value = 0.0;
      const auto [next, ec] = std::from_chars(ptr, end, value);
      if (ec != std::errc()) {
        throw std::runtime_error(path.string() + ": malformed number in row " +
                                 std::to_string(rows.size() + 1));
      }
      row.push_back(value);
      ptr = next;
      if (ptr < end) {
        if (*ptr != ',') {
          throw std::runtime_error(path.string() + ": expected ',' in row " +
                                   std::to_string(rows.size() + 1));
        }
        ++ptr;
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error(path.string() + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::runtime_error(path.string() + ": empty matrix file");
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

void write_csv_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  char buf[40];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      out << buf;
      if (j + 1 < m.cols()) out << ',';
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace kronglm::io
