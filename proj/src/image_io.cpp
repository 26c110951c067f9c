#include "qwsnm/image_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qwsnm/metrics.hpp"

namespace qwsnm {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void put_u32_le(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

static_assert(sizeof(double) == 8, "sidecar format needs 64-bit doubles");

}  // namespace

PureQImage read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("cannot open " + path);
  png_byte header[8];
  if (std::fread(header, 1, 8, fp.get()) != 8 ||
      png_sig_cmp(header, 0, 8) != 0)
    throw std::runtime_error(path + " is not a PNG file");

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("failed to decode " + path);
  }
  png_init_io(png, fp.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  // Normalize everything to 8-bit RGB.
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_palette_to_rgb(png);
  if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
      png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA)
    png_set_gray_to_rgb(png);
  if (png_get_bit_depth(png, info) < 8) png_set_expand(png);
  png_read_update_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  if (png_get_channels(png, info) != 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error(path + ": expected RGB after normalization");
  }

  std::vector<png_byte> data(static_cast<size_t>(w) * h * 3);
  std::vector<png_bytep> rows(h);
  for (png_uint_32 i = 0; i < h; ++i) rows[i] = data.data() + i * w * 3;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  PureQImage img(h, w);
  for (png_uint_32 i = 0; i < h; ++i)
    for (png_uint_32 j = 0; j < w; ++j)
      for (int ch = 0; ch < 3; ++ch)
        img.channel(ch)(i, j) = data[(i * w + j) * 3 + ch];
  return img;
}

void write_png(const std::string& path, const PureQImage& img) {
  const PureQImage q = quantize_8bit(img);
  const auto h = static_cast<png_uint_32>(q.rows());
  const auto w = static_cast<png_uint_32>(q.cols());

  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("libpng init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("failed to encode " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<png_byte> row(static_cast<size_t>(w) * 3);
  for (png_uint_32 i = 0; i < h; ++i) {
    for (png_uint_32 j = 0; j < w; ++j)
      for (int ch = 0; ch < 3; ++ch)
        row[j * 3 + ch] = static_cast<png_byte>(q.channel(ch)(i, j));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void write_sidecar(const std::string& path, const PureQImage& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.write("QIMG1", 5);
  put_u32_le(os, static_cast<std::uint32_t>(img.rows()));
  put_u32_le(os, static_cast<std::uint32_t>(img.cols()));
  for (int ch = 0; ch < 3; ++ch)
    for (Eigen::Index i = 0; i < img.rows(); ++i)
      for (Eigen::Index j = 0; j < img.cols(); ++j) {
        const double v = img.channel(ch)(i, j);
        os.write(reinterpret_cast<const char*>(&v), 8);
      }
  if (!os) throw std::runtime_error("short write: " + path);
}

PureQImage read_sidecar(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[5];
  is.read(magic, 5);
  if (!is || std::memcmp(magic, "QIMG1", 5) != 0)
    throw std::runtime_error(path + ": bad sidecar magic");
  const std::uint32_t m = get_u32_le(is);
  const std::uint32_t n = get_u32_le(is);
  PureQImage img(m, n);
  for (int ch = 0; ch < 3; ++ch)
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        double v;
        is.read(reinterpret_cast<char*>(&v), 8);
        img.channel(ch)(i, j) = v;
      }
  if (!is) throw std::runtime_error(path + ": truncated sidecar");
  return img;
}

PureQImage read_image(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".qimg")
    return read_sidecar(path);
  return read_png(path);
}

}  // namespace qwsnm
