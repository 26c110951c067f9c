#pragma once

#include <string>

#include "qwsnm/qmatrix.hpp"

namespace qwsnm {

// 8-bit RGB(A) PNG; alpha is dropped on read, values land in [0, 255].
PureQImage read_png(const std::string& path);

// Clamps/rounds to 8-bit and writes RGB PNG. Encoding is deterministic.
void write_png(const std::string& path, const PureQImage& img);

// Lossless float sidecar so solver-level tests are not limited by 8-bit
// quantization. Layout: magic "QIMG1", rows and cols as 32-bit
// little-endian unsigned, then the R, G, B planes row-major as 64-bit
// little-endian IEEE doubles.
void write_sidecar(const std::string& path, const PureQImage& img);
PureQImage read_sidecar(const std::string& path);

// Reads a sidecar when the path ends in ".qimg", otherwise a PNG.
PureQImage read_image(const std::string& path);

}  // namespace qwsnm
