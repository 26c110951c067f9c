#pragma once

#include "qwsnm/qmatrix.hpp"

namespace qwsnm {

struct QualityReport {
  double psnr = 0.0;  // dB; +inf when the images are identical
  double ssim = 0.0;
};

// 10 log10(255^2 / MSE) with the MSE taken jointly over all 3*m*n color
// samples of the values as given (no rounding inside; the CLI scores
// 8-bit-quantized data). MSE = 0 returns +inf.
double psnr(const PureQImage& ref, const PureQImage& test);

// Single-scale SSIM per channel (11x11 Gaussian window, std 1.5, K1 = 0.01,
// K2 = 0.03, dynamic range 255, valid-window statistics), averaged over the
// three channels. Images must be at least 11x11.
double ssim(const PureQImage& ref, const PureQImage& test);

QualityReport quality(const PureQImage& ref, const PureQImage& test);

// Clamp to [0, 255] and round to the 8-bit grid; saved outputs and all
// reported scores go through this.
PureQImage quantize_8bit(const PureQImage& img);

}  // namespace qwsnm
