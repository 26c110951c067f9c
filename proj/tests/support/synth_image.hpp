#pragma once

#include <cstdint>

#include "qwsnm/qmatrix.hpp"

namespace qwsnm::testsupport {

// Deterministic natural-looking RGB test scene: smooth sky-like gradients,
// a few colored shapes with hard edges, and a repeating texture band, so
// nonlocal grouping has real self-similarity to exploit. Values are
// integers in [0, 255].
PureQImage synth_image(int rows, int cols, std::uint64_t seed);

// Random quaternion matrix with N(0,1) components in all four planes.
QMatrix random_qmatrix(int rows, int cols, std::uint64_t seed);

// Random pure image with channels uniform in [lo, hi].
PureQImage random_image(int rows, int cols, std::uint64_t seed,
                        double lo = 0.0, double hi = 255.0);

}  // namespace qwsnm::testsupport
