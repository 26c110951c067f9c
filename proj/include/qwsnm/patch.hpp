#pragma once

#include <vector>

#include "qwsnm/qmatrix.hpp"

namespace qwsnm {

struct Coord {
  int row = 0;
  int col = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
};

// Nonlocal grouping parameters: patch side w, group size M, search window
// side W, and spacing of the key-patch grid.
struct PatchParams {
  int patch = 5;
  int group = 90;
  int window = 30;
  int stride = 2;
};

// One key patch's group: the M most similar patches inside the search
// window, stacked as vectorized columns (column-major pixel order within a
// patch) of a w^2 x M quaternion matrix. The key is always member 0.
struct PatchGroup {
  Coord key;
  std::vector<Coord> members;
  QMatrix data;
};

// Key-patch grid at the given stride, with the last valid index appended
// when the stride does not land on it, so every pixel is covered by at
// least one key patch.
std::vector<Coord> select_keys(int m, int n, const PatchParams& params);

// Block matching around one key. Candidates are all fully-inside patches
// whose top-left lies in the W x W window centered on the key top-left
// (clipped at borders); they are ranked by squared quaternion Frobenius
// distance to the key patch, ties by row-major coordinate order. If the
// window holds fewer than M candidates the closest ones repeat cyclically.
PatchGroup match_group(const PureQImage& img, Coord key,
                       const PatchParams& params);

// Per-pixel average of all patch estimates; every pixel must receive at
// least one contribution. The real plane of the result is projected away.
PureQImage aggregate(
    const std::vector<std::pair<std::vector<Coord>, QMatrix>>& groups, int m,
    int n, int patch_side);

// Squared quaternion Frobenius distance between two patches, used by the
// matcher; exposed for the distance-consistency tests.
double patch_distance_sq(const PureQImage& img, Coord a, Coord b,
                         int patch_side);

}  // namespace qwsnm
