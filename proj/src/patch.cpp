#include "qwsnm/patch.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwsnm {

namespace {

std::vector<int> grid_positions(int extent, int patch, int stride) {
  std::vector<int> pos;
  const int last = extent - patch;
  for (int p = 0; p <= last; p += stride) pos.push_back(p);
  if (pos.back() != last) pos.push_back(last);
  return pos;
}

}  // namespace

std::vector<Coord> select_keys(int m, int n, const PatchParams& params) {
  if (params.patch < 1 || params.stride < 1 || params.group < 1)
    throw std::invalid_argument("select_keys: invalid parameters");
  if (m < params.patch || n < params.patch)
    throw std::invalid_argument("select_keys: image smaller than patch");
  std::vector<int> rows = grid_positions(m, params.patch, params.stride);
  std::vector<int> cols = grid_positions(n, params.patch, params.stride);
  std::vector<Coord> keys;
  keys.reserve(rows.size() * cols.size());
  for (int r : rows)
    for (int c : cols) keys.push_back({r, c});
  return keys;
}

double patch_distance_sq(const PureQImage& img, Coord a, Coord b,
                         int patch_side) {
  double d = 0.0;
  for (int ch = 0; ch < 3; ++ch) {
    const Eigen::MatrixXd& p = img.channel(ch);
    d += (p.block(a.row, a.col, patch_side, patch_side) -
          p.block(b.row, b.col, patch_side, patch_side))
             .squaredNorm();
  }
  return d;
}

PatchGroup match_group(const PureQImage& img, Coord key,
                       const PatchParams& params) {
  const int m = static_cast<int>(img.rows());
  const int n = static_cast<int>(img.cols());
  const int w = params.patch;
  if (key.row < 0 || key.col < 0 || key.row + w > m || key.col + w > n)
    throw std::invalid_argument("match_group: key patch outside image");

  // Window of top-left candidates centered on the key top-left.
  const int lo = (params.window - 1) / 2;
  const int hi = params.window / 2;
  const int r0 = std::max(0, key.row - lo);
  const int r1 = std::min(m - w, key.row + hi);
  const int c0 = std::max(0, key.col - lo);
  const int c1 = std::min(n - w, key.col + hi);

  struct Scored {
    double dist;
    Coord at;
  };
  std::vector<Scored> cands;
  cands.reserve(static_cast<size_t>(r1 - r0 + 1) * (c1 - c0 + 1));
  for (int r = r0; r <= r1; ++r)
    for (int c = c0; c <= c1; ++c) {
      if (r == key.row && c == key.col) continue;
      cands.push_back({patch_distance_sq(img, key, {r, c}, w), {r, c}});
    }
  std::sort(cands.begin(), cands.end(), [](const Scored& a, const Scored& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.at.row != b.at.row) return a.at.row < b.at.row;
    return a.at.col < b.at.col;
  });

  std::vector<Coord> ordered;
  ordered.reserve(cands.size() + 1);
  ordered.push_back(key);
  for (const Scored& s : cands) ordered.push_back(s.at);

  PatchGroup group;
  group.key = key;
  group.members.resize(params.group);
  for (int t = 0; t < params.group; ++t)
    group.members[t] = ordered[t % ordered.size()];

  group.data = QMatrix(w * w, params.group);
  for (int t = 0; t < params.group; ++t) {
    const Coord at = group.members[t];
    for (int ch = 0; ch < 3; ++ch) {
      const auto block = img.channel(ch).block(at.row, at.col, w, w);
      for (int pc = 0; pc < w; ++pc)
        group.data.plane(ch + 1).col(t).segment(pc * w, w) = block.col(pc);
    }
  }
  return group;
}

PureQImage aggregate(
    const std::vector<std::pair<std::vector<Coord>, QMatrix>>& groups, int m,
    int n, int patch_side) {
  const int w = patch_side;
  QMatrix sum(m, n);
  Eigen::MatrixXd count = Eigen::MatrixXd::Zero(m, n);
  for (const auto& [members, data] : groups) {
    if (data.rows() != w * w ||
        data.cols() != static_cast<Eigen::Index>(members.size()))
      throw std::invalid_argument("aggregate: group shape mismatch");
    for (size_t t = 0; t < members.size(); ++t) {
      const Coord at = members[t];
      if (at.row < 0 || at.col < 0 || at.row + w > m || at.col + w > n)
        throw std::invalid_argument("aggregate: patch outside image");
      for (int l = 0; l < 4; ++l)
        for (int pc = 0; pc < w; ++pc)
          sum.plane(l).col(at.col + pc).segment(at.row, w) +=
              data.plane(l).col(static_cast<Eigen::Index>(t)).segment(pc * w,
                                                                      w);
      count.block(at.row, at.col, w, w).array() += 1.0;
    }
  }
  if ((count.array() < 0.5).any())
    throw std::invalid_argument("aggregate: uncovered pixel");
  for (int l = 0; l < 4; ++l)
    sum.plane(l) = sum.plane(l).cwiseQuotient(count);
  return PureQImage(std::move(sum));
}

}  // namespace qwsnm
