#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qwsnm/patch.hpp"
#include "synth_image.hpp"

using namespace qwsnm;
using testsupport::random_image;

TEST_CASE("select_keys covers the image") {
  PatchParams p{4, 8, 8, 4};

  auto keys = select_keys(8, 8, p);
  REQUIRE(keys.size() == 4);
  std::set<std::pair<int, int>> got;
  for (const Coord& k : keys) got.insert({k.row, k.col});
  CHECK(got == std::set<std::pair<int, int>>{{0, 0}, {0, 4}, {4, 0}, {4, 4}});

  // 9x9: last valid index 5 is appended
  keys = select_keys(9, 9, p);
  got.clear();
  for (const Coord& k : keys) got.insert({k.row, k.col});
  std::set<std::pair<int, int>> want;
  for (int r : {0, 4, 5})
    for (int c : {0, 4, 5}) want.insert({r, c});
  CHECK(got == want);

  // patch-sized image: single key
  keys = select_keys(4, 4, p);
  REQUIRE(keys.size() == 1);
  CHECK(keys[0] == Coord{0, 0});

  CHECK_THROWS_AS(select_keys(3, 8, p), std::invalid_argument);
}

TEST_CASE("match_group tie-break on a constant image") {
  PureQImage img(10, 10);
  for (int ch = 0; ch < 3; ++ch) img.channel(ch).setConstant(7.0);
  PatchParams p{3, 5, 6, 1};
  const PatchGroup g = match_group(img, {0, 0}, p);
  // all distances tie at 0: members are the first M window positions in
  // row-major order
  REQUIRE(g.members.size() == 5);
  CHECK(g.members[0] == Coord{0, 0});
  CHECK(g.members[1] == Coord{0, 1});
  CHECK(g.members[2] == Coord{0, 2});
  CHECK(g.members[3] == Coord{0, 3});
  CHECK(g.members[4] == Coord{1, 0});
}

TEST_CASE("an exact duplicate ranks immediately after the key") {
  PureQImage img = random_image(12, 12, 900);
  const int w = 3;
  // copy the key patch at (5,5) to (8,2)
  for (int ch = 0; ch < 3; ++ch)
    img.channel(ch).block(8, 2, w, w) = img.channel(ch).block(5, 5, w, w);
  PatchParams p{w, 4, 9, 1};
  const PatchGroup g = match_group(img, {5, 5}, p);
  CHECK(g.members[0] == Coord{5, 5});
  CHECK(g.members[1] == Coord{8, 2});
}

TEST_CASE("match_group equals the exhaustive oracle") {
  const PureQImage img = random_image(16, 16, 901);
  PatchParams p{4, 5, 8, 1};
  for (const Coord key : {Coord{0, 0}, Coord{6, 7}, Coord{12, 12}}) {
    const PatchGroup g = match_group(img, key, p);
    const std::vector<Coord> want = oracle::brute_match(img, key, p);
    REQUIRE(g.members.size() == want.size());
    for (size_t i = 0; i < want.size(); ++i) CHECK(g.members[i] == want[i]);
  }
}

TEST_CASE("group data stacks patches column-major and matches distances") {
  const PureQImage img = random_image(10, 10, 902);
  PatchParams p{3, 6, 8, 1};
  const PatchGroup g = match_group(img, {4, 4}, p);
  REQUIRE(g.data.rows() == 9);
  REQUIRE(g.data.cols() == 6);
  // column t, entry pc*w+pr equals pixel (row+pr, col+pc)
  for (size_t t = 0; t < g.members.size(); ++t)
    for (int pr = 0; pr < 3; ++pr)
      for (int pc = 0; pc < 3; ++pc) {
        const Quaternion got = g.data(pc * 3 + pr, t);
        const Coord at = g.members[t];
        CHECK(got.a0 == 0.0);
        CHECK(got.a1 == img.r()(at.row + pr, at.col + pc));
        CHECK(got.a2 == img.g()(at.row + pr, at.col + pc));
        CHECK(got.a3 == img.b()(at.row + pr, at.col + pc));
      }

  // stacked-column squared distance equals the pixelwise quaternion one
  for (size_t t = 1; t < g.members.size(); ++t) {
    double col_d = 0.0;
    for (int e = 0; e < 9; ++e)
      col_d += modulus_sq(g.data(e, t) - g.data(e, 0));
    CHECK(col_d == doctest::Approx(patch_distance_sq(
                       img, g.key, g.members[t], 3)).epsilon(1e-12));
  }
}

TEST_CASE("padding repeats the closest candidates cyclically") {
  const PureQImage img = random_image(6, 6, 903);
  PatchParams p{4, 7, 3, 1};  // clipped window: few candidates, M = 7
  const PatchGroup g = match_group(img, {0, 0}, p);
  REQUIRE(g.members.size() == 7);
  // window rows/cols [0, 1] -> 4 distinct candidates, then repeats
  CHECK(g.members[4] == g.members[0]);
  CHECK(g.members[5] == g.members[1]);
  CHECK(g.members[6] == g.members[2]);
}

TEST_CASE("aggregate") {
  SUBCASE("single exact tiling reproduces the image") {
    const PureQImage img = random_image(8, 8, 904);
    PatchParams p{4, 1, 4, 4};
    std::vector<std::pair<std::vector<Coord>, QMatrix>> groups;
    for (const Coord key : select_keys(8, 8, p)) {
      const PatchGroup g = match_group(img, key, p);
      groups.push_back({g.members, g.data});
    }
    const PureQImage out = aggregate(groups, 8, 8, 4);
    for (int ch = 0; ch < 3; ++ch)
      CHECK((out.channel(ch) - img.channel(ch)).cwiseAbs().maxCoeff() <=
            1e-12);
  }

  SUBCASE("two identical estimates average to the same value") {
    const PureQImage img = random_image(4, 4, 905);
    PatchParams p{4, 1, 4, 4};
    const PatchGroup g = match_group(img, {0, 0}, p);
    std::vector<std::pair<std::vector<Coord>, QMatrix>> groups{
        {g.members, g.data}, {g.members, g.data}};
    const PureQImage out = aggregate(groups, 4, 4, 4);
    for (int ch = 0; ch < 3; ++ch)
      CHECK((out.channel(ch) - img.channel(ch)).cwiseAbs().maxCoeff() <=
            1e-12);
  }

  SUBCASE("random overlaps match a scalar accumulation oracle") {
    const PureQImage img = random_image(8, 8, 906);
    PatchParams p{3, 4, 6, 2};
    std::vector<std::pair<std::vector<Coord>, QMatrix>> groups;
    for (const Coord key : select_keys(8, 8, p)) {
      const PatchGroup g = match_group(img, key, p);
      groups.push_back({g.members, g.data});
    }
    const PureQImage out = aggregate(groups, 8, 8, 3);

    for (int ch = 0; ch < 3; ++ch) {
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(8, 8);
      Eigen::MatrixXd cnt = Eigen::MatrixXd::Zero(8, 8);
      for (const auto& [members, data] : groups)
        for (size_t t = 0; t < members.size(); ++t)
          for (int pr = 0; pr < 3; ++pr)
            for (int pc = 0; pc < 3; ++pc) {
              sum(members[t].row + pr, members[t].col + pc) +=
                  data.plane(ch + 1)(pc * 3 + pr, t);
              cnt(members[t].row + pr, members[t].col + pc) += 1.0;
            }
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          CHECK(out.channel(ch)(i, j) ==
                doctest::Approx(sum(i, j) / cnt(i, j)).epsilon(1e-12));
    }
  }

  SUBCASE("uncovered pixels error") {
    const PureQImage img = random_image(8, 8, 907);
    PatchParams p{3, 1, 3, 1};
    const PatchGroup g = match_group(img, {0, 0}, p);
    std::vector<std::pair<std::vector<Coord>, QMatrix>> groups{
        {g.members, g.data}};
    CHECK_THROWS_AS(aggregate(groups, 8, 8, 3), std::invalid_argument);
  }
}

TEST_CASE("full-coverage round trip is exact") {
  const PureQImage img = random_image(11, 13, 908);
  PatchParams p{4, 6, 8, 2};
  std::vector<std::pair<std::vector<Coord>, QMatrix>> groups;
  for (const Coord key : select_keys(11, 13, p)) {
    const PatchGroup g = match_group(img, key, p);
    groups.push_back({g.members, g.data});
  }
  const PureQImage out = aggregate(groups, 11, 13, 4);
  for (int ch = 0; ch < 3; ++ch)
    CHECK((out.channel(ch) - img.channel(ch)).cwiseAbs().maxCoeff() <= 1e-12);
}
