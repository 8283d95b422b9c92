/* SPDX-FileCopyrightText: Copyright (c) 2026, the meltsph authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "meltsph/neighbors.hpp"

using namespace meltsph;
using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

namespace {

// O(N^2) minimum-image reference
template <int D>
std::set<std::pair<int, int>> brute_force_pairs(const std::vector<Vec<D>>& pos, double r_c,
                                                const DomainBox<D>& box) {
  std::set<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(pos.size()); ++i)
    for (int j = 0; j < static_cast<int>(pos.size()); ++j) {
      if (i == j) continue;
      Vec<D> d = pos[i] - pos[j];
      for (int a = 0; a < D; ++a) {
        if (!box.periodic[a]) continue;
        const double len = box.length(a);
        d[a] -= len * std::nearbyint(d[a] / len);
      }
      if (d.norm() < r_c) pairs.insert({i, j});
    }
  return pairs;
}

}  // namespace

TEST_CASE("two-particle distances: inside and outside the support radius") {
  DomainBox<2> box{Vec2(0, 0), Vec2(10, 10), {false, false}};
  const double r_c = 2.0;
  {
    std::vector<Vec2> pos = {{4.0, 5.0}, {5.0, 5.0}};  // distance 0.5 r_c
    NeighborIndex<2> idx(pos, r_c, box);
    CHECK(idx.neighbors_of(0).size() == 1);
    CHECK(std::get<0>(idx.neighbors_of(0)[0]) == 1);
    CHECK(std::get<2>(idx.neighbors_of(0)[0]) == doctest::Approx(1.0));
  }
  {
    std::vector<Vec2> pos = {{2.0, 5.0}, {5.0, 5.0}};  // distance 1.5 r_c
    NeighborIndex<2> idx(pos, r_c, box);
    CHECK(idx.neighbors_of(0).empty());
    CHECK(idx.neighbors_of(1).empty());
  }
}

TEST_CASE("periodic seam: image distance and offset") {
  DomainBox<2> box{Vec2(0, 0), Vec2(10, 10), {true, false}};
  const double r_c = 2.0;
  std::vector<Vec2> pos = {{0.3, 5.0}, {9.7, 5.0}};  // image distance 0.6 = 0.3 r_c
  NeighborIndex<2> idx(pos, r_c, box);
  auto nb = idx.neighbors_of(0);
  REQUIRE(nb.size() == 1);
  CHECK(std::get<0>(nb[0]) == 1);
  CHECK(std::get<2>(nb[0]) == doctest::Approx(0.6));
  CHECK(std::get<1>(nb[0]).x() == doctest::Approx(0.6));  // i sits on the +x side of the image
  CHECK(std::get<1>(nb[0]).y() == doctest::Approx(0.0));
}

TEST_CASE("isolated particle has no neighbors") {
  DomainBox<2> box{Vec2(0, 0), Vec2(10, 10), {false, false}};
  std::vector<Vec2> pos = {{5.0, 5.0}, {1.0, 1.0}};
  NeighborIndex<2> idx(pos, 1.0, box);
  CHECK(idx.neighbors_of(0).empty());
}

TEST_CASE("particle outside a non-periodic domain is an error naming the particle") {
  DomainBox<2> box{Vec2(0, 0), Vec2(10, 10), {false, false}};
  std::vector<Vec2> pos = {{5.0, 5.0}, {11.0, 5.0}};
  try {
    NeighborIndex<2> idx(pos, 1.0, box);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& err) {
    CHECK(std::string(err.what()).find("particle 1") != std::string::npos);
  }
}

TEST_CASE("invalid particle id is an error") {
  DomainBox<2> box{Vec2(0, 0), Vec2(10, 10), {false, false}};
  std::vector<Vec2> pos = {{5.0, 5.0}};
  NeighborIndex<2> idx(pos, 1.0, box);
  CHECK_THROWS_AS(idx.neighbors_of(3), std::out_of_range);
  CHECK_THROWS_AS(idx.neighbors_of(-1), std::out_of_range);
}

TEST_CASE("lattice stencil counts at dx = h, kappa = 3") {
  // 2D: integer points with |p| < 3 excluding self -> 24
  DomainBox<2> box{Vec2(0, 0), Vec2(13, 13), {false, false}};
  std::vector<Vec2> pos;
  for (int i = 0; i < 13; ++i)
    for (int j = 0; j < 13; ++j) pos.push_back(Vec2(0.5 + i, 0.5 + j));
  NeighborIndex<2> idx(pos, 3.0, box);
  const int center = 6 * 13 + 6;
  CHECK(idx.neighbors_of(center).size() == 24);

  // 3D: 92
  DomainBox<3> box3{Vec3(0, 0, 0), Vec3(13, 13, 13), {false, false, false}};
  std::vector<Vec3> pos3;
  for (int i = 0; i < 13; ++i)
    for (int j = 0; j < 13; ++j)
      for (int k = 0; k < 13; ++k) pos3.push_back(Vec3(0.5 + i, 0.5 + j, 0.5 + k));
  NeighborIndex<3> idx3(pos3, 3.0, box3);
  CHECK(idx3.neighbors_of((6 * 13 + 6) * 13 + 6).size() == 92);
}

TEST_CASE("exact agreement with the brute-force oracle on random clouds") {
  std::mt19937 rng(31);
  for (int seed = 0; seed < 100; ++seed) {
    DomainBox<2> box{Vec2(0, 0), Vec2(7.0, 5.0), {seed % 2 == 0, seed % 3 == 0}};
    std::uniform_real_distribution<double> ux(0.0, 7.0), uy(0.0, 5.0);
    std::vector<Vec2> pos;
    const int n = 100 + seed;
    for (int i = 0; i < n; ++i) pos.push_back(Vec2(ux(rng), uy(rng)));
    const double r_c = 0.9;

    NeighborIndex<2> idx(pos, r_c, box);
    std::set<std::pair<int, int>> found;
    for (int i = 0; i < n; ++i)
      idx.for_each_neighbor(i, [&](int j, const Vec2& rij, double r) {
        CHECK(r == doctest::Approx(rij.norm()).epsilon(1e-14));
        CHECK(r < r_c);
        const bool inserted = found.insert({i, j}).second;
        CHECK(inserted);  // exactly once per direction
      });
    CHECK(found == brute_force_pairs<2>(pos, r_c, box));
  }
}

TEST_CASE("brute-force agreement in 3D with periodicity") {
  std::mt19937 rng(77);
  for (int seed = 0; seed < 10; ++seed) {
    DomainBox<3> box{Vec3(0, 0, 0), Vec3(4, 4, 4), {true, seed % 2 == 0, true}};
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::vector<Vec3> pos;
    for (int i = 0; i < 200; ++i) pos.push_back(Vec3(u(rng), u(rng), u(rng)));
    NeighborIndex<3> idx(pos, 1.1, box);
    std::set<std::pair<int, int>> found;
    for (int i = 0; i < 200; ++i)
      idx.for_each_neighbor(i, [&](int j, const Vec3&, double) { found.insert({i, j}); });
    CHECK(found == brute_force_pairs<3>(pos, 1.1, box));
  }
}
