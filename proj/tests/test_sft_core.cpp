#include <doctest.h>

#include <set>

#include "smale/sft_core.hpp"
#include "support.hpp"

using namespace smale;
using fixture::Gen;

TEST_SUITE("sft_core") {

TEST_CASE("shift construction validates the graph") {
  CHECK_THROWS_AS(EdgeShift::from_adjacency({}), InvalidShift);
  CHECK_THROWS_AS(EdgeShift::from_adjacency({{1, 0}, {0, 1}}), InvalidShift);
  CHECK_THROWS_AS(EdgeShift::from_adjacency({{1, 1}, {0, 0}}), InvalidShift);
  auto s = EdgeShift::from_adjacency({{1, 1}, {1, 0}});
  CHECK(s->edge_count() == 3);
  CHECK(s->composes(0, 1));
  CHECK(s->composes(1, 2));
  CHECK_FALSE(s->composes(1, 1));
  CHECK(s->is_cycle(Word{1, 2}));
  CHECK_FALSE(s->is_cycle(Word{1}));
  CHECK_THROWS_AS(make_orbit(s, {1}), InvalidPath);
}

TEST_CASE("orbits are identified up to rotation and repetition") {
  auto s = EdgeShift::from_adjacency({{1, 1}, {1, 0}});
  CHECK(same_orbit(make_orbit(s, {1, 2}), make_orbit(s, {2, 1})));
  CHECK(same_orbit(make_orbit(s, {1, 2, 1, 2}), make_orbit(s, {1, 2})));
  CHECK_FALSE(same_orbit(make_orbit(s, {0}), make_orbit(s, {1, 2})));
}

TEST_CASE("metric examples") {
  auto r = fixture::full_shift(2);
  // ...111.1000... and ...111.1100...
  auto x = fixture::point_of(r, 0, {1});
  auto y = fixture::point_of(r, 0, {1, 1});
  CHECK(metric(x, x) == 0.0);
  CHECK(metric(x, y) == doctest::Approx(0.5));
  auto z = fixture::point_of(r, 0, {0});
  CHECK(metric(x, z) == doctest::Approx(1.0));
  CHECK(first_difference(x, y) == Coord{1});
}

TEST_CASE("shift examples") {
  auto r = fixture::golden_mean();
  auto x = fixture::point_of(r, -2, {1, 2, 0, 1, 2});
  CHECK(shift(x, 0) == x);
  auto p = HeteroclinicPoint::periodic(Tail::make(r.Q[0], 0));
  CHECK(shift(p, 2) == p);
  CHECK_FALSE(shift(p, 1) == p);
  for (Coord n = -10; n <= 10; ++n) CHECK(shift(x, 3).at(n) == x.at(n + 3));
}

TEST_CASE("bracket examples") {
  auto r = fixture::full_shift(2);
  // x_n = 1 for n <= 0, 0 afterwards; y_n = 0 for n < 0, 1 for n >= 0.
  auto x = fixture::point_of(r, 0, {1});
  auto y = HeteroclinicPoint::from_window(Tail::make(r.P[0], 0), Tail::make(r.Q[0], 0), 0, {});
  auto z = bracket(x, y);
  for (Coord n = -20; n <= 20; ++n) CHECK(z.at(n) == (n == 0 ? 1u : 0u));
  CHECK(bracket(x, x) == x);
  auto u = fixture::point_of(r, 0, {0});
  CHECK_THROWS_AS(bracket(x, u), BracketUndefined);
}

TEST_CASE("enumeration of the full 2-shift") {
  auto r = fixture::full_shift(2);
  // cores of length L >= 2 start with 0 and end with 1: 2^{L-2} of them,
  // plus the bare transition ...111|000...
  for (std::size_t m = 0; m <= 8; ++m) {
    auto points = enumerate_heteroclinic(r.P, r.Q, m);
    const std::size_t expected = m < 2 ? 1 : (std::size_t{1} << (m - 1));
    CHECK(points.size() == expected);
  }
  auto s = r.shift;
  auto p = std::vector<OrbitRef>{make_orbit(s, {0})};
  CHECK_THROWS_AS(enumerate_heteroclinic(p, p, 0), OverlappingOrbitSets);
}

TEST_CASE("enumeration matches a word-by-word oracle") {
  for (const auto& r : fixture::references()) {
    CAPTURE(r.name);
    const std::size_t m = 6;
    std::set<HeteroclinicPoint> listed;
    for (const auto& x : enumerate_heteroclinic(r.P, r.Q, m)) {
      CHECK(listed.insert(x).second);
      CHECK(x.break_index() == 0);
    }
    // Every representative: a Q-tail below, any path on [-L, 0), a P-tail
    // from 0 on, keeping only canonical ones with break index 0.
    std::set<HeteroclinicPoint> oracle;
    for (const Tail& q : all_tails(r.Q)) {
      for (const Tail& p : all_tails(r.P)) {
        for (std::size_t len = 0; len <= m; ++len) {
          Word w(len, 0);
          std::function<void(std::size_t)> walk = [&](std::size_t i) {
            if (i == len) {
              try {
                auto x = HeteroclinicPoint::from_window(q, p, -static_cast<Coord>(len), w);
                if (x.break_index() == 0 && x.core().size() <= m) oracle.insert(x);
              } catch (const InvalidPath&) {
              }
              return;
            }
            for (EdgeId e = 0; e < r.shift->edge_count(); ++e) {
              w[i] = e;
              walk(i + 1);
            }
          };
          walk(0);
        }
      }
    }
    CHECK(listed == oracle);
  }
}

TEST_CASE("golden-mean enumeration avoids the forbidden word") {
  auto r = fixture::golden_mean();
  for (const auto& x : enumerate_heteroclinic(r.P, r.Q, 3))
    for (Coord n = -12; n <= 12; ++n) CHECK(r.shift->composes(x.at(n), x.at(n + 1)));
}

TEST_CASE("property: bracket axioms and equivariance") {
  for (const auto& r : fixture::references()) {
    Gen gen(11);
    int tested = 0;
    for (int i = 0; i < 400; ++i) {
      auto x = gen.point(r), y = gen.point(r), z = gen.point(r);
      if (x.at(0) != y.at(0) || y.at(0) != z.at(0)) continue;
      ++tested;
      CHECK(bracket(x, x) == x);
      CHECK(bracket(x, bracket(y, z)) == bracket(x, z));
      CHECK(bracket(bracket(x, y), z) == bracket(x, z));
      if (x.at(1) == y.at(1)) CHECK(bracket(shift(x, 1), shift(y, 1)) == shift(bracket(x, y), 1));
      auto b = bracket(x, y);
      CHECK(fixture::agree(b, [&](Coord n) { return n >= 0 ? x.at(n) : y.at(n); }));
    }
    CHECK(tested > 20);
  }
}

TEST_CASE("property: canonical forms") {
  for (const auto& r : fixture::references()) {
    Gen gen(12);
    for (int i = 0; i < 300; ++i) {
      auto x = gen.point(r), y = gen.point(r);
      CHECK(canonicalize(canonicalize(x)) == canonicalize(x));
      CHECK(canonicalize(x) == x);
      CHECK((metric(x, y) == 0.0) == (x == y));
      CHECK((x == y) == fixture::agree(x, fixture::coords(y)));
      CHECK(metric(x, y) == metric(y, x));
      auto k = gen.between(-5, 5);
      CHECK(shift(shift(x, k), -k) == x);
      CHECK(fixture::agree(shift(x, k), fixture::shifted(fixture::coords(x), k)));
    }
  }
}

TEST_CASE("property: ultrametric inequality") {
  for (const auto& r : fixture::references()) {
    Gen gen(13);
    for (int i = 0; i < 300; ++i) {
      auto x = gen.point(r), y = gen.point(r), z = gen.point(r);
      CHECK(metric(x, z) <= std::max(metric(x, y), metric(y, z)));
    }
  }
}

TEST_CASE("property: expansiveness on local stable and unstable sets") {
  for (const auto& r : fixture::references()) {
    Gen gen(14);
    for (int i = 0; i < 300; ++i) {
      auto y = gen.point(r);
      auto z = gen.stable_neighbour(r, y, 0);
      if (y == z) continue;
      CHECK(metric(shift(y, 1), shift(z, 1)) <= 0.5 * metric(y, z));
      HeteroclinicPoint u = y;
      try {
        u = splice(y, gen.point(r), 1);
      } catch (const InvalidPath&) {
      }
      if (u == y) continue;
      CHECK(metric(shift(y, -1), shift(u, -1)) <= 0.5 * metric(y, u));
    }
  }
}

TEST_CASE("property: heteroclinic tails") {
  for (const auto& r : fixture::references()) {
    for (const auto& x : enumerate_heteroclinic(r.P, r.Q, 5)) {
      CHECK(fixture::follows_p_from(r.P, fixture::coords(x), x.break_index()));
      CHECK(fixture::follows_p_from(r.Q, fixture::shifted(fixture::coords(x), -200), x.core_start() + 200 - 64));
    }
  }
}

}  // TEST_SUITE
