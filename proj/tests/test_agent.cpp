#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "arching/agent.hpp"
#include "oracles.hpp"

using namespace arching;

namespace {

constexpr double kDeg = kPi / 180.0;

Agent make_agent(int id, Cell pos, double heading) {
  Agent a;
  a.id = id;
  a.pos = pos;
  a.heading = heading;
  return a;
}

bool in_cone_oracle(Cell self, double heading, Cell c, int radius) {
  return oracle::in_cone(self, heading, c, radius);
}

}  // namespace

TEST_CASE("distance similarity") {
  SimilaritySpec spec;
  spec.d_max = 3.0;
  CHECK(dimension_similarity(DimensionKind::Distance, 0.0, 0.0, spec) == 1.0);
  CHECK(dimension_similarity(DimensionKind::Distance, 0.0, 1.5, spec) == doctest::Approx(0.5));
  CHECK(dimension_similarity(DimensionKind::Distance, 0.0, 3.0, spec) == 0.0);
  CHECK(dimension_similarity(DimensionKind::Distance, 0.0, 7.0, spec) == 0.0);
  CHECK(dimension_similarity(DimensionKind::Distance, 2.0, 0.5, spec) == doctest::Approx(0.5));
}

TEST_CASE("heading similarity") {
  const SimilaritySpec spec;
  CHECK(dimension_similarity(DimensionKind::Heading, 1.0, 1.0, spec) == 1.0);
  CHECK(dimension_similarity(DimensionKind::Heading, 0.0, kPi / 2, spec) == doctest::Approx(0.5));
  CHECK(dimension_similarity(DimensionKind::Heading, 0.0, kPi, spec) == doctest::Approx(0.0));
  // Wraps around: 350 and 10 degrees are 20 degrees apart.
  CHECK(dimension_similarity(DimensionKind::Heading, 350 * kDeg, 10 * kDeg, spec) ==
        doctest::Approx(1.0 - 20.0 / 180.0));
}

TEST_CASE("unknown dimension names are configuration errors") {
  CHECK(parse_dimension_kind("distance") == DimensionKind::Distance);
  CHECK(parse_dimension_kind("heading") == DimensionKind::Heading);
  CHECK_THROWS_AS(parse_dimension_kind("velocity"), ConfigError);
  CHECK_THROWS_AS(
      dimension_similarity(static_cast<DimensionKind>(42), 0.0, 0.0, SimilaritySpec{}),
      ConfigError);
}

TEST_CASE("weighted similarity") {
  SimilaritySpec spec;
  spec.dimensions = {{DimensionKind::Distance, 0.6}, {DimensionKind::Heading, 0.4}};
  spec.d_max = 4.0;
  // Distance 2 -> 0.5, heading gap 135 degrees -> 0.25.
  const Agent x = make_agent(0, {5, 5}, 0.0);
  const Agent y = make_agent(1, {5, 7}, 135 * kDeg);
  CHECK(similarity(x, y, spec) == doctest::Approx(0.6 * 0.5 + 0.4 * 0.25));
  CHECK(similarity(x, y, spec) == doctest::Approx(0.4));

  CHECK(similarity(x, x, spec) == doctest::Approx(1.0));
  const Agent far = make_agent(2, {5, 20}, kPi);
  CHECK(similarity(x, far, spec) == doctest::Approx(0.0));
}

TEST_CASE("similarity is symmetric and bounded") {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> coord(0, 12);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  SimilaritySpec spec;
  for (int i = 0; i < 500; ++i) {
    const Agent a = make_agent(0, {coord(gen), coord(gen)}, angle(gen));
    const Agent b = make_agent(1, {coord(gen), coord(gen)}, angle(gen));
    const double s = similarity(a, b, spec);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(s == doctest::Approx(similarity(b, a, spec)).epsilon(1e-12));
  }
}

TEST_CASE("similarity settings validation") {
  SimilaritySpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.dimensions = {{DimensionKind::Distance, 0.7}, {DimensionKind::Heading, 0.7}};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.dimensions = {{DimensionKind::Distance, 1.5}, {DimensionKind::Heading, -0.5}};
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = SimilaritySpec{};
  spec.d_max = 0.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec = SimilaritySpec{};
  spec.trigger_threshold = 1.5;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("most similar neighbour") {
  SimilaritySpec spec;
  spec.dimensions = {{DimensionKind::Distance, 1.0}};
  spec.d_max = 10.0;
  const Agent self = make_agent(0, {10, 10}, 0.0);

  CHECK_FALSE(most_similar_neighbor(self, {}, spec).has_value());

  const std::vector<Agent> one{make_agent(4, {10, 12}, 0.0)};
  auto got = most_similar_neighbor(self, one, spec);
  REQUIRE(got);
  CHECK(got->agent.id == 4);
  CHECK(got->score == doctest::Approx(0.8));

  // Scores 0.2, 0.7, 0.7 for ids 5, 3, 9: the tie goes to id 3.
  const std::vector<Agent> three{make_agent(5, {10, 18}, 0.0), make_agent(9, {13, 10}, 0.0),
                                 make_agent(3, {10, 13}, 0.0)};
  got = most_similar_neighbor(self, three, spec);
  REQUIRE(got);
  CHECK(got->agent.id == 3);
  CHECK(got->score == doctest::Approx(0.7));
}

TEST_CASE("cone includes ahead and 45 degrees, excludes 90 degrees") {
  const auto g = build_world(19, 60, 7);
  const Agent a = make_agent(0, {9, 10}, 3 * kPi / 2);  // facing the exit wall
  const auto view = field_of_desire(a, g, 3);
  auto has = [&](Cell c) {
    return std::any_of(view.begin(), view.end(), [&](const ViewCell& v) { return v.cell == c; });
  };
  CHECK(has({9, 9}));
  CHECK(has({9, 7}));
  CHECK(has({10, 9}));
  CHECK(has({8, 9}));
  CHECK_FALSE(has({10, 10}));
  CHECK_FALSE(has({8, 10}));
  CHECK_FALSE(has({9, 11}));
  CHECK_FALSE(has({9, 6}));  // beyond the radius
  CHECK(view.front().cell == Cell{9, 9});
}

TEST_CASE("cone boundary at exactly 50 degrees is included") {
  const auto g = build_world(19, 60, 7);
  const Cell self{9, 10};
  const Cell edge{11, 11};
  const Agent a = make_agent(0, self, direction(self, edge) + 50 * kDeg);
  const auto view = field_of_desire(a, g, 3);
  CHECK(std::any_of(view.begin(), view.end(), [&](const ViewCell& v) { return v.cell == edge; }));
}

TEST_CASE("cone matches a dot-product oracle") {
  const auto g = build_world(19, 60, 7);
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::vector<double> headings;
  for (int k = 0; k < 8; ++k) headings.push_back(k * kPi / 4);
  for (int k = 0; k < 40; ++k) headings.push_back(angle(gen));
  for (const Cell self : {Cell{9, 10}, Cell{0, 1}, Cell{18, 30}, Cell{4, 58}}) {
    for (int radius = 1; radius <= 5; ++radius) {
      for (double h : headings) {
        const auto view = field_of_desire(make_agent(0, self, h), g, radius);
        std::set<Cell> got;
        for (const auto& v : view) got.insert(v.cell);
        std::set<Cell> expected;
        for (int y = self.y - 5; y <= self.y + 5; ++y) {
          for (int x = self.x - 5; x <= self.x + 5; ++x) {
            if (g.in_bounds({x, y}) && in_cone_oracle(self, h, {x, y}, radius)) {
              expected.insert({x, y});
            }
          }
        }
        CHECK(got == expected);
        for (std::size_t i = 1; i < view.size(); ++i) {
          CHECK_FALSE(view_order(view[i], view[i - 1]));
          CHECK(view[i - 1].distance <= view[i].distance + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("cone is mirror-symmetric about the heading") {
  const auto g = build_world(41, 60, 7);
  const Cell self{20, 20};
  // Reflection about a multiple of 45 degrees maps grid cells onto grid cells.
  for (int k = 0; k < 8; ++k) {
    const double h = k * kPi / 4;
    const auto view = field_of_desire(make_agent(0, self, h), g, 4);
    std::vector<double> left, right;
    for (const auto& v : view) {
      if (v.deviation > 1e-9) left.push_back(std::round(v.deviation * 1e6));
      if (v.deviation < -1e-9) right.push_back(std::round(-v.deviation * 1e6));
    }
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    CHECK(left == right);
  }
}

TEST_CASE("target is the nearest free cone cell") {
  auto g = build_world(19, 60, 7);
  const Agent a = make_agent(0, {9, 10}, 3 * kPi / 2);
  CHECK(choose_target_cell(a, g, 3) == Cell{9, 9});
  g.occupy({9, 9}, 1);
  const auto t = choose_target_cell(a, g, 3);
  REQUIRE(t);
  // Both diagonals sit at 45 degrees; the clockwise one (toward -x when
  // facing -y) comes first.
  CHECK(*t == Cell{8, 9});
}

TEST_CASE("equal-distance candidates prefer the smaller deviation") {
  auto g = build_world(19, 60, 7);
  const Cell self{5, 10};
  // All at distance sqrt(5): (7,11) lies 10 degrees off the heading, (7,9)
  // about 43 degrees and (6,12) about 47 degrees.
  const double h = direction(self, {7, 11}) - 10 * kDeg;
  const Agent a = make_agent(0, self, h);
  const auto view = field_of_desire(a, g, 3);
  int id = 1;
  for (const auto& v : view) {
    if (v.distance < std::sqrt(5.0) - 1e-9) g.occupy(v.cell, id++);
  }
  CHECK(choose_target_cell(view, g) == Cell{7, 11});
  g.occupy({7, 11}, id++);
  CHECK(choose_target_cell(view, g) == Cell{7, 9});
  g.occupy({7, 9}, id++);
  CHECK(choose_target_cell(view, g) == Cell{6, 12});
}

TEST_CASE("fully blocked cone yields no target") {
  auto g = build_world(19, 60, 7);
  const Agent a = make_agent(0, {9, 10}, 3 * kPi / 2);
  const auto view = field_of_desire(a, g, 3);
  int id = 1;
  for (const auto& v : view) g.occupy(v.cell, id++);
  CHECK_FALSE(choose_target_cell(view, g).has_value());
}

TEST_CASE("chosen targets are free and in the cone") {
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  std::bernoulli_distribution fill(0.6);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = build_world(19, 60, 7);
    int id = 1;
    for (int y = 1; y < 20; ++y) {
      for (int x = 0; x < 19; ++x) {
        if (Cell{x, y} != Cell{9, 10} && fill(gen)) g.occupy({x, y}, id++);
      }
    }
    const Agent a = make_agent(0, {9, 10}, angle(gen));
    const auto view = field_of_desire(a, g, 3);
    const auto t = choose_target_cell(view, g);
    if (!t) {
      for (const auto& v : view) CHECK_FALSE(g.is_free(v.cell));
      continue;
    }
    CHECK(g.is_free(*t));
    CHECK(in_cone_oracle(a.pos, a.heading, *t, 3));
    for (const auto& v : view) {
      if (v.distance < distance(a.pos, *t) - 1e-9) CHECK_FALSE(g.is_free(v.cell));
    }
  }
}

TEST_CASE("social comparison only intervenes below the trigger") {
  auto g = build_world(19, 60, 7);
  const SimilaritySpec spec;  // trigger 0.5
  const Agent self = make_agent(0, {9, 10}, 3 * kPi / 2);
  const auto view = field_of_desire(self, g, 3);
  const auto goal = choose_target_cell(view, g);
  REQUIRE(goal);

  CHECK(sct_adjust(self, std::nullopt, goal, view, g, spec) == goal);

  const Agent similar = make_agent(1, {9, 12}, 3 * kPi / 2);
  CHECK(sct_adjust(self, Comparison{similar, 0.9}, goal, view, g, spec) == goal);
  CHECK(sct_adjust(self, Comparison{similar, 0.5}, goal, view, g, spec) == goal);

  // A dissimilar agent two cells to the left pulls the target toward it.
  const Agent other = make_agent(2, {7, 9}, kPi / 2);
  const auto adjusted = sct_adjust(self, Comparison{other, 0.2}, goal, view, g, spec);
  REQUIRE(adjusted);
  double best = 1e9;
  for (const auto& v : view) {
    if (g.is_free(v.cell)) best = std::min(best, distance(v.cell, other.pos));
  }
  CHECK(distance(*adjusted, other.pos) == doctest::Approx(best));
  CHECK(g.is_free(*adjusted));
  CHECK(*adjusted == Cell{8, 9});
}

TEST_CASE("angle helpers") {
  CHECK(normalize_angle(-kPi / 2) == doctest::Approx(3 * kPi / 2));
  CHECK(normalize_angle(5 * kPi) == doctest::Approx(kPi));
  CHECK(signed_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(angular_difference(0.1, 2 * kPi - 0.1) == doctest::Approx(0.2));
  CHECK(direction({0, 0}, {0, -1}) == doctest::Approx(3 * kPi / 2));
  Agent a = make_agent(0, {9, 10}, 0.0);
  const auto g = build_world(19, 60, 7);
  aim_at_nearest_exit(a, g);
  CHECK(a.heading == doctest::Approx(3 * kPi / 2));
  Agent on_exit = make_agent(1, {9, 0}, 1.25);
  aim_at_nearest_exit(on_exit, g);
  CHECK(on_exit.heading == 1.25);
}
