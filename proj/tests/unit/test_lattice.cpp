#include <gtest/gtest.h>

#include <set>

#include "convert.hpp"
#include "naive.hpp"
#include "rotorwalk/ball.hpp"
#include "rotorwalk/default_rule.hpp"
#include "rotorwalk/direction.hpp"
#include "rotorwalk/mechanism.hpp"
#include "rotorwalk/point.hpp"
#include "rotorwalk/rotor_state.hpp"

using namespace rotorwalk;

TEST(Direction, SetForD2IsDocumentedOrder) {
    const auto dirs = direction_set(2);
    ASSERT_EQ(dirs.size(), 4U);
    EXPECT_EQ(to_string(dirs[0]), "+e1");
    EXPECT_EQ(to_string(dirs[1]), "-e1");
    EXPECT_EQ(to_string(dirs[2]), "+e2");
    EXPECT_EQ(to_string(dirs[3]), "-e2");
}

TEST(Direction, SetForD3IsClosedUnderNegation) {
    const auto dirs = direction_set(3);
    ASSERT_EQ(dirs.size(), 6U);
    const std::set<Direction> all(dirs.begin(), dirs.end());
    EXPECT_EQ(all.size(), 6U);
    for (Direction d : dirs) {
        EXPECT_TRUE(all.count(d.negated()));
    }
}

TEST(Direction, DimensionOneRejected) {
    EXPECT_THROW(direction_set(1), std::invalid_argument);
    EXPECT_THROW(direction_set(9), std::invalid_argument);
}

TEST(Direction, NegationIsInvolution) {
    for (int d = 2; d <= kMaxDim; ++d) {
        for (Direction dir : direction_set(d)) {
            EXPECT_NE(dir.negated(), dir);
            EXPECT_EQ(dir.negated().negated(), dir);
            EXPECT_EQ(dir.negated().axis(), dir.axis());
            EXPECT_EQ(dir.negated().sign(), -dir.sign());
        }
    }
}

TEST(Direction, ParseAliasesAndErrors) {
    EXPECT_EQ(parse_direction("N", 2), Direction::positive(1));
    EXPECT_EQ(parse_direction("E", 2), Direction::positive(0));
    EXPECT_EQ(parse_direction("S", 2), Direction::negative(1));
    EXPECT_EQ(parse_direction("W", 2), Direction::negative(0));
    EXPECT_EQ(parse_direction("e3", 3), Direction::positive(2));
    EXPECT_EQ(parse_direction("-e3", 3), Direction::negative(2));
    EXPECT_THROW(parse_direction("N", 3), std::invalid_argument);
    EXPECT_THROW(parse_direction("+e4", 3), std::invalid_argument);
    EXPECT_THROW(parse_direction("x", 2), std::invalid_argument);
}

TEST(Point, ArithmeticIsOverflowChecked) {
    Point p{std::numeric_limits<Point::Coord>::max(), 0};
    EXPECT_THROW(p += Direction::positive(0), std::overflow_error);
    Point q{3000000000LL, 3000000000LL};
    EXPECT_THROW(q.norm2(), std::overflow_error);
    EXPECT_EQ((Point{1, 2} + Direction::negative(1)), (Point{1, 1}));
}

TEST(Mechanism, StandardD2IsClockwiseFromNorth) {
    const Mechanism m = Mechanism::standard(2);
    EXPECT_TRUE(m.is_cyclic());
    EXPECT_EQ(m, Mechanism::parse(2, "N,E,S,W"));
    EXPECT_EQ(m.to_string(), "+e2,+e1,-e2,-e1");
}

TEST(Mechanism, StandardD3FollowsEnumeration) {
    EXPECT_EQ(Mechanism::standard(3), Mechanism::parse(3, "+e1,-e1,+e2,-e2,+e3,-e3"));
}

TEST(Mechanism, DriftSequenceIsNonCyclic) {
    const Mechanism m = Mechanism::parse(2, "N,N,E,S,W");
    EXPECT_FALSE(m.is_cyclic());
    EXPECT_EQ(m.period(), 5U);
    EXPECT_EQ(Mechanism::parse(2, ""), Mechanism::standard(2));
    EXPECT_NO_THROW(Mechanism::parse(2, "default"));
}

TEST(Mechanism, DuplicateFreeButIncompleteIsNonCyclic) {
    EXPECT_FALSE(Mechanism::parse(2, "N,E,S").is_cyclic());
    EXPECT_FALSE(Mechanism::parse(2, "N,E,N,W").is_cyclic());
}

TEST(NextExit, FreshUpSiteReturnsNorthThenRotorIsEast) {
    RotorState s(Mechanism::standard(2), DefaultRule::up(2));
    const Point o = Point::origin(2);
    EXPECT_EQ(s.next_exit(o), Direction::positive(1));
    EXPECT_EQ(s.rotor(o), Direction::positive(0));
    EXPECT_TRUE(s.is_modified(o));
    EXPECT_EQ(s.column_frontier(ColumnKey::of(o)), 0);
}

TEST(NextExit, FullCycleVisitsEachDirectionOnceAndRestores) {
    for (int d = 2; d <= 4; ++d) {
        RotorState s(Mechanism::standard(d), DefaultRule::iid_random(d, 7));
        const Point x = Point::origin(d) + Direction::positive(0);
        const Direction start = s.rotor(x);
        std::set<Direction> seen;
        for (int i = 0; i < 2 * d; ++i) {
            seen.insert(s.next_exit(x));
        }
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(2 * d));
        EXPECT_EQ(s.rotor(x), start);
    }
}

TEST(NextExit, SplitRuleUsesUpperDirectionAboveAxis) {
    RotorState s(Mechanism::standard(3), DefaultRule::parse(3, "split:+e1,-e1"));
    EXPECT_EQ(s.next_exit(Point{0, 0, 5}), Direction::positive(0));
    EXPECT_EQ(s.next_exit(Point{0, 0, -1}), Direction::negative(0));
}

TEST(NextExit, FrontierTracksMaxModifiedHeight) {
    RotorState s(Mechanism::standard(2), DefaultRule::up(2));
    s.next_exit(Point{3, -2});
    s.next_exit(Point{3, 4});
    s.next_exit(Point{3, 1});
    EXPECT_EQ(s.column_frontier(ColumnKey::of(Point{3, 0})), 4);
    EXPECT_FALSE(s.column_frontier(ColumnKey::of(Point{2, 0})).has_value());
}

TEST(DefaultRule, DeterministicAndSeedDependent) {
    const DefaultRule a = DefaultRule::iid_random(3, 42);
    const DefaultRule b = DefaultRule::iid_random(3, 42);
    const DefaultRule c = DefaultRule::iid_random(3, 43);
    int differ = 0;
    std::array<int, 6> histogram{};
    for (int x = -10; x <= 10; ++x) {
        for (int y = -10; y <= 10; ++y) {
            const Point p{x, y, x - y};
            EXPECT_EQ(a(p), b(p));
            differ += a(p) != c(p) ? 1 : 0;
            ++histogram[static_cast<std::size_t>(a(p).index())];
        }
    }
    EXPECT_GT(differ, 300);
    for (int h : histogram) {
        EXPECT_GT(h, 441 / 6 / 2);
    }
}

TEST(DefaultRule, SpecRoundTrips) {
    for (const char* spec : {"up", "random:17", "aligned:-e1", "split:+e1,-e1"}) {
        const DefaultRule r = DefaultRule::parse(2, spec);
        EXPECT_EQ(DefaultRule::parse(2, r.spec()).spec(), r.spec()) << spec;
    }
    EXPECT_EQ(DefaultRule::parse(2, "random", 9).spec(), "random:9");
    EXPECT_TRUE(DefaultRule::parse(3, "up").is_aligned_up());
    EXPECT_TRUE(DefaultRule::parse(3, "aligned:+e3").is_aligned_up());
    EXPECT_FALSE(DefaultRule::parse(3, "aligned:+e2").is_aligned_up());
    EXPECT_THROW(DefaultRule::parse(2, "sideways"), std::invalid_argument);
    EXPECT_THROW(DefaultRule::parse(2, "random:abc"), std::invalid_argument);
}

TEST(Ball, SmallRadiusExamples) {
    EXPECT_TRUE(in_ball(Point{0, 0}, 1));
    EXPECT_FALSE(in_ball(Point{1, 0}, 1));
    EXPECT_TRUE(is_boundary(Point{1, 0}, 1));
    EXPECT_EQ(Ball(2, 1).points().size(), 1U);
    EXPECT_TRUE(in_ball(Point{1, 1}, 2));
    EXPECT_TRUE(is_boundary(Point{2, 0}, 2));
    EXPECT_FALSE(is_boundary(Point{2, 2}, 2));
    EXPECT_EQ(Ball(2, 2).points().size(), 9U);
}

// |x|^2 in {0, 1, 2, 3}: 1 + 6 + 12 + 8.
TEST(Ball, D3Radius2Has27Points) {
    EXPECT_EQ(oracle::ball_points(3, 2).size(), 27U);
    EXPECT_EQ(Ball(3, 2).points().size(), 27U);
}

TEST(Ball, MatchesExhaustiveEnumeration) {
    for (int d = 2; d <= 4; ++d) {
        for (long long r : {1LL, 2LL, 3LL, 5LL}) {
            std::vector<oracle::Vec> lib;
            for (const Point& p : Ball(d, r).points()) {
                lib.push_back(oracle::to_vec(p));
            }
            EXPECT_EQ(lib, oracle::ball_points(d, r)) << "d=" << d << " r=" << r;
        }
    }
}

TEST(Ball, BoundaryIsOutsideAndAdjacent) {
    const Ball b(3, 4);
    const auto pts = oracle::ball_points(3, 5);
    std::size_t count = 0;
    for (const auto& v : pts) {
        const Point p = oracle::to_point(v);
        bool adjacent = false;
        for (Direction d : direction_set(3)) {
            adjacent = adjacent || b.contains(p + d);
        }
        const bool expected = !b.contains(p) && adjacent;
        EXPECT_EQ(b.on_boundary(p), expected);
        count += expected ? 1 : 0;
    }
    EXPECT_EQ(b.boundary_points().size(), count);
}

TEST(Ball, NestingAndDefaultRadius) {
    for (int r = 1; r < 10; ++r) {
        for (const Point& p : Ball(2, r).points()) {
            EXPECT_TRUE(in_ball(p, r + 1));
        }
    }
    EXPECT_EQ(Ball::default_radius(2, 100), 100);
    EXPECT_EQ(Ball::default_radius(3, 100), 10);
    EXPECT_EQ(Ball::default_radius(3, 101), 11);
    EXPECT_EQ(Ball::default_radius(4, 1000), 10);
    EXPECT_EQ(Ball::with_real_radius(2, 2.1).radius(), 3);
    EXPECT_THROW(Ball(2, 0), std::invalid_argument);
}

TEST(SiteMap, SparseBlocksReadFillAndCopyDeeply) {
    SiteMap<int> m(2, -1, 2);
    EXPECT_EQ(m.get(Point{100, -100}), -1);
    m.ref(Point{100, -100}, 1) = 5;
    EXPECT_EQ(m.get(Point{100, -100}, 1), 5);
    EXPECT_EQ(m.get(Point{100, -100}, 0), -1);
    SiteMap<int> copy = m;
    copy.ref(Point{100, -100}, 1) = 6;
    EXPECT_EQ(m.get(Point{100, -100}, 1), 5);
    SiteMap<int> moved = std::move(copy);
    moved.ref(Point{0, 0}) = 1;
    int visited = 0;
    moved.for_each([&](const Point&, std::span<const int>) { ++visited; });
    EXPECT_EQ(visited, 2);
}
