#include <gtest/gtest.h>

#include "convert.hpp"
#include "naive.hpp"
#include "rotorwalk/engine.hpp"

using namespace rotorwalk;

namespace {

Mechanism m2() { return Mechanism::standard(2); }

}  // namespace

TEST(Step, UpConfigFirstStepGoesNorth) {
    RotorState s(m2(), DefaultRule::up(2));
    EXPECT_EQ(step(s, Point{0, 0}), (Point{0, 1}));
    EXPECT_EQ(s.rotor(Point{0, 0}), Direction::positive(0));
}

TEST(Step, FourStepsFromOneSiteReachEachNeighbour) {
    RotorState s(m2(), DefaultRule::iid_random(2, 3));
    std::set<Point> targets;
    for (int i = 0; i < 4; ++i) {
        targets.insert(step(s, Point{2, 2}));
    }
    EXPECT_EQ(targets, (std::set<Point>{{3, 2}, {1, 2}, {2, 3}, {2, 1}}));
}

TEST(Step, BackAndForthLeavesOtherSitesUntouched) {
    RotorState s(m2(), DefaultRule::up(2));
    for (int i = 0; i < 10; ++i) {
        step(s, Point{0, 0});
        step(s, Point{0, 1});
    }
    EXPECT_EQ(s.materialized_count(), 2U);
    EXPECT_FALSE(s.is_modified(Point{1, 0}));
}

TEST(Walk, StraightRayToBoundaryOfB5) {
    RotorState s(m2(), DefaultRule::up(2));
    const WalkOutcome w = walk(s, Point{0, 0}, StopSet::boundary_or_origin(Ball(2, 5)), EscapeOracle::None);
    EXPECT_EQ(w.kind, OutcomeKind::StoppedAtBoundary);
    EXPECT_EQ(w.position, (Point{0, 5}));
    EXPECT_EQ(w.steps, 5U);
    EXPECT_TRUE(Ball(2, 5).on_boundary(w.position));
}

TEST(Walk, RadiusOneExitsInOneStep) {
    RotorState s(m2(), DefaultRule::iid_random(2, 11));
    for (int i = 0; i < 8; ++i) {
        const WalkOutcome w = walk(s, Point{0, 0}, StopSet::boundary_or_origin(Ball(2, 1)), EscapeOracle::None);
        EXPECT_EQ(w.kind, OutcomeKind::StoppedAtBoundary);
        EXPECT_EQ(w.steps, 1U);
    }
}

TEST(Walk, FirstUpParticleEscapes) {
    for (int d = 2; d <= 5; ++d) {
        RotorState s(Mechanism::standard(d), DefaultRule::up(d));
        const WalkOutcome w = walk(s, Point::origin(d), StopSet::origin_return(), EscapeOracle::UpColumn);
        EXPECT_EQ(w.kind, OutcomeKind::Escaped);
    }
}

TEST(Walk, StepLimitIsAnOutcome) {
    RotorState s(m2(), DefaultRule::up(2));
    const WalkOutcome w = walk(s, Point{0, 0}, StopSet::origin_return(), EscapeOracle::None, 50);
    EXPECT_EQ(w.kind, OutcomeKind::StepLimitExceeded);
    EXPECT_EQ(w.steps, 50U);
    EXPECT_EQ(w.position, (Point{0, 50}));
}

TEST(Walk, OracleRejectsNonAlignedRule) {
    RotorState s(m2(), DefaultRule::iid_random(2, 1));
    EXPECT_THROW(walk(s, Point{0, 0}, StopSet::origin_return(), EscapeOracle::UpColumn), std::logic_error);
    EXPECT_THROW(s.escape_check_up(Point{0, 0}), std::logic_error);
}

TEST(EscapeCheck, UntouchedColumnAndBelowModifiedSite) {
    RotorState s(m2(), DefaultRule::up(2));
    EXPECT_TRUE(s.escape_check_up(Point{4, -3}));
    s.next_exit(Point{4, 2});
    EXPECT_FALSE(s.escape_check_up(Point{4, 1}));
    EXPECT_FALSE(s.escape_check_up(Point{4, 2}));
    EXPECT_TRUE(s.escape_check_up(Point{4, 3}));
}

// Every certified escape is replayed without the oracle from a copy of the
// state just before it: the particle must climb straight up through fresh
// sites for 10 r steps.
TEST(EscapeCheck, ReplayConfirmsEveryCertifiedEscape) {
    EscapeRunner runner(m2(), DefaultRule::up(2));
    const std::int64_t r = 30;
    int certified = 0;
    for (int i = 0; i < 300; ++i) {
        RotorState before = runner.state();
        runner.release(1);
        if (runner.stats().escaped == static_cast<std::uint64_t>(certified)) {
            continue;
        }
        ++certified;
        // Re-run the particle on the copy, stopping at its first pristine
        // site that passes the check, then walk on without the oracle.
        Point x = Point::origin(2);
        bool found = false;
        for (std::uint64_t k = 0; k < 1'000'000 && !found; ++k) {
            if (!before.is_modified(x) && before.escape_check_up(x)) {
                found = true;
                break;
            }
            x = step(before, x);
            ASSERT_FALSE(x.is_origin()) << "particle " << i << " returned in replay";
        }
        ASSERT_TRUE(found);
        for (std::int64_t k = 0; k < 10 * r; ++k) {
            ASSERT_FALSE(before.is_modified(x));
            const Point y = step(before, x);
            ASSERT_EQ(y[1], x[1] + 1);
            ASSERT_EQ(y[0], x[0]);
            x = y;
        }
    }
    EXPECT_GT(certified, 50);
}

TEST(EscapeExperiment, SingleParticleEscapesInAnyDimension) {
    for (int d = 2; d <= 4; ++d) {
        const auto r = run_escape_experiment(Mechanism::standard(d), DefaultRule::up(d), 1);
        EXPECT_EQ(r.stats.escaped, 1U);
        EXPECT_EQ(r.stats.returned, 0U);
    }
}

TEST(EscapeExperiment, AgreesWithStabilizedEstimatorAtN100) {
    const auto exact = run_escape_experiment(m2(), DefaultRule::up(2), 100);
    const auto est = estimate_I_stabilized(m2(), DefaultRule::up(2), 100, RadiusSchedule{8, 2.0, 4096}, 3);
    EXPECT_TRUE(est.stabilized);
    EXPECT_EQ(exact.stats.escaped, est.estimate);
    EXPECT_EQ(exact.stats.escaped + exact.stats.returned, 100U);
}

TEST(EscapeExperiment, NondecreasingInN) {
    EscapeRunner runner(m2(), DefaultRule::up(2));
    std::uint64_t prev = 0;
    for (std::uint64_t n = 1; n <= 600; ++n) {
        runner.release(1);
        EXPECT_GE(runner.stats().escaped, prev);
        prev = runner.stats().escaped;
    }
    EscapeRunner r3(Mechanism::standard(3), DefaultRule::up(3));
    prev = 0;
    for (int i = 0; i < 50; ++i) {
        r3.release(20);
        EXPECT_GE(r3.stats().escaped, prev);
        prev = r3.stats().escaped;
    }
}

TEST(EscapeExperiment, IncrementalEqualsOneShot) {
    EscapeRunner runner(m2(), DefaultRule::up(2));
    runner.release(37);
    runner.release(63);
    const auto once = run_escape_experiment(m2(), DefaultRule::up(2), 100);
    EXPECT_EQ(runner.stats().escaped, once.stats.escaped);
    EXPECT_EQ(runner.stats().steps_total, once.stats.steps_total);
    EXPECT_TRUE(same_configuration(runner.state(), once.state));
}

TEST(EscapeExperiment, DeterministicStatsAndState) {
    EscapeOptions opt;
    opt.keep_outcomes = true;
    const auto a = run_escape_experiment(Mechanism::standard(3), DefaultRule::up(3), 300, opt);
    const auto b = run_escape_experiment(Mechanism::standard(3), DefaultRule::up(3), 300, opt);
    EXPECT_EQ(a.stats, b.stats);
    EXPECT_TRUE(same_configuration(a.state, b.state));
    EXPECT_EQ(a.stats.per_particle.size(), 300U);
}

TEST(FiniteBall, RadiusOneExitsEveryParticle) {
    for (const char* rule : {"up", "random:5", "split:+e1,-e1"}) {
        const auto r = run_finite_ball(m2(), DefaultRule::parse(2, rule), 37, Ball(2, 1));
        EXPECT_EQ(r.exited, 37U);
    }
}

TEST(FiniteBall, UpN50SequenceIsMonotoneAndReachesExactValue) {
    const auto exact = run_escape_experiment(m2(), DefaultRule::up(2), 50).stats.escaped;
    std::uint64_t prev = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> seq;
    for (std::int64_t r : {8, 16, 32, 64}) {
        const auto v = run_finite_ball(m2(), DefaultRule::up(2), 50, Ball(2, r)).exited;
        EXPECT_LE(v, prev);
        prev = v;
        seq.push_back(v);
    }
    EXPECT_EQ(seq.back(), exact);
    EXPECT_EQ(seq[seq.size() - 2], exact);
}

TEST(FiniteBall, ConservationAndAgreementWithNaiveSimulator) {
    for (const char* rule : {"up", "random:8", "split:-e2,+e2", "aligned:-e1"}) {
        const DefaultRule dr = DefaultRule::parse(2, rule);
        const auto lib = run_finite_ball(m2(), dr, 120, Ball(2, 9));
        oracle::NaiveRotors naive(oracle::NaiveRotors::clockwise(),
                                  oracle::initial_from(dr, oracle::NaiveRotors::clockwise()));
        const auto ref = oracle::finite_ball(naive, 2, 120, 9);
        EXPECT_EQ(lib.exited, ref.exited) << rule;
        EXPECT_EQ(lib.returned, ref.returned) << rule;
        EXPECT_EQ(lib.exited + lib.returned, 120U);
        for (const auto& [v, idx] : naive.touched()) {
            EXPECT_EQ(lib.state.rotor(oracle::to_point(v)).index(),
                      Mechanism::standard(2).at(static_cast<Mechanism::Progress>(idx)).index());
        }
    }
    const DefaultRule d3 = DefaultRule::iid_random(3, 4);
    const auto lib3 = run_finite_ball(Mechanism::standard(3), d3, 80, Ball(3, 5));
    oracle::NaiveRotors naive3(oracle::NaiveRotors::enumeration(3),
                               oracle::initial_from(d3, oracle::NaiveRotors::enumeration(3)));
    EXPECT_EQ(lib3.exited, oracle::finite_ball(naive3, 3, 80, 5).exited);
}

TEST(Stabilized, TraceIsNonincreasingForAnyRule) {
    for (const char* rule : {"random:1", "random:2", "split:+e1,-e1"}) {
        const auto est = estimate_I_stabilized(m2(), DefaultRule::parse(2, rule), 60, RadiusSchedule{4, 2.0, 128});
        for (std::size_t i = 1; i < est.trace.size(); ++i) {
            EXPECT_LE(est.trace[i].exited, est.trace[i - 1].exited) << rule;
        }
    }
}

TEST(Stabilized, InconclusiveAtCapReportsUpperBound) {
    const auto est = estimate_I_stabilized(m2(), DefaultRule::up(2), 400, RadiusSchedule{2, 2.0, 4}, 5);
    EXPECT_FALSE(est.stabilized);
    EXPECT_EQ(est.trace.size(), 2U);
    EXPECT_EQ(est.estimate, est.trace.back().exited);
}

TEST(Stabilized, RotorsPointingInwardDriveEstimateDown) {
    // Rotors on a disc point toward the origin along the first axis, making
    // early particles return.
    std::unordered_map<Point, Direction, PointHash> map;
    for (std::int64_t x = -12; x <= 12; ++x) {
        for (std::int64_t y = -12; y <= 12; ++y) {
            if (x != 0 || y != 0) {
                map[Point{x, y}] = x > 0 ? Direction::negative(0) : x < 0 ? Direction::positive(0)
                                                                         : (y > 0 ? Direction::negative(1)
                                                                                  : Direction::positive(1));
            }
        }
    }
    const auto rule = DefaultRule::explicit_map(2, map, Direction::positive(1));
    const auto est = estimate_I_stabilized(m2(), rule, 30, RadiusSchedule{2, 2.0, 64});
    ASSERT_GE(est.trace.size(), 2U);
    EXPECT_LT(est.trace.back().exited, est.trace.front().exited);
}

TEST(ForwardPath, UpConfigIsStraightRay) {
    RotorState s(m2(), DefaultRule::up(2));
    const auto fp = forward_path(s, Point{3, 4}, 20);
    EXPECT_TRUE(fp.simple);
    ASSERT_EQ(fp.path.size(), 21U);
    for (std::size_t i = 0; i < fp.path.size(); ++i) {
        EXPECT_EQ(fp.path[i], (Point{3, 4 + static_cast<std::int64_t>(i)}));
    }
    EXPECT_EQ(s.materialized_count(), 0U);
}

TEST(ForwardPath, FourCycleIsNotSimple) {
    std::unordered_map<Point, Direction, PointHash> map{{Point{0, 0}, Direction::positive(0)},
                                                        {Point{1, 0}, Direction::positive(1)},
                                                        {Point{1, 1}, Direction::negative(0)},
                                                        {Point{0, 1}, Direction::negative(1)}};
    RotorState s(m2(), DefaultRule::explicit_map(2, map, Direction::positive(1)));
    EXPECT_FALSE(forward_path(s, Point{0, 0}, 5).simple);
}

TEST(ForwardPath, SplitConfigRaysAlongFirstAxis) {
    RotorState s(m2(), DefaultRule::parse(2, "split:+e1,-e1"));
    const auto fp = forward_path(s, Point{-2, 3}, 10);
    EXPECT_TRUE(fp.simple);
    EXPECT_EQ(fp.path.back(), (Point{8, 3}));
}
