#include "chipfire/transfinite.hpp"
#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace chipfire;

namespace {

QF2 frac(long long n, long long d) { return QF2(Rational(Int(n), Int(d))); }

MetricGraph single_edge() {
    MetricGraph g;
    g.add_vertex("q");
    g.add_vertex("v");
    g.set_basepoint(0);
    g.add_edge("e", 0, 1, QF2(1));
    return g;
}

} // namespace

TEST_CASE("dhar strategy reduces the midpoint chip at ordinal 1") {
    MetricGraph g = single_edge();
    Divisor d;
    d.add(point_on_edge(g, 0, frac(1, 2)), 1);
    DharStrategy s;
    Trace t = run(g, d, s);
    CHECK(t.outcome == Outcome::Reduced);
    CHECK(t.final_ordinal == Ordinal::finite(1));
    CHECK(t.final_divisor.at(Point::at_vertex(0)) == 1);
    CHECK(t.cumulative_length == frac(1, 2));
    CHECK(t.per_vertex_length.at(0) == frac(1, 2));
    CHECK(t.per_vertex_length.at(1) == frac(1, 2));
}

TEST_CASE("runner rejects illegal and non-maximal firings") {
    MetricGraph g = single_edge();
    Point mid = point_on_edge(g, 0, frac(1, 2));
    Divisor d;
    d.add(mid, 1);

    struct BadEps : Strategy {
        StrategyStep next(const MetricGraph& g, const Divisor& d, const Trace&) override {
            FiringSpec spec = dhar_firing(g, d);
            spec.epsilon = spec.epsilon / QF2(2); // legal but not maximal
            return StepFire{spec};
        }
        std::string name() const override { return "bad-eps"; }
    } bad_eps;
    CHECK_THROWS_AS(run(g, d, bad_eps), strategy_violation);

    struct NoChip : Strategy {
        StrategyStep next(const MetricGraph& g, const Divisor&, const Trace&) override {
            FiringSpec spec;
            spec.region.vertices = {1};
            spec.sources[cut_boundary(g, spec.region)[0]] =
                point_on_edge(g, 0, QF2(Rational(Int(1), Int(3))));
            spec.epsilon = QF2(Rational(Int(1), Int(3)));
            return StepFire{spec};
        }
        std::string name() const override { return "no-chip"; }
    } no_chip;
    CHECK_THROWS_AS(run(g, d, no_chip), strategy_violation);

    struct LyingDone : Strategy {
        StrategyStep next(const MetricGraph&, const Divisor&, const Trace&) override {
            return StepDone{};
        }
        std::string name() const override { return "liar"; }
    } liar;
    CHECK_THROWS_AS(run(g, d, liar), strategy_violation);
}

TEST_CASE("pass_to_limit validates the declaration") {
    MetricGraph g = single_edge();
    Divisor d;
    d.add(point_on_edge(g, 0, frac(1, 2)), 1);
    Divisor limit_ok;
    limit_ok.add(point_on_edge(g, 0, frac(1, 4)), 1);
    Ordinal clock = Ordinal::finite(5);
    Trace t;

    Divisor cur = d;
    StepDeclareLimit decl{1, limit_ok, frac(1, 4), frac(1, 2), "test"};
    pass_to_limit(g, cur, clock, t, decl);
    CHECK(cur == limit_ok);
    CHECK(clock == Ordinal::parse("w^1"));
    CHECK(t.cumulative_length == frac(1, 4));
    REQUIRE(t.steps.size() == 1);
    CHECK(std::get<LimitRecord>(t.steps[0].event).level == 1);

    // wrong degree aborts
    Divisor wrong_degree;
    wrong_degree.add(point_on_edge(g, 0, frac(1, 4)), 2);
    Divisor cur2 = d;
    Ordinal clock2;
    Trace t2;
    CHECK_THROWS_AS(
        pass_to_limit(g, cur2, clock2, t2, StepDeclareLimit{1, wrong_degree, QF2(0), QF2(0), ""}),
        strategy_violation);

    // negative chips away from q abort
    Divisor negative;
    negative.add(point_on_edge(g, 0, frac(1, 4)), 2);
    negative.add(point_on_edge(g, 0, frac(3, 4)), -1);
    CHECK_THROWS_AS(
        pass_to_limit(g, cur2, clock2, t2, StepDeclareLimit{1, negative, QF2(0), QF2(0), ""}),
        strategy_violation);
}

TEST_CASE("budget exhaustion is reported, not misread") {
    MetricGraph g = single_edge();
    Divisor d;
    d.add(point_on_edge(g, 0, frac(1, 2)), 1);
    DharStrategy s;
    Trace t = run(g, d, s, RunBudget{0, 64});
    CHECK(t.outcome == Outcome::BudgetExhausted);
    CHECK(t.final_divisor == d);
}

TEST_CASE("random strategy reaches the same reduced divisor") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 12; ++i) {
        MetricGraph g = testsupport::random_graph(rng, 5, 8, false);
        Divisor d = testsupport::random_divisor(g, rng, 6, false, true);
        auto [by_dhar, dhar_trace] = reduce(g, d);
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            RandomLegalStrategy rs(seed);
            Trace t = run(g, d, rs, RunBudget{20000, 4});
            REQUIRE(t.outcome == Outcome::Reduced);
            CHECK(t.final_divisor == by_dhar);
            for (std::size_t k = 1; k < t.steps.size(); ++k)
                CHECK(t.steps[k - 1].ordinal < t.steps[k].ordinal);
        }
    }
}

TEST_CASE("trace stats") {
    MetricGraph g = single_edge();
    Divisor d;
    d.add(point_on_edge(g, 0, frac(1, 2)), 1);
    DharStrategy s;
    Trace t = run(g, d, s);
    TraceStats st = trace_stats(g, t);
    REQUIRE(st.epsilons.size() == 1);
    CHECK(st.epsilons[0] == frac(1, 2));
    CHECK(st.cumulative_length == frac(1, 2));
    CHECK(st.limit_combinatorial_chips.empty());
}
