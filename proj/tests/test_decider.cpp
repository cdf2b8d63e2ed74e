#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "rootstack/decider.hpp"

using namespace rootstack;

namespace {

Mat2 mat(int a, int b, int c, int d) {
    return Mat2{{{Int(a), Int(b)}, {Int(c), Int(d)}}};
}

}  // namespace

TEST_SUITE_BEGIN("decider");

TEST_CASE("beh group of the first running example") {
    BinaryQuadraticForm f{Int(3), Int(2), Int(5)};  // q = -56, qbar = -14
    BehGroup beh = beh_group(f);
    CHECK(beh.q_class.value() == -14);
    REQUIRE(beh.order() == 2);
    CHECK(beh.members[0].is_identity());
    CHECK(beh.members[1].value() == -7);
    CHECK(beh_value(f, beh.members[0]) == 1);
    CHECK(beh_value(f, beh.members[1]) == -1);
    // The partner representative 2 = -7 * qbar carries the same value.
    CHECK(beh_value(f, squarefree_class(Rational(2))) == -1);
    // Classes outside the group are rejected.
    CHECK_THROWS_AS(beh_value(f, squarefree_class(Rational(3))), std::invalid_argument);
    CHECK_THROWS_AS(beh_value(f, squarefree_class(Rational(-1))), std::invalid_argument);
}

TEST_CASE("beh group of the second running example") {
    BinaryQuadraticForm f{Int(3), Int(1), Int(850)};  // q = -10199 = -7*31*47
    BehGroup beh = beh_group(f);
    CHECK(beh.q_class.value() == -10199);
    std::set<Int> values;
    for (const auto& d : beh.members) values.insert(d.value());
    CHECK(values.count(1) == 1);
    CHECK(values.count(-31) == 1);
    CHECK(beh_value(f, squarefree_class(Rational(-31))) == -1);
}

TEST_CASE("beh members are locally trivial and closed under the group law") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 150; ++trial) {
        Int a = static_cast<std::int64_t>(rng() % 25) - 12;
        Int b = static_cast<std::int64_t>(rng() % 25) - 12;
        Int c = static_cast<std::int64_t>(rng() % 25) - 12;
        BinaryQuadraticForm f{a, b, c};
        Int q = b * b - 4 * a * c;
        if (q == 0 || is_perfect_square(q)) continue;
        BehGroup beh = beh_group(f);
        Discriminant disc = discriminant(f);

        REQUIRE(beh.order() >= 1);
        CHECK(beh.members[0].is_identity());
        for (const auto& d : beh.members) {
            // Local triviality at every bad place, by the residue-level
            // definition of local squares.
            for (const auto& p : disc.bad_primes) {
                bool ok = oracles::local_square_oracle(d.value(), p) ||
                          oracles::local_square_oracle(d.value() * disc.cls.value(), p);
                CAPTURE(f.str());
                CAPTURE(d.value());
                CHECK(ok);
            }
            bool real_ok = d.value() > 0 || d.value() * disc.cls.value() > 0;
            CHECK(real_ok);
            // Values are invariant under multiplying by the q-class.
            CHECK(beh_value(f, d) == beh_value(f, multiply_classes(d, beh.q_class)));
        }
        // Closure: the product of two members lies in the group (possibly
        // as the other representative of its class).
        for (size_t i = 0; i < beh.members.size(); ++i)
            for (size_t j = i; j < beh.members.size(); ++j) {
                SquareClass prod = multiply_classes(beh.members[i], beh.members[j]);
                SquareClass alt = multiply_classes(prod, beh.q_class);
                bool present = false;
                for (const auto& m : beh.members)
                    if (m == prod || m == alt) present = true;
                CHECK(present);
            }
        // Order is a power of two.
        CHECK((beh.order() & (beh.order() - 1)) == 0);
    }
}

TEST_CASE("decide reproduces the first running example") {
    Verdict v = decide({Int(3), Int(2), Int(5)});
    CHECK(v.outcome == Outcome::BrauerObstruction);
    REQUIRE(v.witness_class.has_value());
    CHECK(v.witness_class->value() == -7);
    CHECK(v.beh_order == 2);
    REQUIRE(v.evidence.size() == 3);
    CHECK(v.evidence[0].place.is_real());
    CHECK(v.evidence[0].epsilon == 1);
    CHECK(v.evidence[1].place.prime() == 2);
    CHECK(v.evidence[1].epsilon == -1);
    CHECK(v.evidence[2].place.prime() == 7);
    CHECK(v.evidence[2].epsilon == -1);
    // The witness is a local square exactly where it contributes nothing.
    CHECK_FALSE(v.evidence[0].d_square);
    CHECK(v.evidence[0].dq_square);
    CHECK(v.evidence[1].d_square);
    CHECK(v.evidence[2].dq_square);
}

TEST_CASE("decide reproduces the second running example") {
    Verdict v = decide({Int(3), Int(1), Int(850)});
    CHECK(v.outcome == Outcome::BrauerObstruction);
    REQUIRE(v.witness_class.has_value());
    CHECK(v.witness_class->value() == -31);
    REQUIRE(v.evidence.size() == 5);
    int eps_inf = v.evidence[0].epsilon;
    CHECK(eps_inf == 1);
    CHECK(v.evidence[1].epsilon == 1);   // p = 2
    CHECK(v.evidence[3].epsilon == -1);  // p = 31
}

TEST_CASE("decide on forms with rational zeros and degenerate forms") {
    Verdict v = decide({Int(1), Int(0), Int(-1)});
    CHECK(v.outcome == Outcome::IntegralPointExists);
    REQUIRE(v.witness_point.has_value());
    CHECK(v.witness_point == std::pair<Int, Int>{1, 1});

    CHECK(decide({Int(0), Int(1), Int(0)}).outcome == Outcome::IntegralPointExists);
    CHECK(decide({Int(2), Int(4), Int(2)}).outcome == Outcome::DegenerateInput);
    CHECK(decide({Int(0), Int(0), Int(0)}).outcome == Outcome::DegenerateInput);
    CHECK(outcome_str(Outcome::IntegralPointExists) == "integral_point_exists");
    CHECK(outcome_str(Outcome::BrauerObstruction) == "brauer_obstruction");
    CHECK(outcome_str(Outcome::DegenerateInput) == "degenerate_input");
}

TEST_CASE("positive definite forms with trivial beh pairing") {
    // x^2 + y^2: q = -4, qbar = -1, and the only class is the identity.
    Verdict v = decide({Int(1), Int(0), Int(1)});
    CHECK(v.outcome == Outcome::IntegralPointExists);
    CHECK(v.beh_order == 1);
    CHECK_FALSE(v.witness_point.has_value());

    BehGroup beh = beh_group({Int(1), Int(0), Int(1)});
    CHECK(beh.order() == 1);
    CHECK(beh.members[0].is_identity());
}

TEST_CASE("decide outcome and witness are unimodular invariants") {
    std::mt19937_64 rng(61);
    int obstructions = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Int a = static_cast<std::int64_t>(rng() % 25) - 12;
        Int b = static_cast<std::int64_t>(rng() % 25) - 12;
        Int c = static_cast<std::int64_t>(rng() % 25) - 12;
        BinaryQuadraticForm f{a, b, c};
        Mat2 m;
        switch (rng() % 4) {
            case 0: m = mat(1, static_cast<int>(rng() % 5) - 2, 0, 1); break;
            case 1: m = mat(1, 0, static_cast<int>(rng() % 5) - 2, 1); break;
            case 2: m = mat(0, 1, -1, 0); break;
            default: m = mat(-1, static_cast<int>(rng() % 5) - 2, 0, 1); break;
        }
        BinaryQuadraticForm g = transform(f, m);
        Verdict vf = decide(f);
        Verdict vg = decide(g);
        CAPTURE(f.str());
        CAPTURE(g.str());
        CHECK(vf.outcome == vg.outcome);
        if (vf.outcome == Outcome::BrauerObstruction) {
            ++obstructions;
            CHECK(vf.witness_class == vg.witness_class);
            CHECK(vf.beh_order == vg.beh_order);
        }
    }
    CHECK(obstructions > 0);
}

TEST_CASE("every obstruction witness satisfies the decision criterion") {
    // Any witness class must be locally trivial and pair to -1, and the
    // epsilon table must multiply to +1 overall (product formula).
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 300; ++trial) {
        Int a = static_cast<std::int64_t>(rng() % 41) - 20;
        Int b = static_cast<std::int64_t>(rng() % 41) - 20;
        Int c = static_cast<std::int64_t>(rng() % 41) - 20;
        Verdict v = decide({a, b, c});
        if (v.outcome != Outcome::BrauerObstruction) continue;
        BinaryQuadraticForm f{a, b, c};
        CHECK(beh_value(f, *v.witness_class) == -1);
        int prod = 1;
        for (const auto& ev : v.evidence) prod *= ev.epsilon;
        CHECK(prod == 1);
        for (const auto& ev : v.evidence) CHECK((ev.d_square || ev.dq_square));
    }
}

TEST_SUITE_END();
