#include <sstream>

#include "doctest.h"
#include "rootstack/scan.hpp"

using namespace rootstack;

namespace {

ScanJob box(int lo, int hi, Int height, int workers) {
    ScanJob job;
    job.a_lo = lo;
    job.a_hi = hi;
    job.b_lo = lo;
    job.b_hi = hi;
    job.c_lo = lo;
    job.c_hi = hi;
    job.height = std::move(height);
    job.workers = workers;
    return job;
}

}  // namespace

TEST_SUITE_BEGIN("scan");

TEST_CASE("scan of a small box finds the expected catalog") {
    ScanResult res = run_scan(box(-3, 3, 500, 2));
    // 7^3 forms; degenerate ones (q = 0) are counted but not emitted.
    CHECK(res.rows.size() + res.summary.degenerate == 343);
    CHECK(res.summary.degenerate > 0);
    CHECK(res.summary.exists > 0);
    CHECK(res.summary.contradiction == 0);
    CHECK(res.summary.exists + res.summary.obstruction == res.rows.size());

    // Lexicographic (a, b, c) order.
    for (size_t i = 1; i < res.rows.size(); ++i) {
        auto key = [](const CatalogRow& r) { return std::array<Int, 3>{r.a, r.b, r.c}; };
        CHECK(key(res.rows[i - 1]) < key(res.rows[i]));
    }

    // Every row's discriminant and check flag are coherent.
    for (const auto& row : res.rows) {
        CHECK(row.q == row.b * row.b - 4 * row.a * row.c);
        CHECK(row.q != 0);
        CHECK(row.check != Consistency::Contradiction);
        if (row.outcome == Outcome::BrauerObstruction) {
            CHECK(row.witness_class.has_value());
            CHECK_FALSE(row.witness_point.has_value());
        }
    }
}

TEST_CASE("scan output does not depend on the worker count") {
    ScanResult one = run_scan(box(-4, 4, 200, 1));
    ScanResult eight = run_scan(box(-4, 4, 200, 8));
    REQUIRE(one.rows.size() == eight.rows.size());
    CHECK(one.rows == eight.rows);

    std::ostringstream s1, s8;
    write_catalog(s1, one.rows);
    write_catalog(s8, eight.rows);
    CHECK(s1.str() == s8.str());
}

TEST_CASE("known rows appear in the catalog") {
    ScanJob job = box(-5, 5, 1000, 4);
    ScanResult res = run_scan(job);
    const CatalogRow* found = nullptr;
    for (const auto& row : res.rows)
        if (row.a == 3 && row.b == 2 && row.c == 5) found = &row;
    REQUIRE(found != nullptr);
    CHECK(found->q == -56);
    CHECK(found->outcome == Outcome::BrauerObstruction);
    REQUIRE(found->witness_class.has_value());
    CHECK(found->witness_class->value() == -7);
    CHECK(found->beh_order == 2);
    CHECK(found->check == Consistency::Consistent);
    REQUIRE(found->epsilon.size() == 3);
    CHECK(found->epsilon[0].first.is_real());
    CHECK(found->epsilon[0].second == 1);
    CHECK(found->epsilon[1].second == -1);
    CHECK(found->epsilon[2].second == -1);
    CHECK(res.summary.obstruction > 0);
}

TEST_CASE("rows round-trip through the serialization") {
    ScanResult res = run_scan(box(-3, 3, 100, 3));
    for (const auto& row : res.rows) {
        std::string line = render_row(row);
        CAPTURE(line);
        CHECK(parse_row(line) == row);
    }
    std::ostringstream out;
    write_catalog(out, res.rows);
    std::istringstream in(out.str());
    CHECK(read_catalog(in) == res.rows);
}

TEST_CASE("row parsing rejects malformed lines") {
    CHECK_THROWS_AS(parse_row("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_row("x,0,1,-4,integral_point_exists,,1,0,1,inf:+1,consistent"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_row("1,0,1,-4,nonsense,,1,0,1,inf:+1,consistent"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_row("1,0,1,-4,integral_point_exists,,1,,1,inf:+1,consistent"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_row("1,0,1,-4,integral_point_exists,,1,0,1,inf:+3,consistent"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_row("1,0,1,-4,integral_point_exists,,1,0,1,inf:+1,maybe"),
                    std::invalid_argument);
    std::istringstream bad_header("not,a,header\n");
    CHECK_THROWS_AS(read_catalog(bad_header), std::invalid_argument);
}

TEST_CASE("scan job validation") {
    ScanJob job = box(-2, 2, 100, 1);
    job.a_lo = 3;
    job.a_hi = 1;
    CHECK_THROWS_AS(run_scan(job), std::invalid_argument);
    ScanJob tiny = box(-1, 1, 0, 1);
    CHECK_THROWS_AS(run_scan(tiny), std::invalid_argument);
}

TEST_CASE("single-cell scans work") {
    ScanResult res = run_scan({Int(3), Int(3), Int(2), Int(2), Int(5), Int(5), Int(100), 1});
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].outcome == Outcome::BrauerObstruction);
    ScanResult deg = run_scan({Int(0), Int(0), Int(0), Int(0), Int(0), Int(0), Int(10), 1});
    CHECK(deg.rows.empty());
    CHECK(deg.summary.degenerate == 1);
}

TEST_SUITE_END();
