#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootstack/decider.hpp"
#include "rootstack/oracle.hpp"

namespace rootstack {

// A rectangular box of coefficients to sweep.
struct ScanJob {
    Int a_lo, a_hi;
    Int b_lo, b_hi;
    Int c_lo, c_hi;
    Int height;
    int workers = 1;
};

// One catalog line: the decision for a single form plus the oracle's verdict
// on it. Rows round-trip exactly through render_row / parse_row.
struct CatalogRow {
    Int a, b, c, q;
    Outcome outcome = Outcome::DegenerateInput;
    std::optional<SquareClass> witness_class;
    std::optional<std::pair<Int, Int>> witness_point;
    std::optional<std::uint64_t> beh_order;
    std::vector<std::pair<Place, int>> epsilon;
    Consistency check = Consistency::Consistent;

    bool operator==(const CatalogRow&) const = default;
};

struct ScanSummary {
    std::uint64_t exists = 0;
    std::uint64_t obstruction = 0;
    std::uint64_t unresolved = 0;
    std::uint64_t contradiction = 0;
    std::uint64_t degenerate = 0;  // q = 0 forms, skipped rather than emitted
};

struct ScanResult {
    std::vector<CatalogRow> rows;  // lexicographic in (a, b, c)
    ScanSummary summary;
};

// Decides and cross-validates every form in the box. Degenerate forms are
// counted but produce no row. The row order (and therefore the rendered
// catalog) does not depend on the worker count.
ScanResult run_scan(const ScanJob& job);

// Comma-separated catalog line, no trailing newline.
std::string render_row(const CatalogRow& row);
CatalogRow parse_row(const std::string& line);

std::string catalog_header();
void write_catalog(std::ostream& out, const std::vector<CatalogRow>& rows);
std::vector<CatalogRow> read_catalog(std::istream& in);

}  // namespace rootstack
