#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "rootstack/scan.hpp"

namespace rootstack::cli {

// Parses "a,b,c" with optional whitespace.
BinaryQuadraticForm parse_form(const std::string& text);

// Parses an inclusive range "L:U".
std::pair<Int, Int> parse_range(const std::string& text);

// 0 = integral point exists, 2 = obstruction, 3 = degenerate.
int exit_code(Outcome o);

struct DecideOptions {
    std::string form;
    bool json = false;
};

struct InvariantsOptions {
    std::string input;  // "(g; e1,...,er)" or "(deg,e);(deg,e);..."
    bool json = false;
};

struct SearchOptions {
    std::string form;
    std::string height = "10000";
    int threads = 1;
    bool json = false;
};

struct ScanOptions {
    std::string a_range, b_range, c_range;  // "L:U"
    std::string height = "10000";
    std::string out_path;
    int workers = 1;
};

// Each command writes its report to `out`, errors to `err`, and returns the
// process exit code (1 on any error).
int cmd_decide(const DecideOptions& opt, std::ostream& out, std::ostream& err);
int cmd_invariants(const InvariantsOptions& opt, std::ostream& out, std::ostream& err);
int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err);
int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace rootstack::cli
