#include <iostream>

#include "CLI11.hpp"
#include "rootstack/cli.hpp"

int main(int argc, char** argv) {
    using namespace rootstack::cli;

    CLI::App app{"Integral points on the root stack P1[sqrt(f)] over Z[1/2q]"};
    app.require_subcommand(1);

    DecideOptions dec;
    auto* decide = app.add_subcommand("decide", "Decide whether f has an integral point");
    decide->add_option("form", dec.form, "coefficients a,b,c of f = a x^2 + b xy + c y^2")
        ->required();
    decide->add_flag("--json", dec.json, "emit a structured record");

    InvariantsOptions inv;
    auto* invariants =
        app.add_subcommand("invariants", "Genus, degree index and Pic0 of a stacky curve");
    invariants
        ->add_option("signature", inv.input,
                     "signature \"(g; e1,...,er)\" or stacky locus \"(deg,e);(deg,e)\"")
        ->required();
    invariants->add_flag("--json", inv.json, "emit a structured record");

    SearchOptions sea;
    auto* search = app.add_subcommand("search", "Brute-force point search up to a height bound");
    search->add_option("form", sea.form, "coefficients a,b,c")->required();
    search->add_option("--height", sea.height, "height bound (default 10000)");
    search->add_option("--threads", sea.threads, "worker threads for the grid sweep");
    search->add_flag("--json", sea.json, "emit a structured record");

    ScanOptions scan;
    auto* scan_cmd = app.add_subcommand("scan", "Decide and cross-validate a coefficient box");
    scan_cmd->add_option("--a-range", scan.a_range, "inclusive range L:U for a")->required();
    scan_cmd->add_option("--b-range", scan.b_range, "inclusive range L:U for b")->required();
    scan_cmd->add_option("--c-range", scan.c_range, "inclusive range L:U for c")->required();
    scan_cmd->add_option("--height", scan.height, "oracle height bound (default 10000)");
    scan_cmd->add_option("--out", scan.out_path, "catalog output path")->required();
    scan_cmd->add_option("--workers", scan.workers, "parallel workers (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (decide->parsed()) return cmd_decide(dec, std::cout, std::cerr);
    if (invariants->parsed()) return cmd_invariants(inv, std::cout, std::cerr);
    if (search->parsed()) return cmd_search(sea, std::cout, std::cerr);
    if (scan_cmd->parsed()) return cmd_scan(scan, std::cout, std::cerr);
    return 1;
}
