#pragma once

#include "rootstack/arith.hpp"

namespace rootstack {

// (g; e_1,...,e_r): coarse genus g plus the orders of the stacky points.
// Orders equal to 1 are dropped on construction; the multiset is kept sorted.
struct Signature {
    long coarse_genus = 0;
    std::vector<Int> orders;

    Signature() = default;
    Signature(long g, std::vector<Int> es);

    bool operator==(const Signature&) const = default;
    std::string str() const;
};

// A closed point of the stacky locus: residue field degree and stabilizer order.
struct StackyLocusPoint {
    Int residue_degree;
    Int e;

    StackyLocusPoint(Int deg, Int order);
    bool operator==(const StackyLocusPoint&) const = default;
};

// Invariant factor decomposition d_1 | d_2 | ... with every d_i >= 2;
// the trivial group is the empty list.
struct FiniteAbelianGroup {
    std::vector<Int> invariant_factors;

    Int order() const;
    bool is_trivial() const { return invariant_factors.empty(); }
    std::string str() const;
    bool operator==(const FiniteAbelianGroup&) const = default;
};

struct SmithResult {
    std::vector<Int> diagonal;  // divisibility chain, nonnegative
    std::size_t rank = 0;       // number of nonzero diagonal entries
};

// g + (1/2) * sum (e_i - 1)/e_i, exact.
Rational genus(const Signature& sig);

// Order of the point's class in the degree sequence: e / gcd(residue_degree, e).
Int d_of_point(const StackyLocusPoint& P);

// lcm of d_of_point over the locus; 1 for an empty locus.
Int d_of_curve(const std::vector<StackyLocusPoint>& points);

// Kernel of (+) Z/e_P -> Z/d, [P] |-> residue_degree * d / e_P, as an abstract
// group, computed from an integer presentation by Smith reduction.
FiniteAbelianGroup pic0_group(const std::vector<StackyLocusPoint>& points);

// True exactly for (0;), (0;n) and (0;n,m) with gcd(n,m) = 1.
bool is_simply_connected(const Signature& sig);

SmithResult smith_normal_form(std::vector<std::vector<Int>> m);

// Parses "(g; e1,...,er)"; whitespace is ignored. Throws on malformed input.
Signature parse_signature(const std::string& text);

// Parses "(deg,e);(deg,e);...". Throws on malformed input.
std::vector<StackyLocusPoint> parse_stacky_points(const std::string& text);

}  // namespace rootstack
