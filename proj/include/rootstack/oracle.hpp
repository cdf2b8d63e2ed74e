#pragma once

#include "rootstack/decider.hpp"

namespace rootstack {

// Primitive pair with y > 0, or (1, 0).
struct ProjectivePoint {
    Int x, y;

    static ProjectivePoint normalized(Int x, Int y);
    bool operator==(const ProjectivePoint&) const = default;
    std::string str() const;
};

struct SearchReport {
    Int height_bound;
    std::optional<ProjectivePoint> found;       // first integral point in sweep order
    std::optional<ProjectivePoint> stacky_hit;  // first rational zero in sweep order
    std::uint64_t candidates_tested = 0;        // size of the candidate set at this height

    bool operator==(const SearchReport&) const = default;
};

enum class Consistency { Consistent, Contradiction, Unresolved };

struct CrossReport {
    Verdict verdict;
    std::optional<SearchReport> search;  // absent for degenerate inputs
    Consistency flag = Consistency::Consistent;
};

// Whether f(P) generates a square ideal away from 2q: every prime not
// dividing 2q must divide f(P) to an even power. Rejects zeros of f.
bool is_integral_point(const BinaryQuadraticForm& f, const ProjectivePoint& P);

// Sweeps normalized coprime pairs by height, then (y, x) within a height,
// and stops at the first integral point or rational zero. candidates_tested
// is the exact number of normalized coprime pairs with height <= the bound.
// threads > 1 splits the grid into row bands; the outcome is identical.
SearchReport search(const BinaryQuadraticForm& f, const Int& height, int threads = 1);

// Checks that f has a nonvanishing residual point at every prime p <= bound
// with p not dividing 2q.
bool verify_local(const BinaryQuadraticForm& f, const Int& prime_bound);

// decide() checked against search(): Contradiction when an obstruction
// verdict coexists with a found point, Unresolved when an existence verdict
// has no witness at this height.
CrossReport cross_validate(const BinaryQuadraticForm& f, const Int& height);

std::string consistency_str(Consistency c);

}  // namespace rootstack
