#pragma once

#include "rootstack/quadform.hpp"

namespace rootstack {

// The locally-trivial square classes d over Z[1/2q], listed one canonical
// representative per class modulo multiplication by the class of q.
struct BehGroup {
    SquareClass q_class;
    std::vector<SquareClass> members;  // identity first, then by |value|

    std::size_t order() const { return members.size(); }
};

enum class Outcome { IntegralPointExists, BrauerObstruction, DegenerateInput };

struct PlaceEvidence {
    Place place;
    int epsilon;         // local invariant of the form at this place
    bool d_square;       // witness class is a square locally
    bool dq_square;      // witness class times the q-class is a square locally
};

struct Verdict {
    Outcome outcome = Outcome::DegenerateInput;
    std::optional<SquareClass> witness_class;            // obstruction verdicts
    std::optional<std::pair<Int, Int>> witness_point;    // filled on a rational root,
                                                         // or later by the point oracle
    std::optional<std::size_t> beh_order;
    std::vector<PlaceEvidence> evidence;                 // one row per bad place
};

BehGroup beh_group(const BinaryQuadraticForm& f);

// Product of the epsilon invariants over the bad places where d is not a
// local square. Rejects classes outside beh_group(f).
int beh_value(const BinaryQuadraticForm& f, const SquareClass& d);

Verdict decide(const BinaryQuadraticForm& f);

std::string outcome_str(Outcome o);

}  // namespace rootstack
