#pragma once

#include <array>
#include <optional>

#include "rootstack/arith.hpp"

namespace rootstack {

// f(x, y) = a x^2 + b xy + c y^2 with b^2 - 4ac = 0.
class DegenerateForm : public std::domain_error {
public:
    explicit DegenerateForm(const std::string& what) : std::domain_error(what) {}
};

struct BinaryQuadraticForm {
    Int a, b, c;

    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
    std::string str() const;
    bool operator==(const BinaryQuadraticForm&) const = default;
};

struct Discriminant {
    Int q;                        // b^2 - 4ac, nonzero
    SquareClass cls;              // class of q modulo squares
    std::vector<Int> bad_primes;  // primes dividing 2q, ascending (always contains 2)
};

using Mat2 = std::array<std::array<Int, 2>, 2>;

// Throws DegenerateForm when b^2 - 4ac = 0.
Discriminant discriminant(const BinaryQuadraticForm& f,
                          std::uint64_t budget = kFactorBudgetDefault);

// The real place followed by the primes dividing 2q, ascending.
std::vector<Place> bad_places(const BinaryQuadraticForm& f,
                              std::uint64_t budget = kFactorBudgetDefault);

// Local invariant of the conic attached to f at v, via the diagonalization
// <a, -aq> of the norm form. Requires q nonzero and not a perfect square.
int epsilon_invariant(const BinaryQuadraticForm& f, const Place& v);

// The primitive zero of f over Q, when one exists (exactly when q is a
// perfect square; a doubled zero for q = 0). Normalized so y > 0, or (1, 0).
std::optional<std::pair<Int, Int>> has_rational_root(const BinaryQuadraticForm& f);

// f(gamma . (x, y)) for unimodular gamma; rejects |det| != 1.
BinaryQuadraticForm transform(const BinaryQuadraticForm& f, const Mat2& gamma);

}  // namespace rootstack
