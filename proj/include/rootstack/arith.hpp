#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rootstack {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when factorize runs out of its work budget before the cofactor splits.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A place of Q: the real place or a finite prime.
class Place {
public:
    static Place real() { return Place(); }
    static Place finite(Int p);

    bool is_real() const { return real_; }
    bool is_finite() const { return !real_; }

    // Finite places only.
    const Int& prime() const;

    bool operator==(const Place& o) const { return real_ == o.real_ && p_ == o.p_; }
    // Real place sorts before all finite places, finite places by prime.
    std::strong_ordering operator<=>(const Place& o) const;

    std::string str() const;

private:
    Place() : real_(true) {}
    bool real_;
    Int p_;
};

// sign * prod(p_i^e_i) with distinct ascending primes and exponents >= 1.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Int, unsigned>> factors;

    Int value() const;
    bool operator==(const Factorization&) const = default;
};

// A class in Q^x / (Q^x)^2, stored as its canonical representative: a signed
// squarefree integer sign * prod(primes).
struct SquareClass {
    int sign = 1;
    std::vector<Int> primes;  // distinct, ascending

    Int value() const;
    bool is_identity() const { return sign == 1 && primes.empty(); }
    bool operator==(const SquareClass&) const = default;

    static SquareClass one() { return SquareClass{}; }
    // Builds the class of a nonzero integer given its factorization.
    static SquareClass from_factorization(const Factorization& f);
};

inline constexpr std::uint64_t kFactorBudgetDefault = 1u << 22;

// Factors a nonzero integer: trial division over small primes, then
// Miller-Rabin plus Pollard rho on what remains. The budget caps the total
// number of rho iterations; exceeding it throws BudgetExceeded.
Factorization factorize(const Int& n, std::uint64_t budget = kFactorBudgetDefault);

bool is_prime(const Int& n);

// p-adic valuation of a nonzero rational.
long valuation(const Rational& x, const Int& p);
long valuation(const Int& x, const Int& p);

// Jacobi symbol (a / n) for odd positive n.
int jacobi(Int a, Int n);

// Legendre symbol (a / p) for an odd prime p: +1, -1, or 0 when p | a.
int legendre(const Int& a, const Int& p);

// Hilbert symbol (a, b)_v for nonzero rationals.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

// Whether the class d is a square in the completion at v.
bool is_local_square(const SquareClass& d, const Place& v);

// Squarefree representative of a nonzero rational modulo squares.
SquareClass squarefree_class(const Rational& x, std::uint64_t budget = kFactorBudgetDefault);

// Product in Q^x / (Q^x)^2: symmetric difference of supports, sign product.
SquareClass multiply_classes(const SquareClass& a, const SquareClass& b);

// Floor square root of a nonnegative integer, and exact-square test.
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n);

}  // namespace rootstack
