#include "rootstack/quadform.hpp"

#include <sstream>

namespace rootstack {

std::string BinaryQuadraticForm::str() const {
    std::ostringstream out;
    out << "(" << a << "," << b << "," << c << ")";
    return out.str();
}

Discriminant discriminant(const BinaryQuadraticForm& f, std::uint64_t budget) {
    Discriminant d;
    d.q = f.b * f.b - 4 * f.a * f.c;
    if (d.q == 0) throw DegenerateForm("discriminant: form " + f.str() + " is degenerate");
    Factorization fq = factorize(d.q, budget);
    d.cls = SquareClass::from_factorization(fq);
    d.bad_primes.push_back(2);
    for (const auto& [p, e] : fq.factors)
        if (p != 2) d.bad_primes.push_back(p);
    return d;
}

std::vector<Place> bad_places(const BinaryQuadraticForm& f, std::uint64_t budget) {
    Discriminant d = discriminant(f, budget);
    std::vector<Place> places;
    places.push_back(Place::real());
    for (const auto& p : d.bad_primes) places.push_back(Place::finite(p));
    return places;
}

namespace {

// Shift x by a multiple of y until the leading coefficient is nonzero.
// Only reachable for forms with a rational root; kept for robustness.
BinaryQuadraticForm normalize_leading(const BinaryQuadraticForm& f) {
    if (f.a != 0) return f;
    for (Int t = 1; t <= 2; ++t) {
        BinaryQuadraticForm g = transform(f, Mat2{{{Int(1), Int(0)}, {t, Int(1)}}});
        if (g.a != 0) return g;
    }
    throw DegenerateForm("epsilon_invariant: form " + f.str() + " is degenerate");
}

}  // namespace

int epsilon_invariant(const BinaryQuadraticForm& f, const Place& v) {
    Int q = f.b * f.b - 4 * f.a * f.c;
    if (q == 0) throw DegenerateForm("epsilon_invariant: form " + f.str() + " is degenerate");
    if (is_perfect_square(q))
        throw std::invalid_argument("epsilon_invariant: form " + f.str() +
                                    " has a rational root");
    BinaryQuadraticForm g = normalize_leading(f);
    return hilbert_symbol(Rational(g.a), Rational(-g.a * q), v);
}

std::optional<std::pair<Int, Int>> has_rational_root(const BinaryQuadraticForm& f) {
    using boost::multiprecision::gcd;
    if (f.a == 0 && f.b == 0 && f.c == 0) return std::make_pair(Int(1), Int(0));
    Int q = f.b * f.b - 4 * f.a * f.c;
    if (q < 0 || !is_perfect_square(q)) return std::nullopt;
    if (f.a == 0) return std::make_pair(Int(1), Int(0));  // f = y (bx + cy)
    Int s = isqrt(q);
    Int x = s - f.b, y = 2 * f.a;
    Int g = gcd(boost::multiprecision::abs(x), boost::multiprecision::abs(y));
    x /= g;
    y /= g;
    if (y < 0 || (y == 0 && x < 0)) {
        x = -x;
        y = -y;
    }
    if (f.eval(x, y) != 0) throw std::logic_error("has_rational_root: witness does not vanish");
    return std::make_pair(std::move(x), std::move(y));
}

BinaryQuadraticForm transform(const BinaryQuadraticForm& f, const Mat2& g) {
    Int det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if (det != 1 && det != -1)
        throw std::invalid_argument("transform: matrix must be unimodular");
    BinaryQuadraticForm h;
    h.a = f.eval(g[0][0], g[1][0]);
    h.c = f.eval(g[0][1], g[1][1]);
    h.b = 2 * f.a * g[0][0] * g[0][1] + f.b * (g[0][0] * g[1][1] + g[0][1] * g[1][0]) +
          2 * f.c * g[1][0] * g[1][1];
    return h;
}

}  // namespace rootstack
