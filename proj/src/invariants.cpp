#include "rootstack/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace rootstack {

Signature::Signature(long g, std::vector<Int> es) : coarse_genus(g) {
    if (g < 0) throw std::invalid_argument("Signature: coarse genus must be >= 0");
    for (auto& e : es) {
        if (e < 1) throw std::invalid_argument("Signature: orders must be >= 1");
        if (e > 1) orders.push_back(std::move(e));
    }
    std::sort(orders.begin(), orders.end());
}

std::string Signature::str() const {
    std::ostringstream out;
    out << "(" << coarse_genus << ";";
    for (size_t i = 0; i < orders.size(); ++i) out << (i ? "," : "") << orders[i];
    out << ")";
    return out.str();
}

StackyLocusPoint::StackyLocusPoint(Int deg, Int order)
    : residue_degree(std::move(deg)), e(std::move(order)) {
    if (residue_degree < 1) throw std::invalid_argument("StackyLocusPoint: degree must be >= 1");
    if (e < 1) throw std::invalid_argument("StackyLocusPoint: stabilizer order must be >= 1");
}

Int FiniteAbelianGroup::order() const {
    Int n = 1;
    for (const auto& d : invariant_factors) n *= d;
    return n;
}

std::string FiniteAbelianGroup::str() const {
    if (invariant_factors.empty()) return "0";
    std::ostringstream out;
    for (size_t i = 0; i < invariant_factors.size(); ++i)
        out << (i ? " x " : "") << "Z/" << invariant_factors[i];
    return out.str();
}

Rational genus(const Signature& sig) {
    Rational g = sig.coarse_genus;
    for (const auto& e : sig.orders) g += Rational(e - 1, 2 * e);
    return g;
}

Int d_of_point(const StackyLocusPoint& P) {
    return P.e / boost::multiprecision::gcd(P.residue_degree, P.e);
}

Int d_of_curve(const std::vector<StackyLocusPoint>& points) {
    Int d = 1;
    for (const auto& P : points) d = boost::multiprecision::lcm(d, d_of_point(P));
    return d;
}

SmithResult smith_normal_form(std::vector<std::vector<Int>> m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    for (const auto& row : m)
        if (row.size() != cols) throw std::invalid_argument("smith_normal_form: ragged matrix");

    using boost::multiprecision::abs;
    size_t t = 0;
    const size_t steps = std::min(rows, cols);
    while (t < steps) {
        // Pivot: entry of least absolute value in the trailing submatrix.
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (!found || abs(m[i][j]) < abs(m[pi][pj]))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                Int q = m[i][t] / m[t][t];
                if (q != 0)
                    for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    // Remainder is strictly smaller: promote it to pivot and redo.
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                Int q = m[t][j] / m[t][t];
                if (q != 0)
                    for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // The pivot must divide everything that remains.
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                            clean = false;
                        }
            }
        }
        ++t;
    }

    SmithResult out;
    out.diagonal.reserve(steps);
    for (size_t i = 0; i < steps; ++i) {
        Int d = abs(m[i][i]);
        if (d != 0) ++out.rank;
        out.diagonal.push_back(std::move(d));
    }
    return out;
}

FiniteAbelianGroup pic0_group(const std::vector<StackyLocusPoint>& points) {
    const size_t r = points.size();
    FiniteAbelianGroup g;
    if (r == 0) return g;

    // Presentation on one generator per point: the stabilizer relations
    // e_i g_i = 0 together with the relation cutting out the degree kernel.
    std::vector<std::vector<Int>> m(r + 1, std::vector<Int>(r, 0));
    for (size_t i = 0; i < r; ++i) m[i][i] = points[i].e;
    for (size_t i = 0; i < r; ++i) m[r][i] = points[i].residue_degree % points[i].e;

    SmithResult snf = smith_normal_form(std::move(m));
    for (auto& d : snf.diagonal)
        if (d > 1) g.invariant_factors.push_back(std::move(d));
    return g;
}

bool is_simply_connected(const Signature& sig) {
    if (sig.coarse_genus != 0) return false;
    const auto& e = sig.orders;
    if (e.size() > 2) return false;
    if (e.size() == 2) return boost::multiprecision::gcd(e[0], e[1]) == 1;
    return true;
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

Int parse_int_at(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
        throw std::invalid_argument("expected integer in '" + s + "'");
    return Int(s.substr(start, i - start));
}

void expect(const std::string& s, size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c)
        throw std::invalid_argument(std::string("expected '") + c + "' in '" + s + "'");
    ++i;
}

}  // namespace

Signature parse_signature(const std::string& text) {
    size_t i = 0;
    expect(text, i, '(');
    Int g = parse_int_at(text, i);
    expect(text, i, ';');
    std::vector<Int> orders;
    skip_ws(text, i);
    if (i < text.size() && text[i] != ')') {
        for (;;) {
            orders.push_back(parse_int_at(text, i));
            skip_ws(text, i);
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
    }
    expect(text, i, ')');
    skip_ws(text, i);
    if (i != text.size()) throw std::invalid_argument("trailing input in '" + text + "'");
    if (g < 0 || g > std::numeric_limits<long>::max())
        throw std::invalid_argument("coarse genus out of range");
    return Signature(g.convert_to<long>(), std::move(orders));
}

std::vector<StackyLocusPoint> parse_stacky_points(const std::string& text) {
    std::vector<StackyLocusPoint> pts;
    size_t i = 0;
    for (;;) {
        expect(text, i, '(');
        Int deg = parse_int_at(text, i);
        expect(text, i, ',');
        Int e = parse_int_at(text, i);
        expect(text, i, ')');
        pts.emplace_back(std::move(deg), std::move(e));
        skip_ws(text, i);
        if (i < text.size() && text[i] == ';') {
            ++i;
            continue;
        }
        break;
    }
    skip_ws(text, i);
    if (i != text.size()) throw std::invalid_argument("trailing input in '" + text + "'");
    return pts;
}

}  // namespace rootstack
