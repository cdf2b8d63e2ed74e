#include "rootstack/arith.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace rootstack {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod64(u64 a, u64 b, u64 m) { return (u128)a * b % m; }

u64 powmod64(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    for (; e; e >>= 1) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
    }
    return r;
}

// Deterministic for all 64-bit inputs with this witness set.
bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Miller-Rabin on big integers. The witness set is deterministic below
// 3.3e24; beyond that it is a fixed-base probabilistic test, which is all
// this library needs at its working scale.
bool is_prime_big(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    Int d = n - 1;
    unsigned s = boost::multiprecision::lsb(d);
    d >>= s;
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = boost::multiprecision::powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 pollard_rho_u64(u64 n, u64& budget) {
    // Brent's cycle variant; n odd composite, not a prime power of a small prime.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
        u64 it = 0;
        auto f = [&](u64 v) { return (mulmod64(v, v, n) + c) % n; };
        for (u64 r = 1; d == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && d == 1; k += 128) {
                ys = y;
                u64 lim = std::min<u64>(128, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod64(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                it += lim;
                if (it > budget) throw BudgetExceeded("factorization budget exceeded");
            }
        }
        budget -= std::min(budget, it);
        if (d == n) {
            // Backtrack to recover the factor lost inside the batch.
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

Int pollard_rho_big(const Int& n, u64& budget) {
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto f = [&](const Int& v) { return ((v * v) % n + c) % n; };
        u64 it = 0;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = boost::multiprecision::gcd(boost::multiprecision::abs(x - y), n);
            if (++it > budget) throw BudgetExceeded("factorization budget exceeded");
        }
        budget -= std::min(budget, it);
        if (d != n) return d;
    }
}

void factor_u64(u64 n, u64& budget, std::vector<std::pair<Int, unsigned>>& out) {
    for (u64 p = 2; p < 10000 && p * p <= n; p = (p == 2 ? 3 : p + 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) n /= p, ++e;
            out.emplace_back(Int(p), e);
        }
    }
    std::vector<u64> stack;
    if (n > 1) stack.push_back(n);
    std::vector<u64> primes;
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (is_prime_u64(m)) {
            primes.push_back(m);
            continue;
        }
        u64 d = pollard_rho_u64(m, budget);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.emplace_back(Int(primes[i]), unsigned(j - i));
        i = j;
    }
}

void factor_big(Int n, u64& budget, std::vector<std::pair<Int, unsigned>>& out) {
    for (u64 p = 2; p < 10000 && Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) n /= p, ++e;
            out.emplace_back(Int(p), e);
        }
    }
    std::vector<Int> stack;
    if (n > 1) stack.push_back(n);
    std::vector<Int> primes;
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m <= std::numeric_limits<u64>::max()) {
            size_t base = out.size();
            factor_u64(m.convert_to<u64>(), budget, out);
            // factor_u64 appends sorted prime powers; fold them into the prime list.
            for (size_t i = base; i < out.size(); ++i)
                for (unsigned k = 0; k < out[i].second; ++k) primes.push_back(out[i].first);
            out.resize(base);
            continue;
        }
        if (is_prime_big(m)) {
            primes.push_back(m);
            continue;
        }
        Int d = pollard_rho_big(m, budget);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(primes.begin(), primes.end());
    for (size_t i = 0; i < primes.size();) {
        size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.emplace_back(primes[i], unsigned(j - i));
        i = j;
    }
}

int jacobi_u64(u64 a, u64 n) {
    // n odd positive.
    a %= n;
    int result = 1;
    while (a != 0) {
        int t = std::countr_zero(a);
        a >>= t;
        if ((t & 1) && (n % 8 == 3 || n % 8 == 5)) result = -result;
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace

Place Place::finite(Int p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("Place::finite: not a prime");
    Place v;
    v.real_ = false;
    v.p_ = std::move(p);
    return v;
}

const Int& Place::prime() const {
    if (real_) throw std::logic_error("Place::prime: real place");
    return p_;
}

std::strong_ordering Place::operator<=>(const Place& o) const {
    if (real_ != o.real_) return real_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (p_ < o.p_) return std::strong_ordering::less;
    if (p_ > o.p_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Place::str() const { return real_ ? "inf" : p_.str(); }

Int Factorization::value() const {
    Int v = sign;
    for (const auto& [p, e] : factors)
        for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
}

Int SquareClass::value() const {
    Int v = sign;
    for (const auto& p : primes) v *= p;
    return v;
}

SquareClass SquareClass::from_factorization(const Factorization& f) {
    SquareClass c;
    c.sign = f.sign;
    for (const auto& [p, e] : f.factors)
        if (e & 1) c.primes.push_back(p);
    return c;
}

bool is_prime(const Int& n) {
    if (n <= std::numeric_limits<u64>::max()) {
        if (n < 2) return false;
        return is_prime_u64(n.convert_to<u64>());
    }
    return is_prime_big(n);
}

Factorization factorize(const Int& n, std::uint64_t budget) {
    if (n == 0) throw std::invalid_argument("factorize: input must be nonzero");
    Factorization f;
    f.sign = n < 0 ? -1 : 1;
    Int m = boost::multiprecision::abs(n);
    if (m <= std::numeric_limits<u64>::max())
        factor_u64(m.convert_to<u64>(), budget, f.factors);
    else
        factor_big(m, budget, f.factors);
    return f;
}

long valuation(const Int& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation: input must be nonzero");
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("valuation: p must be prime");
    Int m = boost::multiprecision::abs(x);
    if (p == 2) return long(boost::multiprecision::lsb(m));
    long v = 0;
    Int q, r;
    for (;;) {
        boost::multiprecision::divide_qr(m, p, q, r);
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

long valuation(const Rational& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation: input must be nonzero");
    long v = valuation(boost::multiprecision::numerator(x), p);
    const Int den = boost::multiprecision::denominator(x);
    if (den != 1) v -= valuation(den, p);
    return v;
}

int jacobi(Int a, Int n) {
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi: n must be odd positive");
    a %= n;
    if (a < 0) a += n;
    if (a <= std::numeric_limits<u64>::max() && n <= std::numeric_limits<u64>::max())
        return jacobi_u64(a.convert_to<u64>(), n.convert_to<u64>());
    int result = 1;
    while (a != 0) {
        unsigned t = boost::multiprecision::lsb(a);
        a >>= t;
        Int n8 = n % 8;
        if ((t & 1) && (n8 == 3 || n8 == 5)) result = -result;
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? result : 0;
}

int legendre(const Int& a, const Int& p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
    return jacobi(a, p);
}

namespace {

// (u-1)/2 mod 2 for odd u: nontrivial iff u = 3 mod 4.
int eps2(const Int& u) {
    Int r = u % 4;
    if (r < 0) r += 4;
    return r == 3 ? 1 : 0;
}

// (u^2-1)/8 mod 2 for odd u: nontrivial iff u = 3, 5 mod 8.
int omega2(const Int& u) {
    Int r = u % 8;
    if (r < 0) r += 8;
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
    // num*den is in the same square class, so the symbol only sees integers.
    Int A = boost::multiprecision::numerator(a) * boost::multiprecision::denominator(a);
    Int B = boost::multiprecision::numerator(b) * boost::multiprecision::denominator(b);
    if (v.is_real()) return (A < 0 && B < 0) ? -1 : 1;

    const Int& p = v.prime();
    long alpha = valuation(A, p);
    long beta = valuation(B, p);
    Int u = A, w = B;
    for (long i = 0; i < alpha; ++i) u /= p;
    for (long i = 0; i < beta; ++i) w /= p;

    if (p == 2) {
        long t = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
        return (t & 1) ? -1 : 1;
    }
    int s = 1;
    if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
    if (beta & 1) s *= legendre(u, p);
    if (alpha & 1) s *= legendre(w, p);
    return s;
}

bool is_local_square(const SquareClass& d, const Place& v) {
    if (v.is_real()) return d.sign > 0;
    const Int& p = v.prime();
    // d is squarefree, so an odd valuation at p means exactly p | d.
    if (std::find(d.primes.begin(), d.primes.end(), p) != d.primes.end()) return false;
    if (p == 2) {
        Int r = d.value() % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    return legendre(d.value(), p) == 1;
}

SquareClass squarefree_class(const Rational& x, std::uint64_t budget) {
    if (x == 0) throw std::invalid_argument("squarefree_class: input must be nonzero");
    Int rep = boost::multiprecision::numerator(x) * boost::multiprecision::denominator(x);
    return SquareClass::from_factorization(factorize(rep, budget));
}

SquareClass multiply_classes(const SquareClass& a, const SquareClass& b) {
    SquareClass c;
    c.sign = a.sign * b.sign;
    std::set_symmetric_difference(a.primes.begin(), a.primes.end(), b.primes.begin(),
                                  b.primes.end(), std::back_inserter(c.primes));
    return c;
}

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative input");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    Int r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

}  // namespace rootstack
