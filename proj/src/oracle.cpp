#include "rootstack/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

namespace rootstack {

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

constexpr i64 kHeightCap = 10'000'000;
constexpr i64 kRingPhaseLimit = 64;  // box swept in canonical order before row scans

constexpr u64 square_residue_mask() {
    u64 m = 0;
    for (u64 k = 0; k < 64; ++k) m |= u64(1) << ((k * k) & 63);
    return m;
}
constexpr u64 kSquareMask = square_residue_mask();

bool is_square_u64(u64 u) {
    if (!((kSquareMask >> (u & 63)) & 1)) return false;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(u)));
    while (r * r > u) --r;
    while ((r + 1) * (r + 1) <= u) ++r;
    return r * r == u;
}

// Exact-division probe for an odd modulus (inverse mod 2^64).
struct OddDivisor {
    u64 inv, lim;

    explicit OddDivisor(u64 d) {
        inv = d;
        for (int i = 0; i < 5; ++i) inv *= 2 - d * inv;
        lim = ~u64(0) / d;
    }
    // On success writes n / d.
    bool divides(u64 n, u64& quot) const {
        u64 q = n * inv;
        if (q > lim) return false;
        quot = q;
        return true;
    }
};

enum class HitKind { None, Zero, Integral };

template <typename XY>
struct HitT {
    HitKind kind = HitKind::None;
    XY x{}, y{};
    explicit operator bool() const { return kind != HitKind::None; }
};

// Visits the pairs with max(|x|, y) = h in canonical (y, x) order.
// The callback returns true to stop.
template <typename C, typename F>
bool visit_ring(C h, F&& f) {
    if (h == 1 && f(C(1), C(0))) return true;
    for (C y = 1; y < h; ++y)
        if (f(-h, y) || f(h, y)) return true;
    for (C x = -h; x <= h; ++x)
        if (f(x, h)) return true;
    return false;
}

// Engine over native integers; valid when every |f| value in the box fits.
struct FastEngine {
    using C = i64;
    i64 a, b, c;
    std::vector<OddDivisor> odd;  // odd bad primes

    FastEngine(const BinaryQuadraticForm& f, const std::vector<Int>& bad) {
        a = f.a.convert_to<i64>();
        b = f.b.convert_to<i64>();
        c = f.c.convert_to<i64>();
        for (const auto& p : bad)
            if (p != 2) odd.emplace_back(p.convert_to<u64>());
    }

    bool integral_value(i64 n) const {
        u64 u = n < 0 ? u64(-n) : u64(n);
        u >>= std::countr_zero(u);
        for (const auto& d : odd) {
            u64 q;
            while (d.divides(u, q)) u = q;
        }
        return is_square_u64(u);
    }

    HitKind classify(i64 x, i64 y) const {
        i64 n = (a * x + b * y) * x + c * y * y;
        if (n == 0) return HitKind::Zero;
        return integral_value(n) ? HitKind::Integral : HitKind::None;
    }

    // Scans rows y0..y1 in row-major order and returns the first hit there.
    // Stops early once any row exceeds the shared ring bound.
    HitT<i64> scan_rows(i64 H, i64 y0, i64 y1, std::atomic<i64>& ring_bound) const {
        HitT<i64> hit;
        for (i64 y = y0; y <= y1; ++y) {
            if (y > ring_bound.load(std::memory_order_relaxed)) break;
            i64 n = (a * -H + b * y) * -H + c * y * y;
            i64 delta = a * (-2 * H + 1) + b * y;
            for (i64 x = -H; x <= H; ++x) {
                if (n == 0) {
                    hit = {HitKind::Zero, x, y};
                } else {
                    u64 u = n < 0 ? u64(-n) : u64(n);
                    u >>= std::countr_zero(u);
                    for (const auto& d : odd) {
                        u64 q;
                        while (d.divides(u, q)) u = q;
                    }
                    if (((kSquareMask >> (u & 63)) & 1) && is_square_u64(u))
                        hit = {HitKind::Integral, x, y};
                }
                if (hit) {
                    i64 h = std::max(x < 0 ? -x : x, y);
                    i64 cur = ring_bound.load(std::memory_order_relaxed);
                    while (h < cur &&
                           !ring_bound.compare_exchange_weak(cur, h, std::memory_order_relaxed)) {
                    }
                    return hit;
                }
                n += delta;
                delta += 2 * a;
            }
        }
        return hit;
    }
};

// Arbitrary-precision fallback engine.
struct BigEngine {
    using C = Int;
    BinaryQuadraticForm f;
    std::vector<Int> bad;

    HitKind classify(const Int& x, const Int& y) const {
        Int n = f.eval(x, y);
        if (n == 0) return HitKind::Zero;
        n = boost::multiprecision::abs(n);
        for (const auto& p : bad)
            while (n % p == 0) n /= p;
        return is_perfect_square(n) ? HitKind::Integral : HitKind::None;
    }

    HitT<Int> scan_rows(const Int& H, const Int& y0, const Int& y1,
                        std::atomic<i64>& ring_bound) const {
        HitT<Int> hit;
        for (Int y = y0; y <= y1; ++y) {
            if (y > ring_bound.load(std::memory_order_relaxed)) break;
            for (Int x = -H; x <= H; ++x) {
                HitKind k = classify(x, y);
                if (k != HitKind::None) {
                    hit = {k, x, y};
                    Int habs = boost::multiprecision::abs(x);
                    i64 h = std::max(habs, y).convert_to<i64>();
                    i64 cur = ring_bound.load(std::memory_order_relaxed);
                    while (h < cur &&
                           !ring_bound.compare_exchange_weak(cur, h, std::memory_order_relaxed)) {
                    }
                    return hit;
                }
            }
        }
        return hit;
    }
};

// Exact count of normalized coprime pairs with max(|x|, y) <= H:
// 4 for the first ring and 4*phi(h) for each ring after it.
u64 coprime_pair_count(i64 H) {
    std::vector<std::uint32_t> phi(static_cast<size_t>(H) + 1);
    for (i64 i = 0; i <= H; ++i) phi[i] = static_cast<std::uint32_t>(i);
    for (i64 i = 2; i <= H; ++i)
        if (phi[i] == static_cast<std::uint32_t>(i))  // i is prime
            for (i64 j = i; j <= H; j += i) phi[j] -= phi[j] / i;
    u64 total = 4;
    for (i64 h = 2; h <= H; ++h) total += 4ull * phi[h];
    return total;
}

template <typename Engine>
SearchReport run_search(const Engine& eng, i64 H, int threads) {
    using C = typename Engine::C;
    SearchReport report;
    report.height_bound = H;
    report.candidates_tested = coprime_pair_count(H);

    HitT<C> hit;
    // Canonical sweep of the small box; the first hit here is final.
    i64 phase1 = std::min(H, kRingPhaseLimit);
    for (i64 h = 1; h <= phase1 && !hit; ++h)
        visit_ring(C(h), [&](C x, C y) {
            HitKind k = eng.classify(x, y);
            if (k == HitKind::None) return false;
            hit = {k, x, y};
            return true;
        });

    if (!hit && H > phase1) {
        // Row-major scan of the rest. Any hit only bounds the answer; the
        // canonical first hit is then recovered by a ring sweep below.
        std::atomic<i64> ring_bound{H + 1};
        if (threads <= 1) {
            eng.scan_rows(C(H), C(1), C(H), ring_bound);
        } else {
            std::vector<std::thread> pool;
            i64 rows = H, lo = 1;
            for (int t = 0; t < threads; ++t) {
                i64 count = rows / threads + (t < rows % threads ? 1 : 0);
                i64 hi = lo + count - 1;
                pool.emplace_back(
                    [&eng, &ring_bound, H, lo, hi] { eng.scan_rows(C(H), C(lo), C(hi), ring_bound); });
                lo = hi + 1;
            }
            for (auto& th : pool) th.join();
        }
        i64 bound = ring_bound.load();
        if (bound <= H) {
            hit = HitT<C>{};
            for (i64 h = phase1 + 1; h <= bound && !hit; ++h)
                visit_ring(C(h), [&](C x, C y) {
                    HitKind k = eng.classify(x, y);
                    if (k == HitKind::None) return false;
                    hit = {k, x, y};
                    return true;
                });
        }
    }

    if (hit) {
        ProjectivePoint P = ProjectivePoint::normalized(Int(hit.x), Int(hit.y));
        if (hit.kind == HitKind::Zero)
            report.stacky_hit = std::move(P);
        else
            report.found = std::move(P);
    }
    return report;
}

std::vector<Int> bad_primes_of(const BinaryQuadraticForm& f) {
    return discriminant(f).bad_primes;  // throws DegenerateForm when q = 0
}

}  // namespace

ProjectivePoint ProjectivePoint::normalized(Int x, Int y) {
    using boost::multiprecision::abs;
    if (x == 0 && y == 0)
        throw std::invalid_argument("ProjectivePoint: (0, 0) is not projective");
    Int g = boost::multiprecision::gcd(abs(x), abs(y));
    x /= g;
    y /= g;
    if (y < 0 || (y == 0 && x < 0)) {
        x = -x;
        y = -y;
    }
    ProjectivePoint P;
    P.x = std::move(x);
    P.y = std::move(y);
    return P;
}

std::string ProjectivePoint::str() const { return "[" + x.str() + ":" + y.str() + "]"; }

bool is_integral_point(const BinaryQuadraticForm& f, const ProjectivePoint& P) {
    Int n = f.eval(P.x, P.y);
    if (n == 0)
        throw std::invalid_argument("is_integral_point: " + P.str() + " is a zero of f");
    n = boost::multiprecision::abs(n);
    for (const auto& p : bad_primes_of(f))
        while (n % p == 0) n /= p;
    return is_perfect_square(n);
}

SearchReport search(const BinaryQuadraticForm& f, const Int& height, int threads) {
    if (height < 1) throw std::invalid_argument("search: height bound must be >= 1");
    if (height > kHeightCap)
        throw std::invalid_argument("search: height bound above supported cap");
    std::vector<Int> bad = bad_primes_of(f);
    const i64 H = height.convert_to<i64>();
    threads = std::clamp(threads, 1, 64);

    using boost::multiprecision::abs;
    Int peak = (abs(f.a) + abs(f.b) + abs(f.c)) * height * height;
    if (peak < (Int(1) << 62)) {
        FastEngine eng(f, bad);
        return run_search(eng, H, threads);
    }
    BigEngine eng{f, std::move(bad)};
    return run_search(eng, H, threads);
}

bool verify_local(const BinaryQuadraticForm& f, const Int& prime_bound) {
    Discriminant disc = discriminant(f);
    if (prime_bound > 100'000'000)
        throw std::invalid_argument("verify_local: prime bound above supported cap");
    const i64 bound = prime_bound < 2 ? 0 : prime_bound.convert_to<i64>();
    std::vector<bool> composite(static_cast<size_t>(bound) + 1, false);
    for (i64 p = 2; p <= bound; ++p) {
        if (composite[static_cast<size_t>(p)]) continue;
        for (i64 j = 2 * p; j <= bound; j += p) composite[static_cast<size_t>(j)] = true;
        if (2 * disc.q % p == 0) continue;
        u64 ap = ((f.a % p + p) % p).convert_to<u64>();
        u64 bp = ((f.b % p + p) % p).convert_to<u64>();
        u64 cp = ((f.c % p + p) % p).convert_to<u64>();
        u64 up = static_cast<u64>(p);
        // Four pairwise distinct residual points; a nondegenerate binary
        // quadratic vanishes on at most two of them.
        bool ok = false;
        for (auto [x, y] : {std::pair<u64, u64>{1, 0}, {0, 1}, {1, 1}, {1, 2}}) {
            if ((ap * x * x + bp * x * y + cp * y * y) % up != 0) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

CrossReport cross_validate(const BinaryQuadraticForm& f, const Int& height) {
    CrossReport report;
    report.verdict = decide(f);
    if (report.verdict.outcome == Outcome::DegenerateInput) {
        report.flag = Consistency::Consistent;
        return report;
    }
    report.search = search(f, height);
    const bool witnessed = report.search->found || report.search->stacky_hit;
    if (report.verdict.outcome == Outcome::BrauerObstruction)
        report.flag = witnessed ? Consistency::Contradiction : Consistency::Consistent;
    else {
        report.flag = witnessed ? Consistency::Consistent : Consistency::Unresolved;
        if (witnessed && !report.verdict.witness_point) {
            const ProjectivePoint& P =
                report.search->found ? *report.search->found : *report.search->stacky_hit;
            report.verdict.witness_point = std::make_pair(P.x, P.y);
        }
    }
    return report;
}

std::string consistency_str(Consistency c) {
    switch (c) {
        case Consistency::Consistent: return "consistent";
        case Consistency::Contradiction: return "contradiction";
        case Consistency::Unresolved: return "unresolved";
    }
    return "unknown";
}

}  // namespace rootstack
