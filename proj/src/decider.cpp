#include "rootstack/decider.hpp"

#include <algorithm>

namespace rootstack {

namespace {

bool has_two(const SquareClass& d) {
    return std::find(d.primes.begin(), d.primes.end(), 2) != d.primes.end();
}

// Canonical representative of {d, d * qcls}: prefer odd support, then the
// smaller absolute value, then the positive sign.
SquareClass canonical_rep(const SquareClass& d, const SquareClass& qcls) {
    SquareClass e = multiply_classes(d, qcls);
    bool d2 = has_two(d), e2 = has_two(e);
    if (d2 != e2) return d2 ? e : d;
    Int dv = boost::multiprecision::abs(d.value());
    Int ev = boost::multiprecision::abs(e.value());
    if (dv != ev) return dv < ev ? d : e;
    return d.sign > 0 ? d : e;
}

// Local triviality: d must land in {1, q} times the local squares at
// every bad place (the real place handles the sign of q).
bool is_member(const SquareClass& d, const SquareClass& qcls, const std::vector<Place>& places) {
    SquareClass dq = multiply_classes(d, qcls);
    for (const auto& v : places)
        if (!is_local_square(d, v) && !is_local_square(dq, v)) return false;
    return true;
}

struct DeciderContext {
    Discriminant disc;
    std::vector<Place> places;  // real place first
    SquareClass qcls;
};

DeciderContext make_context(const BinaryQuadraticForm& f) {
    DeciderContext ctx;
    ctx.disc = discriminant(f);
    if (is_perfect_square(ctx.disc.q))
        throw std::invalid_argument("beh_group: discriminant of " + f.str() +
                                    " is a perfect square");
    ctx.places.push_back(Place::real());
    for (const auto& p : ctx.disc.bad_primes) ctx.places.push_back(Place::finite(p));
    ctx.qcls = ctx.disc.cls;
    return ctx;
}

BehGroup enumerate_members(const DeciderContext& ctx) {
    BehGroup g;
    g.q_class = ctx.qcls;
    const auto& primes = ctx.disc.bad_primes;
    const size_t n = primes.size();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        SquareClass d;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) d.primes.push_back(primes[i]);
        for (int sign : {1, -1}) {
            d.sign = sign;
            if (!is_member(d, ctx.qcls, ctx.places)) continue;
            SquareClass rep = canonical_rep(d, ctx.qcls);
            if (std::find(g.members.begin(), g.members.end(), rep) == g.members.end())
                g.members.push_back(std::move(rep));
        }
    }
    std::sort(g.members.begin(), g.members.end(), [](const SquareClass& x, const SquareClass& y) {
        Int xv = boost::multiprecision::abs(x.value());
        Int yv = boost::multiprecision::abs(y.value());
        if (xv != yv) return xv < yv;
        return x.sign > y.sign;
    });
    return g;
}

int product_over(const std::vector<int>& eps, const std::vector<bool>& take) {
    int s = 1;
    for (size_t i = 0; i < eps.size(); ++i)
        if (take[i]) s *= eps[i];
    return s;
}

}  // namespace

BehGroup beh_group(const BinaryQuadraticForm& f) { return enumerate_members(make_context(f)); }

int beh_value(const BinaryQuadraticForm& f, const SquareClass& d) {
    DeciderContext ctx = make_context(f);
    for (const auto& p : d.primes)
        if (std::find(ctx.disc.bad_primes.begin(), ctx.disc.bad_primes.end(), p) ==
            ctx.disc.bad_primes.end())
            throw std::invalid_argument("beh_value: class " + d.value().str() +
                                        " is not supported on the bad primes");
    if (!is_member(d, ctx.qcls, ctx.places))
        throw std::invalid_argument("beh_value: class " + d.value().str() +
                                    " is not locally trivial for " + f.str());
    int s = 1;
    for (const auto& v : ctx.places)
        if (!is_local_square(d, v)) s *= epsilon_invariant(f, v);
    return s;
}

Verdict decide(const BinaryQuadraticForm& f) {
    Verdict verdict;
    Int q = f.b * f.b - 4 * f.a * f.c;
    if (q == 0) {
        verdict.outcome = Outcome::DegenerateInput;
        return verdict;
    }
    if (auto root = has_rational_root(f)) {
        // A rational zero of f is a stacky point of the model, hence integral.
        verdict.outcome = Outcome::IntegralPointExists;
        verdict.witness_point = root;
        return verdict;
    }

    DeciderContext ctx = make_context(f);
    BehGroup group = enumerate_members(ctx);
    verdict.beh_order = group.order();

    std::vector<int> eps;
    eps.reserve(ctx.places.size());
    for (const auto& v : ctx.places) eps.push_back(epsilon_invariant(f, v));

    verdict.outcome = Outcome::IntegralPointExists;
    const SquareClass* witness = nullptr;
    for (const auto& d : group.members) {
        std::vector<bool> nonsquare(ctx.places.size());
        for (size_t i = 0; i < ctx.places.size(); ++i)
            nonsquare[i] = !is_local_square(d, ctx.places[i]);
        int val = product_over(eps, nonsquare);
        std::vector<bool> square = nonsquare;
        square.flip();
        // Under the product formula over all places the two partial products
        // agree; a mismatch means the local invariants are inconsistent.
        if (val != product_over(eps, square))
            throw std::logic_error("decide: partial epsilon products disagree for " + f.str());
        if (val == -1 && !d.is_identity() && witness == nullptr) {
            verdict.outcome = Outcome::BrauerObstruction;
            witness = &d;
        }
    }

    const SquareClass id = SquareClass::one();
    const SquareClass& dw = witness ? *witness : id;
    SquareClass dwq = multiply_classes(dw, ctx.qcls);
    for (size_t i = 0; i < ctx.places.size(); ++i)
        verdict.evidence.push_back({ctx.places[i], eps[i], is_local_square(dw, ctx.places[i]),
                                    is_local_square(dwq, ctx.places[i])});
    if (witness) verdict.witness_class = *witness;
    return verdict;
}

std::string outcome_str(Outcome o) {
    switch (o) {
        case Outcome::IntegralPointExists: return "integral_point_exists";
        case Outcome::BrauerObstruction: return "brauer_obstruction";
        case Outcome::DegenerateInput: return "degenerate_input";
    }
    return "unknown";
}

}  // namespace rootstack
