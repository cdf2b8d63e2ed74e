#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rootstack/cli.hpp"
#include "rootstack/invariants.hpp"

namespace py = pybind11;
using namespace rootstack;

namespace pybind11::detail {

// cpp_int <-> python int, exact in both directions via decimal strings.
template <>
struct type_caster<Int> {
    PYBIND11_TYPE_CASTER(Int, const_name("int"));

    bool load(handle src, bool) {
        if (!isinstance<int_>(src) || isinstance<bool_>(src)) return false;
        value = Int(str(src).cast<std::string>());
        return true;
    }
    static handle cast(const Int& n, return_value_policy, handle) {
        return PyLong_FromString(n.str().c_str(), nullptr, 10);
    }
};

// cpp_rational <-> fractions.Fraction (or any numerator/denominator pair).
template <>
struct type_caster<Rational> {
    PYBIND11_TYPE_CASTER(Rational, const_name("Fraction"));

    bool load(handle src, bool) {
        if (isinstance<float_>(src)) return false;
        if (!hasattr(src, "numerator") || !hasattr(src, "denominator")) return false;
        Int n(str(getattr(src, "numerator")).cast<std::string>());
        Int d(str(getattr(src, "denominator")).cast<std::string>());
        if (d == 0) return false;
        value = Rational(n, d);
        return true;
    }
    static handle cast(const Rational& r, return_value_policy, handle) {
        std::ostringstream os;
        os << r;
        object fraction = module_::import("fractions").attr("Fraction");
        return fraction(os.str()).release();
    }
};

}  // namespace pybind11::detail

namespace {

Place to_place(const py::object& p) {
    if (p.is_none()) return Place::real();
    return Place::finite(p.cast<Int>());
}

py::dict verdict_dict(const Verdict& v) {
    py::dict d;
    d["outcome"] = outcome_str(v.outcome);
    d["witness_class"] =
        v.witness_class ? py::cast(v.witness_class->value()) : py::object(py::none());
    d["witness_point"] = v.witness_point ? py::cast(*v.witness_point) : py::object(py::none());
    d["beh_order"] = v.beh_order ? py::cast(*v.beh_order) : py::object(py::none());
    if (v.evidence.empty()) {
        d["epsilon"] = py::none();
    } else {
        py::dict eps;
        for (const auto& ev : v.evidence) eps[ev.place.str().c_str()] = ev.epsilon;
        d["epsilon"] = eps;
    }
    return d;
}

py::dict search_dict(const SearchReport& r) {
    py::dict d;
    d["height_bound"] = py::cast(r.height_bound);
    d["found"] = r.found ? py::cast(std::make_pair(r.found->x, r.found->y))
                         : py::object(py::none());
    d["stacky_hit"] = r.stacky_hit ? py::cast(std::make_pair(r.stacky_hit->x, r.stacky_hit->y))
                                   : py::object(py::none());
    d["candidates_tested"] = r.candidates_tested;
    return d;
}

BinaryQuadraticForm form_of(const Int& a, const Int& b, const Int& c) { return {a, b, c}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Integral points on root stacks P1[sqrt(f)] over Z[1/2q]";

    m.def(
        "decide",
        [](const Int& a, const Int& b, const Int& c) { return verdict_dict(decide(form_of(a, b, c))); },
        py::arg("a"), py::arg("b"), py::arg("c"),
        "Decide whether a x^2 + b xy + c y^2 gives a root stack with an integral point");

    m.def(
        "beh_group",
        [](const Int& a, const Int& b, const Int& c) {
            std::vector<Int> values;
            for (const auto& d : beh_group(form_of(a, b, c)).members) values.push_back(d.value());
            return values;
        },
        py::arg("a"), py::arg("b"), py::arg("c"),
        "Canonical member values of the locally trivial square-class group");

    m.def(
        "beh_value",
        [](const Int& a, const Int& b, const Int& c, const Int& d) {
            return beh_value(form_of(a, b, c), squarefree_class(Rational(d)));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
        "Pairing of a beh class against the adelic points: +1 or -1");

    m.def(
        "search",
        [](const Int& a, const Int& b, const Int& c, const Int& height, int threads) {
            return search_dict(search(form_of(a, b, c), height, threads));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("height"), py::arg("threads") = 1,
        "Brute-force sweep for an integral point up to the given height");

    m.def(
        "cross_validate",
        [](const Int& a, const Int& b, const Int& c, const Int& height) {
            CrossReport rep = cross_validate(form_of(a, b, c), height);
            py::dict d;
            d["verdict"] = verdict_dict(rep.verdict);
            d["search"] = rep.search ? search_dict(*rep.search) : py::object(py::none());
            d["flag"] = consistency_str(rep.flag);
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("height") = 10000,
        "Check the decision against the brute-force oracle");

    m.def(
        "is_integral_point",
        [](const Int& a, const Int& b, const Int& c, const Int& x, const Int& y) {
            return is_integral_point(form_of(a, b, c), ProjectivePoint::normalized(x, y));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"), py::arg("y"),
        "Whether f(x, y) has even valuation at every prime away from 2q");

    m.def(
        "verify_local",
        [](const Int& a, const Int& b, const Int& c, const Int& prime_bound) {
            return verify_local(form_of(a, b, c), prime_bound);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("prime_bound") = 200,
        "Residual solvability at every good prime up to the bound");

    m.def(
        "epsilon_invariant",
        [](const Int& a, const Int& b, const Int& c, const py::object& place) {
            return epsilon_invariant(form_of(a, b, c), to_place(place));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("place"),
        "Local invariant of the conic attached to f; place None means the real place");

    m.def(
        "genus", [](const std::string& sig) { return genus(parse_signature(sig)); },
        py::arg("signature"), "Genus of the stacky curve with the given signature");

    m.def(
        "pic0_group",
        [](const std::vector<std::pair<Int, Int>>& pts) {
            std::vector<StackyLocusPoint> locus;
            for (const auto& [deg, e] : pts) locus.emplace_back(deg, e);
            return pic0_group(locus).invariant_factors;
        },
        py::arg("points"),
        "Invariant factors of Pic0 for a coarse-genus-0 curve with the given stacky locus");

    m.def(
        "d_of_curve",
        [](const std::vector<std::pair<Int, Int>>& pts) {
            std::vector<StackyLocusPoint> locus;
            for (const auto& [deg, e] : pts) locus.emplace_back(deg, e);
            return d_of_curve(locus);
        },
        py::arg("points"), "Index of the image of the degree map on Pic");

    m.def(
        "is_simply_connected",
        [](const std::string& sig) { return is_simply_connected(parse_signature(sig)); },
        py::arg("signature"));

    m.def(
        "hilbert_symbol",
        [](const Rational& a, const Rational& b, const py::object& place) {
            return hilbert_symbol(a, b, to_place(place));
        },
        py::arg("a"), py::arg("b"), py::arg("place"),
        "Hilbert symbol (a, b)_v; place None means the real place");

    m.def("jacobi", &jacobi, py::arg("a"), py::arg("n"));
    m.def("legendre", &legendre, py::arg("a"), py::arg("p"));
    m.def("is_prime", &is_prime, py::arg("n"));
    m.def(
        "valuation", [](const Rational& x, const Int& p) { return valuation(x, p); },
        py::arg("x"), py::arg("p"));

    m.def(
        "factorize",
        [](const Int& n) {
            Factorization f = factorize(n);
            return std::make_pair(f.sign, f.factors);
        },
        py::arg("n"), "Sign and (prime, exponent) pairs of n");

    m.def(
        "squarefree_class",
        [](const Rational& x) { return squarefree_class(x).value(); }, py::arg("x"),
        "Signed squarefree representative of x modulo rational squares");

    m.def(
        "transform",
        [](const Int& a, const Int& b, const Int& c, const Int& g00, const Int& g01,
           const Int& g10, const Int& g11) {
            Mat2 gamma{{{g00, g01}, {g10, g11}}};
            BinaryQuadraticForm g = transform(form_of(a, b, c), gamma);
            return std::make_tuple(g.a, g.b, g.c);
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("g00"), py::arg("g01"), py::arg("g10"),
        py::arg("g11"), "Coefficients of f((x, y) . gamma) for unimodular gamma");
}
