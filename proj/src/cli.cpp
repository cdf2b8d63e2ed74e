#include "rootstack/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "rootstack/invariants.hpp"

namespace rootstack::cli {

namespace {

using Json = nlohmann::ordered_json;

Json json_int(const Int& n) {
    if (n >= std::numeric_limits<std::int64_t>::min() &&
        n <= std::numeric_limits<std::int64_t>::max())
        return n.convert_to<std::int64_t>();
    return n.str();  // too wide for a JSON number, keep it exact
}

Json json_rational(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// The one record shape shared by the single-form commands; fields that a
// command does not produce stay null.
Json base_record(const BinaryQuadraticForm& f, const Int& q) {
    Json rec;
    rec["a"] = json_int(f.a);
    rec["b"] = json_int(f.b);
    rec["c"] = json_int(f.c);
    rec["q"] = json_int(q);
    rec["outcome"] = nullptr;
    rec["witness_class"] = nullptr;
    rec["witness_x"] = nullptr;
    rec["witness_y"] = nullptr;
    rec["beh_order"] = nullptr;
    rec["epsilon"] = nullptr;
    rec["height_bound"] = nullptr;
    return rec;
}

void fill_verdict(Json& rec, const Verdict& v) {
    rec["outcome"] = outcome_str(v.outcome);
    if (v.witness_class) rec["witness_class"] = json_int(v.witness_class->value());
    if (v.witness_point) {
        rec["witness_x"] = json_int(v.witness_point->first);
        rec["witness_y"] = json_int(v.witness_point->second);
    }
    if (v.beh_order) rec["beh_order"] = *v.beh_order;
    if (!v.evidence.empty()) {
        Json eps;
        for (const auto& ev : v.evidence) eps[ev.place.str()] = ev.epsilon;
        rec["epsilon"] = std::move(eps);
    }
}

std::string point_str(const std::pair<Int, Int>& P) {
    return "[" + P.first.str() + ":" + P.second.str() + "]";
}

void print_evidence(std::ostream& out, const Verdict& v) {
    if (v.evidence.empty()) return;
    const std::string d = v.witness_class ? v.witness_class->value().str() : "1";
    out << "local data for d = " << d << ":\n";
    size_t w = 5;
    for (const auto& ev : v.evidence) w = std::max(w, ev.place.str().size());
    out << "  " << std::left << std::setw(static_cast<int>(w)) << "place"
        << "  eps  d sq  d*q sq\n";
    for (const auto& ev : v.evidence) {
        out << "  " << std::left << std::setw(static_cast<int>(w)) << ev.place.str() << "  "
            << (ev.epsilon > 0 ? " +1" : " -1") << "  " << (ev.d_square ? "yes " : "no  ")
            << "  " << (ev.dq_square ? "yes" : "no") << "\n";
    }
}

Int skip_int(const std::string& s, size_t& i, const char* what) {
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == start || (i == start + 1 && (s[start] == '-' || s[start] == '+')))
        throw std::invalid_argument(std::string("expected ") + what + " in '" + s + "'");
    size_t from = s[start] == '+' ? start + 1 : start;  // cpp_int rejects a leading '+'
    return Int(s.substr(from, i - from));
}

// Geometrically a closed point of residue degree n splits into n points with
// the same stabilizer order, so the locus versions of the signature-level
// invariants weight each point by its degree.
Rational genus_of_locus(const std::vector<StackyLocusPoint>& points) {
    Rational g = 0;
    for (const auto& P : points) g += Rational(P.residue_degree * (P.e - 1), 2 * P.e);
    return g;
}

bool locus_simply_connected(const std::vector<StackyLocusPoint>& points) {
    Int r = 0;
    for (const auto& P : points)
        if (P.e > 1) r += P.residue_degree;
    if (r <= 1) return true;
    if (r == 2) {
        std::vector<Int> orders;
        for (const auto& P : points)
            if (P.e > 1)
                for (Int i = 0; i < P.residue_degree; ++i) orders.push_back(P.e);
        return boost::multiprecision::gcd(orders[0], orders[1]) == 1;
    }
    return false;
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

BinaryQuadraticForm parse_form(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    size_t i = 0;
    BinaryQuadraticForm f;
    f.a = skip_int(s, i, "coefficient a");
    if (i >= s.size() || s[i] != ',') throw std::invalid_argument("expected 'a,b,c'");
    ++i;
    f.b = skip_int(s, i, "coefficient b");
    if (i >= s.size() || s[i] != ',') throw std::invalid_argument("expected 'a,b,c'");
    ++i;
    f.c = skip_int(s, i, "coefficient c");
    if (i != s.size()) throw std::invalid_argument("trailing characters in form '" + text + "'");
    return f;
}

std::pair<Int, Int> parse_range(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("expected range 'L:U', got '" + text + "'");
    size_t i = 0;
    std::string lo_s = text.substr(0, colon), hi_s = text.substr(colon + 1);
    Int lo = skip_int(lo_s, i, "range lower bound");
    if (i != lo_s.size()) throw std::invalid_argument("bad range lower bound '" + lo_s + "'");
    i = 0;
    Int hi = skip_int(hi_s, i, "range upper bound");
    if (i != hi_s.size()) throw std::invalid_argument("bad range upper bound '" + hi_s + "'");
    if (lo > hi) throw std::invalid_argument("empty range '" + text + "'");
    return {lo, hi};
}

int exit_code(Outcome o) {
    switch (o) {
        case Outcome::IntegralPointExists: return 0;
        case Outcome::BrauerObstruction: return 2;
        case Outcome::DegenerateInput: return 3;
    }
    return 1;
}

int cmd_decide(const DecideOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        BinaryQuadraticForm f = parse_form(opt.form);
        Verdict v = decide(f);
        Int q = f.b * f.b - 4 * f.a * f.c;
        if (opt.json) {
            Json rec = base_record(f, q);
            fill_verdict(rec, v);
            out << rec.dump() << "\n";
        } else {
            out << "form: " << f.str() << "\n";
            out << "discriminant: " << q.str() << "\n";
            out << "outcome: " << outcome_str(v.outcome) << "\n";
            if (v.beh_order) out << "beh order: " << *v.beh_order << "\n";
            if (v.witness_class) out << "witness class: " << v.witness_class->value().str() << "\n";
            if (v.witness_point) out << "integral point: " << point_str(*v.witness_point) << "\n";
            print_evidence(out, v);
        }
        return exit_code(v.outcome);
    });
}

int cmd_invariants(const InvariantsOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Rational g;
        Int dX;
        FiniteAbelianGroup pic0;
        bool sc;
        std::string label, shown;
        try {
            Signature sig = parse_signature(opt.input);
            std::vector<StackyLocusPoint> pts;
            for (const auto& e : sig.orders) pts.emplace_back(1, e);
            g = genus(sig);
            dX = d_of_curve(pts);
            pic0 = pic0_group(pts);
            sc = is_simply_connected(sig);
            label = "signature";
            shown = sig.str();
        } catch (const std::invalid_argument&) {
            std::vector<StackyLocusPoint> pts = parse_stacky_points(opt.input);
            g = genus_of_locus(pts);
            dX = d_of_curve(pts);
            pic0 = pic0_group(pts);
            sc = locus_simply_connected(pts);
            label = "stacky locus";
            std::string rendered;
            for (size_t i = 0; i < pts.size(); ++i) {
                if (i) rendered += ";";
                rendered += "(" + pts[i].residue_degree.str() + "," + pts[i].e.str() + ")";
            }
            shown = rendered;
        }
        if (opt.json) {
            Json rec;
            rec[label == "signature" ? "signature" : "stacky_locus"] = shown;
            rec["genus"] = json_rational(g);
            rec["d_X"] = json_int(dX);
            Json factors = Json::array();
            for (const auto& d : pic0.invariant_factors) factors.push_back(json_int(d));
            rec["pic0"] = Json{{"order", json_int(pic0.order())}, {"invariant_factors", factors}};
            rec["simply_connected"] = sc;
            out << rec.dump() << "\n";
        } else {
            out << label << ": " << shown << "\n";
            out << "genus: " << g << "\n";
            out << "d_X: " << dX.str() << "\n";
            out << "Pic0: " << pic0.str() << "\n";
            out << "simply connected: " << (sc ? "yes" : "no") << "\n";
        }
        return 0;
    });
}

int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        BinaryQuadraticForm f = parse_form(opt.form);
        size_t i = 0;
        Int H = skip_int(opt.height, i, "height bound");
        if (i != opt.height.size())
            throw std::invalid_argument("bad height bound '" + opt.height + "'");
        SearchReport rep = search(f, H, opt.threads);
        Int q = f.b * f.b - 4 * f.a * f.c;
        if (opt.json) {
            Json rec = base_record(f, q);
            rec["height_bound"] = json_int(rep.height_bound);
            rec["candidates_tested"] = rep.candidates_tested;
            if (rep.found) {
                rec["witness_x"] = json_int(rep.found->x);
                rec["witness_y"] = json_int(rep.found->y);
            }
            if (rep.stacky_hit) {
                rec["stacky_x"] = json_int(rep.stacky_hit->x);
                rec["stacky_y"] = json_int(rep.stacky_hit->y);
            }
            out << rec.dump() << "\n";
        } else {
            out << "form: " << f.str() << "\n";
            out << "height bound: " << rep.height_bound.str() << "\n";
            out << "candidates tested: " << rep.candidates_tested << "\n";
            if (rep.found)
                out << "integral point: " << rep.found->str() << "\n";
            else if (rep.stacky_hit)
                out << "rational zero: " << rep.stacky_hit->str() << "\n";
            else
                out << "no integral point up to this height\n";
        }
        return 0;
    });
}

int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ScanJob job;
        std::tie(job.a_lo, job.a_hi) = parse_range(opt.a_range);
        std::tie(job.b_lo, job.b_hi) = parse_range(opt.b_range);
        std::tie(job.c_lo, job.c_hi) = parse_range(opt.c_range);
        size_t i = 0;
        job.height = skip_int(opt.height, i, "height bound");
        if (i != opt.height.size())
            throw std::invalid_argument("bad height bound '" + opt.height + "'");
        job.workers = opt.workers;
        if (opt.out_path.empty()) throw std::invalid_argument("missing output path");

        ScanResult result = run_scan(job);
        std::ofstream file(opt.out_path);
        if (!file) throw std::runtime_error("cannot open output path '" + opt.out_path + "'");
        write_catalog(file, result.rows);
        file.flush();
        if (!file) throw std::runtime_error("failed writing catalog to '" + opt.out_path + "'");

        const auto& s = result.summary;
        out << "scanned " << (result.rows.size() + s.degenerate) << " forms: " << s.exists
            << " exists, " << s.obstruction << " obstruction, " << s.unresolved
            << " unresolved, " << s.degenerate << " degenerate\n";
        if (s.contradiction) out << "contradictions: " << s.contradiction << "\n";
        out << "catalog: " << opt.out_path << " (" << result.rows.size() << " rows)\n";
        return s.contradiction ? 1 : 0;
    });
}

}  // namespace rootstack::cli
