#include "rootstack/scan.hpp"

#include <algorithm>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rootstack {

namespace {

constexpr std::uint64_t kMaxForms = 10'000'000;

std::uint64_t box_width(const Int& lo, const Int& hi) {
    if (lo > hi) throw std::invalid_argument("run_scan: empty coefficient range");
    Int w = hi - lo + 1;
    if (w > kMaxForms) throw std::invalid_argument("run_scan: coefficient range too wide");
    return w.convert_to<std::uint64_t>();
}

CatalogRow make_row(const BinaryQuadraticForm& f, const Int& height) {
    CatalogRow row;
    row.a = f.a;
    row.b = f.b;
    row.c = f.c;
    row.q = f.b * f.b - 4 * f.a * f.c;
    CrossReport rep = cross_validate(f, height);
    row.outcome = rep.verdict.outcome;
    row.witness_class = rep.verdict.witness_class;
    row.witness_point = rep.verdict.witness_point;
    if (rep.verdict.beh_order) row.beh_order = static_cast<std::uint64_t>(*rep.verdict.beh_order);
    for (const auto& ev : rep.verdict.evidence) row.epsilon.emplace_back(ev.place, ev.epsilon);
    row.check = rep.flag;
    return row;
}

std::string outcome_token(Outcome o) { return outcome_str(o); }

Outcome parse_outcome(const std::string& s) {
    if (s == outcome_str(Outcome::IntegralPointExists)) return Outcome::IntegralPointExists;
    if (s == outcome_str(Outcome::BrauerObstruction)) return Outcome::BrauerObstruction;
    if (s == outcome_str(Outcome::DegenerateInput)) return Outcome::DegenerateInput;
    throw std::invalid_argument("parse_row: unknown outcome '" + s + "'");
}

Consistency parse_check(const std::string& s) {
    for (Consistency c :
         {Consistency::Consistent, Consistency::Contradiction, Consistency::Unresolved})
        if (s == consistency_str(c)) return c;
    throw std::invalid_argument("parse_row: unknown check '" + s + "'");
}

Int parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_row: empty integer field");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("parse_row: bad integer '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("parse_row: bad integer '" + s + "'");
    return Int(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string render_epsilon(const std::vector<std::pair<Place, int>>& eps) {
    std::string out;
    for (size_t i = 0; i < eps.size(); ++i) {
        if (i) out += ';';
        out += eps[i].first.str();
        out += eps[i].second > 0 ? ":+1" : ":-1";
    }
    return out;
}

std::vector<std::pair<Place, int>> parse_epsilon(const std::string& s) {
    std::vector<std::pair<Place, int>> out;
    if (s.empty()) return out;
    for (const std::string& part : split(s, ';')) {
        size_t colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("parse_row: bad epsilon entry '" + part + "'");
        std::string place = part.substr(0, colon);
        std::string value = part.substr(colon + 1);
        Place v = place == "inf" ? Place::real() : Place::finite(parse_int(place));
        int e;
        if (value == "+1")
            e = 1;
        else if (value == "-1")
            e = -1;
        else
            throw std::invalid_argument("parse_row: bad epsilon value '" + value + "'");
        out.emplace_back(v, e);
    }
    return out;
}

}  // namespace

ScanResult run_scan(const ScanJob& job) {
    if (job.height < 1) throw std::invalid_argument("run_scan: height bound must be >= 1");
    std::uint64_t wa = box_width(job.a_lo, job.a_hi);
    std::uint64_t wb = box_width(job.b_lo, job.b_hi);
    std::uint64_t wc = box_width(job.c_lo, job.c_hi);
    if (wa && wb && wc && wa > kMaxForms / wb / wc)
        throw std::invalid_argument("run_scan: too many forms in range");
    const std::uint64_t total = wa * wb * wc;
    const int workers = std::clamp(job.workers, 1, 64);

    std::vector<std::optional<CatalogRow>> slots(total);
    auto form_at = [&](std::uint64_t idx) {
        std::uint64_t ia = idx / (wb * wc), rem = idx % (wb * wc);
        return BinaryQuadraticForm{job.a_lo + ia, job.b_lo + rem / wc, job.c_lo + rem % wc};
    };
    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            BinaryQuadraticForm f = form_at(i);
            if (f.b * f.b - 4 * f.a * f.c == 0) continue;  // degenerate, no row
            slots[i] = make_row(f, job.height);
        }
    };

    if (workers == 1 || total < 2) {
        work(0, total);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] {
                try {
                    work(lo, hi);
                } catch (...) {
                    errors[static_cast<size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    ScanResult result;
    for (auto& slot : slots) {
        if (!slot) {
            ++result.summary.degenerate;
            continue;
        }
        switch (slot->outcome) {
            case Outcome::IntegralPointExists: ++result.summary.exists; break;
            case Outcome::BrauerObstruction: ++result.summary.obstruction; break;
            case Outcome::DegenerateInput: ++result.summary.degenerate; break;
        }
        if (slot->check == Consistency::Unresolved) ++result.summary.unresolved;
        if (slot->check == Consistency::Contradiction) ++result.summary.contradiction;
        result.rows.push_back(std::move(*slot));
    }
    return result;
}

std::string render_row(const CatalogRow& row) {
    std::string out;
    out += row.a.str();
    out += ',';
    out += row.b.str();
    out += ',';
    out += row.c.str();
    out += ',';
    out += row.q.str();
    out += ',';
    out += outcome_token(row.outcome);
    out += ',';
    if (row.witness_class) out += row.witness_class->value().str();
    out += ',';
    if (row.witness_point) out += row.witness_point->first.str();
    out += ',';
    if (row.witness_point) out += row.witness_point->second.str();
    out += ',';
    if (row.beh_order) out += std::to_string(*row.beh_order);
    out += ',';
    out += render_epsilon(row.epsilon);
    out += ',';
    out += consistency_str(row.check);
    return out;
}

CatalogRow parse_row(const std::string& line) {
    std::vector<std::string> f = split(line, ',');
    if (f.size() != 11)
        throw std::invalid_argument("parse_row: expected 11 fields, got " +
                                    std::to_string(f.size()));
    CatalogRow row;
    row.a = parse_int(f[0]);
    row.b = parse_int(f[1]);
    row.c = parse_int(f[2]);
    row.q = parse_int(f[3]);
    row.outcome = parse_outcome(f[4]);
    if (!f[5].empty()) row.witness_class = squarefree_class(Rational(parse_int(f[5])));
    if (f[6].empty() != f[7].empty())
        throw std::invalid_argument("parse_row: witness point needs both coordinates");
    if (!f[6].empty()) row.witness_point = std::make_pair(parse_int(f[6]), parse_int(f[7]));
    if (!f[8].empty()) {
        Int n = parse_int(f[8]);
        if (n < 0) throw std::invalid_argument("parse_row: negative beh order");
        row.beh_order = n.convert_to<std::uint64_t>();
    }
    row.epsilon = parse_epsilon(f[9]);
    row.check = parse_check(f[10]);
    return row;
}

std::string catalog_header() {
    return "a,b,c,q,outcome,witness_class,witness_x,witness_y,beh_order,epsilon,check";
}

void write_catalog(std::ostream& out, const std::vector<CatalogRow>& rows) {
    out << catalog_header() << '\n';
    for (const auto& row : rows) out << render_row(row) << '\n';
}

std::vector<CatalogRow> read_catalog(std::istream& in) {
    std::vector<CatalogRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    if (line != catalog_header())
        throw std::invalid_argument("read_catalog: unrecognized header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(parse_row(line));
    }
    return rows;
}

}  // namespace rootstack
