#include "diokex/attack.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "diokex/errors.hpp"
#include "diokex/intmath.hpp"

namespace diokex {

SearchRegion SearchRegion::box(std::size_t varcount, long long halfwidth) {
    SearchRegion r;
    r.ranges.assign(varcount, {-halfwidth, halfwidth});
    return r;
}

SearchRegion SearchRegion::box(std::vector<std::pair<long long, long long>> ranges) {
    SearchRegion r;
    r.ranges = std::move(ranges);
    return r;
}

SearchRegion SearchRegion::residues(std::size_t varcount) {
    SearchRegion r;
    r.ranges.assign(varcount, {0, 0});  // filled in from the ring's modulus
    r.residue_space = true;
    return r;
}

mpz_class SearchRegion::volume(const RingSpec& spec) const {
    mpz_class v = 1;
    if (residue_space) {
        if (!spec.finite()) throw DimensionError("residue region over integer ring");
        for (std::size_t i = 0; i < ranges.size(); ++i) v *= *spec.modulus;
        return v;
    }
    for (const auto& [lo, hi] : ranges) {
        if (lo > hi) return 0;
        v *= mpz_class(static_cast<long>(hi)) - static_cast<long>(lo) + 1;
    }
    return v;
}

std::string SearchRegion::describe(const RingSpec& spec) const {
    if (residue_space) return "w=" + (spec.finite() ? spec.modulus->get_str() : "?");
    if (ranges.empty()) return "[]";
    const bool uniform = std::all_of(ranges.begin(), ranges.end(),
                                     [&](const auto& r) { return r == ranges[0]; });
    std::ostringstream os;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        if (i > 0) os << 'x';
        os << '[' << ranges[i].first << ';' << ranges[i].second << ']';
        if (uniform) break;
    }
    return os.str();
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Determined: return "Determined";
        case Verdict::Ambiguous: return "Ambiguous";
        case Verdict::NoSolutionInBox: return "NoSolutionInBox";
    }
    return "?";
}

namespace {

struct FlatPoly {
    std::vector<std::vector<std::uint32_t>> exps;  // term -> var -> exponent
    std::vector<mpz_class> coefs;
    std::vector<std::uint32_t> maxexp;             // per var

    static FlatPoly from(const Polynomial& p) {
        FlatPoly fp;
        fp.maxexp.assign(p.varcount(), 0);
        for (const auto& [m, c] : p.terms()) {
            std::vector<std::uint32_t> e(p.varcount());
            for (std::size_t i = 0; i < p.varcount(); ++i) {
                e[i] = m.exponent(i);
                fp.maxexp[i] = std::max(fp.maxexp[i], e[i]);
            }
            fp.exps.push_back(std::move(e));
            fp.coefs.push_back(c);
        }
        return fp;
    }
};

// Worst-case |value| of p over the box; decides whether int64 scanning is safe.
mpz_class box_bound(const FlatPoly& fp, const std::vector<std::pair<long long, long long>>& ranges) {
    mpz_class bound = 0;
    for (std::size_t t = 0; t < fp.coefs.size(); ++t) {
        mpz_class term = abs(fp.coefs[t]);
        for (std::size_t i = 0; i < ranges.size(); ++i) {
            const mpz_class b(static_cast<long>(
                std::max({std::llabs(ranges[i].first),
                          std::llabs(ranges[i].second), 1ll})));
            for (std::uint32_t e = 0; e < fp.exps[t][i]; ++e) term *= b;
        }
        bound += term;
    }
    return bound;
}

// Evaluation policies for the hot loop.  `Value` carries one coordinate's
// power table entries and the accumulated term values.
struct Int64Policy {
    using Value = long long;
    static Value from_ll(long long v, const mpz_class&) { return v; }
    static Value mul(Value a, Value b, const mpz_class&) { return a * b; }
    static Value add(Value a, Value b, const mpz_class&) { return a + b; }
    static Value from_mpz(const mpz_class& c, const mpz_class&) { return c.get_si(); }
    static bool is_zero(Value v) { return v == 0; }
};

struct MpzPolicy {
    using Value = mpz_class;
    static Value from_ll(long long v, const mpz_class&) {
        return mpz_class(static_cast<long>(v));
    }
    static Value mul(const Value& a, const Value& b, const mpz_class&) { return a * b; }
    static Value add(const Value& a, const Value& b, const mpz_class&) { return a + b; }
    static Value from_mpz(const mpz_class& c, const mpz_class&) { return c; }
    static bool is_zero(const Value& v) { return v == 0; }
};

struct ResiduePolicy {
    using Value = unsigned long long;
    static Value from_ll(long long v, const mpz_class& w) {
        const unsigned long long ww = w.get_ui();
        long long r = v % static_cast<long long>(ww);
        if (r < 0) r += static_cast<long long>(ww);
        return static_cast<unsigned long long>(r);
    }
    static Value mul(Value a, Value b, const mpz_class& w) {
        return static_cast<Value>(
            static_cast<unsigned __int128>(a) * b % w.get_ui());
    }
    static Value add(Value a, Value b, const mpz_class& w) {
        return (a + b) % w.get_ui();
    }
    static Value from_mpz(const mpz_class& c, const mpz_class& w) {
        return mod_floor(c, w).get_ui();
    }
    static bool is_zero(Value v) { return v == 0; }
};

struct PartOutcome {
    std::uint64_t points = 0;
    std::uint64_t hits = 0;
    std::vector<std::vector<long long>> hit_points;
};

// Scan one slice of the first variable's range; odometer order, last
// variable fastest, so hits come out in ascending lexicographic order.
template <class Policy>
void scan_part(const FlatPoly& f, const Polynomial* h, const mpz_class* rhs,
               const std::vector<std::pair<long long, long long>>& ranges,
               long long v0_lo, long long v0_hi, const mpz_class& w,
               bool collect, PartOutcome& out) {
    using Value = typename Policy::Value;
    const std::size_t m = ranges.size();
    std::vector<long long> value(m);
    std::vector<long long> lo(m), hi(m);
    for (std::size_t i = 0; i < m; ++i) {
        lo[i] = ranges[i].first;
        hi[i] = ranges[i].second;
    }
    lo[0] = v0_lo;
    hi[0] = v0_hi;
    for (std::size_t i = 0; i < m; ++i) {
        if (lo[i] > hi[i]) return;
        value[i] = lo[i];
    }

    std::vector<Value> coefs(f.coefs.size());
    for (std::size_t t = 0; t < f.coefs.size(); ++t)
        coefs[t] = Policy::from_mpz(f.coefs[t], w);

    std::vector<std::vector<Value>> pows(m);
    auto refill = [&](std::size_t i) {
        auto& row = pows[i];
        row.resize(f.maxexp[i] + 1);
        row[0] = Policy::from_ll(1, w);
        const Value base = Policy::from_ll(value[i], w);
        for (std::uint32_t e = 1; e <= f.maxexp[i]; ++e)
            row[e] = Policy::mul(row[e - 1], base, w);
    };
    for (std::size_t i = 0; i < m; ++i) refill(i);

    while (true) {
        Value sum = Policy::from_ll(0, w);
        for (std::size_t t = 0; t < coefs.size(); ++t) {
            Value term = coefs[t];
            const auto& e = f.exps[t];
            for (std::size_t i = 0; i < m; ++i)
                if (e[i] > 0) term = Policy::mul(term, pows[i][e[i]], w);
            sum = Policy::add(sum, term, w);
        }
        ++out.points;
        if (Policy::is_zero(sum)) {
            bool accept = true;
            if (h != nullptr) {
                std::vector<mpz_class> point(m);
                for (std::size_t i = 0; i < m; ++i)
                    point[i] = static_cast<long>(value[i]);
                accept = (h->eval(point) == *rhs);
            }
            if (accept) {
                ++out.hits;
                if (collect)
                    out.hit_points.emplace_back(value.begin(), value.end());
            }
        }
        std::size_t i = m;
        while (i-- > 0) {
            if (value[i] < hi[i]) {
                ++value[i];
                refill(i);
                break;
            }
            value[i] = lo[i];
            refill(i);
            if (i == 0) return;
        }
    }
}

struct ScanResult {
    std::uint64_t points = 0;
    std::uint64_t hits = 0;
    std::vector<std::vector<long long>> hit_points;
};

// f = 0 (and h = rhs when h is given) over the region, exact enumeration.
ScanResult scan_region(const Polynomial& f, const Polynomial* h, const mpz_class* rhs,
                       const SearchRegion& region, const SearchLimits& limits,
                       bool collect) {
    const RingSpec& spec = f.spec();
    const mpz_class vol = region.volume(spec);
    if (vol > limits.ceiling)
        throw BudgetExceeded("search volume " + vol.get_str() + " exceeds ceiling " +
                             std::to_string(limits.ceiling));
    ScanResult result;
    if (vol == 0) return result;
    if (region.ranges.size() != spec.varcount)
        throw DimensionError("region dimension mismatch");

    auto ranges = region.ranges;
    mpz_class w = 0;
    enum class Path { Int64, Mpz, Residue } path = Path::Int64;
    if (region.residue_space) {
        w = *spec.modulus;
        if (!w.fits_slong_p())
            throw BudgetExceeded("modulus too large to enumerate");
        for (auto& r : ranges) r = {0, w.get_si() - 1};
        path = Path::Residue;
    } else {
        const mpz_class bound = box_bound(FlatPoly::from(f), ranges);
        mpz_class safe = 1;
        safe <<= 62;
        path = bound < safe ? Path::Int64 : Path::Mpz;
    }

    const FlatPoly flat = FlatPoly::from(f);
    unsigned threads = limits.threads == 0
                           ? std::max(1u, std::thread::hardware_concurrency())
                           : limits.threads;
    const long long v0_lo = ranges[0].first;
    const long long v0_hi = ranges[0].second;
    const unsigned long long v0_span =
        static_cast<unsigned long long>(v0_hi - v0_lo + 1);
    threads = static_cast<unsigned>(
        std::min<unsigned long long>(threads, v0_span));
    if (vol < 4096) threads = 1;

    std::vector<PartOutcome> parts(threads);
    auto run_part = [&](unsigned idx) {
        const auto span = v0_span;
        const long long a = v0_lo + static_cast<long long>(span * idx / threads);
        const long long b = v0_lo + static_cast<long long>(span * (idx + 1) / threads) - 1;
        if (a > b) return;
        switch (path) {
            case Path::Int64:
                scan_part<Int64Policy>(flat, h, rhs, ranges, a, b, w, collect, parts[idx]);
                break;
            case Path::Mpz:
                scan_part<MpzPolicy>(flat, h, rhs, ranges, a, b, w, collect, parts[idx]);
                break;
            case Path::Residue:
                scan_part<ResiduePolicy>(flat, h, rhs, ranges, a, b, w, collect, parts[idx]);
                break;
        }
    };
    if (threads == 1) {
        run_part(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(run_part, i);
        for (auto& t : pool) t.join();
    }
    for (auto& part : parts) {
        result.points += part.points;
        result.hits += part.hits;
        for (auto& pt : part.hit_points) result.hit_points.push_back(std::move(pt));
    }
    return result;
}

}  // namespace

AttackResult brute_force_system(const Polynomial& f, const Polynomial& h,
                                const mpz_class& p, const Polynomial& g,
                                const SearchRegion& region, const SearchLimits& limits) {
    if (!(f.spec() == h.spec()) || !(f.spec() == g.spec()))
        throw DimensionError("system polynomials live in different rings");
    const mpz_class rhs = f.spec().finite() ? mod_floor(p, *f.spec().modulus) : p;
    const ScanResult scan = scan_region(f, &h, &rhs, region, limits, true);

    AttackResult result;
    result.points_scanned = scan.points;
    for (const auto& pt : scan.hit_points) {
        std::vector<mpz_class> point;
        point.reserve(pt.size());
        for (long long v : pt) point.emplace_back(static_cast<long>(v));
        result.secret_candidates.push_back(g.eval(point));
        result.solutions.push_back(std::move(point));
    }
    std::sort(result.secret_candidates.begin(), result.secret_candidates.end());
    result.secret_candidates.erase(
        std::unique(result.secret_candidates.begin(), result.secret_candidates.end()),
        result.secret_candidates.end());
    if (result.solutions.empty()) {
        result.verdict = Verdict::NoSolutionInBox;
    } else if (result.secret_candidates.size() == 1) {
        result.verdict = Verdict::Determined;
        result.determined_secret = result.secret_candidates.front();
    } else {
        result.verdict = Verdict::Ambiguous;
    }
    return result;
}

UniquenessReport non_uniqueness_check(const Polynomial& f, const SearchRegion& region,
                                      const SearchLimits& limits) {
    const ScanResult scan = scan_region(f, nullptr, nullptr, region, limits, false);
    UniquenessReport report;
    report.root_count = scan.hits;
    report.pass = scan.hits >= 2;
    report.points_scanned = scan.points;
    return report;
}

}  // namespace diokex
