#include "limsup/t12_family.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace limsup {

namespace {

constexpr unsigned kMaxPaperM = 4;
constexpr unsigned kCompactMaxExponent = 5;  // q <= 2^5
constexpr int kCompactMinShift = -10;        // multipliers down to 2^-10

Rational sum(const std::vector<Rational>& v)
{
    Rational s;
    for (const auto& x : v) s += x;
    return s;
}

Rational row_sum(const std::vector<Rational>& coef, const T12Constants& k, unsigned r)
{
    Rational s;
    for (std::size_t j = 0; j < coef.size(); ++j) s += coef[j] * k.x(j).pow(r);
    return s;
}

Rational pow2(int e)
{
    const BigInt p = BigInt(1) << static_cast<unsigned>(e < 0 ? -e : e);
    return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

/// Largest power of two not exceeding x > 0.
Rational floor_pow2(const Rational& x)
{
    int e = static_cast<int>(std::floor(std::log2(x.to_double())));
    while (pow2(e) > x) --e;
    while (pow2(e + 1) <= x) ++e;
    return pow2(e);
}

/// Column a (1-based) receives (2,1) when this is true and (1,2) otherwise.
bool larger_on_a(unsigned m, unsigned a, MultiplierRule rule)
{
    return rule == MultiplierRule::row ? (m - a + 1) % 2 == 1 : a % 2 == 1;
}

void normalize(T12Constants& k)
{
    const Rational factor = 2 * max(sum(k.c), sum(k.c_tilde) + k.delta);
    for (auto& x : k.c) x /= factor;
    for (auto& x : k.c_tilde) x /= factor;
    k.delta /= factor;
    k.normalization = factor;
}

/// Exponent of the dominance ratio around column a: min(alpha_a, alpha_{a+1})
/// over the neighbours that exist.
BigInt column_alpha(const T12Constants& k, unsigned a)
{
    std::optional<BigInt> best;
    auto take = [&](unsigned n) {
        if (n >= 2 && n <= k.m && n - 1 < k.alpha.size()) {
            const BigInt& v = k.alpha[n - 1];
            if (!best || v < *best) best = v;
        }
    };
    take(a);
    take(a + 1);
    return best.value_or(BigInt(0));
}

T12Constants paper_constants(unsigned m, MultiplierRule rule)
{
    if (m > kMaxPaperM) throw std::invalid_argument("paper strategy supports m <= 4");
    T12Constants k;
    k.m = m;
    k.b = m;
    k.strategy = Strategy::paper;
    k.rule = rule;
    for (unsigned i = 1; i <= m; ++i) {
        const BigInt e = factorial(k.b + i - 1);
        k.q.push_back(pow10_int(e.get_ui()));
    }
    k.gamma.push_back(0);
    k.alpha.push_back(0);
    for (unsigned n = 2; n <= m; ++n) {
        // Twice the gamma sum keeps the half-integer weights integral.
        BigInt twice = 0;
        for (unsigned i = 1; i <= n - 1; ++i) {
            const BigInt diff = factorial(k.b + i) - factorial(k.b + i - 1);
            twice += BigInt(2 * m - 1 - 2 * (i - 1)) * diff;
        }
        const BigInt diff_a = factorial(k.b + n - 1) - factorial(k.b + n - 2);
        if (twice % 2 != 0 || diff_a % 2 != 0) throw std::logic_error("non-integral exponent");
        k.gamma.push_back(twice / 2);
        k.alpha.push_back(diff_a / 2);
    }
    for (unsigned a = 1; a <= m; ++a) {
        const Rational scale = Rational::pow10(k.gamma[a - 1].get_si());
        const bool big = larger_on_a(m, a, rule);
        k.c.push_back(Rational(big ? 2 : 1) * scale);
        k.c_tilde.push_back(Rational(big ? 1 : 2) * scale);
    }
    std::optional<Rational> smallest;
    for (unsigned r = 1; r <= m; ++r) {
        const unsigned a = m - r + 1;
        const Rational term = k.c[a - 1] * k.x(a - 1).pow(r);
        if (!smallest || term < *smallest) smallest = term;
    }
    BigInt alpha_min = 0;
    for (unsigned n = 2; n <= m; ++n)
        if (n == 2 || k.alpha[n - 1] < alpha_min) alpha_min = k.alpha[n - 1];
    k.delta = *smallest * Rational::pow10(-(alpha_min.get_si() + 1));
    normalize(k);
    return k;
}

std::optional<T12Constants> try_compact(unsigned m, const std::vector<unsigned>& exps, const std::vector<int>& shifts)
{
    T12Constants k;
    k.m = m;
    k.b = 0;
    k.strategy = Strategy::compact;
    k.rule = MultiplierRule::row;
    for (unsigned a = 1; a <= m; ++a) {
        k.q.push_back(BigInt(1) << exps[a - 1]);
        const bool big = larger_on_a(m, a, MultiplierRule::row);
        const Rational scale = pow2(shifts[a - 1]);
        k.c.push_back(Rational(big ? 2 : 1) * scale);
        k.c_tilde.push_back(Rational(big ? 1 : 2) * scale);
    }
    // delta must fit under the odd-row margins and under every row's
    // dominance slack, so it takes half the smallest of those.
    std::optional<Rational> slack;
    auto keep = [&](const Rational& v) {
        if (!slack || v < *slack) slack = v;
    };
    for (unsigned r = 1; r <= m; ++r) {
        const Rational diff = row_sum(k.c, k, r) - row_sum(k.c_tilde, k, r);
        if (r % 2 == 1) {
            if (diff.sign() <= 0) return std::nullopt;
            keep(diff);
        } else if (diff.sign() >= 0) {
            return std::nullopt;
        }
        const unsigned a = m - r + 1;
        const Rational dominant = k.c[a - 1] * k.x(a - 1).pow(r);
        const Rational gap = dominant - (row_sum(k.c, k, r) - dominant);
        if (gap.sign() <= 0) return std::nullopt;
        keep(gap);
    }
    k.delta = floor_pow2(*slack / 2);
    normalize(k);
    if (!verify_inequality_system(k).pass) return std::nullopt;
    return k;
}

/// Lexicographic search: strictly increasing q exponents, then multiplier
/// shifts from 0 downward; the first candidate whose system passes wins.
T12Constants compact_constants(unsigned m)
{
    if (m > kCompactMaxExponent) throw std::runtime_error("no compact witness found");
    std::vector<unsigned> exps(m);
    for (unsigned a = 0; a < m; ++a) exps[a] = a + 1;
    while (true) {
        std::vector<int> shifts(m, 0);
        while (true) {
            if (auto k = try_compact(m, exps, shifts)) return *k;
            std::size_t pos = m;
            while (pos > 0 && shifts[pos - 1] == kCompactMinShift) shifts[--pos] = 0;
            if (pos == 0) break;
            --shifts[pos - 1];
        }
        std::size_t pos = m;
        while (pos > 0 && exps[pos - 1] == kCompactMaxExponent - (m - pos)) --pos;
        if (pos == 0) break;
        ++exps[pos - 1];
        for (std::size_t a = pos; a < m; ++a) exps[a] = exps[a - 1] + 1;
    }
    throw std::runtime_error("no compact witness found");
}

std::uint64_t small_q(const BigInt& q)
{
    if (!q.fits_ulong_p())
        throw ResourceError("explicit backend needs compact constants (q has " +
                            std::to_string(mpz_sizeinbase(q.get_mpz_t(), 10)) + " digits)");
    return q.get_ui();
}

IntervalSet scale(const IntervalSet& s, const Rational& c) { return c == 1 ? s : scale_translate(s, c, 0); }

Json log10_or_null(const Rational& x)
{
    if (x.is_zero()) return nullptr;
    return x.log10_abs();
}

} // namespace

T12Constants make_constants(unsigned m, Strategy strategy, MultiplierRule rule)
{
    if (m == 0) throw std::invalid_argument("m must be positive");
    return strategy == Strategy::paper ? paper_constants(m, rule) : compact_constants(m);
}

T12Constants custom_constants(std::vector<BigInt> q, std::vector<Rational> c, std::vector<Rational> c_tilde,
                              Rational delta)
{
    if (q.empty() || q.size() != c.size() || q.size() != c_tilde.size())
        throw std::invalid_argument("q, c and c~ must have the same positive length");
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (q[j] < 2 || (j > 0 && q[j] <= q[j - 1])) throw std::invalid_argument("q must be increasing and >= 2");
        if (c[j].sign() <= 0 || c_tilde[j].sign() <= 0) throw std::invalid_argument("multipliers must be positive");
    }
    if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
    T12Constants k;
    k.m = static_cast<unsigned>(q.size());
    k.strategy = Strategy::compact;
    k.q = std::move(q);
    k.c = std::move(c);
    k.c_tilde = std::move(c_tilde);
    k.delta = std::move(delta);
    return k;
}

InequalityReport verify_inequality_system(const T12Constants& k)
{
    InequalityReport rep;
    rep.pass = true;
    for (unsigned r = 1; r <= k.m; ++r) {
        RowCheck row;
        row.r = r;
        row.odd = r % 2 == 1;
        row.lhs = row_sum(k.c, k, r);
        row.rhs = row_sum(k.c_tilde, k, r);
        if (row.odd) row.rhs += k.delta;
        row.margin = row.odd ? row.lhs - row.rhs : row.rhs - row.lhs;
        row.holds = row.margin.sign() >= 0;
        row.strict = row.margin.sign() > 0;
        row.dominant = k.m - r + 1;
        row.dominant_term = k.c[row.dominant - 1] * k.x(row.dominant - 1).pow(r);
        row.others = k.delta;
        for (std::size_t j = 0; j < k.m; ++j)
            if (j + 1 != row.dominant) row.others += k.c[j] * k.x(j).pow(r);
        row.dominates = row.dominant_term > row.others;
        const BigInt alpha = column_alpha(k, static_cast<unsigned>(row.dominant));
        row.paper_factor_ok =
            row.others <= Rational::pow10(-alpha.get_si()) * Rational(k.m) * row.dominant_term;
        row.log10_margin = row.margin.is_zero() ? 0.0 : row.margin.log10_abs();
        if (rep.pass && !(row.strict && row.dominates)) {
            rep.pass = false;
            rep.first_violated_row = r;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

IntervalSet place_floating_interval(const IntervalSet& blocked, const Rational& length, Rational& cursor,
                                    unsigned& wraps)
{
    if (length.sign() < 0) throw std::invalid_argument("float length must be non-negative");
    if (length.is_zero()) return {};
    const IntervalSet free = complement(blocked);
    if (free.measure() < length) throw std::logic_error("no room for the floating interval");
    std::vector<Interval> pieces;
    Rational remaining = length;
    Rational pos = cursor;
    while (remaining.sign() > 0) {
        bool placed = false;
        for (const auto& iv : free.intervals()) {
            if (iv.hi <= pos) continue;
            const Rational start = max(iv.lo, pos);
            const Rational take = min(remaining, iv.hi - start);
            pieces.push_back({start, start + take});
            remaining -= take;
            pos = start + take;
            placed = true;
            if (remaining.is_zero()) break;
        }
        if (remaining.sign() > 0) {
            pos = 0;
            ++wraps;
        } else if (!placed) {
            throw std::logic_error("float placement made no progress");
        }
    }
    cursor = pos;
    return IntervalSet::canonicalize(std::move(pieces));
}

T12Family build_t12_family(const T12Constants& k, unsigned n_max, T12Backend backend, const Rational& c_limsup,
                           const ResourceCaps& caps)
{
    if (c_limsup.sign() <= 0 || c_limsup > 1) throw std::invalid_argument("c must lie in (0,1]");
    if (n_max == 0) throw std::invalid_argument("n_max must be positive");
    if (k.m == 0 || k.q.size() != k.m) throw std::invalid_argument("malformed constants");
    if (sum(k.c) > 1 || sum(k.c_tilde) + k.delta > 1)
        throw std::invalid_argument("components do not fit in [0,1]");

    T12Family f;
    f.constants = k;
    f.n_max = n_max;
    f.backend = backend;
    f.c_limsup = c_limsup;
    Rational off, off_t;
    for (std::size_t j = 0; j < k.m; ++j) {
        f.d.push_back(off);
        f.d_tilde.push_back(off_t);
        off += k.c[j];
        off_t += k.c_tilde[j];
    }
    if (backend == T12Backend::formula) return f;

    std::map<std::uint64_t, std::vector<NestedLevel>> nested;
    for (const auto& qb : k.q) {
        const std::uint64_t q = small_q(qb);
        if (!nested.contains(q)) nested[q] = build_nested_explicit({1, q, n_max, FirstLevel::balanced}, caps);
    }

    unsigned wraps = 0;
    Rational cumulative;
    for (unsigned n = 1; n <= n_max; ++n) {
        std::vector<IntervalSet> a_parts, b_parts, h_parts;
        for (std::size_t j = 0; j < k.m; ++j) {
            const auto& lvl = nested.at(k.q[j].get_ui())[n - 1];
            a_parts.push_back(scale_translate(lvl.G, k.c[j], f.d[j]));
            b_parts.push_back(scale_translate(lvl.G, k.c_tilde[j], f.d_tilde[j]));
            h_parts.push_back(scale_translate(lvl.H, k.c_tilde[j], f.d_tilde[j]));
        }
        const IntervalSet blocked = unite_all(h_parts);
        FloatStep step;
        step.n = n;
        step.start = f.cursor;
        const Rational length = k.delta / Rational(n);
        IntervalSet float_n = place_floating_interval(blocked, length, f.cursor, wraps);
        cumulative += length;
        step.end = f.cursor;
        step.cumulative = cumulative;
        step.wraps = wraps;
        f.float_steps.push_back(step);
        b_parts.push_back(float_n);

        f.A.push_back(scale(unite_all(a_parts), c_limsup));
        f.B.push_back(scale(unite_all(b_parts), c_limsup));
        f.K.push_back(scale(float_n, c_limsup));
        f.H_copies.push_back(scale(blocked, c_limsup));
    }
    return f;
}

T12Measure t12_intersection_measure(const T12Family& f, std::span<const std::size_t> idx)
{
    if (idx.empty()) throw std::invalid_argument("empty index tuple");
    for (std::size_t t = 0; t < idx.size(); ++t)
        if (idx[t] == 0 || (t > 0 && idx[t] <= idx[t - 1]))
            throw std::invalid_argument("indices must be 1-based and strictly increasing");
    const auto& k = f.constants;
    const auto r = static_cast<unsigned>(idx.size());
    const Rational last(BigInt(static_cast<unsigned long>(idx.back())));
    T12Measure out;
    out.a = f.c_limsup * row_sum(k.c, k, r) / last;
    out.b_lower = f.c_limsup * row_sum(k.c_tilde, k, r) / last;
    out.b_upper = out.b_lower + f.c_limsup * k.delta / last;
    if (f.backend == T12Backend::explicit_sets && idx.back() <= f.A.size()) {
        IntervalSet a = f.A[idx[0] - 1], b = f.B[idx[0] - 1];
        for (std::size_t t = 1; t < idx.size(); ++t) {
            a = intersect(a, f.A[idx[t] - 1]);
            b = intersect(b, f.B[idx[t] - 1]);
        }
        out.a_explicit = a.measure();
        out.b_explicit = b.measure();
    }
    return out;
}

T12Report verify_t12_claims(const T12Family& f, unsigned depth)
{
    const bool explicit_sets = f.backend == T12Backend::explicit_sets;
    if (explicit_sets && depth > f.n_max) throw std::invalid_argument("depth exceeds the materialized levels");
    T12Report rep;
    rep.system = verify_inequality_system(f.constants);
    rep.explicit_checked = explicit_sets;
    const unsigned max_r = std::min(f.constants.m, depth);

    auto fail = [&](std::span<const std::size_t> idx, std::string why) {
        rep.failing_tuple = std::vector<std::size_t>(idx.begin(), idx.end());
        rep.failure = std::move(why);
    };
    for (unsigned r = 1; r <= max_r && !rep.failing_tuple; ++r) {
        std::vector<std::size_t> idx(r);
        for (unsigned t = 0; t < r; ++t) idx[t] = t + 1;
        while (true) {
            ++rep.tuples_checked;
            const auto mm = t12_intersection_measure(f, idx);
            if (r % 2 == 1 ? !(mm.a > mm.b_upper) : !(mm.a < mm.b_lower)) {
                fail(idx, r % 2 == 1 ? "A does not exceed the B upper bound" : "A is not below the B lower bound");
                break;
            }
            if (mm.a_explicit && *mm.a_explicit != mm.a) {
                fail(idx, "explicit A measure differs from the closed form");
                break;
            }
            if (mm.b_explicit && (*mm.b_explicit < mm.b_lower || *mm.b_explicit > mm.b_upper)) {
                fail(idx, "explicit B measure outside its bounds");
                break;
            }
            std::size_t pos = r;
            while (pos > 0 && idx[pos - 1] == depth - (r - pos)) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t t = pos; t < r; ++t) idx[t] = idx[t - 1] + 1;
        }
    }

    if (explicit_sets) {
        for (unsigned n = 1; n <= depth; ++n) {
            const Rational want = f.c_limsup * f.constants.delta / Rational(n);
            if (f.K[n - 1].measure() != want || !f.K[n - 1].disjoint_from(f.H_copies[n - 1])) rep.float_ok = false;
        }
        rep.float_steps.assign(f.float_steps.begin(), f.float_steps.begin() + depth);
    }

    bool tail_ok = true;
    const Rational total = f.c_limsup * sum(f.constants.c);
    IntervalSet tail_union;
    std::vector<T12Report::Tail> tail(depth);
    for (unsigned N = depth; N >= 1; --N) {
        tail[N - 1].N = N;
        tail[N - 1].bound = total / Rational(N);
        if (explicit_sets) {
            tail_union = unite(tail_union, f.A[N - 1]);
            tail[N - 1].explicit_union = tail_union.measure();
            if (tail_union.measure() > tail[N - 1].bound) tail_ok = false;
        }
    }
    rep.tail = std::move(tail);
    rep.pass = rep.system.pass && !rep.failing_tuple && rep.float_ok && tail_ok;
    return rep;
}

std::size_t harmonic_wrap_index(const Rational& delta, std::size_t limit)
{
    if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
    // sum delta/i > 1  <=>  H_N > 1/delta
    const Rational target = delta.reciprocal();
    Rational h;
    for (std::size_t n = 1; n <= limit; ++n) {
        h += Rational(BigInt(1), BigInt(static_cast<unsigned long>(n)));
        if (h > target) return n;
    }
    throw std::runtime_error("harmonic wraparound beyond " + std::to_string(limit));
}

std::string to_string(Strategy s) { return s == Strategy::paper ? "paper" : "compact"; }
std::string to_string(MultiplierRule r) { return r == MultiplierRule::row ? "row" : "column"; }

Json to_json(const T12Constants& k)
{
    Json j;
    j["m"] = k.m;
    j["b"] = k.b;
    j["strategy"] = to_string(k.strategy);
    j["multiplier_rule"] = to_string(k.rule);
    Json p = Json::array(), q = Json::array(), gamma = Json::array(), alpha = Json::array();
    for (const auto& x : k.q) {
        p.push_back("1");
        q.push_back(x.get_str());
    }
    for (const auto& x : k.gamma) gamma.push_back(x.get_str());
    for (const auto& x : k.alpha) alpha.push_back(x.get_str());
    j["p"] = std::move(p);
    j["q"] = std::move(q);
    j["c"] = k.c;
    j["c_tilde"] = k.c_tilde;
    j["delta"] = k.delta;
    j["gamma"] = std::move(gamma);
    j["alpha"] = std::move(alpha);
    j["normalization"] = k.normalization;
    return j;
}

Json to_json(const InequalityReport& rep)
{
    Json j;
    j["pass"] = rep.pass;
    j["first_violated_row"] = rep.first_violated_row;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"r", r.r},
                        {"direction", r.odd ? "A >= B + delta" : "A <= B"},
                        {"margin", r.margin},
                        {"log10_margin", log10_or_null(r.margin)},
                        {"holds", r.holds},
                        {"strict", r.strict},
                        {"dominant_column", r.dominant},
                        {"log10_dominant_term", log10_or_null(r.dominant_term)},
                        {"log10_others", log10_or_null(r.others)},
                        {"dominates", r.dominates},
                        {"paper_factor_ok", r.paper_factor_ok}});
    }
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const T12Family& f)
{
    Json j;
    j["constants"] = to_json(f.constants);
    j["n_max"] = f.n_max;
    j["backend"] = f.backend == T12Backend::explicit_sets ? "explicit" : "formula";
    j["c"] = f.c_limsup;
    j["d"] = f.d;
    j["d_tilde"] = f.d_tilde;
    if (f.backend == T12Backend::explicit_sets) {
        j["A"] = sets_to_json(f.A);
        j["B"] = sets_to_json(f.B);
        j["K"] = sets_to_json(f.K);
    }
    return j;
}

Json to_json(const T12Report& rep)
{
    Json j;
    j["pass"] = rep.pass;
    j["system"] = to_json(rep.system);
    j["tuples_checked"] = rep.tuples_checked;
    if (rep.failing_tuple) {
        j["failing_tuple"] = indices_to_json(*rep.failing_tuple);
        j["failure"] = rep.failure;
    }
    j["explicit_checked"] = rep.explicit_checked;
    j["float_ok"] = rep.float_ok;
    Json tail = Json::array();
    for (const auto& t : rep.tail) {
        Json e{{"N", t.N}, {"bound", t.bound}};
        if (t.explicit_union) e["explicit_union"] = *t.explicit_union;
        tail.push_back(std::move(e));
    }
    j["tail"] = std::move(tail);
    Json steps = Json::array();
    for (const auto& s : rep.float_steps)
        steps.push_back({{"n", s.n}, {"start", s.start}, {"end", s.end}, {"cumulative", s.cumulative}, {"wraps", s.wraps}});
    j["float_steps"] = std::move(steps);
    return j;
}

} // namespace limsup
