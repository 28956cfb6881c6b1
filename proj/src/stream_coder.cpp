#include "kcode/stream_coder.hpp"

#include <algorithm>
#include <memory>

namespace kcode {

namespace {

void require_positive(const BitString& s, int value) {
    if (value < 1)
        throw InvalidRequest("measure value for " + s.token() + " must be positive, got " +
                             std::to_string(value));
}

std::vector<std::optional<int>> prefix_values(const Measure& I, const BitString& x) {
    std::vector<std::optional<int>> v(x.size() + 1);
    for (std::size_t i = 0; i <= x.size(); ++i) v[i] = I(x.prefix(i));
    return v;
}

}  // namespace

DyadicWeight Measure::certificate() const {
    DyadicWeight w;
    for (const auto& s : domain)
        if (auto v = eval(s)) w = w.plus_pow2(*v);
    return w;
}

Measure len_log_measure(const BitString& anchor) {
    Measure m;
    m.id = "len-log";
    m.domain.reserve(anchor.size() + 1);
    for (std::size_t i = 0; i <= anchor.size(); ++i) m.domain.push_back(anchor.prefix(i));
    m.eval = [](const BitString& s) -> std::optional<int> {
        int n = static_cast<int>(s.size());
        return n + 2 * ceil_log2(static_cast<std::size_t>(n) + 2);
    };
    return m;
}

Measure measure_from_table(const std::vector<std::pair<BitString, int>>& rows) {
    auto table = std::make_shared<std::map<BitString, int>>();
    Measure m;
    m.id = "table";
    for (const auto& [s, v] : rows) {
        require_positive(s, v);
        m.domain.push_back(s);
        (*table)[s] = v;
    }
    m.eval = [table](const BitString& s) -> std::optional<int> {
        auto it = table->find(s);
        if (it == table->end()) return std::nullopt;
        return it->second;
    };
    return m;
}

Measure measure_from_bound(const std::function<int(int)>& g,
                           const std::vector<std::pair<BitString, int>>& final_approx) {
    Measure m;
    m.id = "bound";
    auto defined = std::make_shared<std::map<BitString, int>>();
    for (const auto& [s, approx] : final_approx) {
        int bound = g(static_cast<int>(s.size()));
        if (approx <= bound) {
            require_positive(s, bound);
            m.domain.push_back(s);
            (*defined)[s] = bound;
        }
    }
    m.eval = [defined](const BitString& s) -> std::optional<int> {
        auto it = defined->find(s);
        if (it == defined->end()) return std::nullopt;
        return it->second;
    };
    return m;
}

std::optional<BitString> i_predecessor(const Measure& I, const BitString& tau) {
    auto own = I(tau);
    if (!own) throw UndefinedMeasure("measure undefined on " + tau.token());
    for (int i = static_cast<int>(tau.size()) - 1; i >= 0; --i) {
        BitString p = tau.prefix(static_cast<std::size_t>(i));
        if (auto v = I(p); v && *v < *own) return p;
    }
    return std::nullopt;
}

BuiltRequests build_requests(const Measure& I, int shift) {
    BuiltRequests out;
    out.requests.push_back({});
    for (const auto& tau : I.domain) {
        auto v = I(tau);
        if (!v) continue;
        require_positive(tau, *v + shift);
        int pointer = 0;
        if (auto pred = i_predecessor(I, tau)) {
            auto it = out.index_of.find(*pred);
            if (it == out.index_of.end())
                throw InvalidRequest("enumeration lists " + tau.token() +
                                     " before its predecessor " + pred->token());
            pointer = it->second;
        }
        out.index_of[tau] = static_cast<int>(out.requests.size());
        out.requests.push_back({tau, pointer, *v + shift});
    }
    return out;
}

std::vector<int> local_minima(const Measure& I, const BitString& x) {
    auto v = prefix_values(I, x);
    const int N = static_cast<int>(x.size());
    std::vector<int> mins;
    int from = 0;
    while (from <= N) {
        int best = -1;
        for (int i = from; i <= N; ++i)
            if (v[i] && (best < 0 || *v[i] <= *v[best])) best = i;  // ties: longest prefix
        if (best < 0) break;
        mins.push_back(best);
        from = best + 1;
    }
    return mins;
}

OracleUse oracle_use(const Measure& I, const BitString& x, int n) {
    auto v = prefix_values(I, x);
    const int N = static_cast<int>(x.size());
    if (n < 0 || n > N) throw InvalidRequest("target beyond working bound");
    std::optional<int> m;
    for (int i = n; i <= N; ++i)
        if (v[i] && (!m || *v[i] < *m)) m = *v[i];
    if (!m) throw UndefinedMeasure("measure undefined on every prefix past the target");
    return {*m, v[N] && *m == *v[N]};
}

namespace {

// Least shift c with (measure weight) * 2^-c + wgt(q) <= 1.
int required_shift(const Measure& I, const AvoidSet& q) {
    for (int c = 0; c <= 64; ++c) {
        DyadicWeight shifted;
        for (const auto& s : I.domain)
            if (auto v = I(s)) shifted = shifted.plus_pow2(*v + c);
        if (shifted.plus(q.weight()).leq_one()) return c;
    }
    throw BudgetExceeded("avoid-set weight " + q.weight().to_fraction() +
                         " leaves no room for any shift of the measure");
}

}  // namespace

CodePrefix encode(const BitString& x, const Measure& I, const AvoidSet& q, int n) {
    const int N = static_cast<int>(x.size());
    if (n < 0 || n > N) throw InvalidRequest("target beyond working bound");
    if (!I(x)) throw UndefinedMeasure("measure undefined on the source prefix itself");

    const int c = required_shift(I, q);
    auto built = build_requests(I, c);
    auto run = interleave_solve(built.requests, q);

    CodePrefix out;
    out.shift = c;
    out.bound = N;
    out.use_table[0] = 0;
    for (int t = 1; t <= N; ++t) out.use_table[t] = oracle_use(I, x, t).use + c;

    // Latest code of the current request for the full source prefix; its
    // tree ancestry realizes the significant segments of x in order.
    int current = run.current_index.at(built.index_of.at(x));
    const auto& set = run.solver.sets()[current];
    if (set.empty()) throw NotACode("no code realizes the source prefix");
    const BitString& chain = set.back().code;

    out.y = chain.prefix(static_cast<std::size_t>(n == 0 ? 0 : out.use_table.at(n)));
    return out;
}

namespace {

// Counts the highest position of y consulted.
struct CountingReader {
    const BitString& y;
    int high = 0;

    bool in_range(int i) const { return i < static_cast<int>(y.size()); }
    int bit(int i) {
        high = std::max(high, i + 1);
        return y.bit(static_cast<std::size_t>(i));
    }
};

}  // namespace

DecodeResult decode(const BitString& y, const Measure& I, const AvoidSet& q, int n, int shift) {
    if (n == 0) return {BitString{}, 0};
    auto built = build_requests(I, shift);
    auto run = interleave_solve(built.requests, q);
    return decode_walk(run, y, n);
}

DecodeResult decode_walk(const InterleaveResult& run, const BitString& y, int n) {
    if (n == 0) return {BitString{}, 0};
    const LayeredSolver& solver = run.solver;

    CountingReader reader{y};
    BitString cur;  // lambda, the root of the code tree
    while (true) {
        if (!cur.empty()) {
            const auto& payload = run.lprime[solver.request_of(cur)].payload;
            if (static_cast<int>(payload.size()) >= n)
                return {payload.prefix(static_cast<std::size_t>(n)), reader.high};
        }
        // Children in ascending length, so no bit beyond the matching code
        // is ever consulted; at most one child can be a prefix of y.
        std::vector<BitString> children = solver.subsolver(cur).codes();
        std::sort(children.begin(), children.end(),
                  [](const BitString& a, const BitString& b) { return a.size() < b.size(); });
        const BitString* next = nullptr;
        for (const auto& child : children) {
            bool match = true;
            for (int i = static_cast<int>(cur.size());
                 match && i < static_cast<int>(child.size()); ++i) {
                if (!reader.in_range(i) || reader.bit(i) != child.bit(static_cast<std::size_t>(i)))
                    match = false;
            }
            if (match) {
                next = &child;
                break;
            }
        }
        if (!next) throw NotACode("code stream matches no further code in the tree");
        cur = *next;
    }
}

}  // namespace kcode
