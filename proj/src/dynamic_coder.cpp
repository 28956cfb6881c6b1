#include "kcode/dynamic_coder.hpp"

#include <algorithm>

namespace kcode {

namespace {

int log_len(const BitString& s) { return ceil_log2(s.size()); }

// Exact check of the tail inequality at one stage for one string.
bool tail_fits(const std::map<BitString, int>& values, const BitString& sigma, int c) {
    DyadicWeight tail;
    for (const auto& [rho, v] : values)
        if (sigma.is_prefix_of(rho)) tail = tail.plus_pow2(v + log_len(rho) + c);
    return tail.leq_pow2(values.at(sigma));
}

std::vector<BitString> length_lex(const std::map<BitString, int>& universe) {
    std::vector<BitString> order;
    order.reserve(universe.size());
    for (const auto& [s, v] : universe) order.push_back(s);
    std::stable_sort(order.begin(), order.end(), [](const BitString& a, const BitString& b) {
        return a.size() < b.size();
    });
    return order;
}

DyadicWeight sequence_weight(const std::vector<LayeredRequest>& seq) {
    DyadicWeight w;
    for (std::size_t i = 1; i < seq.size(); ++i) w = w.plus_pow2(seq[i].length);
    return w;
}

}  // namespace

ApproxRun::ApproxRun(int c, int universe_maxlen, std::map<BitString, int> initial,
                     std::vector<ApproxUpdate> updates)
    : c_(c), maxlen_(universe_maxlen), initial_(std::move(initial)),
      updates_(std::move(updates)) {
    if (c_ < 1) throw InvalidRequest("approximation constant must be at least 1");
    for (const auto& [s, v] : initial_) {
        if (s.empty()) throw InvalidRequest("the empty string cannot carry a value");
        if (static_cast<int>(s.size()) > maxlen_)
            throw InvalidRequest(s.token() + " exceeds the universe length bound");
        if (v < 0) throw InvalidRequest("negative value for " + s.token());
    }
    auto current = initial_;
    for (const auto& [s, v] : current)
        if (!tail_fits(current, s, c_))
            throw InvalidRequest("tail inequality fails at stage 0 for " + s.token());
    for (std::size_t i = 0; i < updates_.size(); ++i) {
        const auto& u = updates_[i];
        if (u.stage != static_cast<int>(i) + 1)
            throw InvalidRequest("stages must run 1, 2, ... with one drop each; got stage " +
                                 std::to_string(u.stage));
        auto it = current.find(u.sigma);
        if (it == current.end())
            throw InvalidRequest("update names " + u.sigma.token() + " outside the universe");
        if (u.value >= it->second || u.value < 0)
            throw InvalidRequest("value of " + u.sigma.token() + " must strictly decrease");
        it->second = u.value;
        for (const auto& [s, v] : current)
            if (!tail_fits(current, s, c_))
                throw InvalidRequest("tail inequality fails at stage " +
                                     std::to_string(u.stage) + " for " + s.token());
    }
}

std::optional<int> ApproxRun::value(const BitString& sigma, int stage) const {
    auto it = initial_.find(sigma);
    if (it == initial_.end()) return std::nullopt;
    int v = it->second;
    for (const auto& u : updates_) {
        if (u.stage > stage) break;
        if (u.sigma == sigma) v = u.value;
    }
    return v;
}

std::optional<int> ApproxRun::final_value(const BitString& sigma) const {
    return value(sigma, stages());
}

std::map<BitString, int> ApproxRun::values_at(int stage) const {
    auto v = initial_;
    for (const auto& u : updates_) {
        if (u.stage > stage) break;
        v[u.sigma] = u.value;
    }
    return v;
}

int ApproxRun::adjusted(const BitString& sigma, int stage) const {
    auto v = value(sigma, stage);
    if (!v) throw UndefinedMeasure(sigma.token() + " is outside the universe");
    return *v + log_len(sigma) + c_;
}

TargetInfo target_pretarget(const ApproxRun& run, int stage) {
    if (stage < 1 || stage > run.stages()) throw InvalidRequest("no such update stage");
    const auto& u = run.updates()[stage - 1];
    auto vals = run.values_at(stage);
    TargetInfo out{u.sigma, std::nullopt};
    int own = u.value + log_len(u.sigma);
    for (int i = static_cast<int>(u.sigma.size()) - 1; i >= 1; --i) {
        BitString p = u.sigma.prefix(static_cast<std::size_t>(i));
        auto it = vals.find(p);
        if (it != vals.end() && it->second + log_len(p) < own) {
            out.pretarget = p;
            break;
        }
    }
    return out;
}

bool request_valid(const std::vector<LayeredRequest>& requests, int idx,
                   const std::map<BitString, int>& values, int c) {
    if (idx <= 0 || idx >= static_cast<int>(requests.size())) return false;
    for (int j = idx; j != 0; j = requests[j].pointer) {
        const auto& r = requests[j];
        auto it = values.find(r.payload);
        if (it == values.end()) return false;
        if (r.length != it->second + log_len(r.payload) + c) return false;
    }
    return true;
}

std::vector<LayeredRequest> subtree(const std::vector<LayeredRequest>& requests, int t,
                                    const std::map<BitString, int>& values, int c) {
    if (!request_valid(requests, t, values, c))
        throw InvalidRequest("subtree root is not valid");
    std::map<int, int> reindex;
    std::vector<LayeredRequest> out;
    reindex[t] = 0;
    out.push_back({requests[t].payload, 0, requests[t].length});
    for (int i = t + 1; i < static_cast<int>(requests.size()); ++i) {
        auto parent = reindex.find(requests[i].pointer);
        if (parent == reindex.end()) continue;
        if (!request_valid(requests, i, values, c)) continue;
        reindex[i] = static_cast<int>(out.size());
        out.push_back({requests[i].payload, parent->second, requests[i].length});
    }
    return out;
}

void clone_extend(std::vector<LayeredRequest>& extended,
                  const std::vector<LayeredRequest>& requests, int t,
                  const std::map<BitString, int>& values, int c) {
    auto sub = subtree(requests, t, values, c);
    const int k = static_cast<int>(extended.size()) - 1;  // the replacement request
    for (std::size_t i = 1; i < sub.size(); ++i)
        extended.push_back({sub[i].payload, sub[i].pointer + k, sub[i].length});
}

UniversalResult build_universal_sequence(const ApproxRun& run) {
    const int c = run.c();
    UniversalResult out;
    out.sequence.push_back({});
    std::map<BitString, int> current;

    auto drop = [&](int stage, const BitString& sigma, int newval) {
        auto pre = current;
        current[sigma] = newval;
        int own = newval + log_len(sigma);
        int u = 0;
        for (int i = static_cast<int>(sigma.size()) - 1; i >= 1 && u == 0; --i) {
            BitString p = sigma.prefix(static_cast<std::size_t>(i));
            auto it = current.find(p);
            if (it == current.end() || it->second + log_len(p) >= own) continue;
            for (int j = static_cast<int>(out.sequence.size()) - 1; j >= 1; --j)
                if (out.sequence[j].payload == p && request_valid(out.sequence, j, current, c)) {
                    u = j;
                    break;
                }
            break;  // longest cheaper prefix decides, found or not
        }
        int t = -1;
        for (int j = static_cast<int>(out.sequence.size()) - 1; j >= 1; --j)
            if (out.sequence[j].payload == sigma && request_valid(out.sequence, j, pre, c)) {
                t = j;
                break;
            }
        StageRecord rec;
        rec.stage = stage;
        rec.target = sigma;
        rec.before = sequence_weight(out.sequence);
        rec.bound_exp = newval;
        rec.cloned = t >= 0;
        auto frozen = out.sequence;
        out.sequence.push_back({sigma, u, newval + log_len(sigma) + c});
        if (t >= 0) clone_extend(out.sequence, frozen, t, pre, c);
        rec.after = sequence_weight(out.sequence);
        out.records.push_back(std::move(rec));
    };

    for (const auto& sigma : length_lex(run.initial())) drop(0, sigma, run.initial().at(sigma));
    for (const auto& u : run.updates()) drop(u.stage, u.sigma, u.value);
    return out;
}

std::vector<int> significant_segments(const ApproxRun& run, const BitString& x) {
    const int N = static_cast<int>(x.size());
    std::vector<std::optional<int>> v(N + 1);
    for (int i = 1; i <= N; ++i)
        if (auto k = run.final_value(x.prefix(static_cast<std::size_t>(i))))
            v[i] = *k + ceil_log2(static_cast<std::size_t>(i));
    std::vector<int> segs;
    int from = 1;
    while (from <= N) {
        int best = -1;
        for (int i = from; i <= N; ++i)
            if (v[i] && (best < 0 || *v[i] <= *v[best])) best = i;  // ties: longest
        if (best < 0) break;
        segs.push_back(best);
        from = best + 1;
    }
    return segs;
}

int dynamic_use(const ApproxRun& run, const BitString& x, int n) {
    const int N = static_cast<int>(x.size());
    if (n < 1 || n > N) throw InvalidRequest("target beyond working bound");
    std::optional<int> m;
    for (int i = n; i <= N; ++i)
        if (auto k = run.final_value(x.prefix(static_cast<std::size_t>(i)))) {
            int v = *k + ceil_log2(static_cast<std::size_t>(i));
            if (!m || v < *m) m = v;
        }
    if (!m) throw UndefinedMeasure("no universe prefix at or past the target");
    return *m + run.c();
}

CodePrefix dynamic_encode(const BitString& x, const ApproxRun& run, const AvoidSet& q, int n) {
    const int N = static_cast<int>(x.size());
    if (n < 0 || n > N) throw InvalidRequest("target beyond working bound");
    if (!run.final_value(x)) throw UndefinedMeasure("source prefix outside the universe");
    DyadicWeight cert;
    for (const auto& [s, v] : run.values_at(run.stages())) cert = cert.plus_pow2(v);
    if (!(cert.plus(q.weight()) < DyadicWeight::one()))
        throw BudgetExceeded("final certificate plus wgt(Q) must stay below 1");

    auto uni = build_universal_sequence(run);
    auto pipeline = interleave_solve(uni.sequence, q);

    int j = -1;
    for (int i = static_cast<int>(uni.sequence.size()) - 1; i >= 1; --i)
        if (uni.sequence[i].payload == x) {
            j = i;
            break;
        }
    const auto& set = pipeline.solver.sets()[pipeline.current_index.at(j)];
    if (set.empty()) throw NotACode("no code realizes the source prefix");
    const BitString& chain = set.back().code;

    CodePrefix out;
    out.shift = run.c();
    out.bound = N;
    out.use_table[0] = 0;
    for (int t = 1; t <= N; ++t) out.use_table[t] = dynamic_use(run, x, t);
    out.y = chain.prefix(static_cast<std::size_t>(out.use_table.at(n)));
    return out;
}

DecodeResult dynamic_decode(const BitString& y, const ApproxRun& run, const AvoidSet& q, int n) {
    if (n == 0) return {BitString{}, 0};
    auto uni = build_universal_sequence(run);
    auto pipeline = interleave_solve(uni.sequence, q);
    return decode_walk(pipeline, y, n);
}

}  // namespace kcode
