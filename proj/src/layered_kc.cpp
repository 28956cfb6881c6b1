#include "kcode/layered_kc.hpp"

#include <algorithm>

namespace kcode {

namespace {

std::vector<int> request_depths(const std::vector<LayeredRequest>& requests) {
    std::vector<int> d(requests.size(), 0);
    for (std::size_t i = 1; i < requests.size(); ++i) d[i] = d[requests[i].pointer] + 1;
    return d;
}

std::vector<int> raw_characteristic_sequence(const std::vector<LayeredRequest>& requests, int i) {
    std::vector<int> chain;
    for (int j = i; j != 0; j = requests[j].pointer) chain.push_back(j);
    chain.push_back(0);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace

std::optional<ValidationIssue> validate_sequence(const std::vector<LayeredRequest>& requests) {
    if (requests.empty()) return ValidationIssue{0, "sequence must start with the empty request"};
    if (requests[0].pointer != 0 || requests[0].length != 0)
        return ValidationIssue{0, "request 0 must be the empty request (*, 0)"};
    for (int i = 1; i < static_cast<int>(requests.size()); ++i) {
        const auto& r = requests[i];
        if (r.pointer < 0 || r.pointer >= i)
            return ValidationIssue{i, "pointer must reference an earlier request"};
        if (r.length <= requests[r.pointer].length)
            return ValidationIssue{i, "length not strictly increasing along pointer"};
    }
    return std::nullopt;
}

LayeredSolver::LayeredSolver(int max_len)
    : max_len_(max_len), base_allowed_([](const BitString&) { return true; }) {
    requests_.push_back({});
    depths_.push_back(0);
    sets_.push_back({CodeEntry{BitString{}, arrival_counter_++}});
    subsolvers_.emplace(BitString{}, PlainSolver(BitString{}, max_len_));
    code_request_.emplace(BitString{}, 0);
}

void LayeredSolver::set_base_filter(std::function<bool(const BitString&)> allowed) {
    base_allowed_ = std::move(allowed);
}

std::vector<int> LayeredSolver::characteristic_sequence(int i) const {
    return raw_characteristic_sequence(requests_, i);
}

const PlainSolver& LayeredSolver::subsolver(const BitString& code) const {
    auto it = subsolvers_.find(code);
    if (it == subsolvers_.end()) throw InvalidRequest("no subsolver for code " + code.token());
    return it->second;
}

int LayeredSolver::request_of(const BitString& code) const {
    auto it = code_request_.find(code);
    if (it == code_request_.end()) throw InvalidRequest("unknown code " + code.token());
    return it->second;
}

const StageEvent& LayeredSolver::step(const LayeredRequest& r) {
    const int k = size();
    if (r.pointer < 0 || r.pointer >= k)
        throw InvalidRequest("pointer must reference an earlier request");
    if (r.length <= requests_[r.pointer].length)
        throw InvalidRequest("length not strictly increasing along pointer");
    if (r.length > max_len_)
        throw InvalidLength("request length exceeds limit " + std::to_string(max_len_));
    DyadicWeight next = weight_.plus_pow2(r.length);
    if (!next.leq_one())
        throw BudgetExceeded("layered weight " + next.to_fraction() + " exceeds 1");

    // Characteristic sequence of the new request; the request itself is
    // index k, not yet appended.
    std::vector<int> v;
    for (int j = r.pointer; j != 0; j = requests_[j].pointer) v.push_back(j);
    v.push_back(0);
    std::reverse(v.begin(), v.end());
    v.push_back(k);
    const int t = static_cast<int>(v.size());

    auto length_at = [&](int j) {  // requested length at chain position j
        return j == t - 1 ? r.length : requests_[v[j]].length;
    };

    // Hypothesis: largest j with a qualifying code in S_{v_j}; earliest
    // such code by arrival order.
    int j0 = -1;
    const CodeEntry* base = nullptr;
    for (int j = t - 2; j >= 0 && !base; --j) {
        const CodeEntry* best = nullptr;
        for (const auto& entry : sets_[v[j]]) {
            if (!base_allowed_(entry.code)) continue;
            if (!subsolvers_.at(entry.code).clear_extension_exists(length_at(j + 1))) continue;
            if (!best || entry.arrival < best->arrival) best = &entry;
        }
        if (best) {
            j0 = j;
            base = best;
        }
    }
    if (!base)
        throw HypothesisFailure("no base available for request of length " +
                                std::to_string(r.length));

    StageEvent ev;
    ev.request_index = k;
    ev.base_request = v[j0];
    ev.base_depth = j0;
    ev.base = base->code;

    requests_.push_back(r);
    depths_.push_back(depths_[r.pointer] + 1);
    sets_.emplace_back();
    weight_ = next;

    BitString cur = base->code;
    for (int j = j0; j <= t - 2; ++j) {
        BitString code = subsolvers_.at(cur).step(length_at(j + 1));
        subsolvers_.emplace(code, PlainSolver(code, max_len_));
        code_request_.emplace(code, v[j + 1]);
        sets_[v[j + 1]].push_back(CodeEntry{code, arrival_counter_++});
        ev.added.emplace_back(v[j + 1], code);
        cur = code;
    }

    events_.push_back(std::move(ev));
    return events_.back();
}

std::vector<CodeEntry> LayeredSolver::leaves_by_arrival() const {
    std::vector<CodeEntry> leaves;
    for (const auto& set : sets_)
        for (const auto& entry : set)
            if (subsolvers_.at(entry.code).empty()) leaves.push_back(entry);
    std::sort(leaves.begin(), leaves.end(),
              [](const CodeEntry& a, const CodeEntry& b) { return a.arrival < b.arrival; });
    return leaves;
}

std::vector<std::vector<BitString>> LayeredSolver::snapshot() const {
    std::vector<std::vector<BitString>> out;
    out.reserve(sets_.size());
    for (const auto& set : sets_) {
        std::vector<BitString> row;
        row.reserve(set.size());
        for (const auto& entry : set) row.push_back(entry.code);
        out.push_back(std::move(row));
    }
    return out;
}

LayeredSolveResult layered_solve(const std::vector<LayeredRequest>& requests, int max_len) {
    if (auto issue = validate_sequence(requests))
        throw InvalidRequest("request " + std::to_string(issue->index) + ": " + issue->reason);
    DyadicWeight total;
    for (std::size_t i = 1; i < requests.size(); ++i) total = total.plus_pow2(requests[i].length);
    if (!total.leq_one())
        throw BudgetExceeded("sequence weight " + total.to_fraction() + " exceeds 1");

    LayeredSolveResult result{LayeredSolver(max_len), {}};
    for (std::size_t i = 1; i < requests.size(); ++i) {
        result.solver.step(requests[i]);
        result.snapshots.push_back(result.solver.snapshot());
    }
    return result;
}

bool check_solution(const std::vector<LayeredRequest>& requests,
                    const std::vector<std::vector<BitString>>& sets) {
    if (sets.size() != requests.size()) return false;
    for (std::size_t i = 0; i < requests.size(); ++i) {
        for (const auto& sigma : sets[i]) {
            if (static_cast<int>(sigma.size()) != requests[i].length) return false;
            if (i > 0) {
                bool anchored = false;
                for (const auto& tau : sets[requests[i].pointer])
                    if (tau.is_proper_prefix_of(sigma)) anchored = true;
                if (!anchored) return false;
            }
        }
    }
    for (std::size_t i = 0; i < requests.size(); ++i)
        for (std::size_t j = i + 1; j < requests.size(); ++j) {
            if (requests[i].pointer != requests[j].pointer || (i == 0 || j == 0)) continue;
            for (const auto& sigma : sets[i])
                for (const auto& tau : sets[j])
                    if (sigma.comparable_with(tau)) return false;
        }
    return true;
}

std::vector<LayeredRequest> depth_reduce(const std::vector<LayeredRequest>& requests,
                                         const std::vector<StageEvent>& events) {
    auto depths = request_depths(requests);
    const int d_max = depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());
    if (d_max <= 1) return requests;
    const int d = d_max - 1;

    std::vector<const StageEvent*> by_request(requests.size(), nullptr);
    for (const auto& ev : events)
        if (ev.request_index < static_cast<int>(requests.size()))
            by_request[ev.request_index] = &ev;

    std::vector<LayeredRequest> out;
    out.push_back({});
    std::map<int, int> rmap;  // L index -> L' index of the corresponding copy
    rmap[0] = 0;

    for (int i = 1; i < static_cast<int>(requests.size()); ++i) {
        if (depths[i] <= d) {
            out.push_back({requests[i].payload, rmap.at(requests[i].pointer),
                           requests[i].length});
            rmap[i] = static_cast<int>(out.size()) - 1;
            continue;
        }
        const StageEvent* ev = by_request[i];
        if (!ev) throw InvalidRequest("depth_reduce: missing event for request " +
                                      std::to_string(i));
        if (ev->base_depth == d) continue;  // satisfied locally; nothing to mirror
        // Base deeper than one level away: issue the secondary request,
        // pointing at the copy of the grandparent.
        auto v = raw_characteristic_sequence(requests, i);
        const int grand = v[d - 1];
        const int parent = v[d];
        out.push_back({BitString{}, rmap.at(grand), requests[parent].length});
    }
    return out;
}

}  // namespace kcode
