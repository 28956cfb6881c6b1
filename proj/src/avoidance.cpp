#include "kcode/avoidance.hpp"

#include <memory>

namespace kcode {

AvoidSet::AvoidSet(std::vector<BitString> members) : members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
        for (std::size_t j = i + 1; j < members_.size(); ++j)
            if (members_[i].comparable_with(members_[j]))
                throw ParseError("avoid set not prefix-free: " + members_[i].token() + " vs " +
                                 members_[j].token());
        weight_ = weight_.plus_pow2(static_cast<int>(members_[i].size()));
    }
}

bool AvoidSet::prefixes(const BitString& sigma) const {
    for (const auto& q : members_)
        if (q.is_prefix_of(sigma)) return true;
    return false;
}

bool check_avoids(const std::vector<BitString>& codes, const AvoidSet& q) {
    for (const auto& c : codes)
        if (q.prefixes(c)) return false;
    return true;
}

bool FilterState::contains(const BitString& sigma) const {
    for (const auto& e : ejected)
        if (e.code == sigma) return true;
    return false;
}

DyadicWeight FilterState::weight() const {
    DyadicWeight w;
    for (const auto& e : ejected) w = w.plus_pow2(static_cast<int>(e.code.size()));
    return w;
}

int filtered_step(const std::vector<CodeEntry>& leaves, const AvoidSet& q, FilterState& f) {
    for (int i = static_cast<int>(leaves.size()) - 1; i >= 0; --i) {
        if (f.contains(leaves[i].code)) continue;
        if (!q.prefixes(leaves[i].code)) continue;
        f.ejected.push_back(leaves[i]);
        f.adaptive_history.push_back(true);
        return i;
    }
    f.adaptive_history.push_back(false);
    return -1;
}

InterleaveResult interleave_solve(const std::vector<LayeredRequest>& requests, const AvoidSet& q,
                                  int max_len, const StageObserver& observer) {
    if (auto issue = validate_sequence(requests))
        throw InvalidRequest("request " + std::to_string(issue->index) + ": " + issue->reason);
    DyadicWeight combined = q.weight();
    for (std::size_t i = 1; i < requests.size(); ++i)
        combined = combined.plus_pow2(requests[i].length);
    if (!combined.leq_one())
        throw BudgetExceeded("wgt(L) + wgt(Q) = " + combined.to_fraction() + " exceeds 1");

    InterleaveResult res{LayeredSolver(max_len), {}, {}, {}, {}, {}};
    res.lprime.push_back({});
    res.lprime_to_l.push_back(0);
    res.current_index[0] = 0;

    // Nothing may grow above a forbidden cone; this keeps every ejected
    // string a leaf and subsumes the ejected set D (D is Q-prefixed).
    res.solver.set_base_filter([q](const BitString& sigma) { return !q.prefixes(sigma); });

    std::size_t next_eject = 1;
    while (true) {
        auto leaves = res.solver.leaves_by_arrival();
        int pos = filtered_step(leaves, q, res.filter);
        if (pos < 0 && next_eject >= requests.size()) {
            res.filter.adaptive_history.pop_back();  // nothing happened this stage
            break;
        }
        LayeredRequest r;
        int l_index;
        if (pos >= 0) {
            // Adaptive: re-issue the request whose code was just ejected.
            int i = res.solver.request_of(leaves[pos].code);
            l_index = res.lprime_to_l[i];
            r = res.lprime[i];
            res.outdated.insert(i);
        } else {
            // Expansionary: eject the least unejected L-request.
            const auto& src = requests[next_eject];
            r = LayeredRequest{src.payload, res.current_index.at(src.pointer), src.length};
            l_index = static_cast<int>(next_eject);
            ++next_eject;
        }
        int new_index = res.solver.size();
        res.solver.step(r);
        res.lprime.push_back(r);
        res.lprime_to_l.push_back(l_index);
        res.current_index[l_index] = new_index;
        if (observer) observer(res, new_index);
    }
    return res;
}

}  // namespace kcode
