#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "kcode/layered_kc.hpp"

namespace kcode {

// A prefix-free set of forbidden strings with an explicit enumeration
// order (line order of the input file).
class AvoidSet {
public:
    AvoidSet() = default;
    explicit AvoidSet(std::vector<BitString> members);

    const std::vector<BitString>& members() const { return members_; }
    const DyadicWeight& weight() const { return weight_; }
    bool empty() const { return members_.empty(); }

    // True when sigma has a prefix among the members (sigma included).
    bool prefixes(const BitString& sigma) const;

private:
    std::vector<BitString> members_;
    DyadicWeight weight_;
};

// No code has a prefix in q.
bool check_avoids(const std::vector<BitString>& codes, const AvoidSet& q);

// Ejected leaves (the set D) plus the stage-kind history.
struct FilterState {
    std::vector<CodeEntry> ejected;         // enumeration order
    std::vector<bool> adaptive_history;     // one entry per stage

    bool contains(const BitString& sigma) const;
    DyadicWeight weight() const;
};

// One filtering step against a snapshot of tree leaves (arrival order).
// When some leaf outside D has a prefix in q, the most recently arrived
// such leaf joins D and the stage is adaptive; otherwise expansionary.
// Returns the ejected leaf's position in `leaves`, or -1.
int filtered_step(const std::vector<CodeEntry>& leaves, const AvoidSet& q, FilterState& f);

struct InterleaveResult {
    LayeredSolver solver;
    std::vector<LayeredRequest> lprime;
    std::map<int, int> current_index;   // L index -> current L' index
    std::set<int> outdated;             // L' indices superseded by clones
    std::vector<int> lprime_to_l;       // L' index -> originating L index
    FilterState filter;
};

// Stage observer: called after each stage with the result so far and the
// L' index just enumerated.
using StageObserver = std::function<void(const InterleaveResult&, int)>;

// Runs the full co-routined pipeline: interleaves L with clone requests
// driven by the filtered enumeration of q, solving greedily as it goes.
// The greedy base choice is restricted so no new code extends an ejected
// leaf, which keeps every ejected string a leaf and D prefix-free.
InterleaveResult interleave_solve(const std::vector<LayeredRequest>& requests, const AvoidSet& q,
                                  int max_len = kDefaultMaxRequestLength,
                                  const StageObserver& observer = {});

}  // namespace kcode
