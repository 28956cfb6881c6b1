#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kcode/stream_coder.hpp"

namespace kcode {

// One stage of a computable approximation: at `stage` the value of `sigma`
// drops to `value`.
struct ApproxUpdate {
    int stage = 0;
    BitString sigma;
    int value = 0;
};

// A monotone approximation K_s over a finite universe of nonempty strings.
// Stage 0 carries the initial values; stage s >= 1 lowers exactly one
// string. Construction enforces, at every stage s and every universe
// string sigma,
//
//   sum over extensions rho of sigma:  2^-(K_s(rho) + ceil(log2 |rho|) + c)
//     <=  2^-K_s(sigma)
//
// with c >= 1, which is what keeps the request weight of each clone
// extension inside the freed budget.
class ApproxRun {
public:
    ApproxRun(int c, int universe_maxlen, std::map<BitString, int> initial,
              std::vector<ApproxUpdate> updates);

    int c() const { return c_; }
    int universe_maxlen() const { return maxlen_; }
    int stages() const { return static_cast<int>(updates_.size()); }
    const std::map<BitString, int>& initial() const { return initial_; }
    const std::vector<ApproxUpdate>& updates() const { return updates_; }

    // K_s; nullopt when sigma is outside the universe.
    std::optional<int> value(const BitString& sigma, int stage) const;
    std::optional<int> final_value(const BitString& sigma) const;
    std::map<BitString, int> values_at(int stage) const;

    // Request length K_s(sigma) + ceil(log2 |sigma|) + c.
    int adjusted(const BitString& sigma, int stage) const;

private:
    int c_;
    int maxlen_;
    std::map<BitString, int> initial_;
    std::vector<ApproxUpdate> updates_;
};

struct TargetInfo {
    BitString target;
    std::optional<BitString> pretarget;  // longest proper prefix cheaper after the drop
};

// Target and pre-target of update stage s (1-based), judged on the stage-s
// values.
TargetInfo target_pretarget(const ApproxRun& run, int stage);

// r_idx and every ancestor have length K(payload) + ceil(log2) + c under
// the given value map. Index 0 is never valid.
bool request_valid(const std::vector<LayeredRequest>& requests, int idx,
                   const std::map<BitString, int>& values, int c);

// Valid descendants of requests[t] (root first, original order) with
// pointers reindexed into the returned list; element 0 is the root with
// pointer 0. Validity is hereditary, so the result is a connected tree.
std::vector<LayeredRequest> subtree(const std::vector<LayeredRequest>& requests, int t,
                                    const std::map<BitString, int>& values, int c);

// Appends the non-root terms of the subtree of requests[t] to `extended`,
// re-rooted at its last element (the replacement request).
void clone_extend(std::vector<LayeredRequest>& extended,
                  const std::vector<LayeredRequest>& requests, int t,
                  const std::map<BitString, int>& values, int c);

struct StageRecord {
    int stage = 0;           // 0 for the initial burst
    BitString target;
    DyadicWeight before;
    DyadicWeight after;      // wgt of the sequence after the stage
    int bound_exp = 0;       // stage increase must fit under 2^-bound_exp
    bool cloned = false;
};

struct UniversalResult {
    std::vector<LayeredRequest> sequence;  // index 0 is the empty request
    std::vector<StageRecord> records;      // one per drop (burst + updates)
};

// The request sequence of the run: the initial values enter as a burst of
// drops in length-lex order, then each update appends the target's request
// (pointed at the valid pre-target request) plus a clone extension of the
// previously valid target request, when one exists.
UniversalResult build_universal_sequence(const ApproxRun& run);

// Prefix lengths i of x minimizing K_final(x|i) + ceil(log2 i) over the
// remaining tail; ties go to the longest prefix. Only universe prefixes
// participate.
std::vector<int> significant_segments(const ApproxRun& run, const BitString& x);

// min over i in [n, |x|] of K_final(x|i) + ceil(log2 i), plus c.
int dynamic_use(const ApproxRun& run, const BitString& x, int n);

// Codes x|n against the universal sequence of the run, interleaved with q.
CodePrefix dynamic_encode(const BitString& x, const ApproxRun& run, const AvoidSet& q, int n);

// Replays the run and walks the code tree, reading y bit by bit.
DecodeResult dynamic_decode(const BitString& y, const ApproxRun& run, const AvoidSet& q, int n);

}  // namespace kcode
