#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kcode/bitcore.hpp"
#include "kcode/plain_kc.hpp"

namespace kcode {

// Request i: produce a string of length `length` properly extending some
// code of request `pointer`. Request 0 is the empty request (*, 0). The
// payload names the string this request codes; empty for abstract use.
struct LayeredRequest {
    BitString payload;
    int pointer = 0;
    int length = 0;

    friend bool operator==(const LayeredRequest& a, const LayeredRequest& b) = default;
};

struct ValidationIssue {
    int index;
    std::string reason;
};

// First structural violation in the sequence, or nullopt when well formed.
std::optional<ValidationIssue> validate_sequence(const std::vector<LayeredRequest>& requests);

// A code together with its global arrival stamp (stage ordering).
struct CodeEntry {
    BitString code;
    int arrival = 0;

    friend bool operator==(const CodeEntry& a, const CodeEntry& b) = default;
};

// Everything a stage did: which base was picked and which codes appeared.
struct StageEvent {
    int request_index = 0;  // the request satisfied at this stage
    int base_request = 0;   // request whose set holds the base (v_{j0})
    int base_depth = 0;     // j0
    BitString base;
    std::vector<std::pair<int, BitString>> added;  // (request index, code), cascade order
};

class LayeredSolver {
public:
    explicit LayeredSolver(int max_len = kDefaultMaxRequestLength);

    // Restricts which existing codes may serve as the base of a stage.
    // Used by the avoidance pipeline to keep ejected leaves barren.
    void set_base_filter(std::function<bool(const BitString&)> allowed);

    // Satisfies one request, cascading one new code per depth below it.
    const StageEvent& step(const LayeredRequest& r);

    int size() const { return static_cast<int>(requests_.size()); }
    const std::vector<LayeredRequest>& requests() const { return requests_; }
    const std::vector<std::vector<CodeEntry>>& sets() const { return sets_; }
    const std::vector<StageEvent>& events() const { return events_; }
    const DyadicWeight& weight() const { return weight_; }

    int depth(int i) const { return depths_[i]; }
    std::vector<int> characteristic_sequence(int i) const;

    const PlainSolver& subsolver(const BitString& code) const;
    bool has_subsolver(const BitString& code) const { return subsolvers_.count(code) > 0; }

    // Index of the request the code satisfies.
    int request_of(const BitString& code) const;

    // All codes with no successor code, in arrival order (oldest first).
    std::vector<CodeEntry> leaves_by_arrival() const;

    // Sets stripped of arrival stamps, for checking and dumping.
    std::vector<std::vector<BitString>> snapshot() const;

private:
    int max_len_;
    std::function<bool(const BitString&)> base_allowed_;
    std::vector<LayeredRequest> requests_;
    std::vector<int> depths_;
    std::vector<std::vector<CodeEntry>> sets_;
    std::map<BitString, PlainSolver> subsolvers_;
    std::map<BitString, int> code_request_;  // code -> its request index
    std::vector<StageEvent> events_;
    DyadicWeight weight_;
    int arrival_counter_ = 0;
};

struct LayeredSolveResult {
    LayeredSolver solver;
    std::vector<std::vector<std::vector<BitString>>> snapshots;  // one per stage
};

// Runs the greedy solution over the whole sequence (index 0 must be the
// empty request); rejects weight > 1 up front.
LayeredSolveResult layered_solve(const std::vector<LayeredRequest>& requests,
                                 int max_len = kDefaultMaxRequestLength);

// Satisfaction conditions (a) and (b), judged on the sets alone.
bool check_solution(const std::vector<LayeredRequest>& requests,
                    const std::vector<std::vector<BitString>>& sets);

// Depth reduction: rewrites a depth-(d+1) sequence as a depth-d sequence
// using the event log of the greedy run on the input.
std::vector<LayeredRequest> depth_reduce(const std::vector<LayeredRequest>& requests,
                                         const std::vector<StageEvent>& events);

}  // namespace kcode
