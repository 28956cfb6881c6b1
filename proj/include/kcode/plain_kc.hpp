#pragma once

#include <map>
#include <vector>

#include "kcode/bitcore.hpp"

namespace kcode {

// Greedy online solver for length requests above a base string. Assigned
// codes extend the base, are pairwise prefix-free and have the requested
// lengths, provided the running weight never exceeds 2^-|base|.
//
// Fillers are kept keyed by their trace position; every filler has length
// equal to its key, so the trace/filler bijection is a direct lookup.
class PlainSolver {
public:
    explicit PlainSolver(BitString base = {}, int max_len = kDefaultMaxRequestLength);

    // Satisfies one request; returns the assigned code. A budget failure
    // is terminal: every later call rethrows.
    BitString step(int len);

    // True when a code of the given length could still be placed without
    // touching any assigned code: weight <= 2^-|base| - 2^-len.
    bool clear_extension_exists(int len) const;

    const BitString& base() const { return base_; }
    const std::vector<BitString>& codes() const { return codes_; }
    const std::map<int, BitString>& fillers() const { return fillers_; }
    const DyadicWeight& weight() const { return weight_; }
    bool failed() const { return failed_; }
    bool empty() const { return codes_.empty(); }

    Trace trace() const { return trace_of(static_cast<int>(base_.size()), weight_); }

private:
    BitString base_;
    int max_len_;
    std::vector<BitString> codes_;
    std::map<int, BitString> fillers_;  // trace position -> filler string
    DyadicWeight weight_;
    bool failed_ = false;
};

// One-shot form: all requests up front. A budget error reports the first
// offending index.
std::vector<BitString> plain_solve(const BitString& base, const std::vector<int>& lengths,
                                   int max_len = kDefaultMaxRequestLength);

}  // namespace kcode
