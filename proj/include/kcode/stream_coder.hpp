#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcode/avoidance.hpp"
#include "kcode/layered_kc.hpp"

namespace kcode {

// An information content measure together with the finite enumeration of
// strings the coder will issue requests for. The enumeration lists every
// proper prefix of a string before the string itself.
struct Measure {
    std::string id;
    std::vector<BitString> domain;  // enumeration order
    std::function<std::optional<int>(const BitString&)> eval;

    std::optional<int> operator()(const BitString& s) const { return eval(s); }

    // Exact sum of 2^-I(sigma) over the defined part of the enumeration.
    DyadicWeight certificate() const;
};

// I(sigma) = |sigma| + 2*ceil(log2(|sigma| + 2)), enumerated along the
// prefixes of the anchor string (lambda first).
Measure len_log_measure(const BitString& anchor);

// Explicit table; rows give the enumeration order.
Measure measure_from_table(const std::vector<std::pair<BitString, int>>& rows);

// I(sigma) = g(|sigma|) exactly where the (monotone, so final) approximation
// has dropped to at most g(|sigma|); undefined elsewhere.
Measure measure_from_bound(const std::function<int(int)>& g,
                           const std::vector<std::pair<BitString, int>>& final_approx);

// Longest proper prefix with strictly smaller I-value, or nullopt.
std::optional<BitString> i_predecessor(const Measure& I, const BitString& tau);

struct BuiltRequests {
    std::vector<LayeredRequest> requests;       // index 0 is the empty request
    std::map<BitString, int> index_of;          // payload -> request index
};

// One request per defined string in the enumeration, of length I + shift,
// pointing at the request of the I-predecessor.
BuiltRequests build_requests(const Measure& I, int shift = 0);

// Lengths of the prefixes of x that are local I-minima: each is the
// longest prefix attaining the minimum I-value over the remaining tail.
std::vector<int> local_minima(const Measure& I, const BitString& x);

struct OracleUse {
    int use = 0;
    bool at_bound = false;  // the tail minimum touches the working bound
};

// min over n <= i <= |x| of I(x restricted to i).
OracleUse oracle_use(const Measure& I, const BitString& x, int n);

struct CodePrefix {
    BitString y;
    std::map<int, int> use_table;  // n -> bits of y needed to recover x|n
    int shift = 0;
    int bound = 0;
};

// Codes x|n into a prefix of a q-avoiding stream; |y| equals the shifted
// tail-minimum of I at n. The shift is the least c making the measure
// weight plus wgt(q) fit under capacity 1.
CodePrefix encode(const BitString& x, const Measure& I, const AvoidSet& q, int n);

struct DecodeResult {
    BitString prefix;
    int bits_read = 0;  // highest bit position of y touched, plus one
};

// Replays the construction for (I, q, shift) and walks the code tree,
// reading y through a counting reader; recovers x|n.
DecodeResult decode(const BitString& y, const Measure& I, const AvoidSet& q, int n, int shift);

// The raw tree walk against an already-built pipeline: follow the unique
// child matching y level by level (shortest first) until the payload
// covers n. Shared by the static and dynamic decoders.
DecodeResult decode_walk(const InterleaveResult& run, const BitString& y, int n);

}  // namespace kcode
