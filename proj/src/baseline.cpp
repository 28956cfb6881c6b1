#include "kcode/baseline.hpp"

#include "kcode/errors.hpp"
#include "kcode/stream_coder.hpp"

namespace kcode {

namespace {

int block_length(Schedule s, int i) {  // i >= 1
    switch (s) {
        case Schedule::linear: return i;
        case Schedule::quadratic: return i * i;
        case Schedule::exponential: return 1 << (i - 1);
    }
    throw ParseError("unknown schedule");
}

BitString alternating(int n) {
    std::string s;
    s.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s += (i % 2) ? '1' : '0';
    return BitString(s);
}

}  // namespace

Schedule schedule_from_name(const std::string& name) {
    if (name == "linear") return Schedule::linear;
    if (name == "quadratic") return Schedule::quadratic;
    if (name == "exponential") return Schedule::exponential;
    throw ParseError("unknown schedule: " + name);
}

std::string schedule_name(Schedule s) {
    switch (s) {
        case Schedule::linear: return "linear";
        case Schedule::quadratic: return "quadratic";
        case Schedule::exponential: return "exponential";
    }
    return "?";
}

BlockPlan plan(int n, Schedule schedule) {
    if (n < 1) throw InvalidLength("plan needs a positive length");
    BlockPlan p;
    p.schedule = schedule;
    p.n = n;
    int total = 0;
    for (int i = 1; total < n; ++i) {
        total += block_length(schedule, i);
        p.block_lengths.push_back(block_length(schedule, i));
        p.boundaries.push_back(total);
        p.k_n = i;
    }
    return p;
}

BlockCode block_encode(const BitString& x, const BlockPlan& p) {
    const int covered = p.boundaries.back();
    if (static_cast<int>(x.size()) < covered)
        throw InvalidLength("source shorter than the plan's coverage");
    BlockCode out;
    std::string y;
    int pos = 0;
    for (int i = 0; i < p.k_n; ++i) {
        const int len = p.block_lengths[i];
        y += '0';
        for (int j = 0; j < len; ++j)
            y += x.bit(static_cast<std::size_t>(pos + j)) ? '1' : '0';
        pos += len;
        out.codeword_lengths.push_back(len + 1);
    }
    out.y = BitString(y);
    out.use_table[0] = 0;
    int block = 0, use = 0;
    for (int m = 1; m <= p.n; ++m) {
        while (block < p.k_n && p.boundaries[block] < m) ++block;
        if (block >= p.k_n) break;
        // recovering bit m needs every codeword through its block
        int need = 0;
        for (int i = 0; i <= block; ++i) need += p.block_lengths[i] + 1;
        use = need;
        out.use_table[m] = use;
    }
    return out;
}

BitString block_decode(const BitString& y, const BlockPlan& p, int n) {
    std::string x;
    int pos = 0;
    for (int i = 0; i < p.k_n && static_cast<int>(x.size()) < n; ++i) {
        const int len = p.block_lengths[i];
        if (pos + len + 1 > static_cast<int>(y.size()))
            throw NotACode("code stream ends inside a block");
        if (y.bit(static_cast<std::size_t>(pos)) != 0)
            throw NotACode("block marker bit is not 0");
        for (int j = 1; j <= len; ++j)
            x += y.bit(static_cast<std::size_t>(pos + j)) ? '1' : '0';
        pos += len + 1;
    }
    if (static_cast<int>(x.size()) < n) throw NotACode("plan covers fewer than n bits");
    return BitString(x.substr(0, static_cast<std::size_t>(n)));
}

int baseline_use(int n, Schedule schedule) {
    auto p = plan(n, schedule);
    int use = 0;
    for (int len : p.block_lengths) use += len + 1;
    return use;
}

OverheadReport overhead_report(Schedule schedule, const std::vector<int>& ns) {
    OverheadReport rep;
    rep.schedule = schedule;
    for (int n : ns) {
        OverheadRow row;
        row.n = n;
        BitString anchor = alternating(n);
        row.layered_use = oracle_use(len_log_measure(anchor), anchor, n).use;
        row.baseline_use = baseline_use(n, schedule);
        row.overhead = row.baseline_use - n;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace kcode
