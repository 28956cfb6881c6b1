#pragma once

#include <map>
#include <string>
#include <vector>

#include "kcode/bitcore.hpp"

namespace kcode {

// Block length schedules: |sigma_i| = i, i^2, or 2^(i-1) for i >= 1.
enum class Schedule { linear, quadratic, exponential };

Schedule schedule_from_name(const std::string& name);
std::string schedule_name(Schedule s);

struct BlockPlan {
    Schedule schedule = Schedule::linear;
    int n = 0;
    int k_n = 0;                     // least k with boundary(k) >= n
    std::vector<int> block_lengths;  // |sigma_1| .. |sigma_{k_n}|
    std::vector<int> boundaries;     // cumulative source coverage
};

BlockPlan plan(int n, Schedule schedule);

struct BlockCode {
    BitString y;                  // concatenated per-block codewords
    std::map<int, int> use_table; // source position -> code bits consumed
    std::vector<int> codeword_lengths;
};

// Each block is coded self-delimitingly as '0' + block: the codeword a
// per-block greedy coder with uniform lengths |block|+1 would allot when
// blocks enumerate in counting order. One bit of overhead per block.
BlockCode block_encode(const BitString& x, const BlockPlan& p);

// Reads codewords in sequence until n source bits are recovered.
BitString block_decode(const BitString& y, const BlockPlan& p, int n);

// Code bits needed to recover the first n source bits: everything through
// block k_n.
int baseline_use(int n, Schedule schedule);

struct OverheadRow {
    int n = 0;
    int layered_use = 0;   // min-tail of the len-log measure at n
    int baseline_use = 0;
    int overhead = 0;      // baseline_use - n
};

struct OverheadReport {
    Schedule schedule = Schedule::linear;
    std::vector<OverheadRow> rows;
};

OverheadReport overhead_report(Schedule schedule, const std::vector<int>& ns);

}  // namespace kcode
