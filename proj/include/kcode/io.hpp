#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kcode/avoidance.hpp"
#include "kcode/dynamic_coder.hpp"
#include "kcode/layered_kc.hpp"
#include "kcode/stream_coder.hpp"

namespace kcode {

// Request file: one request per line, `<pointer> <length> [<payload>]`;
// line 0 must be `* 0`. Blank lines and lines starting with '#' skipped.
std::vector<LayeredRequest> read_requests(std::istream& in);
void write_requests(std::ostream& out, const std::vector<LayeredRequest>& requests);

// One integer length per line (solve-kc input).
std::vector<int> read_lengths(std::istream& in);

// Avoid-set file: one bitstring per line, enumeration order = line order.
AvoidSet read_avoid_set(std::istream& in);
void write_avoid_set(std::ostream& out, const AvoidSet& q);

// Measure table file: `<bits> <int>` per line, enumeration order.
Measure read_measure_table(std::istream& in);

// Run file: `c=<int>`, `universe-maxlen=<int>`, initial `<bits> <int>`
// lines, then updates `@<stage> <bits> <int>`.
ApproxRun read_run(std::istream& in);
void write_run(std::ostream& out, const ApproxRun& run);

// Code file: `key=value` header (measure id/params, shift, bound, avoid
// hash) followed by `bits=<ascii>`.
struct CodeFile {
    std::string measure_id;
    std::string measure_params;
    int shift = 0;
    int bound = 0;
    std::uint64_t avoid_hash = 0;
    BitString bits;
};

CodeFile read_code_file(std::istream& in);
void write_code_file(std::ostream& out, const CodeFile& f);

// FNV-1a over the canonical avoid-set rendering (one token per line).
std::uint64_t avoid_hash(const AvoidSet& q);

// Whole-file helpers.
std::string slurp(const std::string& path);  // ParseError when unreadable

}  // namespace kcode
