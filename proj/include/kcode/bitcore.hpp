#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kcode/errors.hpp"

namespace kcode {

using BigInt = boost::multiprecision::cpp_int;

// Default cap on request lengths; keeps dyadic scales bounded.
inline constexpr int kDefaultMaxRequestLength = 4096;

// A finite binary string. The empty string (lambda) is a valid value.
// Comparison is lexicographic; a proper prefix sorts before its extensions.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::string_view bits);

    // Parses the file-format token: "-" denotes the empty string.
    static BitString from_token(std::string_view tok);
    static BitString zeros(std::size_t n);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int bit(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }

    void push_back(int b) { bits_.push_back(b ? '1' : '0'); }

    BitString prefix(std::size_t n) const;
    bool is_prefix_of(const BitString& other) const;          // this <= other
    bool is_proper_prefix_of(const BitString& other) const;   // this < other
    bool comparable_with(const BitString& other) const;       // either direction

    BitString operator+(const BitString& rhs) const;

    const std::string& str() const { return bits_; }
    // Rendering for file formats: lambda becomes "-".
    std::string token() const { return bits_.empty() ? "-" : bits_; }

    friend bool operator==(const BitString& a, const BitString& b) = default;
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    std::string bits_;  // '0'/'1' only
};

// sigma followed by len - |sigma| zeros; the leftmost extension of sigma.
BitString leftmost_extension(const BitString& sigma, int len);

// ceil(log2(v)) for v >= 1.
int ceil_log2(std::size_t v);

// An exact non-negative dyadic rational: numerator * 2^-scale, with the
// numerator odd (or zero, with scale 0). All budget accounting runs on
// these; floating point is never used.
class DyadicWeight {
public:
    DyadicWeight() = default;

    static DyadicWeight zero() { return {}; }
    static DyadicWeight one();
    static DyadicWeight pow2(int exp);  // 2^-exp, exp >= 0

    DyadicWeight plus_pow2(int exp) const;
    DyadicWeight plus(const DyadicWeight& rhs) const;

    bool is_zero() const { return num_ == 0; }
    bool leq_pow2(int exp) const;  // value <= 2^-exp
    bool leq_one() const { return leq_pow2(0); }

    const BigInt& numerator() const { return num_; }
    int scale() const { return scale_; }

    // "num/2^scale" rendered in lowest terms, e.g. "3/4", "1", "0".
    std::string to_fraction() const;

    friend bool operator==(const DyadicWeight& a, const DyadicWeight& b) = default;
    friend std::strong_ordering operator<=>(const DyadicWeight& a, const DyadicWeight& b);

private:
    DyadicWeight(BigInt num, int scale);
    BigInt num_ = 0;
    int scale_ = 0;
};

DyadicWeight weight_add(const DyadicWeight& w, int len);

// Positions of the 1s in the binary expansion of a dyadic value <= 1;
// position p stands for 2^-p (position 0 is the integer bit).
struct Trace {
    std::set<int> positions;

    friend bool operator==(const Trace& a, const Trace& b) = default;
};

// Binary expansion of 2^-capacity_exp minus w. Throws BudgetExceeded
// when w is larger than the capacity.
Trace trace_of(int capacity_exp, const DyadicWeight& w);

// Exact value represented by a trace; inverse of trace_of modulo capacity.
DyadicWeight trace_value(const Trace& t);

}  // namespace kcode
