#include "kcode/bitcore.hpp"

#include <algorithm>

namespace kcode {

BitString::BitString(std::string_view bits) {
    bits_.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw ParseError("bitstring contains non-binary character: '" + std::string(1, c) + "'");
        bits_.push_back(c);
    }
}

BitString BitString::from_token(std::string_view tok) {
    if (tok == "-") return {};
    return BitString(tok);
}

BitString BitString::zeros(std::size_t n) {
    BitString s;
    s.bits_.assign(n, '0');
    return s;
}

BitString BitString::prefix(std::size_t n) const {
    BitString s;
    s.bits_ = bits_.substr(0, n);
    return s;
}

bool BitString::is_prefix_of(const BitString& other) const {
    return bits_.size() <= other.bits_.size() &&
           other.bits_.compare(0, bits_.size(), bits_) == 0;
}

bool BitString::is_proper_prefix_of(const BitString& other) const {
    return bits_.size() < other.bits_.size() && is_prefix_of(other);
}

bool BitString::comparable_with(const BitString& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
}

BitString BitString::operator+(const BitString& rhs) const {
    BitString s;
    s.bits_ = bits_ + rhs.bits_;
    return s;
}

BitString leftmost_extension(const BitString& sigma, int len) {
    if (len < 0 || static_cast<std::size_t>(len) < sigma.size())
        throw InvalidLength("leftmost_extension: target length " + std::to_string(len) +
                            " shorter than |sigma| = " + std::to_string(sigma.size()));
    return sigma + BitString::zeros(static_cast<std::size_t>(len) - sigma.size());
}

int ceil_log2(std::size_t v) {
    int r = 0;
    std::size_t p = 1;
    while (p < v) {
        p <<= 1;
        ++r;
    }
    return r;
}

DyadicWeight::DyadicWeight(BigInt num, int scale) : num_(std::move(num)), scale_(scale) {
    if (num_ == 0) {
        scale_ = 0;
        return;
    }
    while (scale_ > 0 && (num_ & 1) == 0) {
        num_ >>= 1;
        --scale_;
    }
}

DyadicWeight DyadicWeight::one() { return DyadicWeight(1, 0); }

DyadicWeight DyadicWeight::pow2(int exp) {
    if (exp < 0) throw InvalidLength("pow2: negative exponent");
    return DyadicWeight(1, exp);
}

DyadicWeight DyadicWeight::plus_pow2(int exp) const {
    if (exp < 0) throw InvalidLength("plus_pow2: negative exponent");
    int s = std::max(scale_, exp);
    BigInt n = num_ << (s - scale_);
    n += BigInt(1) << (s - exp);
    return DyadicWeight(std::move(n), s);
}

DyadicWeight DyadicWeight::plus(const DyadicWeight& rhs) const {
    int s = std::max(scale_, rhs.scale_);
    BigInt n = (num_ << (s - scale_)) + (rhs.num_ << (s - rhs.scale_));
    return DyadicWeight(std::move(n), s);
}

bool DyadicWeight::leq_pow2(int exp) const {
    return *this <= pow2(exp);
}

std::strong_ordering operator<=>(const DyadicWeight& a, const DyadicWeight& b) {
    int s = std::max(a.scale_, b.scale_);
    BigInt lhs = a.num_ << (s - a.scale_);
    BigInt rhs = b.num_ << (s - b.scale_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string DyadicWeight::to_fraction() const {
    if (num_ == 0) return "0";
    if (scale_ == 0) return num_.str();
    return num_.str() + "/" + BigInt(BigInt(1) << scale_).str();
}

DyadicWeight weight_add(const DyadicWeight& w, int len) {
    if (len <= 0) throw InvalidLength("weight_add: length must be positive");
    return w.plus_pow2(len);
}

Trace trace_of(int capacity_exp, const DyadicWeight& w) {
    if (capacity_exp < 0) throw InvalidLength("trace_of: negative capacity exponent");
    if (!w.leq_pow2(capacity_exp))
        throw BudgetExceeded("trace_of: weight " + w.to_fraction() + " exceeds capacity 2^-" +
                             std::to_string(capacity_exp));
    Trace t;
    if (w.is_zero()) {
        t.positions.insert(capacity_exp);
        return t;
    }
    // w <= 2^-cap with odd numerator forces scale >= cap.
    int scale = w.scale();
    BigInt diff = (BigInt(1) << (scale - capacity_exp)) - w.numerator();
    for (int j = 0; diff != 0; ++j) {
        if ((diff & 1) != 0) t.positions.insert(scale - j);
        diff >>= 1;
    }
    return t;
}

DyadicWeight trace_value(const Trace& t) {
    DyadicWeight v;
    for (int p : t.positions) v = v.plus_pow2(p);
    return v;
}

}  // namespace kcode
