#include "kcode/plain_kc.hpp"

namespace kcode {

PlainSolver::PlainSolver(BitString base, int max_len)
    : base_(std::move(base)), max_len_(max_len) {
    // The untouched cone above the base acts as the initial filler; its
    // trace position equals |base| just like every later filler.
    fillers_.emplace(static_cast<int>(base_.size()), base_);
}

BitString PlainSolver::step(int len) {
    if (failed_) throw BudgetExceeded("solver already failed; no further requests accepted");
    if (len > max_len_)
        throw InvalidLength("request length " + std::to_string(len) + " exceeds limit " +
                            std::to_string(max_len_));
    if (len <= static_cast<int>(base_.size()))
        throw InvalidLength("request length " + std::to_string(len) +
                            " does not properly extend base of length " +
                            std::to_string(base_.size()));

    DyadicWeight next = weight_.plus_pow2(len);
    if (!next.leq_pow2(static_cast<int>(base_.size()))) {
        failed_ = true;
        throw BudgetExceeded("weight " + next.to_fraction() + " exceeds capacity 2^-" +
                             std::to_string(base_.size()));
    }

    // Largest filler position p <= len; guaranteed to exist by the budget check.
    auto it = fillers_.upper_bound(len);
    if (it == fillers_.begin()) throw HypothesisFailure("no filler at or below requested length");
    --it;
    int p = it->first;
    BitString mu = it->second;
    fillers_.erase(it);

    BitString sigma = leftmost_extension(mu, len);
    // Replacements mu * 0^(len-p-i) * 1 for 0 < i <= len-p land one per
    // position in (p, len]; empty when p == len.
    for (int i = 1; i <= len - p; ++i) {
        BitString f = mu + BitString::zeros(static_cast<std::size_t>(len - p - i));
        f.push_back(1);
        fillers_.emplace(len - i + 1, std::move(f));
    }

    weight_ = next;
    codes_.push_back(sigma);
    return sigma;
}

bool PlainSolver::clear_extension_exists(int len) const {
    if (failed_) return false;
    if (len <= static_cast<int>(base_.size()) || len > max_len_) return false;
    // weight <= 2^-|base| - 2^-len  <=>  weight + 2^-len <= 2^-|base|
    return weight_.plus_pow2(len).leq_pow2(static_cast<int>(base_.size()));
}

std::vector<BitString> plain_solve(const BitString& base, const std::vector<int>& lengths,
                                   int max_len) {
    PlainSolver solver(base, max_len);
    std::vector<BitString> out;
    out.reserve(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        try {
            out.push_back(solver.step(lengths[i]));
        } catch (const BudgetExceeded&) {
            throw BudgetExceeded("budget exceeded at request index " + std::to_string(i));
        }
    }
    return out;
}

}  // namespace kcode
