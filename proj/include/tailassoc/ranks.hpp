#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tailassoc {

/// How make_sample treats duplicated values within a series.
struct TiePolicy {
    enum class Kind { Reject, Jitter };
    Kind kind = Kind::Reject;
    std::uint64_t seed = 0;

    static TiePolicy reject() { return {}; }
    static TiePolicy jitter(std::uint64_t seed) { return {Kind::Jitter, seed}; }
};

/// Two aligned, finite, tie-free series of equal length n >= 2.
///
/// Only constructible through make_sample, so every instance satisfies the
/// invariants. Immutable afterwards and safe to share between threads.
class PairedSample {
public:
    std::span<const double> x() const noexcept { return x_; }
    std::span<const double> y() const noexcept { return y_; }
    std::size_t size() const noexcept { return x_.size(); }
    /// True when make_sample had to perturb tied values.
    bool jittered() const noexcept { return jittered_; }

    /// Same observations with the roles of the two series exchanged.
    PairedSample swapped() const { return PairedSample(y_, x_, jittered_); }

private:
    PairedSample(std::vector<double> x, std::vector<double> y, bool jittered)
        : x_(std::move(x)), y_(std::move(y)), jittered_(jittered) {}

    friend PairedSample make_sample(std::vector<double>, std::vector<double>, TiePolicy);

    std::vector<double> x_;
    std::vector<double> y_;
    bool jittered_ = false;
};

/// Validates and (optionally) de-ties a pair of series.
///
/// Throws LengthMismatch for unequal lengths or n < 2, NonFinite for NaN or
/// infinities, and TiesPresent when duplicates exist under the reject policy.
/// Under the jitter policy each tied group at value v is spread over
/// v + j*g/(2m), j = 0..m-1, in a seeded random order, where g is the smallest
/// nonzero gap of that series; relative order with all other values is kept.
PairedSample make_sample(std::vector<double> x, std::vector<double> y,
                         TiePolicy policy = TiePolicy::reject());

/// Reverse rank of every element: the number of entries >= it. The maximum
/// gets 1. Throws TiesPresent on duplicates.
std::vector<std::size_t> reverse_ranks(std::span<const double> v);

/// Reverse ranks of the X-concomitants taken in order of decreasing Y.
struct ConcomitantRanks {
    /// rho[i]: reverse rank among all x of the x paired with the (i+1)-th
    /// largest y. A permutation of 1..n.
    std::vector<std::size_t> rho;
    /// y_order[i]: original index of the (i+1)-th largest y.
    std::vector<std::size_t> y_order;

    std::size_t size() const noexcept { return rho.size(); }
};

ConcomitantRanks concomitant_ranks(const PairedSample& s);

/// Indices that sort v in decreasing order. Exact comparisons; callers are
/// expected to have rejected ties beforehand.
std::vector<std::size_t> descending_order(std::span<const double> v);

} // namespace tailassoc
