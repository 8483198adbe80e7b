#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace hardylab {

/// Largest support a constructed sequence may have, unless overridden.
inline constexpr std::uint64_t kDefaultSupportCap = 100'000'000;

/// Finitely supported complex sequence indexed from 1; u_0 = 0 always,
/// and indices outside the stored support read as 0. Entries are kept
/// sorted by index, exact zeros are never stored, and the object is
/// immutable after construction.
class Sequence {
public:
    struct Entry {
        std::uint64_t index;
        std::complex<double> value;
    };

    Sequence() = default;

    /// Validates indices (>= 1, distinct) and values (finite), drops
    /// exact zeros, sorts by index. Throws ValidationError.
    static Sequence from_pairs(std::vector<Entry> pairs);

    std::span<const Entry> entries() const { return entries_; }
    std::complex<double> at(std::uint64_t n) const;
    std::uint64_t max_index() const { return entries_.empty() ? 0 : entries_.back().index; }
    std::size_t support_size() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

private:
    struct already_sorted_t {};
    Sequence(std::vector<Entry> sorted, already_sorted_t) : entries_(std::move(sorted)) {}

    std::vector<Entry> entries_;

    friend Sequence add(const Sequence& u, const Sequence& v);
    friend Sequence scale(const Sequence& u, std::complex<double> c);
    friend Sequence regularized_ground_state(std::uint64_t level, std::uint64_t support_cap);
};

/// Componentwise u + v; entries cancelling to exactly zero are dropped.
Sequence add(const Sequence& u, const Sequence& v);

/// Componentwise c * u.
Sequence scale(const Sequence& u, std::complex<double> c);

/// The logarithmic cutoff: 1 for n < N, (2 log N - log n)/log N for
/// N <= n <= N^2, 0 for n > N^2. Requires N >= 2. The middle branch is
/// evaluated as log1p((N^2 - n)/n)/log N, which is exact at n = N^2 and
/// full-precision near it.
double cutoff(std::uint64_t level, std::uint64_t n);

/// The sequence u^N with u^N_n = cutoff(N, n) * sqrt(n); support is
/// exactly {1, ..., N^2 - 1}. Throws FeasibilityError when the support
/// would exceed `support_cap`.
Sequence regularized_ground_state(std::uint64_t level,
                                  std::uint64_t support_cap = kDefaultSupportCap);

/// Parses the `n,re,im` text format: one entry per line, strictly
/// increasing n >= 1, blank lines and `#` comments ignored. Throws
/// ValidationError with the offending line number.
Sequence parse_sequence(std::istream& in);
Sequence parse_sequence_file(const std::filesystem::path& path);

} // namespace hardylab
