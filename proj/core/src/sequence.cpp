#include "hardylab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {
// level^2 must stay representable in uint64.
constexpr std::uint64_t kMaxCutoffLevel = 0xFFFFFFFFULL;
// indices convert to double exactly up to 2^53
constexpr std::uint64_t kMaxIndex = 1ULL << 53;
} // namespace

Sequence Sequence::from_pairs(std::vector<Entry> pairs) {
    for (const auto& e : pairs) {
        if (e.index == 0) {
            throw ValidationError("u_0 must be 0");
        }
        if (e.index > kMaxIndex) {
            throw ValidationError("sequence index " + std::to_string(e.index) +
                                  " is beyond 2^53 and cannot be represented exactly");
        }
        if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
            throw ValidationError("sequence value at index " + std::to_string(e.index) +
                                  " is not finite");
        }
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].index == pairs[i - 1].index) {
            throw ValidationError("duplicate index " + std::to_string(pairs[i].index));
        }
    }
    std::erase_if(pairs, [](const Entry& e) { return e.value == std::complex<double>(0.0); });
    return Sequence(std::move(pairs), already_sorted_t{});
}

std::complex<double> Sequence::at(std::uint64_t n) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                               [](const Entry& e, std::uint64_t idx) { return e.index < idx; });
    if (it != entries_.end() && it->index == n) return it->value;
    return {0.0, 0.0};
}

Sequence add(const Sequence& u, const Sequence& v) {
    std::vector<Sequence::Entry> out;
    out.reserve(u.entries_.size() + v.entries_.size());
    auto a = u.entries_.begin(), ae = u.entries_.end();
    auto b = v.entries_.begin(), be = v.entries_.end();
    while (a != ae || b != be) {
        Sequence::Entry e;
        if (b == be || (a != ae && a->index < b->index)) {
            e = *a++;
        } else if (a == ae || b->index < a->index) {
            e = *b++;
        } else {
            e = {a->index, a->value + b->value};
            ++a;
            ++b;
        }
        if (e.value != std::complex<double>(0.0)) out.push_back(e);
    }
    return Sequence(std::move(out), Sequence::already_sorted_t{});
}

Sequence scale(const Sequence& u, std::complex<double> c) {
    std::vector<Sequence::Entry> out;
    out.reserve(u.entries_.size());
    for (const auto& e : u.entries_) {
        const auto v = c * e.value;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ValidationError("scale produced a non-finite value");
        }
        if (v != std::complex<double>(0.0)) out.push_back({e.index, v});
    }
    return Sequence(std::move(out), Sequence::already_sorted_t{});
}

double cutoff(std::uint64_t level, std::uint64_t n) {
    if (level < 2) throw ValidationError("cutoff level N must be >= 2");
    if (level > kMaxCutoffLevel) throw ValidationError("cutoff level too large");
    if (n == 0) throw ValidationError("cutoff index must be >= 1");
    if (n < level) return 1.0;
    const std::uint64_t sq = level * level;
    if (n > sq) return 0.0;
    const double ratio = static_cast<double>(sq - n) / static_cast<double>(n);
    return std::log1p(ratio) / std::log(static_cast<double>(level));
}

Sequence regularized_ground_state(std::uint64_t level, std::uint64_t support_cap) {
    if (level < 2) throw ValidationError("cutoff level N must be >= 2");
    if (level > kMaxCutoffLevel) {
        throw FeasibilityError("cutoff level " + std::to_string(level) +
                               " is beyond any materializable support");
    }
    const std::uint64_t sq = level * level;
    if (sq - 1 > support_cap) {
        throw FeasibilityError(
            "regularized ground state at level " + std::to_string(level) + " needs " +
                std::to_string(sq - 1) + " entries, above the support cap of " +
                std::to_string(support_cap),
            std::to_string(sq - 1));
    }
    std::vector<Sequence::Entry> out;
    out.reserve(static_cast<std::size_t>(sq - 1));
    for (std::uint64_t n = 1; n < sq; ++n) {
        const double root = std::sqrt(static_cast<double>(n));
        const double value = n < level ? root : cutoff(level, n) * root;
        out.push_back({n, {value, 0.0}});
    }
    return Sequence(std::move(out), Sequence::already_sorted_t{});
}

Sequence parse_sequence(std::istream& in) {
    std::vector<Sequence::Entry> pairs;
    std::string line;
    std::uint64_t line_no = 0;
    std::uint64_t previous_index = 0;
    bool have_previous = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        const auto fail = [&](const std::string& why) -> ValidationError {
            return ValidationError("line " + std::to_string(line_no) + ": " + why);
        };

        // Stream extraction would wrap a negative index into uint64.
        if (line[first] == '-') throw fail("index must be >= 1");

        std::uint64_t n = 0;
        double re = 0.0, im = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream fields(line);
        if (!(fields >> n >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') {
            throw fail("expected `n,re,im`");
        }
        std::string rest;
        if (fields >> rest) throw fail("trailing characters after `n,re,im`");
        if (n == 0) throw fail("u_0 must be 0");
        if (have_previous && n <= previous_index) throw fail("indices must be strictly increasing");
        if (!std::isfinite(re) || !std::isfinite(im)) throw fail("value must be finite");
        previous_index = n;
        have_previous = true;
        pairs.push_back({n, {re, im}});
    }
    return Sequence::from_pairs(std::move(pairs));
}

Sequence parse_sequence_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open sequence file: " + path.string());
    return parse_sequence(in);
}

} // namespace hardylab
