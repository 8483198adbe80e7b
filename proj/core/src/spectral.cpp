#include "hardylab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "hardylab/errors.hpp"
#include "hardylab/forms.hpp"
#include "hardylab/roots.hpp"

namespace hardylab {

namespace {

void require_support(const Sequence& u, std::size_t size, const char* what) {
    if (u.max_index() > size) {
        throw ValidationError(std::string(what) + ": sequence support reaches index " +
                              std::to_string(u.max_index()) + ", beyond matrix size " +
                              std::to_string(size));
    }
}

// Eigenvalues of T strictly below x, by the sign count of the Sturm
// pivot recurrence p_i = d_i - x - 1/p_{i-1} (all off-diagonals are -1,
// so e^2 = 1). Near-zero pivots are clamped away from 0.
int count_below(const std::vector<double>& diagonal, double x) {
    constexpr double pivmin = std::numeric_limits<double>::min() * 1e16;
    int count = 0;
    double pivot = 1.0;
    for (std::size_t i = 0; i < diagonal.size(); ++i) {
        pivot = i == 0 ? diagonal[0] - x : diagonal[i] - x - 1.0 / pivot;
        if (std::abs(pivot) < pivmin) pivot = -pivmin;
        if (pivot < 0.0) ++count;
    }
    return count;
}

} // namespace

double TridiagonalForm::quadratic_form(const Sequence& u, const SummationMode& mode) const {
    require_support(u, size(), "tridiagonal form");
    // sum d_n |u_n|^2 - 2 Re(conj(u_n) u_{n-1}) over adjacent pairs,
    // ascending in n.
    Accumulator acc(mode);
    const auto entries = u.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        acc.add(diagonal[e.index - 1] * std::norm(e.value));
        if (i > 0 && entries[i - 1].index + 1 == e.index) {
            acc.add(-2.0 * (std::conj(e.value) * entries[i - 1].value).real());
        }
    }
    return acc.value();
}

double BidiagonalFactor::quadratic_form(const Sequence& u, const SummationMode& mode) const {
    require_support(u, size, "bidiagonal factor");
    // Row n of C contributes |a_n u_n - b_n u_{n-1}|^2; rows are visited
    // ascending. Row size+1 only has its -b entry inside the matrix.
    Accumulator acc(mode);
    const auto entries = u.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.index >= 2) {
            std::complex<double> prev{0.0, 0.0};
            if (i > 0 && entries[i - 1].index + 1 == e.index) prev = entries[i - 1].value;
            acc.add(std::norm(a[e.index - 2] * e.value - b[e.index - 2] * prev));
        }
        const bool next_adjacent = i + 1 < entries.size() && entries[i + 1].index == e.index + 1;
        if (!next_adjacent) acc.add(std::norm(b[e.index - 1] * e.value));
    }
    return acc.value();
}

TridiagonalForm build_form(std::size_t size, const WeightTable& table) {
    if (size == 0) throw ValidationError("matrix size must be >= 1");
    TridiagonalForm form;
    form.diagonal.resize(size);
    for (std::size_t n = 1; n <= size; ++n) {
        form.diagonal[n - 1] = 2.0 - table.value(n);
    }
    return form;
}

BidiagonalFactor build_remainder_factor(std::size_t size) {
    if (size == 0) throw ValidationError("matrix size must be >= 1");
    BidiagonalFactor factor;
    factor.size = size;
    factor.a.resize(size - 1); // a_n, n = 2..M (the a of row M+1 falls outside)
    factor.b.resize(size);     // b_n, n = 2..M+1
    for (std::size_t n = 2; n <= size; ++n) {
        factor.a[n - 2] = fourth_root_ratio(n - 1, n);
    }
    for (std::size_t n = 2; n <= size + 1; ++n) {
        factor.b[n - 2] = fourth_root_ratio(n, n - 1);
    }
    return factor;
}

double factorization_residual(std::size_t size) {
    const TridiagonalForm form = build_form(size, WeightTable{WeightKind::kpp()});
    const BidiagonalFactor factor = build_remainder_factor(size);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double worst = 0.0;
    for (std::size_t j = 1; j <= size; ++j) {
        // (C^T C)_{jj} = a_j^2 + b_{j+1}^2 (the a term is absent at j=1).
        double diag = factor.b[j - 1] * factor.b[j - 1];
        if (j >= 2) diag += factor.a[j - 2] * factor.a[j - 2];
        const double entry = form.diagonal[j - 1];
        const double diff = std::abs(entry - diag);
        if (diff > 8.0 * eps * std::abs(entry)) {
            throw InternalError("factorization diagonal residual " + std::to_string(diff) +
                                " above 8 ulp at row " + std::to_string(j));
        }
        worst = std::max(worst, diff);
        if (j < size) {
            // (C^T C)_{j,j+1} = -b_{j+1} a_{j+1}, expected -1.
            const double off = -factor.b[j - 1] * factor.a[j - 1];
            const double off_diff = std::abs(off - (-1.0));
            if (off_diff > 8.0 * eps) {
                throw InternalError("factorization off-diagonal residual " +
                                    std::to_string(off_diff) + " above 8 ulp at row " +
                                    std::to_string(j));
            }
            worst = std::max(worst, off_diff);
        }
    }
    return worst;
}

double smallest_eigenvalue(const TridiagonalForm& form, double tol) {
    if (form.size() == 0) throw ValidationError("matrix size must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("eigenvalue tolerance must be > 0");
    if (form.size() == 1) return form.diagonal[0];

    const auto [lo_it, hi_it] = std::minmax_element(form.diagonal.begin(), form.diagonal.end());
    double lo = *lo_it - 2.0 - tol;
    double hi = *hi_it + 2.0 + tol;
    if (count_below(form.diagonal, lo) != 0 ||
        count_below(form.diagonal, hi) != static_cast<int>(form.size())) {
        throw InternalError("Sturm bisection failed to bracket the spectrum "
                            "within the Gershgorin interval");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval at rounding limit
        if (count_below(form.diagonal, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace hardylab
