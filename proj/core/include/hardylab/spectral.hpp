#pragma once

#include <cstddef>
#include <vector>

#include "hardylab/sequence.hpp"
#include "hardylab/summation.hpp"
#include "hardylab/weights.hpp"

namespace hardylab {

/// Matrix restriction of D - W to sequences supported in {1..M}
/// (Dirichlet truncation: u vanishes outside): diagonal d_n = 2 - w_n,
/// all off-diagonal entries -1. Positive semidefiniteness of this
/// matrix is the inequality on that support, exactly.
struct TridiagonalForm {
    std::vector<double> diagonal; // d_n at [n-1]

    std::size_t size() const { return diagonal.size(); }

    /// u* T u for a sequence supported in {1..size()}; matches
    /// dirichlet_energy - weighted_form. Throws ValidationError if the
    /// support sticks out.
    double quadratic_form(const Sequence& u,
                          const SummationMode& mode = SummationMode::compensated()) const;
};

/// The bidiagonal square root of the remainder form on {1..M}: row n
/// (n = 2..M+1) carries -b_n at column n-1 and a_n at column n (the a
/// entry of the last row falls outside and is dropped). C^T C
/// reproduces the tridiagonal form of the improved weight exactly.
struct BidiagonalFactor {
    std::size_t size = 0;       // M
    std::vector<double> a;      // a_n at [n-2], n = 2..M
    std::vector<double> b;      // b_n at [n-2], n = 2..M+1

    /// |C u|^2 for a sequence supported in {1..size}; matches
    /// remainder_form.
    double quadratic_form(const Sequence& u,
                          const SummationMode& mode = SummationMode::compensated()) const;
};

TridiagonalForm build_form(std::size_t size, const WeightTable& table);

BidiagonalFactor build_remainder_factor(std::size_t size);

/// Max absolute entrywise difference between build_form(M, kpp) and
/// C^T C of the remainder factor. Throws InternalError if any entry
/// differs by more than 8 ulp of that entry.
double factorization_residual(std::size_t size);

/// Smallest eigenvalue of the tridiagonal form to absolute accuracy
/// `tol`, by Sturm-sequence counting and bisection over the Gershgorin
/// interval. Deterministic.
double smallest_eigenvalue(const TridiagonalForm& form, double tol = 1e-12);

} // namespace hardylab
