#pragma once

#include "sphsolve/polysys.hpp"

namespace sphsolve {

struct SvdResult {
  Mat U;      // m x r, orthonormal columns (zero columns for zero singular values)
  Vec sigma;  // r, descending, r = min(m, l)
  Mat V;      // l x r, orthonormal columns
};

/// Thin singular decomposition A = U diag(sigma) V^T by one-sided Jacobi
/// iteration. Deterministic; intended for the small dense matrices that show
/// up in tangent-space solves (a few hundred rows/columns at most).
SvdResult jacobi_svd(const Mat& A);

/// Minimum-norm least-squares solve A y = b, discarding singular values
/// below rank_tol * sigma_max.
Vec pinv_solve(const SvdResult& svd, const Vec& b, double rank_tol);

}  // namespace sphsolve
