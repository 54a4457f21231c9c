#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphsolve/rng.hpp"

namespace sphsolve {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Exponent tuple (k_1,...,k_d) of a monomial x_1^{k_1}...x_d^{k_d}.
using MultiIndex = std::vector<int>;

int multi_index_degree(const MultiIndex& mi);

/// C(d+p-1, p), the number of degree-p monomials in d variables.
/// Throws std::overflow_error if the count exceeds 2^62.
std::int64_t monomial_count(int d, int p);

/// All degree-p exponent tuples in d variables, canonical (colex) order.
std::vector<MultiIndex> enumerate_monomials(int d, int p);

/// Multinomial coefficient p! / (k_1! ... k_d!).
double multinomial(const MultiIndex& mi);

/// One homogeneous polynomial, stored densely over the canonical monomial
/// enumeration. Coefficients are the *scaled* values, i.e. already carry the
/// square-root multinomial weight, so evaluation is a plain monomial sum.
class HomogeneousPoly {
 public:
  HomogeneousPoly(int d, int degree);

  /// Sparse constructor for hand-built systems: missing monomials are zero.
  HomogeneousPoly(int d, int degree, const std::map<MultiIndex, double>& terms);

  int dim() const { return d_; }
  int degree() const { return degree_; }
  std::int64_t num_terms() const { return static_cast<std::int64_t>(coeffs_.size()); }

  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::vector<double>& coeffs() { return coeffs_; }

  double evaluate(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;

  /// Rebuild the flattened nonzero-exponent tables after editing coeffs().
  void rebuild_tables();

 private:
  int d_;
  int degree_;
  std::vector<MultiIndex> monomials_;
  std::vector<double> coeffs_;
  // Flattened (variable, exponent) pairs per monomial, for fast evaluation.
  std::vector<std::int32_t> nz_offset_;
  std::vector<std::uint16_t> nz_var_;
  std::vector<std::uint16_t> nz_pow_;

  void fill_power_table(const Vec& x, std::vector<double>& pw) const;
};

/// A system F = (F_1,...,F_n) of homogeneous polynomials in d variables.
class PolynomialSystem {
 public:
  PolynomialSystem(int d, std::vector<HomogeneousPoly> polys);

  int dim() const { return d_; }
  int num_polys() const { return static_cast<int>(polys_.size()); }
  const std::vector<HomogeneousPoly>& polys() const { return polys_; }
  const HomogeneousPoly& poly(int i) const { return polys_.at(i); }

  std::vector<int> degrees() const;
  int max_degree() const { return p_max_; }
  /// Total coefficient count N = sum_i C(d+p_i-1, p_i).
  std::int64_t total_coeffs() const { return total_coeffs_; }

  /// F(x) as an n-vector.
  Vec evaluate(const Vec& x) const;
  /// Jacobian DF(x), n x d.
  Mat jacobian(const Vec& x) const;
  /// Hessian of F_i at x, d x d symmetric.
  Mat poly_hessian(int i, const Vec& x) const;

  /// H(x) = 0.5 ||F(x)||^2 and its derivatives.
  double energy(const Vec& x) const;
  Vec energy_gradient(const Vec& x) const;
  Mat energy_hessian(const Vec& x) const;

 private:
  int d_;
  int p_max_;
  std::int64_t total_coeffs_;
  std::vector<HomogeneousPoly> polys_;
};

/// Gaussian sample with square-root multinomial scaling, deterministic in
/// the seed. Degrees below 2 are rejected.
PolynomialSystem sample_system(int d, const std::vector<int>& degrees,
                               std::uint64_t seed);

struct SpherePoint {
  Vec coords;
  explicit SpherePoint(Vec c);
  int dim() const { return static_cast<int>(coords.size()); }
};

/// Projects a nonzero vector to the sphere. Throws on (near-)zero input.
SpherePoint project_to_sphere(const Vec& x);

struct TangentBasis {
  Mat columns;  // d x (d-1), orthonormal, orthogonal to the base point
};

/// Deterministic orthonormal basis of the orthogonal complement of x,
/// built from the Householder reflector that maps e_1 to x.
TangentBasis tangent_basis(const SpherePoint& x);

/// U_x^T grad^2 H(x) U_x, (d-1) x (d-1) symmetric.
Mat restricted_hessian(const PolynomialSystem& sys, const SpherePoint& x);

}  // namespace sphsolve
