#include "sphsolve/polysys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sphsolve {

int multi_index_degree(const MultiIndex& mi) {
  int s = 0;
  for (int k : mi) s += k;
  return s;
}

std::int64_t monomial_count(int d, int p) {
  if (d < 1) throw std::invalid_argument("monomial_count: d must be >= 1");
  if (p < 0) throw std::invalid_argument("monomial_count: p must be >= 0");
  // C(d+p-1, p) with overflow detection
  constexpr std::int64_t kLimit = std::int64_t{1} << 62;
  std::int64_t n = d + p - 1;
  std::int64_t k = std::min<std::int64_t>(p, n - p);
  __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kLimit)
      throw std::overflow_error("monomial_count: coefficient count overflows");
  }
  return static_cast<std::int64_t>(acc);
}

std::vector<MultiIndex> enumerate_monomials(int d, int p) {
  std::int64_t count = monomial_count(d, p);
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(count));
  MultiIndex mi(d, 0);
  mi[0] = p;
  while (true) {
    out.push_back(mi);
    // next composition of p into d parts, colex order
    int i = 0;
    while (i < d - 1 && mi[i] == 0) ++i;
    if (i == d - 1) break;
    int v = mi[i];
    mi[i] = 0;
    mi[0] = v - 1;
    mi[i + 1] += 1;
  }
  return out;
}

double multinomial(const MultiIndex& mi) {
  // product of binomials C(s_j, k_j) over the running partial sums
  double result = 1.0;
  int s = 0;
  for (int k : mi) {
    s += k;
    // C(s, k)
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (s - k + i) / i;
    result *= b;
  }
  return result;
}

HomogeneousPoly::HomogeneousPoly(int d, int degree) : d_(d), degree_(degree) {
  if (d < 1) throw std::invalid_argument("HomogeneousPoly: d must be >= 1");
  if (degree < 2) throw std::invalid_argument("HomogeneousPoly: degree must be >= 2");
  monomials_ = enumerate_monomials(d, degree);
  coeffs_.assign(monomials_.size(), 0.0);
  rebuild_tables();
}

HomogeneousPoly::HomogeneousPoly(int d, int degree,
                                 const std::map<MultiIndex, double>& terms)
    : HomogeneousPoly(d, degree) {
  std::map<MultiIndex, std::size_t> index;
  for (std::size_t i = 0; i < monomials_.size(); ++i) index[monomials_[i]] = i;
  for (const auto& [mi, c] : terms) {
    if (static_cast<int>(mi.size()) != d)
      throw std::invalid_argument("HomogeneousPoly: exponent tuple has wrong length");
    if (multi_index_degree(mi) != degree)
      throw std::invalid_argument("HomogeneousPoly: exponent tuple has wrong degree");
    coeffs_[index.at(mi)] = c;
  }
}

void HomogeneousPoly::rebuild_tables() {
  nz_offset_.clear();
  nz_var_.clear();
  nz_pow_.clear();
  nz_offset_.reserve(monomials_.size() + 1);
  nz_offset_.push_back(0);
  for (const auto& mi : monomials_) {
    for (int j = 0; j < d_; ++j) {
      if (mi[j] > 0) {
        nz_var_.push_back(static_cast<std::uint16_t>(j));
        nz_pow_.push_back(static_cast<std::uint16_t>(mi[j]));
      }
    }
    nz_offset_.push_back(static_cast<std::int32_t>(nz_var_.size()));
  }
}

void HomogeneousPoly::fill_power_table(const Vec& x, std::vector<double>& pw) const {
  // pw[(p+1)*j + k] = x_j^k
  pw.resize(static_cast<std::size_t>(d_) * (degree_ + 1));
  for (int j = 0; j < d_; ++j) {
    double* row = pw.data() + static_cast<std::size_t>(j) * (degree_ + 1);
    row[0] = 1.0;
    for (int k = 1; k <= degree_; ++k) row[k] = row[k - 1] * x[j];
  }
}

double HomogeneousPoly::evaluate(const Vec& x) const {
  if (static_cast<int>(x.size()) != d_)
    throw std::invalid_argument("evaluate: dimension mismatch");
  std::vector<double> pw;
  fill_power_table(x, pw);
  const int stride = degree_ + 1;
  double acc = 0.0;
  const std::size_t nterms = coeffs_.size();
  for (std::size_t t = 0; t < nterms; ++t) {
    double c = coeffs_[t];
    if (c == 0.0) continue;
    double m = 1.0;
    for (std::int32_t q = nz_offset_[t]; q < nz_offset_[t + 1]; ++q)
      m *= pw[static_cast<std::size_t>(nz_var_[q]) * stride + nz_pow_[q]];
    acc += c * m;
  }
  return acc;
}

Vec HomogeneousPoly::gradient(const Vec& x) const {
  if (static_cast<int>(x.size()) != d_)
    throw std::invalid_argument("gradient: dimension mismatch");
  std::vector<double> pw;
  fill_power_table(x, pw);
  const int stride = degree_ + 1;
  Vec g = Vec::Zero(d_);
  const std::size_t nterms = coeffs_.size();
  for (std::size_t t = 0; t < nterms; ++t) {
    double c = coeffs_[t];
    if (c == 0.0) continue;
    const std::int32_t lo = nz_offset_[t], hi = nz_offset_[t + 1];
    for (std::int32_t q = lo; q < hi; ++q) {
      // d/dx_{var_q}: k_q * x_q^{k_q-1} * product of other factors
      double m = c * nz_pow_[q] *
                 pw[static_cast<std::size_t>(nz_var_[q]) * stride + (nz_pow_[q] - 1)];
      for (std::int32_t r = lo; r < hi; ++r) {
        if (r == q) continue;
        m *= pw[static_cast<std::size_t>(nz_var_[r]) * stride + nz_pow_[r]];
      }
      g[nz_var_[q]] += m;
    }
  }
  return g;
}

Mat HomogeneousPoly::hessian(const Vec& x) const {
  if (static_cast<int>(x.size()) != d_)
    throw std::invalid_argument("hessian: dimension mismatch");
  std::vector<double> pw;
  fill_power_table(x, pw);
  const int stride = degree_ + 1;
  Mat h = Mat::Zero(d_, d_);
  const std::size_t nterms = coeffs_.size();
  for (std::size_t t = 0; t < nterms; ++t) {
    double c = coeffs_[t];
    if (c == 0.0) continue;
    const std::int32_t lo = nz_offset_[t], hi = nz_offset_[t + 1];
    for (std::int32_t q = lo; q < hi; ++q) {
      const int jq = nz_var_[q];
      const int kq = nz_pow_[q];
      // diagonal: k(k-1) x^{k-2}
      if (kq >= 2) {
        double m = c * kq * (kq - 1) * pw[static_cast<std::size_t>(jq) * stride + (kq - 2)];
        for (std::int32_t r = lo; r < hi; ++r) {
          if (r == q) continue;
          m *= pw[static_cast<std::size_t>(nz_var_[r]) * stride + nz_pow_[r]];
        }
        h(jq, jq) += m;
      }
      // off-diagonal pairs (q, r), r > q
      for (std::int32_t r = q + 1; r < hi; ++r) {
        const int jr = nz_var_[r];
        const int kr = nz_pow_[r];
        double m = c * kq * kr * pw[static_cast<std::size_t>(jq) * stride + (kq - 1)] *
                   pw[static_cast<std::size_t>(jr) * stride + (kr - 1)];
        for (std::int32_t s = lo; s < hi; ++s) {
          if (s == q || s == r) continue;
          m *= pw[static_cast<std::size_t>(nz_var_[s]) * stride + nz_pow_[s]];
        }
        h(jq, jr) += m;
        h(jr, jq) += m;
      }
    }
  }
  return h;
}

PolynomialSystem::PolynomialSystem(int d, std::vector<HomogeneousPoly> polys)
    : d_(d), polys_(std::move(polys)) {
  if (polys_.empty()) throw std::invalid_argument("PolynomialSystem: empty system");
  p_max_ = 0;
  total_coeffs_ = 0;
  for (const auto& p : polys_) {
    if (p.dim() != d_)
      throw std::invalid_argument("PolynomialSystem: inconsistent dimension");
    p_max_ = std::max(p_max_, p.degree());
    total_coeffs_ += p.num_terms();
  }
}

std::vector<int> PolynomialSystem::degrees() const {
  std::vector<int> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) out.push_back(p.degree());
  return out;
}

Vec PolynomialSystem::evaluate(const Vec& x) const {
  Vec f(num_polys());
  for (int i = 0; i < num_polys(); ++i) f[i] = polys_[i].evaluate(x);
  return f;
}

Mat PolynomialSystem::jacobian(const Vec& x) const {
  Mat j(num_polys(), d_);
  for (int i = 0; i < num_polys(); ++i) j.row(i) = polys_[i].gradient(x).transpose();
  return j;
}

Mat PolynomialSystem::poly_hessian(int i, const Vec& x) const {
  if (i < 0 || i >= num_polys())
    throw std::out_of_range("poly_hessian: index out of range");
  return polys_[i].hessian(x);
}

double PolynomialSystem::energy(const Vec& x) const {
  return 0.5 * evaluate(x).squaredNorm();
}

Vec PolynomialSystem::energy_gradient(const Vec& x) const {
  return jacobian(x).transpose() * evaluate(x);
}

Mat PolynomialSystem::energy_hessian(const Vec& x) const {
  Vec f = evaluate(x);
  Mat j = jacobian(x);
  Mat h = j.transpose() * j;
  for (int i = 0; i < num_polys(); ++i) h += f[i] * polys_[i].hessian(x);
  return h;
}

PolynomialSystem sample_system(int d, const std::vector<int>& degrees,
                               std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("sample_system: d must be >= 1");
  for (int p : degrees)
    if (p < 2) throw std::invalid_argument("sample_system: degrees must be >= 2");
  GaussianRng rng(seed);
  std::vector<HomogeneousPoly> polys;
  polys.reserve(degrees.size());
  for (int p : degrees) {
    HomogeneousPoly poly(d, p);
    auto& c = poly.coeffs();
    const auto& mons = poly.monomials();
    for (std::size_t t = 0; t < c.size(); ++t)
      c[t] = std::sqrt(multinomial(mons[t])) * rng.normal();
    polys.push_back(std::move(poly));
  }
  return PolynomialSystem(d, std::move(polys));
}

SpherePoint::SpherePoint(Vec c) : coords(std::move(c)) {
  if (coords.size() < 1) throw std::invalid_argument("SpherePoint: empty vector");
}

SpherePoint project_to_sphere(const Vec& x) {
  double n = x.norm();
  if (!(n > 1e-300)) throw std::invalid_argument("project_to_sphere: zero vector");
  return SpherePoint(x / n);
}

TangentBasis tangent_basis(const SpherePoint& x) {
  const int d = x.dim();
  if (d < 2) throw std::invalid_argument("tangent_basis: need d >= 2");
  double n = x.coords.norm();
  if (!(n > 1e-300)) throw std::invalid_argument("tangent_basis: zero vector");
  Vec u = x.coords / n;
  // Householder reflector Q = I - 2 w w^T / ||w||^2 with w = u - e_1 maps
  // e_1 to u; its remaining columns span the orthogonal complement.
  Vec w = u;
  w[0] -= 1.0;
  double wn2 = w.squaredNorm();
  Mat cols(d, d - 1);
  if (wn2 < 1e-28) {
    cols.setZero();
    for (int j = 0; j < d - 1; ++j) cols(j + 1, j) = 1.0;
    return {cols};
  }
  for (int j = 1; j < d; ++j) {
    Vec col = -2.0 * (w[j] / wn2) * w;
    col[j] += 1.0;
    cols.col(j - 1) = col;
  }
  return {cols};
}

Mat restricted_hessian(const PolynomialSystem& sys, const SpherePoint& x) {
  Mat u = tangent_basis(x).columns;
  Mat h = sys.energy_hessian(x.coords);
  Mat r = u.transpose() * h * u;
  return 0.5 * (r + r.transpose());
}

}  // namespace sphsolve
