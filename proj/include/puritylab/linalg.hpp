#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "puritylab/errors.hpp"

namespace puritylab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sentinel for the exponent value infinity (q' of q = 1, sup-norms).
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Canonical tensor ordering used by every module: the FIRST factor owns the
// outer (slow) index. kron(A, B)(i*rows(B)+k, j*cols(B)+l) = A(i,j)*B(k,l),
// and a (d*n)x(d*n) matrix decomposes into d x d blocks of size n x n.
inline constexpr int kFirstFactorOuter = 1;

/// Relative eigenvalue tolerance for treating a Hermitian matrix as PSD.
inline constexpr double kPsdRelTol = 1e-10;

inline bool all_finite(const Matrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) {
      const Complex v = a(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  return true;
}

inline void require_finite(const Matrix& a, const char* where) {
  if (!all_finite(a))
    throw InvalidInput(std::string(where) + ": non-finite matrix entry");
}

/// Exponent pair (q, p) for q -> p operator norms, with Holder conjugates.
struct NormParams {
  double q = 1.0;
  double p = 1.0;
  double q_conj = kInf;
  double p_conj = kInf;

  NormParams() = default;
  NormParams(double q_in, double p_in) : q(q_in), p(p_in) {
    if (!(q >= 1.0) || !(p >= 1.0))
      throw InvalidInput("NormParams: exponents must satisfy q, p >= 1");
    q_conj = conjugate_exponent(q);
    p_conj = conjugate_exponent(p);
  }

  /// 1/x + 1/x' = 1, with 1 <-> infinity at the endpoints.
  static double conjugate_exponent(double x) {
    if (x == 1.0) return kInf;
    if (std::isinf(x)) return 1.0;
    return x / (x - 1.0);
  }

  /// The (p', q') pair dual to (q, p): ||L||_{q->p} = ||L*||_{p'->q'}.
  NormParams dual() const { return NormParams(p_conj, q_conj); }
};

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

inline EigenSystem hermitian_eigen(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitian_eigen: matrix not square");
  require_finite(m, "hermitian_eigen");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian_eigen: eigensolver did not converge (dim " +
                         std::to_string(m.rows()) + ")");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline Matrix hermitize(const Matrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitize: matrix not square");
  return 0.5 * (m + m.adjoint());
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

inline double min_eigenvalue(const Matrix& herm) {
  return hermitian_eigen(herm).values.minCoeff();
}

// PSD eigenvalues with clipping: values >= -kPsdRelTol * lambda_max(|.|) are
// clipped to 0, anything lower is an error.
inline RealVector psd_eigenvalues(const Matrix& herm,
                                  double rel_tol = kPsdRelTol) {
  RealVector vals = hermitian_eigen(herm).values;
  const double scale = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  const double floor = -rel_tol * std::max(scale, 1e-300);
  for (Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < floor)
      throw NotPsd("matrix is not positive semidefinite (min eigenvalue " +
                       std::to_string(vals[i]) + ")",
                   vals[i]);
    if (vals[i] < 0.0) vals[i] = 0.0;
  }
  return vals;
}

inline bool is_psd(const Matrix& herm, double rel_tol = kPsdRelTol) {
  RealVector vals = hermitian_eigen(herm).values;
  const double scale = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  return vals.minCoeff() >= -rel_tol * std::max(scale, 1e-300);
}

// Singular values via the single spectral primitive: sqrt of the eigenvalues
// of A*A (ascending). Gram eigenvalues at the eigensolver noise floor are
// zeroed; otherwise their square roots surface as ~sqrt(eps) phantom singular
// values and pollute trace-like norms of rank-deficient matrices.
inline RealVector singular_values(const Matrix& a) {
  require_finite(a, "singular_values");
  const Matrix gram = a.adjoint() * a;
  RealVector vals = hermitian_eigen(hermitize(gram)).values;
  const double top = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  const double noise_floor = 32.0 * std::numeric_limits<double>::epsilon() * top;
  for (Index i = 0; i < vals.size(); ++i)
    vals[i] = vals[i] > noise_floor ? std::sqrt(vals[i]) : 0.0;
  return vals;
}

namespace detail {

inline double lp_of_values(const RealVector& sv, double p) {
  if (std::isinf(p)) return sv.size() ? sv.cwiseAbs().maxCoeff() : 0.0;
  if (p == 1.0) return sv.cwiseAbs().sum();
  if (p == 2.0) return std::sqrt(sv.squaredNorm());
  double acc = 0.0;
  for (Index i = 0; i < sv.size(); ++i) acc += std::pow(std::abs(sv[i]), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace detail

/// Schatten norm ||A||_p = (sum sigma_i^p)^{1/p}; max sigma for p = inf.
inline double schatten_norm(const Matrix& a, double p) {
  if (!(p >= 1.0))
    throw InvalidInput("schatten_norm: exponent must satisfy p >= 1");
  if (p == 2.0) {  // Frobenius short-circuit, entrywise
    require_finite(a, "schatten_norm");
    return a.norm();
  }
  return detail::lp_of_values(singular_values(a), p);
}

/// Schatten norm of a Hermitian matrix through its eigenvalues.
inline double hermitian_schatten_norm(const Matrix& herm, double p) {
  if (!(p >= 1.0))
    throw InvalidInput("hermitian_schatten_norm: exponent must satisfy p >= 1");
  if (p == 2.0) {
    require_finite(herm, "hermitian_schatten_norm");
    return herm.norm();
  }
  return detail::lp_of_values(hermitian_eigen(herm).values, p);
}

/// Anti-norm (Tr M^t)^(1/t) for PSD M and t in (0, 1]. Superadditive on
/// sums of PSD matrices, unlike the norms.
inline double schatten_antinorm(const Matrix& psd, double t) {
  if (!(t > 0.0) || t > 1.0)
    throw InvalidInput("schatten_antinorm: exponent must lie in (0, 1]");
  const RealVector vals = psd_eigenvalues(psd);
  double acc = 0.0;
  for (Index i = 0; i < vals.size(); ++i)
    if (vals[i] > 0.0) acc += std::pow(vals[i], t);
  return std::pow(acc, 1.0 / t);
}

// U diag(lambda^s) U*. Zero eigenvalues map to zero for s > 0; s < 0 requires
// strict positive definiteness.
inline Matrix herm_power(const Matrix& psd, double s) {
  const EigenSystem es = hermitian_eigen(psd);
  RealVector vals = es.values;
  const double scale = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  const double floor = -kPsdRelTol * std::max(scale, 1e-300);
  RealVector powered(vals.size());
  for (Index i = 0; i < vals.size(); ++i) {
    double v = vals[i];
    if (v < floor)
      throw NotPsd("herm_power: matrix is not positive semidefinite", v);
    if (v < 0.0) v = 0.0;
    if (v == 0.0) {
      if (s < 0.0)
        throw NumericalError("herm_power: negative power of singular matrix");
      powered[i] = (s == 0.0) ? 1.0 : 0.0;
    } else {
      powered[i] = std::pow(v, s);
    }
  }
  return es.vectors * powered.asDiagonal() * es.vectors.adjoint();
}

// Fractional-power variant for optimizer interiors: eigenvalues below
// rel_cut * lambda_max are dropped instead of raising, so p in (1,2) chains
// never see 0^(t) noise from roundoff.
inline Matrix herm_power_clipped(const Matrix& psd, double s,
                                 double rel_cut = 1e-14) {
  const EigenSystem es = hermitian_eigen(psd);
  RealVector vals = es.values;
  const double scale = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  RealVector powered(vals.size());
  for (Index i = 0; i < vals.size(); ++i) {
    const double v = vals[i];
    powered[i] = (v > rel_cut * scale && v > 0.0) ? std::pow(v, s) : 0.0;
  }
  return es.vectors * powered.asDiagonal() * es.vectors.adjoint();
}

/// Kronecker product under the canonical ordering (first factor outer).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Extracts the n x n block (i, j) of a (d*n) x (d*n) matrix.
inline Matrix block(const Matrix& a, Index d, Index n, Index i, Index j) {
  if (a.rows() != d * n || a.cols() != d * n)
    throw DimensionMismatch("block: matrix is not (d*n) x (d*n)");
  if (i < 0 || j < 0 || i >= d || j >= d)
    throw InvalidInput("block: block index out of range");
  return a.block(i * n, j * n, n, n);
}

/// Zeroes all off-diagonal blocks; Schatten-norm nonincreasing on PSD input.
inline Matrix block_diag_pinch(const Matrix& a, Index d, Index n) {
  if (a.rows() != d * n || a.cols() != d * n)
    throw DimensionMismatch("block_diag_pinch: matrix is not (d*n) x (d*n)");
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (Index i = 0; i < d; ++i)
    out.block(i * n, i * n, n, n) = a.block(i * n, i * n, n, n);
  return out;
}

/// Thin SVD restricted to singular values above rel_cut * sigma_max,
/// assembled from the Hermitian primitive: A = U diag(sigma) V*.
struct ThinSvd {
  Matrix u;
  RealVector sigma;  // descending, positive part only
  Matrix v;
};

inline ThinSvd thin_svd(const Matrix& a, double rel_cut = 1e-13) {
  const EigenSystem es = hermitian_eigen(hermitize(a.adjoint() * a));
  const Index n = es.values.size();
  std::vector<Index> keep;
  double smax = 0.0;
  for (Index i = 0; i < n; ++i)
    smax = std::max(smax, std::sqrt(std::max(es.values[i], 0.0)));
  for (Index i = n - 1; i >= 0; --i) {
    const double s = std::sqrt(std::max(es.values[i], 0.0));
    if (s > rel_cut * smax && s > 0.0) keep.push_back(i);
  }
  ThinSvd out;
  out.sigma.resize(static_cast<Index>(keep.size()));
  out.u.resize(a.rows(), static_cast<Index>(keep.size()));
  out.v.resize(a.cols(), static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const double s = std::sqrt(es.values[keep[k]]);
    out.sigma[static_cast<Index>(k)] = s;
    out.v.col(static_cast<Index>(k)) = es.vectors.col(keep[k]);
    out.u.col(static_cast<Index>(k)) = a * es.vectors.col(keep[k]) / s;
  }
  return out;
}

// Holder-dual witness: B with ||B||_{p'} = 1 and Re Tr(B* A) = ||A||_p,
// built from the SVD as U diag((sigma/||A||_p)^(p-1)) V* (top pair at p=inf).
// U is re-orthonormalized and the coefficient vector normalized in the dual
// norm, so the witness p'-norm is exact rather than kappa^2-limited.
inline Matrix dual_witness(const Matrix& a, double p) {
  const ThinSvd svd = thin_svd(a);
  if (svd.sigma.size() == 0)
    throw InvalidInput("dual_witness: zero matrix has no dual witness");
  Eigen::HouseholderQR<Matrix> qr(svd.u);
  Matrix q = qr.householderQ() * Matrix::Identity(svd.u.rows(), svd.u.cols());
  const Matrix r =
      qr.matrixQR().topRows(svd.u.cols()).triangularView<Eigen::Upper>();
  for (Index j = 0; j < q.cols(); ++j) {
    const Complex rj = r(j, j);
    const double aj = std::abs(rj);
    if (aj > 0) q.col(j) *= rj / aj;
  }
  if (std::isinf(p)) return q.col(0) * svd.v.col(0).adjoint();
  const double norm = detail::lp_of_values(svd.sigma, p);
  RealVector coeff(svd.sigma.size());
  for (Index i = 0; i < svd.sigma.size(); ++i)
    coeff[i] = std::pow(svd.sigma[i] / norm, p - 1.0);
  const double pc = NormParams::conjugate_exponent(p);
  const double cnorm = detail::lp_of_values(coeff, pc);
  if (cnorm > 0.0) coeff /= cnorm;
  return q * coeff.asDiagonal() * svd.v.adjoint();
}

}  // namespace puritylab
