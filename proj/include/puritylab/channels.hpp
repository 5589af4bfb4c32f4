#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "puritylab/linalg.hpp"
#include "puritylab/rng.hpp"

namespace puritylab {

/// Constructor-assigned structure tag. Never detected numerically; it gates
/// which structural checks apply to a map.
enum class MapStructure { generic, cq, qc, identity, trace };

/// Default cap on the Choi dimension of assembled tensor products.
inline constexpr Index kChoiDimCap = 4096;

// A completely positive map between matrix algebras. The Choi matrix
// X = sum_ij |i><j| (x) Phi(|i><j|) is the canonical representation; the
// Kraus form and the superoperator used by apply() are lazily derived,
// write-once caches shared across copies.
class CpMap {
 public:
  CpMap(Matrix choi, Index d_in, Index d_out,
        MapStructure structure = MapStructure::generic)
      : d_in_(d_in),
        d_out_(d_out),
        choi_(std::move(choi)),
        structure_(structure),
        cache_(std::make_shared<KrausCache>()) {
    if (d_in_ < 1 || d_out_ < 1)
      throw InvalidInput("CpMap: dimensions must be positive");
    if (choi_.rows() != d_in_ * d_out_ || choi_.cols() != d_in_ * d_out_)
      throw DimensionMismatch("CpMap: Choi matrix must be (d_in*d_out) square");
    require_finite(choi_, "CpMap");
    choi_ = hermitize(choi_);
  }

  Index input_dim() const { return d_in_; }
  Index output_dim() const { return d_out_; }
  const Matrix& choi() const { return choi_; }
  MapStructure structure() const { return structure_; }

  /// Kraus operators (d_out x d_in), from the Choi eigendecomposition with
  /// eigenvalue cutoff 1e-12 * ||X||_inf.
  const std::vector<Matrix>& kraus() const {
    std::call_once(cache_->once, [this] { cache_->ops = compute_kraus(); });
    return cache_->ops;
  }

  // Phi(A) by contracting A against the Choi blocks. The superoperator matrix
  // is a reshuffle of the Choi entries, cached on first use; it agrees with
  // the Kraus sum to roundoff and costs one matrix-vector product per call.
  Matrix apply(const Matrix& a) const {
    if (a.rows() != d_in_ || a.cols() != d_in_)
      throw DimensionMismatch("CpMap::apply: input must be d_in x d_in");
    const Matrix& s = superop();
    Eigen::VectorXcd va(d_in_ * d_in_);
    for (Index i = 0; i < d_in_; ++i)
      for (Index j = 0; j < d_in_; ++j) va(i * d_in_ + j) = a(i, j);
    const Eigen::VectorXcd vo = s * va;
    Matrix out(d_out_, d_out_);
    for (Index k = 0; k < d_out_; ++k)
      for (Index l = 0; l < d_out_; ++l) out(k, l) = vo(k * d_out_ + l);
    return out;
  }

  /// Adjoint action Phi*(B) = sum_k K* B K, as the conjugate-transposed
  /// superoperator applied to vec(B).
  Matrix apply_adjoint(const Matrix& b) const {
    if (b.rows() != d_out_ || b.cols() != d_out_)
      throw DimensionMismatch("CpMap::apply_adjoint: input must be d_out x d_out");
    const Matrix& s = superop();
    Eigen::VectorXcd vb(d_out_ * d_out_);
    for (Index k = 0; k < d_out_; ++k)
      for (Index l = 0; l < d_out_; ++l) vb(k * d_out_ + l) = b(k, l);
    const Eigen::VectorXcd vo = s.adjoint() * vb;
    Matrix out(d_in_, d_in_);
    for (Index i = 0; i < d_in_; ++i)
      for (Index j = 0; j < d_in_; ++j) out(i, j) = vo(i * d_in_ + j);
    return out;
  }

  /// Tr_out X = I_{d_in} within tol.
  bool is_trace_preserving(double tol = 1e-10) const {
    const Matrix tr = partial_trace_output();
    return (tr - Matrix::Identity(d_in_, d_in_)).cwiseAbs().maxCoeff() <= tol;
  }

  /// Phi(I_{d_in}) = I_{d_out} within tol (equivalently sum_k K K* = I).
  bool is_unital(double tol = 1e-10) const {
    Matrix s = Matrix::Zero(d_out_, d_out_);
    for (Index i = 0; i < d_in_; ++i)
      s += choi_.block(i * d_out_, i * d_out_, d_out_, d_out_);
    return (s - Matrix::Identity(d_out_, d_out_)).cwiseAbs().maxCoeff() <= tol;
  }

  Matrix partial_trace_output() const {
    Matrix tr = Matrix::Zero(d_in_, d_in_);
    for (Index i = 0; i < d_in_; ++i)
      for (Index j = 0; j < d_in_; ++j) {
        Complex acc = 0.0;
        for (Index k = 0; k < d_out_; ++k)
          acc += choi_(i * d_out_ + k, j * d_out_ + k);
        tr(i, j) = acc;
      }
    return tr;
  }

 private:
  struct KrausCache {
    std::once_flag once;
    std::vector<Matrix> ops;
    std::once_flag superop_once;
    Matrix superop;
  };

  /// Row-major superoperator: S[(k,l),(i,j)] = X[(i,k),(j,l)].
  const Matrix& superop() const {
    std::call_once(cache_->superop_once, [this] {
      Matrix s(d_out_ * d_out_, d_in_ * d_in_);
      for (Index i = 0; i < d_in_; ++i)
        for (Index j = 0; j < d_in_; ++j)
          for (Index k = 0; k < d_out_; ++k)
            for (Index l = 0; l < d_out_; ++l)
              s(k * d_out_ + l, i * d_in_ + j) =
                  choi_(i * d_out_ + k, j * d_out_ + l);
      cache_->superop = std::move(s);
    });
    return cache_->superop;
  }

  std::vector<Matrix> compute_kraus() const {
    const EigenSystem es = hermitian_eigen(choi_);
    const double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
    const double cutoff = 1e-12 * scale;
    std::vector<Matrix> ops;
    for (Index m = es.values.size() - 1; m >= 0; --m) {
      const double lambda = es.values[m];
      if (lambda <= cutoff) continue;
      const double w = std::sqrt(lambda);
      Matrix k(d_out_, d_in_);
      for (Index i = 0; i < d_in_; ++i)
        for (Index r = 0; r < d_out_; ++r)
          k(r, i) = w * es.vectors(i * d_out_ + r, m);
      ops.push_back(std::move(k));
    }
    if (ops.empty()) ops.push_back(Matrix::Zero(d_out_, d_in_));
    return ops;
  }

  Index d_in_;
  Index d_out_;
  Matrix choi_;
  MapStructure structure_;
  std::shared_ptr<KrausCache> cache_;
};

/// Wraps a PSD Choi matrix; throws NotPsd (not completely positive) otherwise.
inline CpMap from_choi(const Matrix& x, Index d_in, Index d_out,
                       MapStructure structure = MapStructure::generic) {
  if (x.rows() != d_in * d_out || x.cols() != d_in * d_out)
    throw DimensionMismatch("from_choi: Choi dimension mismatch");
  const Matrix h = hermitize(x);
  const double min_eig = min_eigenvalue(h);
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  if (min_eig < -kPsdRelTol * scale)
    throw NotPsd("from_choi: Choi matrix is not PSD, map is not completely "
                 "positive (min eigenvalue " + std::to_string(min_eig) + ")",
                 min_eig);
  return CpMap(h, d_in, d_out, structure);
}

/// Assembles the Choi matrix of sum_k K_k . K_k* from d_out x d_in Kraus ops.
inline CpMap from_kraus(const std::vector<Matrix>& ks) {
  if (ks.empty()) throw InvalidInput("from_kraus: empty Kraus list");
  const Index d_out = ks.front().rows();
  const Index d_in = ks.front().cols();
  Matrix x = Matrix::Zero(d_in * d_out, d_in * d_out);
  for (const Matrix& k : ks) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw DimensionMismatch("from_kraus: inconsistent Kraus shapes");
    require_finite(k, "from_kraus");
    Eigen::VectorXcd w(d_in * d_out);
    for (Index i = 0; i < d_in; ++i)
      for (Index r = 0; r < d_out; ++r) w(i * d_out + r) = k(r, i);
    x.noalias() += w * w.adjoint();
  }
  return CpMap(std::move(x), d_in, d_out);
}

inline CpMap identity_map(Index d) {
  Matrix x = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) x(i * d + i, j * d + j) = 1.0;
  return CpMap(std::move(x), d, d, MapStructure::identity);
}

/// T : M_d -> M_1, A -> Tr(A). Its Choi matrix is I_d.
inline CpMap trace_channel(Index d) {
  return CpMap(Matrix::Identity(d, d), d, 1, MapStructure::trace);
}

/// CQ map M -> sum_k <k|M|k> R_k; Choi is blockdiag(R_1, ..., R_d).
inline CpMap cq_map(const std::vector<Matrix>& states) {
  if (states.empty()) throw InvalidInput("cq_map: empty state list");
  const Index d = static_cast<Index>(states.size());
  const Index n = states.front().rows();
  Matrix x = Matrix::Zero(d * n, d * n);
  for (Index k = 0; k < d; ++k) {
    const Matrix& r = states[static_cast<std::size_t>(k)];
    if (r.rows() != n || r.cols() != n)
      throw DimensionMismatch("cq_map: output states must share one dimension");
    const Matrix h = hermitize(r);
    psd_eigenvalues(h);  // throws NotPsd on failure
    x.block(k * n, k * n, n, n) = h;
  }
  return CpMap(std::move(x), d, n, MapStructure::cq);
}

/// QC map A -> sum_k Tr(X_k A) |k><k|; Choi is sum_k X_k^T (x) |k><k|.
inline CpMap qc_map(const std::vector<Matrix>& povm) {
  if (povm.empty()) throw InvalidInput("qc_map: empty POVM list");
  const Index n = static_cast<Index>(povm.size());  // output dimension
  const Index d = povm.front().rows();
  Matrix x = Matrix::Zero(d * n, d * n);
  for (Index k = 0; k < n; ++k) {
    const Matrix& e = povm[static_cast<std::size_t>(k)];
    if (e.rows() != d || e.cols() != d)
      throw DimensionMismatch("qc_map: POVM elements must share one dimension");
    const Matrix h = hermitize(e);
    psd_eigenvalues(h);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) x(i * n + k, j * n + k) = h(j, i);
  }
  return CpMap(std::move(x), d, n, MapStructure::qc);
}

/// General entanglement-breaking map A -> sum_k Tr(X_k A) R_k.
inline CpMap eb_map(const std::vector<Matrix>& povm,
                    const std::vector<Matrix>& states) {
  if (povm.size() != states.size() || povm.empty())
    throw InvalidInput("eb_map: need matching nonempty POVM/state lists");
  const Index d = povm.front().rows();
  const Index n = states.front().rows();
  Matrix x = Matrix::Zero(d * n, d * n);
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const Matrix he = hermitize(povm[k]);
    const Matrix hr = hermitize(states[k]);
    if (he.rows() != d || hr.rows() != n)
      throw DimensionMismatch("eb_map: inconsistent member dimensions");
    psd_eigenvalues(he);
    psd_eigenvalues(hr);
    x.noalias() += kron(he.transpose(), hr);
  }
  return CpMap(std::move(x), d, n);
}

/// Entrywise (Schur) multiplication by a PSD matrix C. The (i,j) Choi block
/// is c_ij |i><j|.
inline CpMap hadamard_map(const Matrix& c) {
  const Matrix h = hermitize(c);
  const double min_eig = min_eigenvalue(h);
  const double scale = std::max(h.cwiseAbs().maxCoeff(), 1e-300);
  if (min_eig < -kPsdRelTol * scale)
    throw NotPsd("hadamard_map: multiplier matrix is not PSD", min_eig);
  const Index d = h.rows();
  Matrix x = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) x(i * d + i, j * d + j) = h(i, j);
  return CpMap(std::move(x), d, d);
}

/// Depolarizing channel A -> lambda A + (1-lambda)/d Tr(A) I_d. Completely
/// positive exactly for lambda in [-1/(d^2-1), 1]; [0, 1] is the semigroup
/// regime lambda = e^{-t}.
inline CpMap depolarizing(Index d, double lambda) {
  if (d < 1) throw InvalidInput("depolarizing: dimension must be positive");
  const double lo = -1.0 / (static_cast<double>(d) * d - 1.0);
  if (!(lambda >= lo && lambda <= 1.0)) {
    // Choi spectrum is {lambda d + (1-lambda)/d, (1-lambda)/d (x d^2-1)}
    const double min_eig =
        std::min(lambda * d + (1.0 - lambda) / d, (1.0 - lambda) / d);
    throw NotPsd("depolarizing: lambda outside the completely positive range [" +
                     std::to_string(lo) + ", 1]",
                 min_eig);
  }
  Matrix x = Matrix::Identity(d * d, d * d) * ((1.0 - lambda) / d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) x(i * d + i, j * d + j) += lambda;
  return CpMap(std::move(x), d, d);
}

inline bool depolarizing_in_semigroup_regime(double lambda) {
  return lambda >= 0.0 && lambda <= 1.0;
}

/// Adjoint map: Tr(A Phi(B)) = Tr(Phi*(A) B). In Choi coordinates this swaps
/// the tensor factors and conjugates; CQ and QC tags flip into each other.
inline CpMap adjoint_map(const CpMap& phi) {
  const Index d = phi.input_dim();
  const Index e = phi.output_dim();
  const Matrix& x = phi.choi();
  Matrix y(e * d, e * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < e; ++k)
        for (Index l = 0; l < e; ++l)
          y(k * d + i, l * d + j) = std::conj(x(i * e + k, j * e + l));
  MapStructure s = MapStructure::generic;
  switch (phi.structure()) {
    case MapStructure::cq: s = MapStructure::qc; break;
    case MapStructure::qc: s = MapStructure::cq; break;
    case MapStructure::identity: s = MapStructure::identity; break;
    default: s = MapStructure::generic; break;
  }
  return CpMap(std::move(y), e, d, s);
}

/// Entrywise complex conjugation of every Kraus operator; on the Choi matrix
/// this is entrywise conjugation. Involution, structure preserved.
inline CpMap conjugate_map(const CpMap& phi) {
  return CpMap(phi.choi().conjugate(), phi.input_dim(), phi.output_dim(),
               phi.structure());
}

// Tensor product of maps. The Choi matrix is kron(X_Phi, X_Omega) with rows
// and columns permuted back into the canonical (input, output) nesting; the
// permutation is assembled once per dimension signature.
inline CpMap tensor_map(const CpMap& phi, const CpMap& omega,
                        Index choi_dim_cap = kChoiDimCap) {
  const Index d = phi.input_dim(), dp = phi.output_dim();
  const Index n = omega.input_dim(), np = omega.output_dim();
  const Index dim = d * n * dp * np;
  if (dim > choi_dim_cap)
    throw ResourceLimit("tensor_map: Choi dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(choi_dim_cap),
                        dim);
  // perm[target index ((i,a),(k,b))] = kron index ((i,k),(a,b))
  std::vector<Index> perm(static_cast<std::size_t>(dim));
  for (Index i = 0; i < d; ++i)
    for (Index a = 0; a < n; ++a)
      for (Index k = 0; k < dp; ++k)
        for (Index b = 0; b < np; ++b) {
          const Index target = ((i * n + a) * dp + k) * np + b;
          const Index source = ((i * dp + k) * n + a) * np + b;
          perm[static_cast<std::size_t>(target)] = source;
        }
  const Matrix k = kron(phi.choi(), omega.choi());
  Matrix x(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c)
      x(r, c) = k(perm[static_cast<std::size_t>(r)],
                  perm[static_cast<std::size_t>(c)]);
  return CpMap(std::move(x), d * n, dp * np);
}

inline CpMap tensor_power(const CpMap& phi, int copies,
                          Index choi_dim_cap = kChoiDimCap) {
  if (copies < 1) throw InvalidInput("tensor_power: need copies >= 1");
  CpMap out = phi;
  for (int i = 1; i < copies; ++i) out = tensor_map(out, phi, choi_dim_cap);
  return out;
}

/// Haar-random isometry compressed to a channel (trace preserving): Kraus
/// K_e = (I (x) <e|) V with V a Haar isometry C^{d_in} -> C^{d_out * env}.
inline CpMap random_channel(Index d_in, Index d_out, Index env,
                            std::uint64_t seed) {
  if (d_out * env < d_in)
    throw InvalidInput("random_channel: need d_out * env >= d_in for an isometry");
  Rng rng(seed);
  Matrix g(d_out * env, d_in);
  for (Index j = 0; j < g.cols(); ++j)
    for (Index i = 0; i < g.rows(); ++i) g(i, j) = rng.cgaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d_out * env, d_in);
  const Matrix r = qr.matrixQR().topRows(d_in).triangularView<Eigen::Upper>();
  for (Index j = 0; j < d_in; ++j) {
    const Complex rj = r(j, j);
    const double a = std::abs(rj);
    if (a > 0) q.col(j) *= rj / a;  // phase fix for Haar distribution
  }
  std::vector<Matrix> ks;
  ks.reserve(static_cast<std::size_t>(env));
  for (Index e = 0; e < env; ++e) {
    Matrix k(d_out, d_in);
    for (Index i = 0; i < d_in; ++i)
      for (Index r2 = 0; r2 < d_out; ++r2) k(r2, i) = q(r2 * env + e, i);
    ks.push_back(std::move(k));
  }
  return from_kraus(ks);
}

/// CP (not trace preserving) map with i.i.d. Gaussian Kraus operators.
inline CpMap random_cp(Index d_in, Index d_out, Index rank,
                       std::uint64_t seed) {
  if (rank < 1) throw InvalidInput("random_cp: need rank >= 1");
  Rng rng(seed);
  std::vector<Matrix> ks;
  ks.reserve(static_cast<std::size_t>(rank));
  const double scale = 1.0 / std::sqrt(static_cast<double>(rank * d_in));
  for (Index m = 0; m < rank; ++m) {
    Matrix k(d_out, d_in);
    for (Index j = 0; j < d_in; ++j)
      for (Index i = 0; i < d_out; ++i) k(i, j) = scale * rng.cgaussian();
    ks.push_back(std::move(k));
  }
  return from_kraus(ks);
}

/// ||X_Phi||_2 = (sum |C_{ij,kl}|^2)^{1/2}.
inline double choi_frobenius(const CpMap& phi) { return phi.choi().norm(); }

/// Output states R_k of a CQ-constructed map, read off the Choi diagonal blocks.
inline std::vector<Matrix> cq_states(const CpMap& phi) {
  if (phi.structure() != MapStructure::cq)
    throw InvalidInput("cq_states: map was not constructed as CQ");
  std::vector<Matrix> out;
  for (Index k = 0; k < phi.input_dim(); ++k)
    out.push_back(block(phi.choi(), phi.input_dim(), phi.output_dim(), k, k));
  return out;
}

/// POVM elements X_k of a QC-constructed map.
inline std::vector<Matrix> qc_povm(const CpMap& phi) {
  if (phi.structure() != MapStructure::qc)
    throw InvalidInput("qc_povm: map was not constructed as QC");
  const Index d = phi.input_dim(), n = phi.output_dim();
  std::vector<Matrix> out;
  for (Index k = 0; k < n; ++k) {
    Matrix e(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) e(j, i) = phi.choi()(i * n + k, j * n + k);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace puritylab
