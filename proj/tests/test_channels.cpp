#include <gtest/gtest.h>

#include <cmath>

#include "puritylab/channels.hpp"
#include "test_util.hpp"

using namespace puritylab;
using testutil::cgauss;
using testutil::max_abs_diff;
using testutil::random_psd;

namespace {

/// Oracle: apply a map by contracting the input against the Choi blocks,
/// Phi(A) = sum_ij A_ij * X_(i,j). Independent of the Kraus route.
Matrix apply_via_choi(const CpMap& phi, const Matrix& a) {
  const Index d = phi.input_dim(), e = phi.output_dim();
  Matrix out = Matrix::Zero(e, e);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      out += a(i, j) * block(phi.choi(), d, e, i, j);
  return out;
}

Matrix maximally_entangled_choi(Index d) {
  Matrix x = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) x(i * d + i, j * d + j) = 1.0;
  return x;
}

}  // namespace

TEST(FromChoi, IdentityChannelActsAsIdentity) {
  const CpMap id = from_choi(maximally_entangled_choi(2), 2, 2);
  Rng rng(1);
  const Matrix a = cgauss(rng, 2, 2);
  EXPECT_NEAR(max_abs_diff(id.apply(a), a), 0.0, 1e-10);
}

TEST(FromChoi, BasisBlocksReproduceTheDefinition) {
  Rng rng(2);
  const CpMap phi = random_cp(3, 2, 6, 42);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      Matrix eij = Matrix::Zero(3, 3);
      eij(i, j) = 1.0;
      EXPECT_NEAR(max_abs_diff(phi.apply(eij), block(phi.choi(), 3, 2, i, j)),
                  0.0, 1e-10);
    }
}

TEST(FromChoi, IdentityChoiGivesTraceTimesIdentity) {
  // X = I_{d^2}: each (i,j) block is delta_ij I_d, so A -> Tr(A) I_d
  const CpMap phi = from_choi(Matrix::Identity(4, 4), 2, 2);
  Rng rng(99);
  const Matrix a = cgauss(rng, 2, 2);
  EXPECT_NEAR(max_abs_diff(phi.apply(a), a.trace() * Matrix::Identity(2, 2)),
              0.0, 1e-10);
}

TEST(FromChoi, RejectsNonPsdWithDiagnostics) {
  Matrix x = Matrix::Identity(4, 4);
  x(3, 3) = -0.25;
  try {
    from_choi(x, 2, 2);
    FAIL() << "expected NotPsd";
  } catch (const NotPsd& e) {
    EXPECT_NEAR(e.min_eigenvalue, -0.25, 1e-12);
  }
}

TEST(Apply, TraceChannelAndLinearity) {
  const CpMap t = trace_channel(3);
  EXPECT_NEAR(max_abs_diff(t.choi(), Matrix::Identity(3, 3)), 0.0, 0.0);
  Rng rng(3);
  const Matrix a = cgauss(rng, 3, 3);
  const Matrix out = t.apply(a);
  ASSERT_EQ(out.rows(), 1);
  EXPECT_NEAR(std::abs(out(0, 0) - a.trace()), 0.0, 1e-10);

  const CpMap phi = random_channel(3, 3, 2, 7);
  const Matrix b = cgauss(rng, 3, 3);
  const Complex alpha(0.3, -0.7), beta(-1.1, 0.2);
  EXPECT_NEAR(max_abs_diff(phi.apply(alpha * a + beta * b),
                           alpha * phi.apply(a) + beta * phi.apply(b)),
              0.0, 1e-10);
}

TEST(Apply, KrausSumMatchesChoiContraction) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const CpMap phi = random_cp(3, 2, 4, 100 + trial);
    const Matrix a = cgauss(rng, 3, 3);
    Matrix via_kraus = Matrix::Zero(2, 2);
    for (const Matrix& k : phi.kraus()) via_kraus += k * a * k.adjoint();
    EXPECT_NEAR(max_abs_diff(phi.apply(a), via_kraus), 0.0, 1e-10);
    EXPECT_NEAR(max_abs_diff(phi.apply(a), apply_via_choi(phi, a)), 0.0, 1e-10);
  }
}

TEST(Apply, PsdInPsdOut) {
  Rng rng(5);
  const CpMap phi = random_cp(3, 3, 9, 11);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_psd(rng, 3);
    EXPECT_TRUE(is_psd(phi.apply(a)));
  }
}

TEST(Adjoint, TraceDualityOnRandomPairs) {
  Rng rng(6);
  const CpMap phi = random_cp(3, 2, 5, 21);
  const CpMap adj = adjoint_map(phi);
  ASSERT_EQ(adj.input_dim(), 2);
  ASSERT_EQ(adj.output_dim(), 3);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = cgauss(rng, 2, 2);
    const Matrix b = cgauss(rng, 3, 3);
    const Complex lhs = (a * phi.apply(b)).trace();
    const Complex rhs = (adj.apply(a) * b).trace();
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10);
  }
}

TEST(Adjoint, InvolutionAndStructureFlip) {
  const CpMap id = identity_map(2);
  EXPECT_NEAR(max_abs_diff(adjoint_map(id).choi(), id.choi()), 0.0, 1e-14);

  Rng rng(7);
  std::vector<Matrix> states = {random_psd(rng, 2), random_psd(rng, 2),
                                random_psd(rng, 2)};
  const CpMap cq = cq_map(states);
  const CpMap adj = adjoint_map(cq);
  EXPECT_EQ(adj.structure(), MapStructure::qc);
  EXPECT_EQ(adjoint_map(adj).structure(), MapStructure::cq);
  EXPECT_NEAR(max_abs_diff(adjoint_map(adj).choi(), cq.choi()), 0.0, 1e-12);
}

TEST(Tensor, ProductActionMatchesKron) {
  Rng rng(8);
  const CpMap phi = random_channel(2, 2, 2, 31);
  const CpMap omega = random_cp(3, 2, 3, 32);
  const CpMap tens = tensor_map(phi, omega);
  ASSERT_EQ(tens.input_dim(), 6);
  ASSERT_EQ(tens.output_dim(), 4);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_psd(rng, 2);
    const Matrix b = random_psd(rng, 3);
    EXPECT_NEAR(max_abs_diff(tens.apply(kron(a, b)),
                             kron(phi.apply(a), omega.apply(b))),
                0.0, 1e-10);
  }
}

TEST(Tensor, IdentityPairAndTracePair) {
  const CpMap ii = tensor_map(identity_map(2), identity_map(2));
  Rng rng(9);
  const Matrix a = cgauss(rng, 4, 4);
  EXPECT_NEAR(max_abs_diff(ii.apply(a), a), 0.0, 1e-10);

  const CpMap tt = tensor_map(trace_channel(2), trace_channel(3));
  const Matrix b = cgauss(rng, 6, 6);
  EXPECT_NEAR(std::abs(tt.apply(b)(0, 0) - b.trace()), 0.0, 1e-10);
}

TEST(Tensor, AssociativeUpToRoundoff) {
  const CpMap a = random_cp(2, 2, 2, 41);
  const CpMap b = random_channel(2, 2, 2, 42);
  const CpMap c = random_cp(2, 2, 2, 43);
  const CpMap left = tensor_map(tensor_map(a, b), c);
  const CpMap right = tensor_map(a, tensor_map(b, c));
  EXPECT_NEAR(max_abs_diff(left.choi(), right.choi()), 0.0, 1e-12);
}

TEST(Tensor, ResourceCap) {
  const CpMap big = identity_map(8);
  EXPECT_THROW(tensor_map(big, big, 1024), ResourceLimit);
}

TEST(CqMap, DephasingAndConstant) {
  std::vector<Matrix> basis;
  for (Index k = 0; k < 3; ++k) {
    Matrix e = Matrix::Zero(3, 3);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  const CpMap deph = cq_map(basis);
  EXPECT_EQ(deph.structure(), MapStructure::cq);
  Rng rng(10);
  const Matrix a = cgauss(rng, 3, 3);
  const Matrix out = deph.apply(a);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      if (i == j)
        EXPECT_NEAR(std::abs(out(i, i) - a(i, i)), 0.0, 1e-10);
      else
        EXPECT_NEAR(std::abs(out(i, j)), 0.0, 1e-10);
    }

  const Matrix rho = random_psd(rng, 2);
  const CpMap constant = cq_map({rho});
  const Matrix m1 = cgauss(rng, 1, 1);
  EXPECT_NEAR(max_abs_diff(constant.apply(m1), m1(0, 0) * rho), 0.0, 1e-10);
}

TEST(CqMap, ChoiIsBlockDiagonalOfStates) {
  Rng rng(11);
  std::vector<Matrix> states = {random_psd(rng, 2), random_psd(rng, 2)};
  const CpMap cq = cq_map(states);
  Matrix expected = Matrix::Zero(4, 4);
  expected.block(0, 0, 2, 2) = states[0];
  expected.block(2, 2, 2, 2) = states[1];
  EXPECT_NEAR(max_abs_diff(cq.choi(), expected), 0.0, 1e-12);
  const auto recovered = cq_states(cq);
  EXPECT_NEAR(max_abs_diff(recovered[0], states[0]), 0.0, 1e-12);
  EXPECT_NEAR(max_abs_diff(recovered[1], states[1]), 0.0, 1e-12);
}

TEST(QcMap, BasisPovmGivesDephasing) {
  std::vector<Matrix> basis;
  for (Index k = 0; k < 3; ++k) {
    Matrix e = Matrix::Zero(3, 3);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  EXPECT_NEAR(max_abs_diff(qc_map(basis).choi(), cq_map(basis).choi()), 0.0,
              0.0);
}

TEST(QcMap, OutputDiagonalAndAdjointIsCq) {
  Rng rng(12);
  std::vector<Matrix> povm = {random_psd(rng, 3), random_psd(rng, 3)};
  const CpMap qc = qc_map(povm);
  EXPECT_EQ(qc.structure(), MapStructure::qc);
  ASSERT_EQ(qc.output_dim(), 2);
  const Matrix a = cgauss(rng, 3, 3);
  const Matrix out = qc.apply(a);
  EXPECT_NEAR(std::abs(out(0, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(0, 0) - (povm[0] * a).trace()), 0.0, 1e-10);

  // For Hermitian POVM elements the adjoint equals the CQ map built on them.
  const CpMap adj = adjoint_map(qc);
  const CpMap cq = cq_map(povm);
  EXPECT_EQ(adj.structure(), MapStructure::cq);
  EXPECT_NEAR(max_abs_diff(adj.choi(), cq.choi()), 0.0, 1e-10);
  const auto recovered = qc_povm(qc);
  EXPECT_NEAR(max_abs_diff(recovered[0], povm[0]), 0.0, 1e-12);
  // Choi support: entries vanish off the output-diagonal k == l
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 2; ++k)
        for (Index l = 0; l < 2; ++l)
          if (k != l)
            EXPECT_NEAR(std::abs(qc.choi()(i * 2 + k, j * 2 + l)), 0.0, 0.0);
}

TEST(EbMap, MatchesDefinitionOnRandomInput) {
  Rng rng(13);
  std::vector<Matrix> povm = {random_psd(rng, 2), random_psd(rng, 2)};
  std::vector<Matrix> states = {random_psd(rng, 3), random_psd(rng, 3)};
  const CpMap eb = eb_map(povm, states);
  const Matrix a = cgauss(rng, 2, 2);
  Matrix expected = Matrix::Zero(3, 3);
  for (int k = 0; k < 2; ++k)
    expected += (povm[static_cast<std::size_t>(k)] * a).trace() *
                states[static_cast<std::size_t>(k)];
  EXPECT_NEAR(max_abs_diff(eb.apply(a), expected), 0.0, 1e-10);
}

TEST(HadamardMap, AllOnesIsIdentity) {
  const Matrix ones = Matrix::Ones(3, 3);
  const CpMap h = hadamard_map(ones);
  Rng rng(14);
  const Matrix a = cgauss(rng, 3, 3);
  EXPECT_NEAR(max_abs_diff(h.apply(a), a), 0.0, 1e-10);
}

TEST(HadamardMap, EntrywiseActionAndChoiBlocks) {
  Rng rng(15);
  const Matrix c = random_psd(rng, 3);
  const CpMap h = hadamard_map(c);
  const Matrix a = cgauss(rng, 3, 3);
  const Matrix out = h.apply(a);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      EXPECT_NEAR(std::abs(out(i, j) - c(i, j) * a(i, j)), 0.0, 1e-10);
  // (i,j) Choi block is c_ij |i><j|
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      Matrix expect = Matrix::Zero(3, 3);
      expect(i, j) = c(i, j);
      EXPECT_NEAR(max_abs_diff(block(h.choi(), 3, 3, i, j), expect), 0.0, 1e-12);
    }
  Matrix not_psd = Matrix::Ones(2, 2);
  not_psd(0, 0) = -1.0;
  EXPECT_THROW(hadamard_map(not_psd), NotPsd);
}

TEST(Depolarizing, EndpointsAndPredicates) {
  const CpMap full = depolarizing(3, 1.0);
  Rng rng(16);
  const Matrix a = cgauss(rng, 3, 3);
  EXPECT_NEAR(max_abs_diff(full.apply(a), a), 0.0, 1e-10);

  const CpMap erase = depolarizing(3, 0.0);
  EXPECT_NEAR(max_abs_diff(erase.apply(a),
                           a.trace() / 3.0 * Matrix::Identity(3, 3)),
              0.0, 1e-10);

  const CpMap mid = depolarizing(3, 0.4);
  EXPECT_TRUE(mid.is_trace_preserving());
  EXPECT_TRUE(mid.is_unital());
  for (Index i = 0; i < 9; ++i)
    for (Index j = 0; j < 9; ++j)
      EXPECT_GE(mid.choi()(i, j).real(), -1e-14);
  EXPECT_TRUE(depolarizing_in_semigroup_regime(0.4));
  EXPECT_FALSE(depolarizing_in_semigroup_regime(-0.05));

  EXPECT_NO_THROW(depolarizing(2, -1.0 / 3.0));  // CP boundary
  EXPECT_THROW(depolarizing(2, -0.5), NotPsd);
  EXPECT_THROW(depolarizing(2, 1.1), NotPsd);
}

TEST(RandomChannel, TracePreservingAndDeterministic) {
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const CpMap phi = random_channel(3, 2, 3, seed);
    EXPECT_TRUE(phi.is_trace_preserving(1e-10)) << "seed " << seed;
  }
  const CpMap a = random_channel(2, 2, 2, 7);
  const CpMap b = random_channel(2, 2, 2, 7);
  EXPECT_TRUE(a.choi() == b.choi());  // bitwise
  EXPECT_THROW(random_channel(4, 1, 2, 1), InvalidInput);
}

TEST(RandomCp, CompletelyPositiveByConstruction) {
  const CpMap phi = random_cp(3, 3, 9, 5);
  EXPECT_TRUE(is_psd(phi.choi()));
  // flipping the sign of one Choi eigenvalue always breaks complete positivity
  const EigenSystem es = hermitian_eigen(phi.choi());
  Matrix flipped = phi.choi() - 2.0 * es.values[es.values.size() - 1] *
                                    es.vectors.col(es.values.size() - 1) *
                                    es.vectors.col(es.values.size() - 1).adjoint();
  EXPECT_THROW(from_choi(flipped, 3, 3), NotPsd);
}

TEST(ConjugateMap, InvolutionExact) {
  const CpMap phi = random_channel(3, 2, 2, 17);
  const CpMap cc = conjugate_map(conjugate_map(phi));
  EXPECT_TRUE(cc.choi() == phi.choi());  // bitwise involution
  EXPECT_EQ(conjugate_map(phi).structure(), phi.structure());
}

TEST(ChoiFrobenius, ClosedForms) {
  EXPECT_NEAR(choi_frobenius(trace_channel(3)), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(choi_frobenius(identity_map(3)), 3.0, 1e-12);
  // unital TP channels sit at or above 1
  const CpMap phi = depolarizing(2, 0.37);
  EXPECT_GE(choi_frobenius(phi), 1.0 - 1e-12);
  // qubit depolarizing: ||X||^2 = l^2 d^2 + 2 l (1-l) + (1-l)^2 at d = 2
  for (double l : {0.2, 0.5, 0.9}) {
    const double expected =
        std::sqrt(l * l * 4.0 + 2.0 * l * (1.0 - l) + (1.0 - l) * (1.0 - l));
    EXPECT_NEAR(choi_frobenius(depolarizing(2, l)), expected, 1e-12);
  }
}

TEST(Predicates, UnitalAndTracePreserving) {
  EXPECT_TRUE(identity_map(3).is_unital());
  EXPECT_TRUE(identity_map(3).is_trace_preserving());
  EXPECT_TRUE(trace_channel(3).is_trace_preserving());
  EXPECT_FALSE(trace_channel(3).is_unital());  // T(I) = d, not 1
  const CpMap cp = random_cp(2, 2, 4, 3);
  EXPECT_FALSE(cp.is_trace_preserving());
}

TEST(Kraus, ReconstructsChoi) {
  const CpMap phi = random_channel(3, 2, 3, 23);
  Matrix rebuilt = Matrix::Zero(6, 6);
  for (const Matrix& k : phi.kraus()) {
    Eigen::VectorXcd w(6);
    for (Index i = 0; i < 3; ++i)
      for (Index r = 0; r < 2; ++r) w(i * 2 + r) = k(r, i);
    rebuilt += w * w.adjoint();
  }
  EXPECT_NEAR(max_abs_diff(rebuilt, phi.choi()), 0.0, 1e-10);
}
