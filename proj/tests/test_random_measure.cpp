#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "randmeas/group.hpp"
#include "randmeas/irreps.hpp"
#include "randmeas/quantum_meas.hpp"
#include "randmeas/random_measure.hpp"
#include "test_helpers.hpp"

using namespace randmeas;

TEST_SUITE("random-measure") {

TEST_CASE("RngStream: bit-exact replay and stream independence") {
  RngStream a(123, 5);
  RngStream b(123, 5);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream c(123, 6);
  RngStream d(124, 5);
  int same_c = 0;
  int same_d = 0;
  RngStream a2(123, 5);
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a2.next_u64();
    if (x == c.next_u64()) ++same_c;
    if (x == d.next_u64()) ++same_d;
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("gaussian sampling: replay, moments at n = 10^4") {
  RngStream r1(9, 1);
  RngStream r2(9, 1);
  CHECK(sample_gaussian_vector(1, r1)[0] == sample_gaussian_vector(1, r2)[0]);
  CHECK_THROWS_AS(sample_gaussian_vector(0, r1), std::invalid_argument);

  RngStream rng(2024, 0);
  const ComplexVector v = sample_gaussian_vector(10000, rng);
  double mean = 0.0;
  double second = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    mean += v[i].real();
    second += v[i].real() * v[i].real();
  }
  mean /= 1e4;
  second /= 1e4;
  CHECK(std::abs(mean) <= 4.0 / 100.0);          // 4 sigma CLT window
  CHECK(std::abs(second - mean * mean - 1.0) <= 0.10);  // variance within 10%
}

TEST_CASE("sample_unit_vector: unit norm and mean projection onto a subspace") {
  RngStream rng(5, 0);
  for (Eigen::Index n : {1, 3, 64}) {
    CHECK(std::abs(sample_unit_vector(n, rng).norm() - 1.0) <= 1e-12);
  }

  // E ||Pi_W v||^2 = k/n for the first-k coordinate subspace.
  const Eigen::Index n = 64, k = 16;
  const int trials = 100000;
  double sum = 0.0;
  for (int i = 0; i < trials; ++i) {
    RngStream trial_rng(77, static_cast<std::uint64_t>(i));
    sum += sample_unit_vector(n, trial_rng).head(k).squaredNorm();
  }
  const double expected = static_cast<double>(k) / static_cast<double>(n);
  CHECK(std::abs(sum / trials - expected) <= 0.05 * expected);
}

TEST_CASE("sample_unit_vector: |v_1|^2 is uniform on [0,1] for n = 2") {
  const int trials = 10000;
  std::vector<double> samples;
  samples.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    RngStream rng(31, static_cast<std::uint64_t>(i));
    samples.push_back(std::norm(sample_unit_vector(2, rng)[0]));
  }
  CHECK(rmtest::ks_statistic_uniform(samples) <=
        rmtest::ks_critical_one_sample(trials));
}

TEST_CASE("gram_schmidt: fixed point, textbook case, degeneracy error") {
  // Already orthonormal input is unchanged up to 1e-12.
  RngStream rng(41, 0);
  const OrthonormalBasis basis = sample_haar_basis(6, rng);
  std::vector<ComplexVector> ortho_in;
  for (Eigen::Index i = 0; i < 6; ++i) ortho_in.push_back(basis.vectors.col(i));
  const auto out = gram_schmidt(ortho_in);
  for (Eigen::Index i = 0; i < 6; ++i) {
    CHECK((out[static_cast<std::size_t>(i)] - ortho_in[static_cast<std::size_t>(i)])
              .norm() <= 1e-12);
  }

  // (e1, e1 + e2) -> (e1, e2).
  ComplexVector e1 = ComplexVector::Zero(3);
  e1[0] = 1.0;
  ComplexVector e1e2 = ComplexVector::Zero(3);
  e1e2[0] = 1.0;
  e1e2[1] = 1.0;
  const auto pair = gram_schmidt({e1, e1e2});
  CHECK((pair[0] - e1).norm() <= 1e-12);
  ComplexVector e2 = ComplexVector::Zero(3);
  e2[1] = 1.0;
  CHECK((pair[1] - e2).norm() <= 1e-12);

  // Dependent input names the offending index.
  try {
    gram_schmidt({e1, e1e2, ComplexVector(e1 + e1e2)});
    FAIL("expected degeneracy error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
}

TEST_CASE("gram_schmidt: prefix spans are preserved") {
  RngStream rng(43, 0);
  const Eigen::Index n = 24, r = 6;
  std::vector<ComplexVector> raw;
  for (Eigen::Index i = 0; i < r; ++i) {
    raw.push_back(sample_gaussian_vector(n, rng));
  }
  const auto ortho = gram_schmidt(raw);
  for (Eigen::Index prefix = 1; prefix <= r; ++prefix) {
    // Orthonormalized prefix projector.
    ComplexMatrix p_tilde = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < prefix; ++i) {
      p_tilde += ortho[static_cast<std::size_t>(i)] *
                 ortho[static_cast<std::size_t>(i)].adjoint();
    }
    // Independent projector for the raw prefix from an SVD basis.
    ComplexMatrix m(n, prefix);
    for (Eigen::Index i = 0; i < prefix; ++i) {
      m.col(i) = raw[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    const ComplexMatrix u = svd.matrixU();
    const ComplexMatrix p_raw = u * u.adjoint();
    CHECK(frobenius_norm(ComplexMatrix(p_tilde - p_raw)) <= 1e-8);
  }
}

TEST_CASE("gram_schmidt: perturbation of random unit vectors stays small") {
  // r = 8 unit vectors in n = 256; max_i trnorm(|b'_i><b'_i| - |b~_i><b~_i|)
  // should sit near 2 sqrt(r/n), far below the O(sqrt(Mr/n)) envelope.
  const Eigen::Index n = 256, r = 8;
  double max_pert = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    RngStream rng(51, static_cast<std::uint64_t>(trial));
    std::vector<ComplexVector> raw;
    for (Eigen::Index i = 0; i < r; ++i) raw.push_back(sample_unit_vector(n, rng));
    const auto ortho = gram_schmidt(raw);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      // Closed form cross-checked against trace_norm below.
      const double overlap_sq = std::norm(raw[i].dot(ortho[i]));
      max_pert = std::max(max_pert,
                          2.0 * std::sqrt(std::max(0.0, 1.0 - overlap_sq)));
    }
  }
  const double envelope = 6.0 * std::sqrt(4.0 * static_cast<double>(r) /
                                          static_cast<double>(n));
  CHECK(max_pert <= envelope);
  CHECK(max_pert <= 1.0);  // empirical headroom at these sizes
  INFO("max perturbation observed: ", max_pert);

  // Closed form 2 sqrt(1 - |<psi|phi>|^2) equals the generic trace norm.
  RngStream rng(52, 0);
  const ComplexVector psi = sample_unit_vector(8, rng);
  const ComplexVector phi = sample_unit_vector(8, rng);
  const double closed = 2.0 * std::sqrt(1.0 - std::norm(psi.dot(phi)));
  const double generic =
      trace_norm(ComplexMatrix(psi * psi.adjoint() - phi * phi.adjoint()));
  CHECK(closed == doctest::Approx(generic).epsilon(1e-10));
}

TEST_CASE("sample_haar_basis: orthonormal, uniform overlap marginal") {
  RngStream rng(61, 0);
  for (Eigen::Index n : {1, 2, 7, 32}) {
    sample_haar_basis(n, rng).validate(1e-10);
  }

  const int trials = 10000;
  std::vector<double> overlaps;
  overlaps.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    RngStream trial_rng(62, static_cast<std::uint64_t>(i));
    overlaps.push_back(std::norm(sample_haar_basis(2, trial_rng).vectors(0, 0)));
  }
  CHECK(rmtest::ks_statistic_uniform(overlaps) <=
        rmtest::ks_critical_one_sample(trials));
}

TEST_CASE("sample_haar_basis: left-invariance under the Z_4 Fourier matrix") {
  const FiniteGroup z4 = FiniteGroup::make(GroupFamily::parse("cyclic:4"));
  const ComplexMatrix u = qft_matrix(z4);
  const int trials = 10000;
  std::vector<double> plain, rotated;
  plain.reserve(trials);
  rotated.reserve(trials);
  for (int i = 0; i < trials; ++i) {
    RngStream r1(63, static_cast<std::uint64_t>(i));
    plain.push_back(std::norm(sample_haar_basis(4, r1).vectors(0, 0)));
    RngStream r2(64, static_cast<std::uint64_t>(i));
    const ComplexMatrix rotated_basis = u * sample_haar_basis(4, r2).vectors;
    rotated.push_back(std::norm(rotated_basis(0, 0)));
  }
  CHECK(rmtest::ks_statistic_two_sample(plain, rotated) <=
        rmtest::ks_critical_two_sample(trials, trials));
}

TEST_CASE("build_random_povm_plain: scalar case, completeness, norm scale") {
  RngStream rng(71, 0);
  const Povm scalar = build_random_povm_plain(1, rng);
  REQUIRE(scalar.size() == 2);
  CHECK(std::abs(scalar.elements[0](0, 0).real() - 1.0) <= 1e-12);
  CHECK(std::abs(scalar.elements[1](0, 0)) <= 1e-12);  // nu vanishes at n=1

  for (Eigen::Index n : {2, 5, 16}) {
    build_random_povm_plain(n, rng).validate();
  }

  // ell = ||sum b b^dag|| stays well under 36 n.
  const Eigen::Index n = 64;
  for (int trial = 0; trial < 100; ++trial) {
    RngStream trial_rng(72, static_cast<std::uint64_t>(trial));
    ComplexMatrix b(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      b.col(col) = sample_gaussian_vector(n, trial_rng);
    }
    const double ell = spectral_norm(ComplexMatrix(b * b.adjoint()));
    CHECK(ell <= 36.0 * static_cast<double>(n));
  }
}

TEST_CASE("build_random_povm_ancilla: element count, nu PSD, completeness") {
  RngStream rng(73, 0);
  const Povm povm = build_random_povm_ancilla(2, 1, rng);
  REQUIRE(povm.size() == 3);  // 2 rank-one + nu
  povm.validate();

  const Povm bigger = build_random_povm_ancilla(4, 3, rng);
  REQUIRE(bigger.size() == 13);
  bigger.validate();
  const double nu_min =
      hermitian_eig(bigger.elements.back()).eigenvalues.minCoeff();
  CHECK(nu_min >= -1e-9);
}

TEST_CASE("ancilla POVM separates orthogonal pure states at n=16, K=4") {
  ComplexVector a = ComplexVector::Zero(16), b = ComplexVector::Zero(16);
  a[0] = 1.0;
  b[1] = 1.0;
  const DensityMatrix s1 = DensityMatrix::pure(a);
  const DensityMatrix s2 = DensityMatrix::pure(b);
  const double f = frobenius_norm(s1.matrix() - s2.matrix());  // sqrt(2)
  const double threshold = 0.05 * f / std::log2(64.0);

  std::size_t above = 0;
  double min_tv = 2.0;
  for (int draw = 0; draw < 200; ++draw) {
    RngStream rng(90, static_cast<std::uint64_t>(draw));
    const Povm povm = build_random_povm_ancilla(16, 4, rng);
    const double tv =
        total_variation(measure_povm(s1, povm), measure_povm(s2, povm));
    if (tv >= threshold) ++above;
    min_tv = std::min(min_tv, tv);
  }
  CHECK(above >= 190);  // at least 95% of draws
  // Record the observed constant: min TV/f over the 200 draws.
  MESSAGE("ancilla POVM min TV/f over 200 draws: ", min_tv / f);
}

TEST_CASE("Povm::validate catches broken measurements") {
  RngStream rng(91, 0);
  Povm povm = build_random_povm_plain(4, rng);
  povm.validate();

  Povm incomplete = povm;
  incomplete.elements.pop_back();
  incomplete.labels.pop_back();
  CHECK_THROWS_AS(incomplete.validate(), std::runtime_error);

  Povm indefinite = povm;
  indefinite.elements[0] -= 0.01 * ComplexMatrix::Identity(4, 4);
  indefinite.elements[1] += 0.01 * ComplexMatrix::Identity(4, 4);
  CHECK_THROWS_AS(indefinite.validate(), std::runtime_error);

  Povm relabeled = povm;
  relabeled.labels[1] = relabeled.labels[0];
  CHECK_THROWS_AS(relabeled.validate(), std::runtime_error);
}

TEST_CASE("samplers replay bit-identically from the same stream") {
  RngStream a(99, 12);
  RngStream b(99, 12);
  const OrthonormalBasis basis_a = sample_haar_basis(6, a);
  const OrthonormalBasis basis_b = sample_haar_basis(6, b);
  CHECK((basis_a.vectors - basis_b.vectors).cwiseAbs().maxCoeff() == 0.0);

  RngStream c(99, 13);
  RngStream d(99, 13);
  const Povm povm_c = build_random_povm_ancilla(3, 2, c);
  const Povm povm_d = build_random_povm_ancilla(3, 2, d);
  for (std::size_t i = 0; i < povm_c.size(); ++i) {
    CHECK((povm_c.elements[i] - povm_d.elements[i]).cwiseAbs().maxCoeff() == 0.0);
  }
}

}  // TEST_SUITE
