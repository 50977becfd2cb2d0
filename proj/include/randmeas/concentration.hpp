#pragma once

#include <vector>

#include "randmeas/matrix.hpp"
#include "randmeas/report.hpp"
#include "randmeas/rng.hpp"

namespace randmeas {

// Calibration constants, frozen from the seed-0 calibration runs. The
// analytic statements they stand in for are asymptotic with unspecified
// constants, so the acceptance suite pins these concrete values.
inline constexpr double kGramSchmidtC0 = 6.0;       // perturbation <= C0 sqrt(Mr/n)
inline constexpr double kHighRankC1 = 8.0;          // median TV <= C1 r^(-1/4)
inline constexpr double kWeightedTailCMin = 0.01;   // both tails >= c_min
inline constexpr double kMatrixNormFactor = 4.0;    // ||M|| <= 4 sqrt(n ln n)
inline constexpr double kProjUpperRate = 8.0;       // tail <= exp(-tk/8)
inline constexpr double kProjTwoSidedRate = 6.0;    // miss <= exp(-eps^2 k/6)

/// Empirical Pr[sum_{i<=n} G_i^2 > n(1+eps)] (or the < tail for eps < 0)
/// against the Chernoff bound (e^(-eps/2) sqrt(1+eps))^n.
/// Pass: empirical <= bound + 3 standard errors.
TailReport chi_square_tail(int n, double eps, std::size_t trials, RngStream rng,
                           unsigned threads = 1);

enum class ProjectionTailSide { upper_t, two_sided_eps };

/// Squared projection of a random unit vector in C^n onto the first-k
/// coordinate subspace (any fixed subspace is equivalent by symmetry).
/// upper_t: Pr[ |Pi v|^2 > t k/n ] vs exp(-tk/8); requires k <= n/4 and
/// 4 <= t <= n/k. two_sided_eps: Pr[(1-eps)k/n <= |Pi v|^2 <= (1+eps)k/n]
/// vs 1 - exp(-eps^2 k/6); requires 0 <= eps <= 1/2.
TailReport projection_tail(Eigen::Index n, Eigen::Index k, double t_or_eps,
                           ProjectionTailSide side, std::size_t trials,
                           RngStream rng, unsigned threads = 1);

/// Max over i of trace_norm(|b'_i><b'_i| - |b~_i><b~_i|) for r random unit
/// vectors in C^n after Gram-Schmidt, against C0 sqrt(M r / n).
TailReport gram_schmidt_perturbation(Eigen::Index n, Eigen::Index r, double m_factor,
                                     std::size_t trials, RngStream rng,
                                     unsigned threads = 1);

/// Spectral norm of an n x n complex Gaussian matrix; pass iff every trial
/// stays below 4 sqrt(n ln n).
TailReport gaussian_matrix_norm(Eigen::Index n, std::size_t trials, RngStream rng,
                                unsigned threads = 1);

/// X = sum_i lambda_i G_i^2 with lambda_i in (0,1], sum lambda <= 1.
/// Checks Pr[X > t + f] >= c_min and Pr[X < t] >= c_min with t = sum lambda,
/// f = sqrt(sum lambda^2), plus E[X] = t within 3 standard errors.
TailReport weighted_chisquare_tails(const std::vector<double>& lambdas,
                                    std::size_t trials, RngStream rng,
                                    unsigned threads = 1);

/// The rank-r pair: completely mixed states on orthogonal r-dimensional
/// coordinate subspaces of C^n (frob distance sqrt(2/r), trace distance 2,
/// both asserted exactly before sampling). Reports the TV distribution over
/// Haar-basis draws; pass iff the median is <= C1 r^(-1/4).
TailReport high_rank_counterexample(Eigen::Index n, Eigen::Index r,
                                    std::size_t trials, RngStream rng,
                                    unsigned threads = 1);

}  // namespace randmeas
