#include "randmeas/irreps.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "randmeas/rng.hpp"

namespace randmeas {

namespace {

Complex unit_root(long numerator, long denominator) {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(numerator) /
      static_cast<double>(denominator);
  return {std::cos(angle), std::sin(angle)};
}

std::string padded(std::size_t index) {
  std::string s = std::to_string(index);
  while (s.size() < 3) s.insert(s.begin(), '0');
  return s;
}

Irrep make_irrep(std::size_t index, const std::string& suffix, Eigen::Index dim,
                 std::size_t order) {
  Irrep rho;
  rho.label = padded(index) + "_" + suffix;
  rho.dim = dim;
  rho.matrices.assign(order, ComplexMatrix::Zero(dim, dim));
  return rho;
}

long mod_inverse(long a, long p) {
  for (long b = 1; b < p; ++b) {
    if ((a * b) % p == 1) return b;
  }
  throw std::logic_error("mod_inverse: not invertible");
}

long primitive_root(long p) {
  for (long g = 2; g < p; ++g) {
    // g is primitive iff its multiplicative order is exactly p-1.
    long x = g % p;
    long order = 1;
    while (x != 1) {
      x = (x * g) % p;
      ++order;
    }
    if (order == p - 1) return g;
  }
  if (p == 2) return 1;
  throw std::logic_error("primitive_root: none found");
}

std::vector<Irrep> build_cyclic(const FiniteGroup& group) {
  const std::size_t n = group.order();
  std::vector<Irrep> irreps;
  for (std::size_t j = 0; j < n; ++j) {
    Irrep rho = make_irrep(j, "chi" + std::to_string(j), 1, n);
    for (std::size_t a = 0; a < n; ++a) {
      rho.matrices[a](0, 0) = unit_root(static_cast<long>(j * a),
                                        static_cast<long>(n));
    }
    irreps.push_back(std::move(rho));
  }
  return irreps;
}

std::vector<Irrep> build_dihedral(const FiniteGroup& group) {
  const std::size_t order = group.order();
  if (order < 2 || order % 2 != 0) {
    throw std::logic_error("build_dihedral: order must be even");
  }
  const std::size_t n = order / 2;
  auto rot = [&](std::size_t g) { return g % n; };
  auto flip = [&](std::size_t g) { return g / n; };

  std::vector<Irrep> irreps;
  std::size_t index = 0;

  {
    Irrep triv = make_irrep(index++, "triv", 1, order);
    for (std::size_t g = 0; g < order; ++g) triv.matrices[g](0, 0) = 1.0;
    irreps.push_back(std::move(triv));
  }
  {
    Irrep sgn = make_irrep(index++, "sgn_s", 1, order);
    for (std::size_t g = 0; g < order; ++g) {
      sgn.matrices[g](0, 0) = flip(g) ? -1.0 : 1.0;
    }
    irreps.push_back(std::move(sgn));
  }
  if (n % 2 == 0 && n >= 2) {
    Irrep sgn_r = make_irrep(index++, "sgn_r", 1, order);
    Irrep sgn_rs = make_irrep(index++, "sgn_rs", 1, order);
    for (std::size_t g = 0; g < order; ++g) {
      const double ra = (rot(g) % 2) ? -1.0 : 1.0;
      sgn_r.matrices[g](0, 0) = ra;
      sgn_rs.matrices[g](0, 0) = flip(g) ? -ra : ra;
    }
    irreps.push_back(std::move(sgn_r));
    irreps.push_back(std::move(sgn_rs));
  }

  // Two-dimensional irreps rho_h: r^a -> diag(w^{ha}, w^{-ha}), s -> swap.
  const std::size_t h_count = (n % 2 == 0) ? (n >= 2 ? n / 2 - 1 : 0) : (n - 1) / 2;
  for (std::size_t h = 1; h <= h_count; ++h) {
    Irrep rho = make_irrep(index++, "rho" + std::to_string(h), 2, order);
    for (std::size_t g = 0; g < order; ++g) {
      const Complex w = unit_root(static_cast<long>(h * rot(g)),
                                  static_cast<long>(n));
      if (flip(g) == 0) {
        rho.matrices[g](0, 0) = w;
        rho.matrices[g](1, 1) = std::conj(w);
      } else {
        rho.matrices[g](0, 1) = w;
        rho.matrices[g](1, 0) = std::conj(w);
      }
    }
    irreps.push_back(std::move(rho));
  }
  return irreps;
}

std::vector<Irrep> build_affine(const FiniteGroup& group) {
  const long p = group.family().parameter;
  const std::size_t order = group.order();
  auto scale = [&](std::size_t g) { return static_cast<long>(g / p) + 1; };
  auto shift = [&](std::size_t g) { return static_cast<long>(g % p); };
  const long root = primitive_root(p);

  // Discrete logs base the primitive root, for the multiplicative characters.
  std::vector<long> dlog(static_cast<std::size_t>(p), 0);
  {
    long x = 1;
    for (long e = 0; e < p - 1; ++e) {
      dlog[static_cast<std::size_t>(x)] = e;
      x = (x * root) % p;
    }
  }

  std::vector<Irrep> irreps;
  std::size_t index = 0;
  for (long j = 0; j < p - 1; ++j) {
    Irrep chi = make_irrep(index++, "psi" + std::to_string(j), 1, order);
    for (std::size_t g = 0; g < order; ++g) {
      chi.matrices[g](0, 0) =
          unit_root(j * dlog[static_cast<std::size_t>(scale(g))], p - 1);
    }
    irreps.push_back(std::move(chi));
  }

  // The (p-1)-dimensional irrep: the permutation action x -> a x + b in the
  // Fourier basis phi_k (k = 1..p-1); (a, b) maps phi_k to
  // w^{-k' b} phi_{k'} with k' = k a^{-1} mod p.
  if (p >= 2) {
    Irrep std_rep = make_irrep(index++, "std", p - 1, order);
    for (std::size_t g = 0; g < order; ++g) {
      const long a_inv = mod_inverse(scale(g), p);
      const long b = shift(g);
      for (long k = 1; k < p; ++k) {
        const long k_prime = (k * a_inv) % p;
        std_rep.matrices[g](k_prime - 1, k - 1) = unit_root(-k_prime * b, p);
      }
    }
    irreps.push_back(std::move(std_rep));
  }
  return irreps;
}

std::vector<Irrep> build_heisenberg(const FiniteGroup& group) {
  const long p = group.family().parameter;
  const std::size_t order = group.order();
  auto coords = [&](std::size_t g) {
    const long z = static_cast<long>(g % p);
    const long y = static_cast<long>((g / p) % p);
    const long x = static_cast<long>(g / (p * p));
    return std::array<long, 3>{x, y, z};
  };

  std::vector<Irrep> irreps;
  std::size_t index = 0;
  for (long j = 0; j < p; ++j) {
    for (long l = 0; l < p; ++l) {
      Irrep chi = make_irrep(
          index++, "chi" + std::to_string(j) + "_" + std::to_string(l), 1, order);
      for (std::size_t g = 0; g < order; ++g) {
        const auto [x, y, z] = coords(g);
        chi.matrices[g](0, 0) = unit_root(j * x + l * y, p);
      }
      irreps.push_back(std::move(chi));
    }
  }

  // Schroedinger representations, one per nontrivial central character:
  // rho_c(x,y,z) e_m = w^{c(z + x m)} e_{m+y}.
  for (long c = 1; c < p; ++c) {
    Irrep rho = make_irrep(index++, "schr" + std::to_string(c), p, order);
    for (std::size_t g = 0; g < order; ++g) {
      const auto [x, y, z] = coords(g);
      for (long m = 0; m < p; ++m) {
        rho.matrices[g]((m + y) % p, m) = unit_root(c * (z + x * m), p);
      }
    }
    irreps.push_back(std::move(rho));
  }
  return irreps;
}

void validate_irreps(const FiniteGroup& group, const std::vector<Irrep>& irreps) {
  const std::size_t n = group.order();

  std::size_t dim_sq_sum = 0;
  for (const auto& rho : irreps) {
    if (rho.matrices.size() != n) {
      throw std::logic_error("irreps_of: wrong number of matrices");
    }
    dim_sq_sum += static_cast<std::size_t>(rho.dim * rho.dim);
    for (std::size_t g = 0; g < n; ++g) {
      const ComplexMatrix defect =
          rho.at(g) * rho.at(g).adjoint() -
          ComplexMatrix::Identity(rho.dim, rho.dim);
      if (defect.cwiseAbs().maxCoeff() > 1e-10) {
        throw std::logic_error("irreps_of: non-unitary matrix in " + rho.label);
      }
    }
  }
  if (dim_sq_sum != n) {
    throw std::logic_error("irreps_of: sum of squared dimensions != |G|");
  }

  auto check_pair = [&](std::size_t a, std::size_t b) {
    const std::size_t ab = group.mul(a, b);
    for (const auto& rho : irreps) {
      const ComplexMatrix defect = rho.at(a) * rho.at(b) - rho.at(ab);
      if (defect.cwiseAbs().maxCoeff() > 1e-10) {
        throw std::logic_error("irreps_of: homomorphism violated in " + rho.label);
      }
    }
  };
  if (n <= 512) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) check_pair(a, b);
  } else {
    RngStream rng(0, 1);
    for (int i = 0; i < 20000; ++i) {
      check_pair(rng.next_u64() % n, rng.next_u64() % n);
    }
  }

  // Schur orthogonality of matrix coefficients == orthonormal QFT rows.
  if (n <= 512) {
    const ComplexMatrix qft = qft_matrix(group, irreps);
    const ComplexMatrix gram = qft * qft.adjoint();
    const ComplexMatrix defect = gram - ComplexMatrix::Identity(n, n);
    if (defect.cwiseAbs().maxCoeff() > 1e-8) {
      throw std::logic_error("irreps_of: Schur orthogonality violated");
    }
  }
}

}  // namespace

std::vector<Irrep> irreps_of(const FiniteGroup& group) {
  std::vector<Irrep> irreps;
  switch (group.family().kind) {
    case GroupFamily::Kind::cyclic: irreps = build_cyclic(group); break;
    case GroupFamily::Kind::dihedral: irreps = build_dihedral(group); break;
    case GroupFamily::Kind::affine: irreps = build_affine(group); break;
    case GroupFamily::Kind::heisenberg: irreps = build_heisenberg(group); break;
  }
  validate_irreps(group, irreps);
  return irreps;
}

ComplexMatrix qft_matrix(const FiniteGroup& group, const std::vector<Irrep>& irreps) {
  const std::size_t n = group.order();
  ComplexMatrix qft(n, n);
  std::size_t row = 0;
  for (const auto& rho : irreps) {
    const double weight =
        std::sqrt(static_cast<double>(rho.dim) / static_cast<double>(n));
    for (Eigen::Index i = 0; i < rho.dim; ++i) {
      for (Eigen::Index j = 0; j < rho.dim; ++j) {
        for (std::size_t g = 0; g < n; ++g) {
          qft(row, g) = weight * rho.at(g)(i, j);
        }
        ++row;
      }
    }
  }
  if (row != n) throw std::logic_error("qft_matrix: row count mismatch");
  return qft;
}

ComplexMatrix qft_matrix(const FiniteGroup& group) {
  return qft_matrix(group, irreps_of(group));
}

ComplexMatrix rho_projector(const Irrep& rho, const FiniteGroup& group,
                            const Subgroup& h) {
  ComplexMatrix sum = ComplexMatrix::Zero(rho.dim, rho.dim);
  for (std::size_t g : h.elements()) {
    if (g >= group.order()) {
      throw std::invalid_argument("rho_projector: subgroup element out of range");
    }
    sum += rho.at(g);
  }
  sum /= static_cast<double>(h.order());
  const ComplexMatrix idem_defect = sum * sum - sum;
  if (hermiticity_defect(sum) > 1e-9 ||
      idem_defect.cwiseAbs().maxCoeff() > 1e-9) {
    throw std::runtime_error("rho_projector: result is not a projector");
  }
  return sum;
}

Eigen::Index projector_rank(const ComplexMatrix& projector) {
  return numerical_rank(projector);
}

OutcomeDistribution irrep_distribution(const FiniteGroup& group,
                                       const std::vector<Irrep>& irreps,
                                       const Subgroup& h) {
  std::vector<double> probs;
  std::vector<std::string> labels;
  probs.reserve(irreps.size());
  labels.reserve(irreps.size());
  for (const auto& rho : irreps) {
    const Eigen::Index rank = projector_rank(rho_projector(rho, group, h));
    probs.push_back(static_cast<double>(rho.dim) * static_cast<double>(h.order()) *
                    static_cast<double>(rank) / static_cast<double>(group.order()));
    labels.push_back(rho.label);
  }
  return OutcomeDistribution(std::move(probs), std::move(labels));
}

double w_distance(const FiniteGroup& group, const std::vector<Irrep>& irreps,
                  const Subgroup& h1, const Subgroup& h2) {
  return total_variation(irrep_distribution(group, irreps, h1),
                         irrep_distribution(group, irreps, h2));
}

double r_distance(const FiniteGroup& group, const std::vector<Irrep>& irreps,
                  const Subgroup& h1, const Subgroup& h2) {
  if (group.order() < 2) {
    throw std::invalid_argument("r_distance: needs |G| >= 2");
  }
  double block_sum = 0.0;
  for (const auto& rho : irreps) {
    const ComplexMatrix diff =
        static_cast<double>(h1.order()) * rho_projector(rho, group, h1) -
        static_cast<double>(h2.order()) * rho_projector(rho, group, h2);
    block_sum += static_cast<double>(rho.dim) * frobenius_norm(diff);
  }
  const double norm = static_cast<double>(group.order()) *
                      std::log2(static_cast<double>(group.order()));
  return w_distance(group, irreps, h1, h2) + block_sum / norm;
}

}  // namespace randmeas
