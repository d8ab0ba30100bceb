#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cavneg/errors.hpp"
#include "cavneg/series.hpp"

namespace cavneg {

/// A Bogoliubov pair (alpha, beta) expanded in the acceleration parameter h:
///
///   alpha = diag(phases) + h alpha1 + h^2 diag(alpha2_diag) + ...
///   beta  =                h beta1 + ...
///
/// Rows index the out-mode m and columns the in-mode n (zero-based, so row i is
/// mode i + 1), matching  U_out_m = sum_n (alpha_mn U_n + beta_mn U_n^*).
/// Blocks are stored per unit h. alpha1 and beta1 are either both n_max x n_max
/// or both empty; empty means the first-order blocks vanish (pure phase).
/// Off-diagonal second-order terms are not tracked.
template <typename Real>
struct PerturbativeTransform {
  using Scalar = Real;
  using Complex = std::complex<Real>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  Vector phases;
  Matrix alpha1;
  Matrix beta1;
  std::optional<Vector> alpha2_diag;

  Eigen::Index n_max() const { return phases.size(); }
  bool has_mixing() const { return alpha1.size() != 0; }

  Complex alpha1_at(Eigen::Index m, Eigen::Index n) const {
    return has_mixing() ? alpha1(m, n) : Complex(0);
  }
  Complex beta1_at(Eigen::Index m, Eigen::Index n) const {
    return has_mixing() ? beta1(m, n) : Complex(0);
  }

  /// First-order blocks with the empty representation expanded to zeros.
  Matrix dense_alpha1() const { return has_mixing() ? alpha1 : Matrix::Zero(n_max(), n_max()); }
  Matrix dense_beta1() const { return has_mixing() ? beta1 : Matrix::Zero(n_max(), n_max()); }

  static PerturbativeTransform identity(Eigen::Index n_max) {
    PerturbativeTransform t;
    t.phases = Vector::Ones(n_max);
    t.alpha2_diag = Vector::Zero(n_max);
    return t;
  }
};

using Transform = PerturbativeTransform<double>;

/// Coefficient c_n of the massive second-order diagonal, alpha2_nn = -c_n.
///
/// Includes the -7 M^4 / (16 pi^6 n^6) term required for the diagonal
/// Bogoliubov identity to hold with the first-order massive blocks.
template <typename Real>
Real massive_alpha2_coefficient(Real n, Real M) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real pi2 = pi * pi;
  const Real n2 = n * n;
  const Real M2 = M * M;
  return pi2 * n2 / 240 + M2 / 120 + M2 * (M2 - 5) / (240 * pi2 * n2) +
         M2 * (M2 - 24) / (96 * pi2 * pi2 * n2 * n2) -
         7 * M2 * M2 / (16 * pi2 * pi2 * pi2 * n2 * n2 * n2);
}

/// The same diagonal without the M^4 n^-6 term. Kept for comparison; it
/// violates the diagonal identity for M > 0.
template <typename Real>
Real uncorrected_massive_alpha2_coefficient(Real n, Real M) {
  const Real pi = std::numbers::pi_v<Real>;
  const Real pi2 = pi * pi;
  const Real n2 = n * n;
  const Real M2 = M * M;
  return pi2 * n2 / 240 + M2 / 120 + M2 * (M2 - 5) / (240 * pi2 * n2) +
         M2 * (M2 - 24) / (96 * pi2 * pi2 * n2 * n2);
}

/// Inertial -> boost-mode transform of a massless field at the t = 0 junction,
/// per unit h:
///   alpha1_mn = sqrt(mn) (-1 + (-1)^(m-n)) / (pi^2 (m-n)^3),
///   beta1_mn  = sqrt(mn) ( 1 - (-1)^(m-n)) / (pi^2 (m+n)^3),
///   alpha2_nn = -pi^2 n^2 / 240.
template <typename Real = double>
PerturbativeTransform<Real> massless_boost_transform(Eigen::Index n_max) {
  using T = PerturbativeTransform<Real>;
  if (n_max < 2) throw ArgumentError("boost transform needs n_max >= 2");
  const Real pi2 = std::numbers::pi_v<Real> * std::numbers::pi_v<Real>;

  T t;
  t.phases = T::Vector::Ones(n_max);
  t.alpha1 = T::Matrix::Zero(n_max, n_max);
  t.beta1 = T::Matrix::Zero(n_max, n_max);
  typename T::Vector a2(n_max);
  for (Eigen::Index j = 0; j < n_max; ++j) {
    const Real n = static_cast<Real>(j + 1);
    // Only m - n odd survives the parity factor.
    for (Eigen::Index i = (j + 1) % 2; i < n_max; i += 2) {
      const Real m = static_cast<Real>(i + 1);
      const Real root = std::sqrt(m * n);
      const Real diff = m - n;
      const Real sum = m + n;
      t.alpha1(i, j) = -2 * root / (pi2 * diff * diff * diff);
      t.beta1(i, j) = 2 * root / (pi2 * sum * sum * sum);
    }
    a2(j) = -pi2 * n * n / 240;
  }
  t.alpha2_diag = std::move(a2);
  return t;
}

/// Massive counterpart from the uniform Bessel asymptotics. The
/// combinations alpha1 +- beta1 are
///   S_mn = 2mn(-1+(-1)^(m-n)) [pi^2(n^2+3m^2) + 4M^2] q_n / (pi^4 (m^2-n^2)^3 q_m),
///   D_mn = 2mn(-1+(-1)^(m-n)) [pi^2(m^2+3n^2) + 4M^2] q_m / (pi^4 (m^2-n^2)^3 q_n),
/// with q_n = (M^2 + pi^2 n^2)^(1/4); diag(beta1) = 0.
template <typename Real = double>
PerturbativeTransform<Real> massive_boost_transform(Eigen::Index n_max, Real M) {
  using T = PerturbativeTransform<Real>;
  if (n_max < 2) throw ArgumentError("boost transform needs n_max >= 2");
  if (!(M >= 0)) throw DomainError("mass parameter M must be non-negative");
  const Real pi = std::numbers::pi_v<Real>;
  const Real pi2 = pi * pi;
  const Real pi4 = pi2 * pi2;
  const Real M2 = M * M;

  std::vector<Real> quarter(static_cast<std::size_t>(n_max));
  for (Eigen::Index i = 0; i < n_max; ++i) {
    const Real m = static_cast<Real>(i + 1);
    quarter[static_cast<std::size_t>(i)] = std::sqrt(std::sqrt(M2 + pi2 * m * m));
  }

  T t;
  t.phases = T::Vector::Ones(n_max);
  t.alpha1 = T::Matrix::Zero(n_max, n_max);
  t.beta1 = T::Matrix::Zero(n_max, n_max);
  typename T::Vector a2(n_max);
  for (Eigen::Index j = 0; j < n_max; ++j) {
    const Real n = static_cast<Real>(j + 1);
    const Real qn = quarter[static_cast<std::size_t>(j)];
    for (Eigen::Index i = (j + 1) % 2; i < n_max; i += 2) {
      const Real m = static_cast<Real>(i + 1);
      const Real qm = quarter[static_cast<std::size_t>(i)];
      const Real gap = m * m - n * n;
      const Real common = -4 * m * n / (pi4 * gap * gap * gap);
      const Real sum = common * (pi2 * (n * n + 3 * m * m) + 4 * M2) * qn / qm;
      const Real difference = common * (pi2 * (m * m + 3 * n * n) + 4 * M2) * qm / qn;
      t.alpha1(i, j) = (sum + difference) / 2;
      t.beta1(i, j) = (sum - difference) / 2;
    }
    a2(j) = -massive_alpha2_coefficient(n, M);
  }
  t.alpha2_diag = std::move(a2);
  return t;
}

/// Free evolution for proper time `tau`: z_n = exp(i frequencies[n] tau), no mixing.
template <typename Real>
PerturbativeTransform<Real> phase_rotation(Real tau, std::span<const Real> frequencies,
                                           Eigen::Index n_max) {
  using T = PerturbativeTransform<Real>;
  if (static_cast<Eigen::Index>(frequencies.size()) < n_max) {
    throw ArgumentError("phase_rotation: spectrum shorter than n_max");
  }
  T t;
  t.phases.resize(n_max);
  for (Eigen::Index i = 0; i < n_max; ++i) {
    t.phases(i) = std::polar(Real(1), frequencies[static_cast<std::size_t>(i)] * tau);
  }
  t.alpha2_diag = T::Vector::Zero(n_max);
  return t;
}

namespace detail {

template <typename Real>
void check_same_size(const PerturbativeTransform<Real>& a, const PerturbativeTransform<Real>& b) {
  if (a.n_max() != b.n_max()) {
    throw ArgumentError("compose: mismatched n_max (" + std::to_string(a.n_max()) + " vs " +
                        std::to_string(b.n_max()) + ")");
  }
}

// Second-order diagonal of the product, or nullopt if either factor lacks one:
//   z2 a2_1 + a2_2 z1 + diag(alpha1_2 alpha1_1) + diag(beta1_2 conj(beta1_1)).
template <typename Real>
std::optional<typename PerturbativeTransform<Real>::Vector> compose_alpha2(
    const PerturbativeTransform<Real>& second, const PerturbativeTransform<Real>& first) {
  if (!second.alpha2_diag || !first.alpha2_diag) return std::nullopt;
  typename PerturbativeTransform<Real>::Vector a2 =
      second.phases.cwiseProduct(*first.alpha2_diag) +
      second.alpha2_diag->cwiseProduct(first.phases);
  if (second.has_mixing() && first.has_mixing()) {
    a2 += second.alpha1.transpose().cwiseProduct(first.alpha1).colwise().sum().transpose();
    a2 += second.beta1.transpose().cwiseProduct(first.beta1.conjugate()).colwise().sum().transpose();
  }
  return a2;
}

}  // namespace detail

/// Chain rule for Bogoliubov transforms applied first `first`, then `second`:
///   A = A2 A1 + B2 conj(B1),  B = A2 B1 + B2 conj(A1),
/// kept to first order off the diagonal and second order on it:
///   alpha1 = Z2 alpha1_1 + alpha1_2 Z1,  beta1 = Z2 beta1_1 + beta1_2 conj(Z1).
/// The rvalue overloads reuse the storage of the consumed operand.
template <typename Real>
PerturbativeTransform<Real> compose(const PerturbativeTransform<Real>& second,
                                    PerturbativeTransform<Real>&& first) {
  detail::check_same_size(second, first);
  auto a2 = detail::compose_alpha2(second, first);
  const auto& z2 = second.phases;
  if (first.has_mixing()) {
    if (second.has_mixing()) {
      first.alpha1 = z2.asDiagonal() * first.alpha1 + second.alpha1 * first.phases.asDiagonal();
      first.beta1 =
          z2.asDiagonal() * first.beta1 + second.beta1 * first.phases.conjugate().asDiagonal();
    } else {
      first.alpha1 = z2.asDiagonal() * first.alpha1;
      first.beta1 = z2.asDiagonal() * first.beta1;
    }
  } else if (second.has_mixing()) {
    first.alpha1 = second.alpha1 * first.phases.asDiagonal();
    first.beta1 = second.beta1 * first.phases.conjugate().asDiagonal();
  }
  first.phases = z2.cwiseProduct(first.phases);
  first.alpha2_diag = std::move(a2);
  return std::move(first);
}

template <typename Real>
PerturbativeTransform<Real> compose(PerturbativeTransform<Real>&& second,
                                    const PerturbativeTransform<Real>& first) {
  detail::check_same_size(second, first);
  if (first.has_mixing()) return compose(second, PerturbativeTransform<Real>(first));
  auto a2 = detail::compose_alpha2(second, first);
  if (second.has_mixing()) {
    second.alpha1 = second.alpha1 * first.phases.asDiagonal();
    second.beta1 = second.beta1 * first.phases.conjugate().asDiagonal();
  }
  second.phases = second.phases.cwiseProduct(first.phases);
  second.alpha2_diag = std::move(a2);
  return std::move(second);
}

template <typename Real>
PerturbativeTransform<Real> compose(PerturbativeTransform<Real>&& second,
                                    PerturbativeTransform<Real>&& first) {
  if (!first.has_mixing()) {
    return compose(std::move(second), static_cast<const PerturbativeTransform<Real>&>(first));
  }
  return compose(static_cast<const PerturbativeTransform<Real>&>(second), std::move(first));
}

template <typename Real>
PerturbativeTransform<Real> compose(const PerturbativeTransform<Real>& second,
                                    const PerturbativeTransform<Real>& first) {
  return compose(second, PerturbativeTransform<Real>(first));
}

/// Inverse to retained order: (alpha^dagger, -beta^T).
template <typename Real>
PerturbativeTransform<Real> inverse(const PerturbativeTransform<Real>& t) {
  PerturbativeTransform<Real> r;
  r.phases = t.phases.conjugate();
  if (t.has_mixing()) {
    r.alpha1 = t.alpha1.adjoint();
    r.beta1 = -t.beta1.transpose();
  }
  if (t.alpha2_diag) r.alpha2_diag = t.alpha2_diag->conjugate();
  return r;
}

/// Order-by-order residuals of  alpha alpha^dagger - beta beta^dagger = 1  and
/// alpha beta^T - beta alpha^T = 0  (max norms).
template <typename Real>
struct IdentityResidual {
  Real order0_residual{0};
  Real order1_residual{0};
  // Not applicable when the transform carries no second-order diagonal.
  std::optional<Real> order2_diag_residual;
  Eigen::Index truncation{0};
  // Bound on the contribution of modes above `truncation` to the order-2 sums.
  Real tail_estimate{0};
  Real rounding_estimate{0};

  bool order2_within_tail() const {
    return !order2_diag_residual || *order2_diag_residual <= tail_estimate + rounding_estimate;
  }
};

/// Diagonal second-order mixing sum for in-mode index `n` (zero-based):
/// sum_m (|alpha1_mn|^2 - |beta1_mn|^2), with a power-law bound on the tail
/// beyond n_max. For the boost builders it equals -2 alpha2_nn.
template <typename Real>
SeriesValue<Real> diagonal_mixing_sum(const PerturbativeTransform<Real>& t, Eigen::Index n) {
  if (n < 0 || n >= t.n_max()) throw ArgumentError("diagonal_mixing_sum: index out of range");
  if (!t.has_mixing()) return {};
  NeumaierSum<Real> acc;
  std::vector<Real> magnitude(static_cast<std::size_t>(t.n_max()));
  for (Eigen::Index m = 0; m < t.n_max(); ++m) {
    const Real a = std::norm(t.alpha1(m, n));
    const Real b = std::norm(t.beta1(m, n));
    acc.add(a - b);
    magnitude[static_cast<std::size_t>(m)] = a + b;
  }
  return {acc.value(), power_law_tail<Real>(magnitude, static_cast<std::size_t>(t.n_max()), Real(5))};
}

/// Checks the Bogoliubov identities order by order. The second-order check runs
/// over the diagonal entries n <= n_max / 2 (both row and column forms), where
/// the truncated sums have headroom.
template <typename Real>
IdentityResidual<Real> check_identities(const PerturbativeTransform<Real>& t) {
  using Matrix = typename PerturbativeTransform<Real>::Matrix;
  IdentityResidual<Real> r;
  const Eigen::Index N = t.n_max();
  r.truncation = N;
  r.order0_residual = (t.phases.cwiseAbs2().array() - Real(1)).abs().maxCoeff();
  if (!t.has_mixing()) {
    if (t.alpha2_diag) {
      r.order2_diag_residual =
          (Real(2) * (t.phases.conjugate().cwiseProduct(*t.alpha2_diag)).real()).cwiseAbs().maxCoeff();
    }
    return r;
  }

  const auto& z = t.phases;
  const Matrix herm = t.alpha1 * z.conjugate().asDiagonal() + z.asDiagonal() * t.alpha1.adjoint();
  const Matrix sym = z.asDiagonal() * t.beta1.transpose() - t.beta1 * z.asDiagonal();
  r.order1_residual = std::max(herm.cwiseAbs().maxCoeff(), sym.cwiseAbs().maxCoeff());

  if (!t.alpha2_diag) return r;
  const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> a_abs2 = t.alpha1.cwiseAbs2();
  const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> b_abs2 = t.beta1.cwiseAbs2();
  const Eigen::Index rows = std::max<Eigen::Index>(1, N / 2);
  std::vector<Real> magnitude(static_cast<std::size_t>(N));
  Real worst = 0;
  for (Eigen::Index n = 0; n < rows; ++n) {
    const Real diag_term = 2 * std::real(std::conj(z(n)) * (*t.alpha2_diag)(n));
    for (int form = 0; form < 2; ++form) {
      NeumaierSum<Real> acc;
      acc.add(diag_term);
      Real mass = std::abs(diag_term);
      for (Eigen::Index m = 0; m < N; ++m) {
        const Real a = form == 0 ? a_abs2(n, m) : a_abs2(m, n);
        const Real b = form == 0 ? b_abs2(n, m) : b_abs2(m, n);
        acc.add(a - b);
        mass += a + b;
        magnitude[static_cast<std::size_t>(m)] = a + b;
      }
      worst = std::max(worst, std::abs(acc.value()));
      r.tail_estimate = std::max(
          r.tail_estimate, power_law_tail<Real>(magnitude, static_cast<std::size_t>(N), Real(5)));
      r.rounding_estimate = std::max(r.rounding_estimate, rounding_bound(mass));
    }
  }
  r.order2_diag_residual = worst;
  return r;
}

/// Self-describing text dump (17 significant digits, row-major) for diffing
/// against other implementations.
template <typename Real>
void dump_transform(std::ostream& os, const PerturbativeTransform<Real>& t) {
  char buf[96];
  auto put = [&](std::complex<Real> c) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", static_cast<double>(c.real()),
                  static_cast<double>(c.imag()));
    os << buf;
  };
  const Eigen::Index N = t.n_max();
  os << "cavneg-transform 1\n";
  os << "n_max " << N << "\n";
  os << "order0\n";
  for (Eigen::Index i = 0; i < N; ++i) put(t.phases(i));
  for (const auto* name : {"alpha1", "beta1"}) {
    const auto& block = std::string(name) == "alpha1" ? t.alpha1 : t.beta1;
    if (!t.has_mixing()) {
      os << name << " zero\n";
      continue;
    }
    os << name << " dense\n";
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) put(block(i, j));
  }
  if (t.alpha2_diag) {
    os << "alpha2_diag dense\n";
    for (Eigen::Index i = 0; i < N; ++i) put((*t.alpha2_diag)(i));
  } else {
    os << "alpha2_diag none\n";
  }
}

template <typename Real>
PerturbativeTransform<Real> read_transform(std::istream& is) {
  using T = PerturbativeTransform<Real>;
  auto expect = [&](const std::string& word) {
    std::string got;
    if (!(is >> got) || got != word) {
      throw ArgumentError("read_transform: expected '" + word + "', got '" + got + "'");
    }
  };
  auto get = [&]() {
    double re = 0, im = 0;
    if (!(is >> re >> im)) throw ArgumentError("read_transform: truncated entry list");
    return std::complex<Real>(static_cast<Real>(re), static_cast<Real>(im));
  };
  expect("cavneg-transform");
  expect("1");
  expect("n_max");
  Eigen::Index N = 0;
  if (!(is >> N) || N < 1) throw ArgumentError("read_transform: bad n_max");
  T t;
  expect("order0");
  t.phases.resize(N);
  for (Eigen::Index i = 0; i < N; ++i) t.phases(i) = get();
  for (auto* block : {&t.alpha1, &t.beta1}) {
    std::string name, kind;
    is >> name >> kind;
    if (kind == "zero") continue;
    if (kind != "dense") throw ArgumentError("read_transform: bad block kind '" + kind + "'");
    block->resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) (*block)(i, j) = get();
  }
  if (t.alpha1.size() != t.beta1.size()) throw ArgumentError("read_transform: inconsistent blocks");
  std::string name, kind;
  is >> name >> kind;
  if (name != "alpha2_diag") throw ArgumentError("read_transform: missing alpha2_diag");
  if (kind == "dense") {
    typename T::Vector a2(N);
    for (Eigen::Index i = 0; i < N; ++i) a2(i) = get();
    t.alpha2_diag = std::move(a2);
  }
  return t;
}

}  // namespace cavneg
