#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace cavneg {

/// Compensated (Neumaier) accumulator.
template <typename Real>
class NeumaierSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  NeumaierSum& operator+=(Real x) {
    add(x);
    return *this;
  }
  Real value() const { return sum_ + compensation_; }

 private:
  Real sum_{0};
  Real compensation_{0};
};

/// A truncated series value together with a bound on the neglected tail.
template <typename Real>
struct SeriesValue {
  Real value{0};
  Real tail{0};
};

/// Bound on sum_{m > last_index} t_m for a sequence decaying like m^-exponent.
///
/// `terms` holds |t_m| for the consecutive indices ending at `last_index`. The
/// envelope C m^-exponent is fitted on the final sixteenth of the window (at
/// least two entries, so parity-vanishing terms do not hide the envelope) and
/// integrated from last_index to infinity.
template <typename Real>
Real power_law_tail(std::span<const Real> terms, std::size_t last_index, Real exponent) {
  if (terms.empty() || last_index == 0) return Real(0);
  const std::size_t window = std::min(terms.size(), std::max<std::size_t>(2, terms.size() / 16));
  const Real n_last = static_cast<Real>(last_index);
  Real envelope = 0;
  for (std::size_t i = terms.size() - window; i < terms.size(); ++i) {
    const Real m = static_cast<Real>(last_index - (terms.size() - 1 - i));
    envelope = std::max(envelope, std::abs(terms[i]) * std::pow(m / n_last, exponent));
  }
  return envelope * n_last / (exponent - Real(1));
}

/// Rounding allowance for a compensated sum whose terms are each evaluated to a
/// few ulps; `abs_mass` is the sum of absolute values entering the result.
template <typename Real>
Real rounding_bound(Real abs_mass) {
  return Real(16) * std::numeric_limits<Real>::epsilon() * abs_mass;
}

}  // namespace cavneg
