#include "cavneg/negativity.hpp"

#include <cmath>

#include "cavneg/errors.hpp"

namespace cavneg {

NegativityResult make_negativity_result(double deficit_scaled, double h, int k, double M,
                                        double truncation_tail) {
  NegativityResult r;
  r.deficit_scaled = deficit_scaled;
  r.negativity = 0.5 - h * h * deficit_scaled;
  r.h_used = h;
  r.k_used = k;
  r.validity = assess_validity(k, h, M);
  r.truncation_tail = truncation_tail;
  return r;
}

double log_negativity(const NegativityResult& r) {
  if (r.negativity < 0.0) throw DomainError("log_negativity: negativity is negative");
  return std::log1p(r.negativity);
}

}  // namespace cavneg
