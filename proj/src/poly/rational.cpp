#include "darboux/poly/rational.hpp"

#include <mpfr.h>

namespace darboux {

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

double to_double(const Rational& r) {
  mpfr_t tmp;
  mpfr_init2(tmp, 53);
  mpfr_set_q(tmp, r.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return d;
}

Integer numerator_of(const Rational& r) { return r.get_num(); }

Integer denominator_of(const Rational& r) { return r.get_den(); }

}  // namespace darboux
