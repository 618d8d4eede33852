#include "chanmom/rational.hpp"

#include <stdexcept>

namespace chanmom {

Rational rational_pow(const Rational& base, int exponent) {
    Integer num, den;
    if (exponent >= 0) {
        mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
        mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    } else {
        if (base == 0) throw std::domain_error("zero to a negative power");
        mpz_pow_ui(num.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(-exponent));
        mpz_pow_ui(den.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(-exponent));
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational inverse_power(long base, int exponent) {
    return rational_pow(Rational(base), -exponent);
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    q.canonicalize();
    return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

}  // namespace chanmom
