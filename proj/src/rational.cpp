#include "tsvs/rational.hpp"

namespace tsvs {

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::binomial(unsigned long n, unsigned long k) {
    if (k > n) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rational(r);
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace tsvs
