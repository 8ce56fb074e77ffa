#pragma once
// Exact integer polynomials (GMP-backed): arithmetic, exact division and
// square roots, reduction mod p, and resultants of bivariate polynomials
// via fraction-free elimination on the Sylvester matrix.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "ssig/arith.hpp"

namespace ssig {

// Polynomial over Z, coefficients low degree first, normalized (no trailing
// zeros; the zero polynomial has no coefficients).
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<mpz_class> coeffs);

    // Coefficients as decimal strings, low degree first.
    static ZPoly from_strings(const std::vector<std::string>& decimal);
    static ZPoly constant(const mpz_class& v);
    static ZPoly x();
    // x + c for machine integers, a convenience for factored test forms.
    static ZPoly x_plus(long c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpz_class& coeff(int i) const;
    const mpz_class& lead() const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const mpz_class& k) const;
    ZPoly operator-() const;
    bool operator==(const ZPoly& o) const { return c_ == o.c_; }
    bool operator!=(const ZPoly& o) const { return !(*this == o); }

    mpz_class eval(const mpz_class& x) const;
    ZPoly derivative() const;

    // Exact quotient; throws std::domain_error unless d divides exactly.
    ZPoly divexact(const ZPoly& d) const;
    // Exact polynomial square root, if one exists (with positive lead).
    std::optional<ZPoly> sqrt_exact() const;

    Poly<Fp> reduce(const FieldContext& F) const;
    Poly<Fp2> reduce2(const FieldContext& F) const;

    std::string to_string() const;

private:
    void normalize();
    std::vector<mpz_class> c_;
};

// Polynomial in Y whose coefficients are polynomials in X over Z;
// entry k is the coefficient of Y^k.
using ZBiPoly = std::vector<ZPoly>;

ZBiPoly derivative_y(const ZBiPoly& f);
// Evaluate in Y at an integer polynomial argument? Not needed; evaluate the
// X-coefficients at a fixed integer, producing a univariate in Y.
ZPoly eval_x(const ZBiPoly& f, const mpz_class& x0);

// Resultant of f and g with respect to Y (standard Sylvester determinant),
// an element of Z[X].  Both inputs must be nonzero in Y-degree >= 1.
ZPoly resultant_y(const ZBiPoly& f, const ZBiPoly& g);

}  // namespace ssig
