#pragma once
// Class groups of imaginary quadratic orders at desk scale, via reduced
// primitive positive-definite binary quadratic forms with int64 entries.

#include <cstdint>
#include <optional>
#include <vector>

namespace ssig {

// a x^2 + b x y + c y^2 with a > 0 and b^2 - 4ac < 0.
struct QuadForm {
    std::int64_t a = 0, b = 0, c = 0;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm&) const = default;
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

// All reduced primitive forms of discriminant D (requires D < 0 and
// D = 0 or 1 mod 4), sorted.
std::vector<QuadForm> reduced_forms(std::int64_t D);

// h(D) = number of reduced primitive forms; memoized.
int class_number(std::int64_t D);

QuadForm principal_form(std::int64_t D);

// Gauss reduction of a positive definite form.
QuadForm reduce(QuadForm f);

// Composition of two primitive forms of the same discriminant (Dirichlet
// composition through concordant representatives); returns the reduced
// composite.
QuadForm compose(const QuadForm& f, const QuadForm& g);

// The reduced class of a form of norm ell (prime), when ell is split or
// ramified in discriminant D; nullopt when ell is inert (or when only an
// imprimitive norm-ell form exists, as for 2 in a conductor-2 order).
std::optional<QuadForm> prime_form(std::int64_t ell, std::int64_t D);

// Order of that class in the class group; throws std::domain_error when
// prime_form(ell, D) does not exist.
int prime_form_order(std::int64_t ell, std::int64_t D);

}  // namespace ssig
