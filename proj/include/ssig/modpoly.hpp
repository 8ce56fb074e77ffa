#pragma once
// Classical modular polynomials for degrees 2 and 3, Hilbert class
// polynomials for the discriminants that label special vertices, and the
// derived diagonal / resultant polynomials used by the structure checks.

#include <utility>
#include <vector>

#include "ssig/arith.hpp"
#include "ssig/zpoly.hpp"

namespace ssig {

// Phi_ell(X, Y) as a polynomial in Y over Z[X]; symmetric in X and Y.
const ZBiPoly& classical_modular_poly(int ell);

// Discriminants with an embedded Hilbert class polynomial.
const std::vector<int>& hilbert_discriminants();
const ZPoly& hilbert_poly(int D);

// Phi_ell(j, Y) over F_{p^2} (monic of degree ell + 1).
Poly<Fp2> modular_poly_at(const FieldContext& F, int ell, const Fp2& j);

// Multiset of neighbors of j in the ell-isogeny graph over F_{p^2},
// i.e. roots of Phi_ell(j, Y) with multiplicity, canonically ordered.
std::vector<std::pair<Fp2, int>> isogeny_neighbors(const FieldContext& F,
                                                   int ell, const Fp2& j);

// Phi_ell(X, X): vanishing marks j-invariants with an ell-isogeny to a
// quadratic twist of themselves.
const ZPoly& diagonal_poly(int ell);

// Res_Y(Phi_ell(X, Y), d/dY Phi_ell(X, Y)): vanishing marks j-invariants
// with a repeated neighbor (multi-edge sources).
const ZPoly& discriminant_resultant(int ell);

// Res_Y(d/dY Phi_2(X, Y), d^2/dY^2 Phi_2(X, Y)): vanishing is necessary for
// the three 2-isogeny neighbors of a j-invariant to collapse to one value.
const ZPoly& second_derivative_resultant();

}  // namespace ssig
