#pragma once
// Short Weierstrass curves over F_p: invariants, twists, supersingularity
// by exact point counting, rational ell-torsion kernels, and Velu images.

#include <cstdint>
#include <utility>
#include <vector>

#include "ssig/arith.hpp"

namespace ssig {

// y^2 = x^3 + a4 x + a6, nonsingular.
struct Curve {
    Fp a4, a6;
};

Curve make_curve(const FieldContext& F, std::int64_t a4, std::int64_t a6);
Curve make_curve(Fp a4, Fp a6);

struct InvariantTriple {
    Fp j, c4, c6;
};

InvariantTriple invariants(const Curve& E);
Fp j_invariant(const Curve& E);

// a_p = 0, tested by summing Legendre symbols of the cubic (exact count).
bool is_supersingular(const Curve& E);

// Ascending list of supersingular j-invariants rational over F_p; memoized.
const std::vector<Fp>& supersingular_j_list(const FieldContext& F);

// The two F_p-isomorphism classes with j-invariant j: a fixed model and its
// twist companion (quadratic twist for j != 0, 1728; for the special j the
// appropriate sextic/quartic companion).  The two are never F_p-isomorphic.
std::pair<Curve, Curve> twists_from_j(const FieldContext& F, const Fp& j);

Curve quadratic_twist(const Curve& E);

bool fp_isomorphic(const Curve& E1, const Curve& E2);

// An F_p-stable order-ell subgroup, identified by the root x0 of its kernel
// polynomial x - x0 (ell in {2, 3}).
struct KernelDescriptor {
    int ell = 0;
    Fp x0;
};

// All F_p-stable order-ell subgroups of E.
std::vector<KernelDescriptor> rational_ell_kernels(const Curve& E, int ell);

// Velu codomain of the quotient by the kernel.
Curve isogeny_codomain(const Curve& E, const KernelDescriptor& K);

}  // namespace ssig
