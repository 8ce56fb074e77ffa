#include "ssig/curves.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace ssig {

namespace {

Fp cubic_disc_factor(const Curve& E) {
    // 4 a4^3 + 27 a6^2, zero iff the curve is singular.
    Fp four = Fp(E.a4.field(), 4), twentyseven = Fp(E.a4.field(), 27);
    return four * E.a4 * E.a4 * E.a4 + twentyseven * E.a6 * E.a6;
}

}  // namespace

Curve make_curve(Fp a4, Fp a6) {
    Curve E{a4, a6};
    if (cubic_disc_factor(E).is_zero())
        throw std::domain_error("singular curve model");
    return E;
}

Curve make_curve(const FieldContext& F, std::int64_t a4, std::int64_t a6) {
    return make_curve(Fp::from_int(F, a4), Fp::from_int(F, a6));
}

InvariantTriple invariants(const Curve& E) {
    const FieldContext& F = E.a4.field();
    Fp c4 = Fp::from_int(F, -48) * E.a4;
    Fp c6 = Fp::from_int(F, -864) * E.a6;
    Fp denom = cubic_disc_factor(E);
    if (denom.is_zero()) throw std::domain_error("singular curve model");
    Fp j = Fp(F, 6912) * E.a4 * E.a4 * E.a4 / denom;
    return InvariantTriple{j, c4, c6};
}

Fp j_invariant(const Curve& E) { return invariants(E).j; }

bool is_supersingular(const Curve& E) {
    const FieldContext& F = E.a4.field();
    std::uint64_t p = F.p(), a4 = E.a4.value(), a6 = E.a6.value();
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t x2 = F.mul(x, x);
        std::uint64_t v = F.add(F.mul(x2, x), F.add(F.mul(a4, x), a6));
        sum += F.legendre(v);
    }
    return sum == 0;
}

const std::vector<Fp>& supersingular_j_list(const FieldContext& F) {
    static std::mutex mtx;
    static std::map<std::uint64_t, std::unique_ptr<std::vector<Fp>>> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(F.p());
        if (it != cache.end()) return *it->second;
    }
    auto list = std::make_unique<std::vector<Fp>>();
    for (std::uint64_t j = 0; j < F.p(); ++j) {
        Curve E = twists_from_j(F, Fp(F, j)).first;
        if (is_supersingular(E)) list->push_back(Fp(F, j));
    }
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(F.p());
    if (it == cache.end()) it = cache.emplace(F.p(), std::move(list)).first;
    return *it->second;
}

std::pair<Curve, Curve> twists_from_j(const FieldContext& F, const Fp& j) {
    Fp n(F, F.nonresidue());
    if (j.is_zero()) {
        // (0, 1) and (0, n^3): n^3 is not a sixth power (it is not even a
        // square), so the two are never isomorphic.
        return {make_curve(Fp(F, 0), Fp(F, 1)), make_curve(Fp(F, 0), n * n * n)};
    }
    if (j == Fp(F, 1728 % F.p())) {
        // Companion (m, 0) with m outside F_p*^4.  For p = 1 mod 4 the
        // squares properly contain the fourth powers, so n^2 works; for
        // p = 3 mod 4 the fourth powers equal the squares, so n itself is
        // needed (n^2 would give an isomorphic model).
        Fp m = (F.p() % 4 == 1) ? n * n : n;
        return {make_curve(Fp(F, 1), Fp(F, 0)), make_curve(m, Fp(F, 0))};
    }
    // t = 27 j / (4 (1728 - j)) gives y^2 = x^3 + t x + t with invariant j.
    Fp t = Fp(F, 27) * j / (Fp(F, 4) * (Fp::from_int(F, 1728) - j));
    return {make_curve(t, t), make_curve(t * n * n, t * n * n * n)};
}

Curve quadratic_twist(const Curve& E) {
    const FieldContext& F = E.a4.field();
    Fp n(F, F.nonresidue());
    return Curve{E.a4 * n * n, E.a6 * n * n * n};
}

bool fp_isomorphic(const Curve& E1, const Curve& E2) {
    const FieldContext& F = E1.a4.field();
    InvariantTriple i1 = invariants(E1), i2 = invariants(E2);
    if (i1.j != i2.j) return false;
    if (i1.c4.is_zero()) {
        // j = 0: isomorphic iff c6 ratio is a sixth power.
        Fp t = i2.c6 / i1.c6;
        std::uint64_t e = (F.p() - 1) / std::gcd<std::uint64_t>(6, F.p() - 1);
        return t.pow(e) == Fp(F, 1);
    }
    if (i1.c6.is_zero()) {
        // j = 1728: isomorphic iff c4 ratio is a fourth power.
        Fp t = i2.c4 / i1.c4;
        std::uint64_t e = (F.p() - 1) / std::gcd<std::uint64_t>(4, F.p() - 1);
        return t.pow(e) == Fp(F, 1);
    }
    // Generic: u^2 = (c6'/c6)/(c4'/c4) must be consistent and a square.
    Fp t = (i2.c6 * i1.c4) / (i1.c6 * i2.c4);
    if (t * t != i2.c4 / i1.c4) return false;
    return t.legendre() == 1;
}

std::vector<KernelDescriptor> rational_ell_kernels(const Curve& E, int ell) {
    const FieldContext& F = E.a4.field();
    if (ell != 2 && ell != 3)
        throw std::domain_error("rational kernels: ell must be 2 or 3, got " +
                                std::to_string(ell));
    Poly<Fp> psi(F);
    if (ell == 2) {
        // x^3 + a4 x + a6
        psi = Poly<Fp>(F, {E.a6, E.a4, Fp(F, 0), Fp(F, 1)});
    } else {
        // 3 x^4 + 6 a4 x^2 + 12 a6 x - a4^2
        psi = Poly<Fp>(F, {-(E.a4 * E.a4), Fp(F, 12) * E.a6, Fp(F, 6) * E.a4,
                           Fp(F, 0), Fp(F, 3)});
    }
    std::vector<KernelDescriptor> out;
    for (const auto& [x0, mult] : roots_with_multiplicity(psi)) {
        if (mult != 1)
            throw std::logic_error("division polynomial has a repeated root");
        out.push_back(KernelDescriptor{ell, x0});
    }
    return out;
}

Curve isogeny_codomain(const Curve& E, const KernelDescriptor& K) {
    const FieldContext& F = E.a4.field();
    const Fp& x0 = K.x0;
    if (K.ell == 2) {
        Fp t = Fp(F, 3) * x0 * x0 + E.a4;
        Fp w = x0 * t;
        return make_curve(E.a4 - Fp(F, 5) * t, E.a6 - Fp(F, 7) * w);
    }
    if (K.ell == 3) {
        Fp gx = Fp(F, 3) * x0 * x0 + E.a4;
        Fp u = Fp(F, 4) * (x0 * x0 * x0 + E.a4 * x0 + E.a6);  // 4 y0^2
        Fp v = Fp(F, 2) * gx;
        Fp w = u + v * x0;
        return make_curve(E.a4 - Fp(F, 5) * v, E.a6 - Fp(F, 7) * w);
    }
    throw std::domain_error("isogeny codomain: ell must be 2 or 3");
}

}  // namespace ssig
