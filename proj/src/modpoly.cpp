#include "ssig/modpoly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ssig {

namespace {

ZPoly zp(const std::vector<std::string>& decimal_low_first) {
    return ZPoly::from_strings(decimal_low_first);
}

ZBiPoly build_phi2() {
    // X^3 + Y^3 - X^2 Y^2 + 1488 (X^2 Y + X Y^2) - 162000 (X^2 + Y^2)
    // + 40773375 X Y + 8748000000 (X + Y) - 157464000000000
    ZBiPoly f(4);
    f[3] = zp({"1"});
    f[2] = zp({"-162000", "1488", "-1"});
    f[1] = zp({"8748000000", "40773375", "1488"});
    f[0] = zp({"-157464000000000", "8748000000", "-162000", "1"});
    return f;
}

ZBiPoly build_phi3() {
    // X^4 + Y^4 - X^3 Y^3 + 2232 (X^3 Y^2 + X^2 Y^3)
    // - 1069956 (X^3 Y + X Y^3) + 36864000 (X^3 + Y^3)
    // + 2587918086 X^2 Y^2 + 8900222976000 (X^2 Y + X Y^2)
    // + 452984832000000 (X^2 + Y^2) - 770845966336000000 X Y
    // + 1855425871872000000000 (X + Y)
    ZBiPoly f(5);
    f[4] = zp({"1"});
    f[3] = zp({"36864000", "-1069956", "2232", "-1"});
    f[2] = zp({"452984832000000", "8900222976000", "2587918086", "2232"});
    f[1] = zp({"1855425871872000000000", "-770845966336000000",
               "8900222976000", "-1069956"});
    f[0] = zp({"0", "1855425871872000000000", "452984832000000", "36864000",
               "1"});
    return f;
}

const std::map<int, ZPoly>& hilbert_table() {
    static const std::map<int, ZPoly> table = [] {
        std::map<int, ZPoly> t;
        t.emplace(-3, zp({"0", "1"}));
        t.emplace(-4, zp({"-1728", "1"}));
        t.emplace(-7, zp({"3375", "1"}));
        t.emplace(-8, zp({"-8000", "1"}));
        t.emplace(-11, zp({"32768", "1"}));
        t.emplace(-12, zp({"-54000", "1"}));
        t.emplace(-15, zp({"-121287375", "191025", "1"}));
        t.emplace(-20, zp({"-681472000", "-1264000", "1"}));
        t.emplace(-27, zp({"12288000", "1"}));
        t.emplace(-32, zp({"12167000000", "-52250000", "1"}));
        t.emplace(-35, zp({"-134217728000", "117964800", "1"}));
        // The next four satisfy (and are re-derived in the tests from)
        //   H_{-36}^2  = Phi_3(1728, Y)
        //   H_{-72}    = Phi_3(8000, Y) / (Y - 8000)^2
        //   H_{-99}    = Phi_3(-32768, Y) / (Y + 32768)^2
        //   H_{-108}   = Phi_3(54000, Y) / (Y - 54000)
        t.emplace(-36, zp({"-1790957481984", "-153542016", "1"}));
        t.emplace(-72, zp({"232381513792000000", "-377674768000", "1"}));
        t.emplace(-99, zp({"-56171326053810176", "37616060956672", "1"}));
        t.emplace(-108, zp({"-1879994705688000000000", "224179462188000000",
                            "-151013228706000", "1"}));
        return t;
    }();
    return table;
}

struct ReducedPhi {
    std::vector<Poly<Fp>> rows;  // rows[k] = coefficient of Y^k, in F_p[X]
};

const ReducedPhi& reduced_phi(const FieldContext& F, int ell) {
    static std::mutex mtx;
    static std::map<std::pair<std::uint64_t, int>, std::unique_ptr<ReducedPhi>>
        cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(F.p(), ell);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const ZBiPoly& phi = classical_modular_poly(ell);
        auto rp = std::make_unique<ReducedPhi>();
        rp->rows.reserve(phi.size());
        for (const auto& row : phi) rp->rows.push_back(row.reduce(F));
        it = cache.emplace(key, std::move(rp)).first;
    }
    return *it->second;
}

Fp2 eval_base_poly(const Poly<Fp>& f, const Fp2& x) {
    const FieldContext& F = x.field();
    Fp2 acc(F, 0, 0);
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Fp2(*it);
    return acc;
}

}  // namespace

const ZBiPoly& classical_modular_poly(int ell) {
    static const ZBiPoly phi2 = build_phi2();
    static const ZBiPoly phi3 = build_phi3();
    if (ell == 2) return phi2;
    if (ell == 3) return phi3;
    throw std::domain_error("modular polynomial: ell must be 2 or 3, got " +
                            std::to_string(ell));
}

const std::vector<int>& hilbert_discriminants() {
    static const std::vector<int> ds = [] {
        std::vector<int> v;
        for (const auto& [d, h] : hilbert_table()) v.push_back(d);
        return v;
    }();
    return ds;
}

const ZPoly& hilbert_poly(int D) {
    const auto& t = hilbert_table();
    auto it = t.find(D);
    if (it == t.end()) {
        std::ostringstream os;
        os << "unsupported Hilbert class polynomial discriminant " << D
           << "; supported:";
        for (const auto& [d, h] : t) os << " " << d;
        throw std::domain_error(os.str());
    }
    return it->second;
}

Poly<Fp2> modular_poly_at(const FieldContext& F, int ell, const Fp2& j) {
    const ReducedPhi& rp = reduced_phi(F, ell);
    std::vector<Fp2> c;
    c.reserve(rp.rows.size());
    for (const auto& row : rp.rows) c.push_back(eval_base_poly(row, j));
    return Poly<Fp2>(F, std::move(c));
}

std::vector<std::pair<Fp2, int>> isogeny_neighbors(const FieldContext& F,
                                                   int ell, const Fp2& j) {
    return roots_with_multiplicity(modular_poly_at(F, ell, j));
}

const ZPoly& diagonal_poly(int ell) {
    static const ZPoly d2 = [] {
        const ZBiPoly& phi = classical_modular_poly(2);
        ZPoly x = ZPoly::x(), acc, pw = ZPoly::constant(1);
        for (const auto& row : phi) {
            acc = acc + row * pw;
            pw = pw * x;
        }
        return acc;
    }();
    static const ZPoly d3 = [] {
        const ZBiPoly& phi = classical_modular_poly(3);
        ZPoly x = ZPoly::x(), acc, pw = ZPoly::constant(1);
        for (const auto& row : phi) {
            acc = acc + row * pw;
            pw = pw * x;
        }
        return acc;
    }();
    if (ell == 2) return d2;
    if (ell == 3) return d3;
    throw std::domain_error("diagonal polynomial: ell must be 2 or 3");
}

const ZPoly& discriminant_resultant(int ell) {
    static const ZPoly r2 = [] {
        const ZBiPoly& phi = classical_modular_poly(2);
        return resultant_y(phi, derivative_y(phi));
    }();
    static const ZPoly r3 = [] {
        const ZBiPoly& phi = classical_modular_poly(3);
        return resultant_y(phi, derivative_y(phi));
    }();
    if (ell == 2) return r2;
    if (ell == 3) return r3;
    throw std::domain_error("discriminant resultant: ell must be 2 or 3");
}

const ZPoly& second_derivative_resultant() {
    static const ZPoly r = [] {
        const ZBiPoly& phi = classical_modular_poly(2);
        return resultant_y(derivative_y(phi), derivative_y(derivative_y(phi)));
    }();
    return r;
}

}  // namespace ssig
