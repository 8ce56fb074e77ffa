#include "ssig/zpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace ssig {

ZPoly::ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) {
    normalize();
}

void ZPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::from_strings(const std::vector<std::string>& decimal) {
    std::vector<mpz_class> c;
    c.reserve(decimal.size());
    for (const auto& s : decimal) c.emplace_back(s);
    return ZPoly(std::move(c));
}

ZPoly ZPoly::constant(const mpz_class& v) { return ZPoly({v}); }

ZPoly ZPoly::x() { return ZPoly({mpz_class(0), mpz_class(1)}); }

ZPoly ZPoly::x_plus(long c) { return ZPoly({mpz_class(c), mpz_class(1)}); }

const mpz_class& ZPoly::coeff(int i) const {
    static const mpz_class zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

const mpz_class& ZPoly::lead() const {
    if (is_zero())
        throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
    std::vector<mpz_class> r(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return ZPoly();
    std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator*(const mpz_class& k) const {
    std::vector<mpz_class> r = c_;
    for (auto& v : r) v *= k;
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-() const { return *this * mpz_class(-1); }

mpz_class ZPoly::eval(const mpz_class& x) const {
    mpz_class acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

ZPoly ZPoly::derivative() const {
    std::vector<mpz_class> r;
    for (int i = 1; i <= degree(); ++i) r.push_back(c_[i] * i);
    return ZPoly(std::move(r));
}

ZPoly ZPoly::divexact(const ZPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (is_zero()) return ZPoly();
    if (degree() < d.degree())
        throw std::domain_error("inexact polynomial division");
    std::vector<mpz_class> rem = c_;
    std::vector<mpz_class> q(degree() - d.degree() + 1, mpz_class(0));
    for (int k = degree() - d.degree(); k >= 0; --k) {
        mpz_class& top = rem[k + d.degree()];
        if (top == 0) continue;
        mpz_class qk, r;
        mpz_tdiv_qr(qk.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(),
                    d.lead().get_mpz_t());
        if (r != 0) throw std::domain_error("inexact polynomial division");
        q[k] = qk;
        for (int i = 0; i <= d.degree(); ++i) rem[k + i] -= qk * d.c_[i];
    }
    for (const auto& v : rem)
        if (v != 0) throw std::domain_error("inexact polynomial division");
    return ZPoly(std::move(q));
}

std::optional<ZPoly> ZPoly::sqrt_exact() const {
    if (is_zero()) return ZPoly();
    if (degree() % 2 != 0 || lead() < 0) return std::nullopt;
    int m = degree() / 2;
    mpz_class ls;
    mpz_sqrt(ls.get_mpz_t(), lead().get_mpz_t());
    if (ls * ls != lead()) return std::nullopt;
    std::vector<mpz_class> g(m + 1, mpz_class(0));
    g[m] = ls;
    mpz_class two_lead = 2 * ls;
    for (int i = m - 1; i >= 0; --i) {
        mpz_class s = coeff(m + i);
        for (int j = i + 1; j <= m - 1; ++j) {
            int k = m + i - j;
            if (k >= i + 1 && k <= m - 1) s -= g[j] * g[k];
        }
        mpz_class gi, r;
        mpz_tdiv_qr(gi.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(),
                    two_lead.get_mpz_t());
        if (r != 0) return std::nullopt;
        g[i] = gi;
    }
    ZPoly root(std::move(g));
    if (root * root != *this) return std::nullopt;
    return root;
}

Poly<Fp> ZPoly::reduce(const FieldContext& F) const {
    std::vector<Fp> c;
    c.reserve(c_.size());
    mpz_class p(static_cast<unsigned long>(F.p()));
    for (const auto& v : c_) {
        mpz_class r = v % p;
        if (r < 0) r += p;
        c.emplace_back(F, r.get_ui());
    }
    return Poly<Fp>(F, std::move(c));
}

Poly<Fp2> ZPoly::reduce2(const FieldContext& F) const {
    Poly<Fp> base = reduce(F);
    std::vector<Fp2> c;
    c.reserve(base.coeffs().size());
    for (const auto& v : base.coeffs()) c.emplace_back(v);
    return Poly<Fp2>(F, std::move(c));
}

std::string ZPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!first) os << (c_[i] > 0 ? " + " : " - ");
        else if (c_[i] < 0) os << "-";
        mpz_class a = abs(c_[i]);
        first = false;
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << "X";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

ZBiPoly derivative_y(const ZBiPoly& f) {
    ZBiPoly r;
    for (std::size_t k = 1; k < f.size(); ++k)
        r.push_back(f[k] * mpz_class(static_cast<long>(k)));
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return r;
}

ZPoly eval_x(const ZBiPoly& f, const mpz_class& x0) {
    std::vector<mpz_class> c;
    c.reserve(f.size());
    for (const auto& coeff_poly : f) c.push_back(coeff_poly.eval(x0));
    return ZPoly(std::move(c));
}

namespace {

int ydeg(const ZBiPoly& f) {
    int d = static_cast<int>(f.size()) - 1;
    while (d >= 0 && f[d].is_zero()) --d;
    return d;
}

}  // namespace

ZPoly resultant_y(const ZBiPoly& f, const ZBiPoly& g) {
    int n = ydeg(f), m = ydeg(g);
    if (n < 1 || m < 0)
        throw std::domain_error("resultant requires deg_Y f >= 1, g nonzero");
    if (m == 0) {
        // Res(f, c) = c^n.
        ZPoly r = ZPoly::constant(1);
        for (int i = 0; i < n; ++i) r = r * g[0];
        return r;
    }
    int N = n + m;
    std::vector<std::vector<ZPoly>> M(N, std::vector<ZPoly>(N));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) M[i][i + k] = f[n - k];
    for (int j = 0; j < n; ++j)
        for (int k = 0; k <= m; ++k) M[m + j][j + k] = g[m - k];

    // Bareiss fraction-free elimination.
    int sign = 1;
    ZPoly prev = ZPoly::constant(1);
    for (int k = 0; k + 1 < N; ++k) {
        if (M[k][k].is_zero()) {
            int r = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i][k].is_zero()) {
                    r = i;
                    break;
                }
            if (r < 0) return ZPoly();  // singular: resultant vanishes
            std::swap(M[k], M[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j)
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]).divexact(prev);
            M[i][k] = ZPoly();
        }
        prev = M[k][k];
    }
    ZPoly det = M[N - 1][N - 1];
    return sign < 0 ? -det : det;
}

}  // namespace ssig
