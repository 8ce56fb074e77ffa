#pragma once
// Prime-field and quadratic-extension arithmetic at desk scale (5 <= p < 2^31),
// dense polynomials over both fields, and deterministic root finding.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ssig {

bool is_prime_u64(std::uint64_t n);

// Context for F_p.  Instances are interned: obtain them through
// field_context(p), which keeps every context alive for the rest of the
// program so elements may hold plain pointers to their field.
class FieldContext {
public:
    explicit FieldContext(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    // Smallest quadratic nonresidue; the quadratic extension is F_p(s) with
    // s^2 = nonresidue().
    std::uint64_t nonresidue() const { return nonresidue_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(a) * b % p_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
    // Reduces a possibly negative machine integer into [0, p).
    std::uint64_t reduce_int(std::int64_t v) const;

    // Legendre symbol in {-1, 0, +1}.  Backed by a table of squares for
    // small p (built lazily), by Euler's criterion otherwise.
    int legendre(std::uint64_t a) const;
    // The smaller of the two square roots of a, when a is a square.
    std::optional<std::uint64_t> sqrt(std::uint64_t a) const;

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;

private:
    void ensure_legendre_table() const;

    std::uint64_t p_;
    std::uint64_t nonresidue_;
    mutable std::vector<std::int8_t> legendre_table_;  // empty until built
};

const FieldContext& field_context(std::uint64_t p);

// Element of F_p.  Default-constructed elements belong to no field and may
// only be assigned to.
class Fp {
public:
    Fp() : v_(0), F_(nullptr) {}
    Fp(const FieldContext& F, std::uint64_t v) : v_(v % F.p()), F_(&F) {}
    static Fp from_int(const FieldContext& F, std::int64_t v) {
        return Fp(F, F.reduce_int(v));
    }

    std::uint64_t value() const { return v_; }
    const FieldContext& field() const {
        require_field();
        return *F_;
    }
    bool is_zero() const { return v_ == 0; }

    Fp operator+(const Fp& o) const { return Fp(same(o), F_->add(v_, o.v_)); }
    Fp operator-(const Fp& o) const { return Fp(same(o), F_->sub(v_, o.v_)); }
    Fp operator*(const Fp& o) const { return Fp(same(o), F_->mul(v_, o.v_)); }
    Fp operator/(const Fp& o) const {
        return Fp(same(o), F_->mul(v_, F_->inv(o.v_)));
    }
    Fp operator-() const {
        require_field();
        return Fp(*F_, F_->neg(v_));
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const {
        same(o);
        return v_ == o.v_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }
    bool operator<(const Fp& o) const {
        same(o);
        return v_ < o.v_;
    }

    Fp pow(std::uint64_t e) const {
        require_field();
        return Fp(*F_, F_->pow(v_, e));
    }
    Fp inv() const {
        require_field();
        return Fp(*F_, F_->inv(v_));
    }
    int legendre() const {
        require_field();
        return F_->legendre(v_);
    }
    std::optional<Fp> sqrt() const;

private:
    void require_field() const {
        if (F_ == nullptr)
            throw std::logic_error("use of a field-less Fp element");
    }
    const FieldContext& same(const Fp& o) const {
        require_field();
        o.require_field();
        if (F_ != o.F_)
            throw std::invalid_argument("mixed-field Fp arithmetic");
        return *F_;
    }

    std::uint64_t v_;
    const FieldContext* F_;
};

std::ostream& operator<<(std::ostream& os, const Fp& x);

// Element a + b*s of F_{p^2} = F_p(s), s^2 = nonresidue.
class Fp2 {
public:
    Fp2() : a_(0), b_(0), F_(nullptr) {}
    Fp2(const FieldContext& F, std::uint64_t a, std::uint64_t b)
        : a_(a % F.p()), b_(b % F.p()), F_(&F) {}
    explicit Fp2(const Fp& a) : a_(a.value()), b_(0), F_(&a.field()) {}

    Fp a() const { return Fp(field(), a_); }
    Fp b() const { return Fp(field(), b_); }
    std::uint64_t a_value() const { return a_; }
    std::uint64_t b_value() const { return b_; }
    const FieldContext& field() const {
        require_field();
        return *F_;
    }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool in_base() const { return b_ == 0; }
    Fp base_value() const {
        if (!in_base())
            throw std::domain_error("Fp2 element is not in the base field");
        return Fp(field(), a_);
    }

    Fp2 operator+(const Fp2& o) const {
        const FieldContext& F = same(o);
        return Fp2(F, F.add(a_, o.a_), F.add(b_, o.b_));
    }
    Fp2 operator-(const Fp2& o) const {
        const FieldContext& F = same(o);
        return Fp2(F, F.sub(a_, o.a_), F.sub(b_, o.b_));
    }
    Fp2 operator*(const Fp2& o) const {
        const FieldContext& F = same(o);
        // (a + b s)(c + d s) = ac + bd n + (ad + bc) s
        std::uint64_t ac = F.mul(a_, o.a_), bd = F.mul(b_, o.b_);
        std::uint64_t ad = F.mul(a_, o.b_), bc = F.mul(b_, o.a_);
        return Fp2(F, F.add(ac, F.mul(bd, F.nonresidue())), F.add(ad, bc));
    }
    Fp2 operator-() const {
        const FieldContext& F = field();
        return Fp2(F, F.neg(a_), F.neg(b_));
    }
    Fp2 operator/(const Fp2& o) const { return *this * o.inv(); }
    Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
    Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
    Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

    bool operator==(const Fp2& o) const {
        same(o);
        return a_ == o.a_ && b_ == o.b_;
    }
    bool operator!=(const Fp2& o) const { return !(*this == o); }
    // Canonical label order: lexicographic by (a, b).
    bool operator<(const Fp2& o) const {
        same(o);
        return a_ != o.a_ ? a_ < o.a_ : b_ < o.b_;
    }

    Fp norm() const {  // a^2 - n b^2
        const FieldContext& F = field();
        return Fp(F, F.sub(F.mul(a_, a_), F.mul(F.nonresidue(), F.mul(b_, b_))));
    }
    Fp2 conj() const {
        const FieldContext& F = field();
        return Fp2(F, a_, F.neg(b_));
    }
    Fp2 frobenius() const { return conj(); }
    Fp2 inv() const;
    Fp2 pow(std::uint64_t e) const;

    std::string to_string() const;

private:
    void require_field() const {
        if (F_ == nullptr)
            throw std::logic_error("use of a field-less Fp2 element");
    }
    const FieldContext& same(const Fp2& o) const {
        require_field();
        o.require_field();
        if (F_ != o.F_)
            throw std::invalid_argument("mixed-field Fp2 arithmetic");
        return *F_;
    }

    std::uint64_t a_, b_;
    const FieldContext* F_;
};

std::ostream& operator<<(std::ostream& os, const Fp2& x);

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Fp> {
    static Fp zero(const FieldContext& F) { return Fp(F, 0); }
    static Fp one(const FieldContext& F) { return Fp(F, 1); }
    static std::uint64_t size(const FieldContext& F) { return F.p(); }
    static Fp element_at(const FieldContext& F, std::uint64_t i) {
        return Fp(F, i % F.p());
    }
};

template <>
struct FieldTraits<Fp2> {
    static Fp2 zero(const FieldContext& F) { return Fp2(F, 0, 0); }
    static Fp2 one(const FieldContext& F) { return Fp2(F, 1, 0); }
    static std::uint64_t size(const FieldContext& F) { return F.p() * F.p(); }
    static Fp2 element_at(const FieldContext& F, std::uint64_t i) {
        return Fp2(F, i % F.p(), (i / F.p()) % F.p());
    }
};

// Dense univariate polynomial over K in {Fp, Fp2}; coefficients are stored
// low degree first and kept normalized (no trailing zeros; zero polynomial
// has an empty coefficient vector).
template <class K>
class Poly {
public:
    explicit Poly(const FieldContext& F) : F_(&F) {}
    Poly(const FieldContext& F, std::vector<K> coeffs)
        : c_(std::move(coeffs)), F_(&F) {
        normalize();
    }

    static Poly zero(const FieldContext& F) { return Poly(F); }
    static Poly constant(const FieldContext& F, K v) {
        return Poly(F, {std::move(v)});
    }
    static Poly x(const FieldContext& F) {
        return Poly(F, {FieldTraits<K>::zero(F), FieldTraits<K>::one(F)});
    }
    // x - r
    static Poly x_minus(const K& r) {
        const FieldContext& F = r.field();
        return Poly(F, {-r, FieldTraits<K>::one(F)});
    }

    const FieldContext& field() const { return *F_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size()))
            return FieldTraits<K>::zero(*F_);
        return c_[i];
    }
    K lead() const {
        if (is_zero())
            throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    K eval(const K& x) const {
        K acc = FieldTraits<K>::zero(*F_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly operator+(const Poly& o) const {
        Poly r(*F_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), FieldTraits<K>::zero(*F_));
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i < c_.size()) r.c_[i] += c_[i];
            if (i < o.c_.size()) r.c_[i] += o.c_[i];
        }
        r.normalize();
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r(*F_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), FieldTraits<K>::zero(*F_));
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i < c_.size()) r.c_[i] += c_[i];
            if (i < o.c_.size()) r.c_[i] -= o.c_[i];
        }
        r.normalize();
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(*F_);
        Poly r(*F_);
        r.c_.assign(c_.size() + o.c_.size() - 1, FieldTraits<K>::zero(*F_));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] += c_[i] * o.c_[j];
        r.normalize();
        return r;
    }
    Poly operator*(const K& k) const {
        Poly r = *this;
        for (auto& x : r.c_) x *= k;
        r.normalize();
        return r;
    }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly monic() const {
        if (is_zero()) return *this;
        K li = FieldTraits<K>::one(*F_) / lead();
        return *this * li;
    }

    // Division with remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly q(*F_), r = *this;
        K dinv = FieldTraits<K>::one(*F_) / d.lead();
        int dd = d.degree();
        if (r.degree() >= dd)
            q.c_.assign(r.degree() - dd + 1, FieldTraits<K>::zero(*F_));
        while (!r.is_zero() && r.degree() >= dd) {
            int k = r.degree() - dd;
            K f = r.lead() * dinv;
            q.c_[k] = f;
            for (int i = 0; i <= dd; ++i) r.c_[k + i] -= f * d.c_[i];
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }
    Poly operator%(const Poly& d) const { return divmod(d).second; }
    Poly operator/(const Poly& d) const { return divmod(d).first; }

    Poly derivative() const {
        Poly r(*F_);
        for (int i = 1; i <= degree(); ++i) {
            K ki = FieldTraits<K>::zero(*F_);
            for (int t = 0; t < i; ++t) ki += FieldTraits<K>::one(*F_);
            r.c_.push_back(ki * c_[i]);
        }
        r.normalize();
        return r;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<K> c_;
    const FieldContext* F_;

    template <class K2>
    friend Poly<K2> poly_gcd(Poly<K2> f, Poly<K2> g);
};

template <class K>
Poly<K> poly_gcd(Poly<K> f, Poly<K> g) {
    while (!g.is_zero()) {
        Poly<K> r = f % g;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

// base^e mod m.
template <class K>
Poly<K> poly_pow_mod(const Poly<K>& base, std::uint64_t e, const Poly<K>& m) {
    Poly<K> result = Poly<K>::constant(base.field(),
                                       FieldTraits<K>::one(base.field()));
    Poly<K> b = base % m;
    while (e > 0) {
        if (e & 1) result = result * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return result;
}

// All roots of f in K with multiplicity, sorted by canonical label order.
// Throws std::domain_error on the zero polynomial (every element is a root).
template <class K>
std::vector<std::pair<K, int>> roots_with_multiplicity(const Poly<K>& f);

extern template std::vector<std::pair<Fp, int>>
roots_with_multiplicity(const Poly<Fp>&);
extern template std::vector<std::pair<Fp2, int>>
roots_with_multiplicity(const Poly<Fp2>&);

}  // namespace ssig
