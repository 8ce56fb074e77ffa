#include "ssig/arith.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace ssig {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin witness set for all 64-bit integers.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldContext::FieldContext(std::uint64_t p) : p_(p), nonresidue_(0) {
    if (p < 5 || p >= (1ull << 31) || !is_prime_u64(p))
        throw std::domain_error(
            "field characteristic must be a prime p with 5 <= p < 2^31 (got " +
            std::to_string(p) + ")");
    for (std::uint64_t n = 2;; ++n) {
        if (powmod_u64(n, (p_ - 1) / 2, p_) == p_ - 1) {
            nonresidue_ = n;
            break;
        }
    }
    // Eager square table for point counting at desk scale; larger fields
    // fall back to Euler's criterion.
    if (p_ <= (1ull << 25)) ensure_legendre_table();
}

std::uint64_t FieldContext::pow(std::uint64_t a, std::uint64_t e) const {
    return powmod_u64(a, e, p_);
}

std::uint64_t FieldContext::inv(std::uint64_t a) const {
    a %= p_;
    if (a == 0) throw std::domain_error("division by zero in F_p");
    return powmod_u64(a, p_ - 2, p_);
}

std::uint64_t FieldContext::reduce_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(m);
}

void FieldContext::ensure_legendre_table() const {
    if (!legendre_table_.empty()) return;
    std::vector<std::int8_t> t(p_, -1);
    t[0] = 0;
    for (std::uint64_t x = 1; x < p_; ++x) t[mulmod_u64(x, x, p_)] = 1;
    legendre_table_ = std::move(t);
}

int FieldContext::legendre(std::uint64_t a) const {
    a %= p_;
    if (!legendre_table_.empty()) return legendre_table_[a];
    if (a == 0) return 0;
    return powmod_u64(a, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> FieldContext::sqrt(std::uint64_t a) const {
    a %= p_;
    if (a == 0) return 0;
    if (legendre(a) != 1) return std::nullopt;
    std::uint64_t r;
    if (p_ % 4 == 3) {
        r = powmod_u64(a, (p_ + 1) / 4, p_);
    } else {
        // Tonelli-Shanks.
        std::uint64_t q = p_ - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        std::uint64_t z = nonresidue_;
        std::uint64_t m = s;
        std::uint64_t c = powmod_u64(z, q, p_);
        std::uint64_t t = powmod_u64(a, q, p_);
        r = powmod_u64(a, (q + 1) / 2, p_);
        while (t != 1) {
            std::uint64_t i = 0, tt = t;
            while (tt != 1) {
                tt = mulmod_u64(tt, tt, p_);
                ++i;
            }
            std::uint64_t b = c;
            for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = mulmod_u64(b, b, p_);
            m = i;
            c = mulmod_u64(b, b, p_);
            t = mulmod_u64(t, c, p_);
            r = mulmod_u64(r, b, p_);
        }
    }
    return std::min(r, p_ - r);
}

const FieldContext& field_context(std::uint64_t p) {
    static std::mutex mtx;
    static std::map<std::uint64_t, std::unique_ptr<FieldContext>> registry;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = registry.find(p);
    if (it == registry.end())
        it = registry.emplace(p, std::make_unique<FieldContext>(p)).first;
    return *it->second;
}

std::optional<Fp> Fp::sqrt() const {
    require_field();
    auto r = F_->sqrt(v_);
    if (!r) return std::nullopt;
    return Fp(*F_, *r);
}

std::ostream& operator<<(std::ostream& os, const Fp& x) {
    return os << x.value();
}

Fp2 Fp2::inv() const {
    const FieldContext& F = field();
    if (is_zero()) throw std::domain_error("division by zero in F_p^2");
    std::uint64_t n = norm().value();
    std::uint64_t ni = F.inv(n);
    return Fp2(F, F.mul(a_, ni), F.mul(F.neg(b_), ni));
}

Fp2 Fp2::pow(std::uint64_t e) const {
    const FieldContext& F = field();
    Fp2 r(F, 1, 0), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

std::string Fp2::to_string() const {
    require_field();
    if (b_ == 0) return std::to_string(a_);
    std::ostringstream os;
    os << a_ << "+" << b_ << "*s";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Fp2& x) {
    return os << x.to_string();
}

namespace {

// Splits a monic product of distinct linear factors into roots, using a
// deterministic sequence of trial shifts.
template <class K>
void cz_split(const Poly<K>& g, std::vector<K>& out) {
    if (g.degree() <= 0) return;
    const FieldContext& F = g.field();
    if (g.degree() == 1) {
        out.push_back(-g.coeff(0));
        return;
    }
    std::uint64_t q = FieldTraits<K>::size(F);
    Poly<K> one = Poly<K>::constant(F, FieldTraits<K>::one(F));
    for (std::uint64_t trial = 1; trial < 10000; ++trial) {
        std::uint64_t mixed =
            trial * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
        K a = FieldTraits<K>::element_at(F, mixed % q);
        Poly<K> base = Poly<K>::x(F) + Poly<K>::constant(F, a);
        Poly<K> h = poly_pow_mod(base, (q - 1) / 2, g) - one;
        Poly<K> d = poly_gcd(h, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            cz_split(d, out);
            cz_split(g / d, out);
            return;
        }
    }
    throw std::logic_error("equal-degree splitting failed to converge");
}

template <class K>
bool label_less(const K& x, const K& y);

template <>
bool label_less<Fp>(const Fp& x, const Fp& y) {
    return x.value() < y.value();
}

template <>
bool label_less<Fp2>(const Fp2& x, const Fp2& y) {
    return x < y;
}

}  // namespace

template <class K>
std::vector<std::pair<K, int>> roots_with_multiplicity(const Poly<K>& f) {
    if (f.is_zero())
        throw std::domain_error(
            "root finding on the zero polynomial is undefined");
    const FieldContext& F = f.field();
    if (f.degree() == 0) return {};
    Poly<K> m = f.monic();
    std::uint64_t q = FieldTraits<K>::size(F);
    std::vector<K> roots;
    if (q < 1000) {
        for (std::uint64_t i = 0; i < q; ++i) {
            K x = FieldTraits<K>::element_at(F, i);
            if (m.eval(x).is_zero()) roots.push_back(x);
        }
    } else {
        Poly<K> x = Poly<K>::x(F);
        Poly<K> xq = poly_pow_mod(x, q, m);
        Poly<K> g = poly_gcd(xq - x, m);
        cz_split(g, roots);
    }
    std::vector<std::pair<K, int>> out;
    out.reserve(roots.size());
    for (const K& r : roots) {
        Poly<K> lin = Poly<K>::x_minus(r);
        Poly<K> cur = m;
        int mult = 0;
        for (;;) {
            auto qr = cur.divmod(lin);
            if (!qr.second.is_zero()) break;
            ++mult;
            cur = qr.first;
            if (cur.is_zero()) break;
        }
        out.emplace_back(r, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& lhs, const auto& rhs) {
        return label_less<K>(lhs.first, rhs.first);
    });
    return out;
}

template std::vector<std::pair<Fp, int>> roots_with_multiplicity(const Poly<Fp>&);
template std::vector<std::pair<Fp2, int>> roots_with_multiplicity(const Poly<Fp2>&);

}  // namespace ssig
