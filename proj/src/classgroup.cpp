#include "ssig/classgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ssig {

namespace {

void check_discriminant(std::int64_t D) {
    if (D >= 0 || (D % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw std::domain_error(
            "discriminant must be negative and 0 or 1 mod 4, got " +
            std::to_string(D));
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::gcd(std::gcd(a, b), c);
}

// g = gcd(a, b) = x a + y b.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x,
                     std::int64_t& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    std::int64_t x1, y1;
    std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

std::int64_t eval_form(const QuadForm& f, std::int64_t x, std::int64_t y) {
    return f.a * x * x + f.b * x * y + f.c * y * y;
}

}  // namespace

QuadForm reduce(QuadForm f) {
    __int128 D = static_cast<__int128>(f.b) * f.b -
                 static_cast<__int128>(4) * f.a * f.c;
    if (f.a <= 0 || D >= 0)
        throw std::domain_error("reduce: form must be positive definite");
    for (;;) {
        if (f.a > f.c) {
            f = QuadForm{f.c, -f.b, f.a};
            continue;
        }
        if (f.b > f.a || f.b <= -f.a) {
            // Shift b into (-a, a].
            std::int64_t twoa = 2 * f.a;
            std::int64_t b = f.b - twoa * floordiv(f.b + f.a, twoa);
            if (b <= -f.a) b += twoa;
            f.b = b;
            f.c = static_cast<std::int64_t>(
                (static_cast<__int128>(f.b) * f.b - D) / (4 * f.a));
            continue;
        }
        if (f.a == f.c && f.b < 0) {
            f.b = -f.b;
            continue;
        }
        return f;
    }
}

std::vector<QuadForm> reduced_forms(std::int64_t D) {
    check_discriminant(D);
    std::vector<QuadForm> out;
    std::int64_t absD = -D;
    for (std::int64_t b = (absD % 2); 3 * b * b <= absD; b += 2) {
        std::int64_t m4 = b * b + absD;  // = b^2 - D = 4ac
        if (m4 % 4 != 0) continue;
        std::int64_t m = m4 / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            std::int64_t c = m / a;
            if (gcd3(a, b, c) != 1) continue;
            out.push_back(QuadForm{a, b, c});
            if (b != 0 && b < a && a < c) out.push_back(QuadForm{a, -b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int class_number(std::int64_t D) {
    static std::mutex mtx;
    static std::map<std::int64_t, int> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(D);
        if (it != cache.end()) return it->second;
    }
    int h = static_cast<int>(reduced_forms(D).size());
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(D, h);
    return h;
}

QuadForm principal_form(std::int64_t D) {
    check_discriminant(D);
    if (((D % 4) + 4) % 4 == 0) return QuadForm{1, 0, -D / 4};
    return QuadForm{1, 1, (1 - D) / 4};
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    std::int64_t D = f.discriminant();
    if (D != g.discriminant())
        throw std::domain_error("compose: mismatched discriminants");
    if (f.a <= 0 || g.a <= 0)
        throw std::domain_error("compose: forms must be positive definite");

    // Find a representative of [g] whose leading coefficient is coprime to
    // f.a: search primitive (x, y) with gcd(g(x,y), f.a) = 1, preferring the
    // smallest such value to keep the intermediates small.
    std::int64_t X = 0, Y = 0, A2 = 0;
    for (std::int64_t r = 1; r <= 64 && A2 == 0; ++r) {
        for (std::int64_t x = -r; x <= r; ++x) {
            for (std::int64_t y = -r; y <= r; ++y) {
                if (std::max(std::abs(x), std::abs(y)) != r) continue;
                if (std::gcd(x, y) != 1) continue;
                std::int64_t v = eval_form(g, x, y);
                if (std::gcd(v, f.a) == 1 && (A2 == 0 || v < A2)) {
                    X = x;
                    Y = y;
                    A2 = v;
                }
            }
        }
    }
    if (A2 == 0) throw std::logic_error("compose: no coprime representative");

    // Transform g by the unimodular matrix [[X, u], [Y, v]], X v - Y u = 1.
    std::int64_t al, be;
    ext_gcd(X, Y, al, be);  // al X + be Y = 1
    std::int64_t u = -be, v = al;
    std::int64_t B2 =
        2 * (g.a * X * u + g.c * Y * v) + g.b * (X * v + Y * u);
    // g ~ (A2, B2, C2) with C2 determined by the discriminant.

    // CRT: B = f.b (mod 2 f.a), B = B2 (mod 2 A2); gcd(f.a, A2) = 1 and both
    // residues share the parity of D.
    std::int64_t a1 = f.a;
    std::int64_t t = (B2 - f.b) / 2 % A2;
    std::int64_t inv_x, inv_y;
    ext_gcd(a1 % A2, A2, inv_x, inv_y);
    std::int64_t tt = ((t * inv_x) % A2 + A2) % A2;
    std::int64_t B = f.b + 2 * a1 * tt;
    std::int64_t A = a1 * A2;
    __int128 C_num = static_cast<__int128>(B) * B - D;
    if (C_num % (4 * static_cast<__int128>(A)) != 0)
        throw std::logic_error("compose: inexact C");
    return reduce(QuadForm{
        A, B, static_cast<std::int64_t>(C_num / (4 * static_cast<__int128>(A)))});
}

std::optional<QuadForm> prime_form(std::int64_t ell, std::int64_t D) {
    check_discriminant(D);
    for (std::int64_t b = 0; b <= ell; ++b) {
        std::int64_t num = b * b - D;
        if (num % (4 * ell) != 0) continue;
        std::int64_t c = num / (4 * ell);
        QuadForm f{ell, b, c};
        if (gcd3(f.a, f.b, f.c) != 1) continue;
        return reduce(f);
    }
    return std::nullopt;
}

int prime_form_order(std::int64_t ell, std::int64_t D) {
    auto f = prime_form(ell, D);
    if (!f)
        throw std::domain_error("prime " + std::to_string(ell) +
                                " has no primitive form of discriminant " +
                                std::to_string(D));
    QuadForm one = principal_form(D);
    QuadForm acc = *f;
    int order = 1;
    int bound = class_number(D) + 1;
    while (!(acc == one)) {
        acc = compose(acc, *f);
        ++order;
        if (order > bound)
            throw std::logic_error("prime_form_order: exceeded class number");
    }
    return order;
}

}  // namespace ssig
