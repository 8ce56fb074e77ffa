#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ssig/classgroup.hpp"

using namespace ssig;

TEST_CASE("reduced form enumeration") {
    auto f15 = reduced_forms(-15);
    REQUIRE(f15.size() == 2);
    CHECK(f15[0] == QuadForm{1, 1, 4});
    CHECK(f15[1] == QuadForm{2, 1, 2});

    auto f4 = reduced_forms(-4);
    REQUIRE(f4.size() == 1);
    CHECK(f4[0] == QuadForm{1, 0, 1});

    // D = -116 = -4*29: six classes.
    auto f116 = reduced_forms(-116);
    REQUIRE(f116.size() == 6);
    CHECK(f116[0] == QuadForm{1, 0, 29});
    CHECK(f116[1] == QuadForm{2, 2, 15});
    CHECK(f116[2] == QuadForm{3, -2, 10});
    CHECK(f116[3] == QuadForm{3, 2, 10});
    CHECK(f116[4] == QuadForm{5, -2, 6});
    CHECK(f116[5] == QuadForm{5, 2, 6});

    // Imprimitive forms are excluded: D = -108 has h = 3, not counting
    // (2,2,14) and (3,0,9).
    auto f108 = reduced_forms(-108);
    REQUIRE(f108.size() == 3);
    CHECK(f108[0] == QuadForm{1, 0, 27});
    CHECK(f108[1] == QuadForm{4, -2, 7});
    CHECK(f108[2] == QuadForm{4, 2, 7});

    CHECK_THROWS_AS(reduced_forms(-5), std::domain_error);   // -5 = 3 mod 4
    CHECK_THROWS_AS(reduced_forms(4), std::domain_error);
    CHECK_THROWS_AS(reduced_forms(-6), std::domain_error);
}

TEST_CASE("class numbers") {
    CHECK(class_number(-3) == 1);
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-7) == 1);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-47) == 5);
    CHECK(class_number(-71) == 7);
    CHECK(class_number(-1319) == 45);
    CHECK(class_number(-4 * 1319) == 45);   // p = 7 mod 8: equal
    CHECK(class_number(-4 * 59) == 3 * class_number(-59));  // p = 3 mod 8
}

TEST_CASE("reduction") {
    CHECK(reduce(QuadForm{6, 10, 5}) == QuadForm{1, 0, 5});
    CHECK(reduce(QuadForm{2, -2, 3}) == QuadForm{2, 2, 3});
    CHECK(reduce(QuadForm{1, 1, 6}) == QuadForm{1, 1, 6});
    // Large unreduced entries (as produced by composition).
    QuadForm big{4500000000LL, 8999999999LL, 4500000005LL};
    QuadForm r = reduce(big);
    CHECK(r.discriminant() == big.discriminant());
    CHECK(r.a <= r.c);
    CHECK_THROWS_AS(reduce(QuadForm{-1, 0, 3}), std::domain_error);
    CHECK_THROWS_AS(reduce(QuadForm{1, 5, 1}), std::domain_error);
}

TEST_CASE("composition group law in D = -23") {
    QuadForm e = principal_form(-23);
    CHECK(e == QuadForm{1, 1, 6});
    QuadForm g{2, 1, 3}, gi{2, -1, 3};

    CHECK(compose(g, g) == gi);       // squaring swaps the two nontrivial classes
    CHECK(compose(g, gi) == e);       // inverses
    CHECK(compose(compose(g, g), g) == e);  // order 3
    CHECK(compose(e, g) == g);        // identity
    CHECK(compose(g, e) == g);

    CHECK_THROWS_AS(compose(g, principal_form(-15)), std::domain_error);
}

TEST_CASE("composition is commutative and associative on a larger group") {
    std::int64_t D = -4 * 101;
    auto forms = reduced_forms(D);
    REQUIRE(forms.size() == 14);
    for (std::size_t i = 0; i < forms.size(); i += 3)
        for (std::size_t j = 0; j < forms.size(); j += 4) {
            CHECK(compose(forms[i], forms[j]) == compose(forms[j], forms[i]));
            for (std::size_t k = 1; k < forms.size(); k += 5) {
                CHECK(compose(compose(forms[i], forms[j]), forms[k]) ==
                      compose(forms[i], compose(forms[j], forms[k])));
            }
        }
    // The set is closed under composition.
    std::set<QuadForm> all(forms.begin(), forms.end());
    for (const auto& f : forms)
        for (const auto& g : forms) CHECK(all.count(compose(f, g)) == 1);
}

TEST_CASE("prime forms") {
    // 2 splits as a principal prime for D = -7.
    auto f = prime_form(2, -7);
    REQUIRE(f.has_value());
    CHECK(*f == principal_form(-7));
    CHECK(prime_form_order(2, -7) == 1);

    CHECK(prime_form_order(2, -23) == 3);
    CHECK(prime_form_order(3, -20) == 2);

    // 2 is ramified in -4*29 with a class of order 2.
    CHECK(prime_form_order(2, -116) == 2);

    // For p = 3 mod 4 the norm-2 form of discriminant -4p is imprimitive.
    CHECK_FALSE(prime_form(2, -4 * 23).has_value());
    CHECK_THROWS_AS(prime_form_order(2, -4 * 23), std::domain_error);

    // 3 is inert for D = -4p when p = 1 mod 3.
    CHECK_FALSE(prime_form(3, -4 * 13).has_value());
    // ... and split when p = 2 mod 3.
    CHECK(prime_form(3, -4 * 29).has_value());

    // Rim length of the 2-isogeny cycles for p = 1319 (7 mod 8): the order
    // of the split prime above 2 in Cl(-1319).
    CHECK(prime_form_order(2, -1319) == 9);
    // Surface cycle length for p = 71.
    CHECK(prime_form_order(2, -71) == 7);
}
