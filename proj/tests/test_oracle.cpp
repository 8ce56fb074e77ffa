#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "ssig/classgroup.hpp"
#include "ssig/oracle.hpp"

using namespace ssig;

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("mod-840 table is a partition matching the residue conditions") {
    int covered = 0;
    for (int r = 0; r < 840; ++r) {
        if (std::gcd(r, 840) != 1) {
            CHECK_THROWS_AS(tabulated_structure_mod840(r), std::domain_error);
            continue;
        }
        ++covered;
        auto [folds, edges] = tabulated_structure_mod840(r);
        const int want_folds = r % 3 == 1 ? 0 : (r % 12 == 5 ? 1 : 2);
        const bool five = (r % 5 == 1 || r % 5 == 4);
        const bool c20 = five && r % 4 == 3;
        const bool c32 = r % 8 == 7;
        const bool c35 = five && (r % 7 == 3 || r % 7 == 5 || r % 7 == 6);
        CHECK(folds == want_folds);
        CHECK(edges == int(c20) + int(c32) + int(c35));
    }
    CHECK(covered == 192);  // phi(840)
    CHECK_THROWS_AS(tabulated_structure_mod840(-1), std::domain_error);
    CHECK_THROWS_AS(tabulated_structure_mod840(841), std::domain_error);
}

TEST_CASE("degree-2 attachment classes mod 120") {
    // Residues coprime to 120 whose spine gains a new edge (split into the
    // asserted-attaching group and the indeterminate 7-mod-8 group).
    std::vector<int> attach, open;
    for (int r = 1; r < 120; r += 2) {
        if (std::gcd(r, 120) != 1) continue;
        const bool h15 = (r % 15 == 11 || r % 15 == 14);
        if (!h15) continue;
        (r % 8 == 7 ? open : attach).push_back(r);
    }
    CHECK(attach == std::vector<int>{11, 29, 41, 59, 89, 101});
    CHECK(open == std::vector<int>{71, 119});

    // The six asserted residues split two per 8-residue class.
    CHECK(std::count_if(attach.begin(), attach.end(),
                        [](int r) { return r % 8 == 1; }) == 2);  // 41, 89
    CHECK(std::count_if(attach.begin(), attach.end(),
                        [](int r) { return r % 8 == 3; }) == 2);  // 11, 59
    CHECK(std::count_if(attach.begin(), attach.end(),
                        [](int r) { return r % 8 == 5; }) == 2);  // 29, 101
}

TEST_CASE("kernel graph anomaly predictions") {
    CHECK(predict_fp_anomalies(2, 7).loops);
    CHECK_FALSE(predict_fp_anomalies(2, 7).directed_multi);
    CHECK(predict_fp_anomalies(3, 11).loops);
    CHECK(predict_fp_anomalies(3, 5).directed_multi);
    CHECK(predict_fp_anomalies(2, 3).directed_multi);
    CHECK_FALSE(predict_fp_anomalies(2, 17).loops);
    CHECK_FALSE(predict_fp_anomalies(2, 17).directed_multi);
    CHECK_FALSE(predict_fp_anomalies(3, 37).loops);
    CHECK_FALSE(predict_fp_anomalies(3, 37).directed_multi);
    CHECK_THROWS_AS(predict_fp_anomalies(5, 11), std::domain_error);
    CHECK_THROWS_AS(predict_fp_anomalies(3, 3), std::domain_error);
}

TEST_CASE("routing") {
    CHECK(congruence_tables_apply(2, 17));
    CHECK(congruence_tables_apply(2, 23));
    CHECK(congruence_tables_apply(2, 1319));
    CHECK_FALSE(congruence_tables_apply(2, 13));
    CHECK_FALSE(congruence_tables_apply(3, 13));
    CHECK_FALSE(congruence_tables_apply(3, 23));
    CHECK_FALSE(congruence_tables_apply(3, 29));
    CHECK_FALSE(congruence_tables_apply(3, 31));
    CHECK_FALSE(congruence_tables_apply(3, 71));
    CHECK_FALSE(congruence_tables_apply(3, 271));
    CHECK(congruence_tables_apply(3, 37));
    CHECK(congruence_tables_apply(3, 53));
    CHECK(congruence_tables_apply(3, 131));
    // Every exceptional prime really is prime.
    for (int ell : {2, 3})
        for (auto p : exceptional_primes(ell)) CHECK(is_prime(p));
}

TEST_CASE("spine loop labels") {
    using L = std::vector<std::pair<std::int64_t, int>>;
    CHECK(predict_spine_loop_labels(2, 29) == L{{8000, 1}});
    CHECK(predict_spine_loop_labels(2, 23) == L{{1728, 1}, {8000, 1}});
    CHECK(predict_spine_loop_labels(2, 71) == L{{1728, 1}, {8000, 1}});
    CHECK(predict_spine_loop_labels(2, 17) == L{{-3375, 2}});
    CHECK(predict_spine_loop_labels(2, 19) == L{{1728, 1}, {-3375, 2}});
    CHECK(predict_spine_loop_labels(3, 37) == L{{8000, 2}});
    CHECK(predict_spine_loop_labels(3, 53) ==
          L{{0, 1}, {54000, 1}, {8000, 2}});
    CHECK(predict_spine_loop_labels(3, 43) == L{{-32768, 2}});
    // 3 is a square mod 11, so p = 3 mod 11 leaves -32768 ordinary.
    CHECK(predict_spine_loop_labels(3, 113) == L{{0, 1}, {54000, 1}});
}

TEST_CASE("triple target and one-sided surplus") {
    CHECK(predict_triple_target(2, 29) == 54000);
    CHECK(predict_triple_target(3, 53) == -12288000);
    CHECK_FALSE(predict_triple_target(2, 19).has_value());
    CHECK_FALSE(predict_triple_target(3, 37).has_value());
    CHECK(predict_one_sided(2, 29).size() == 1);
    CHECK(predict_one_sided(3, 53) ==
          std::vector<std::tuple<std::int64_t, std::int64_t, int>>{
              {0, -12288000, 1}});
    CHECK(predict_one_sided(2, 19).empty());
}

TEST_CASE("new edge discriminants") {
    using D = std::vector<std::int64_t>;
    CHECK(predict_new_edge_discs(2, 29) == D{-15});
    CHECK(predict_new_edge_discs(2, 71) == D{-15});
    CHECK(predict_new_edge_discs(2, 31) == D{});
    CHECK(predict_new_edge_discs(3, 103) == D{-32});
    CHECK(predict_new_edge_discs(3, 131) == D{-20, -35});
    CHECK(predict_new_edge_discs(3, 311) == D{-20, -32, -35});
    CHECK(predict_new_edge_discs(3, 37) == D{});
    CHECK(predict_new_loop_labels(2, 17) ==
          std::vector<std::pair<std::int64_t, int>>{{-3375, 2}});
    CHECK(predict_new_loop_labels(2, 29).empty());
    CHECK(predict_new_loop_labels(3, 131).empty());
    CHECK(new_loops_asserted(2));
    CHECK_FALSE(new_loops_asserted(3));
}

TEST_CASE("structure predictions for small degree-2 classes") {
    using S = std::vector<SpineShape>;

    auto s17 = predict_spine_structure(2, 17);  // 1 mod 8, no -15 pair
    CHECK(s17.applies);
    CHECK(s17.folds == 0);
    CHECK(s17.new_edges == 0);
    CHECK(s17.attach == AttachForecast::kNone);
    CHECK(s17.shapes == S{{2, 1, 1}});

    auto s29 = predict_spine_structure(2, 29);  // 5 mod 8, -15 pair, special
    CHECK(s29.folds == 1);
    CHECK(s29.fold_labels == std::vector<std::int64_t>{8000});
    CHECK(s29.new_edges == 1);
    CHECK(s29.attach == AttachForecast::kAll);
    CHECK(s29.attach_touches_fold);
    CHECK(s29.shapes == S{{3, 2, 1}});

    auto s53 = predict_spine_structure(2, 53);  // 5 mod 8, plain
    CHECK(s53.folds == 1);
    CHECK_FALSE(s53.attach_touches_fold);
    CHECK(s53.shapes == S{{1, 0, 1}, {2, 1, 1}});

    auto s19 = predict_spine_structure(2, 19);  // 3 mod 8, h(-19) = 1
    CHECK(s19.folds == 1);
    CHECK(s19.fold_labels == std::vector<std::int64_t>{1728, 287496});
    CHECK(s19.shapes == S{{2, 1, 1}});

    auto s59 = predict_spine_structure(2, 59);  // 3 mod 8, special
    CHECK(s59.attach_touches_fold);
    CHECK(s59.shapes == S{{6, 4, 1}});

    auto s101 = predict_spine_structure(2, 101);  // 5 mod 8, -15 pair
    CHECK(s101.attach == AttachForecast::kAll);
    CHECK_FALSE(s101.attach_touches_fold);
    CHECK(s101.shapes == S{{1, 0, 1}, {2, 1, 1}, {4, 3, 1}});

    auto s23 = predict_spine_structure(2, 23);  // 7 mod 8, h = r = 3
    CHECK(s23.has_rim);
    CHECK(s23.rim_order == 3);
    CHECK(s23.single_cycle_divergence);
    CHECK(s23.shapes == S{{3, 2, 1}});

    auto s71 = predict_spine_structure(2, 71);  // 71 mod 120: indeterminate
    CHECK(s71.has_rim);
    CHECK(s71.rim_order == 7);
    CHECK(s71.attach == AttachForecast::kIndeterminate);
    CHECK_FALSE(s71.shapes_known);
    CHECK(s71.new_edges == 1);

    auto s13 = predict_spine_structure(2, 13);
    CHECK_FALSE(s13.applies);
    CHECK_FALSE(s13.route_reason.empty());
}

TEST_CASE("structure predictions for degree 3") {
    auto s37 = predict_spine_structure(3, 37);
    CHECK(s37.applies);
    CHECK(s37.folds == 0);
    CHECK(s37.new_edges == 0);
    CHECK_FALSE(s37.shapes_known);

    auto s53 = predict_spine_structure(3, 53);
    CHECK(s53.folds == 1);
    CHECK(s53.fold_labels == std::vector<std::int64_t>{0});
    CHECK(s53.vertex_attachments == 0);

    auto s83 = predict_spine_structure(3, 83);
    CHECK(s83.folds == 2);
    CHECK(s83.fold_labels == std::vector<std::int64_t>{1728});
    CHECK(s83.vertex_attachments == 1);

    auto s103 = predict_spine_structure(3, 103);
    CHECK(s103.folds == 0);
    CHECK(s103.new_edges == 1);
    CHECK(s103.attach == AttachForecast::kAll);

    auto s131 = predict_spine_structure(3, 131);
    CHECK(s131.new_edges == 2);
    CHECK(s131.disjoint_edges);
    CHECK(s131.attach == AttachForecast::kUnasserted);

    CHECK_FALSE(predict_spine_structure(3, 29).applies);
}

TEST_CASE("conformance verdicts, degree 2") {
    for (std::uint64_t p : {17, 19, 29, 41, 43, 53, 59, 101}) {
        auto rep = verify_spine(p, 2);
        INFO(to_text(rep));
        CHECK(rep.verdict() == "PASS");
    }
    // h(-p) = r leaves a single folded cycle; the closed-form diameter
    // presumes a stacked one, so these resolve rather than pass.
    for (std::uint64_t p : {23, 31, 47}) {
        auto rep = verify_spine(p, 2);
        INFO(to_text(rep));
        CHECK(rep.verdict() == "INDETERMINATE-RESOLVED");
        REQUIRE(rep.resolutions.size() == 1);
        CHECK(rep.resolutions[0].topic == "cycle diameter");
    }
    // 71 = 71 mod 120: attachment is left to the computation.
    {
        auto rep = verify_spine(71, 2);
        INFO(to_text(rep));
        CHECK(rep.verdict() == "INDETERMINATE-RESOLVED");
        REQUIRE(rep.resolutions.size() == 1);
        CHECK(rep.resolutions[0].topic == "new-edge attachment");
    }
    // 179 = 3 mod 8 with a -15 pair: the tabulated vertex remainder is off
    // by one, so the checker records the consistent value.
    {
        auto rep = verify_spine(179, 2);
        INFO(to_text(rep));
        CHECK(rep.verdict() == "INDETERMINATE-RESOLVED");
        REQUIRE(rep.resolutions.size() == 1);
        CHECK(rep.resolutions[0].topic == "vertex remainder");
    }
    {
        auto rep = verify_spine(13, 2);
        CHECK(rep.verdict() == "COMPUTED");
        CHECK(rep.full_vertices == 1);
    }
}

TEST_CASE("conformance report inventory, p = 29") {
    auto rep = verify_spine(29, 2);
    CHECK(rep.p == 29);
    CHECK(rep.full_vertices == 3);
    CHECK(rep.spine_vertices == 3);
    CHECK(rep.fp_vertices == 6);
    CHECK(rep.folds == 1);
    CHECK(rep.stacks == 1);
    CHECK(rep.new_edge_events == 1);
    CHECK(rep.vertex_attach_events == 0);
    CHECK(rep.spine_components == 1);
    CHECK(rep.spine_diameter == 2);
    CHECK(rep.computed_shapes == std::vector<SpineShape>{{3, 2, 1}});
    auto text = to_text(rep);
    CHECK(text.find("p=29 ell=2 verdict=PASS") != std::string::npos);
}

TEST_CASE("conformance verdicts, degree 3") {
    for (std::uint64_t p : {37, 43, 53, 83, 103, 107, 131, 149}) {
        auto rep = verify_spine(p, 3);
        INFO(to_text(rep));
        CHECK(rep.verdict() == "PASS");
    }
    for (std::uint64_t p : {13, 23, 29, 31, 71}) {
        auto rep = verify_spine(p, 3);
        CHECK(rep.verdict() == "COMPUTED");
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("conformance sweep stays clean") {
    for (std::uint64_t p : primes_in(17, 200)) {
        {
            auto rep = verify_spine(p, 2);
            INFO("p=", p, " ell=2\n", to_text(rep));
            CHECK(rep.status != ConformanceReport::Status::kFail);
        }
        {
            auto rep = verify_spine(p, 3);
            INFO("p=", p, " ell=3\n", to_text(rep));
            CHECK(rep.status != ConformanceReport::Status::kFail);
        }
    }
}
