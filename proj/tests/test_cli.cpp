#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(SSIGRAPH_BIN) + " " + args + " 2>&1";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int st = pclose(f);
    if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

int count_prefixed(const std::string& text, const std::string& prefix) {
    int k = 0;
    for (const auto& l : lines_of(text))
        if (l.rfind(prefix, 0) == 0) ++k;
    return k;
}

std::string line_containing(const std::string& text, const std::string& needle) {
    for (const auto& l : lines_of(text))
        if (l.find(needle) != std::string::npos) return l;
    return "";
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("argument validation exits with code 2 and names the flag") {
    auto bad_p = run_cli("build --p 4 --ell 2");
    CHECK(bad_p.code == 2);
    CHECK(bad_p.out.find("--p") != std::string::npos);
    CHECK(bad_p.out.find("must be prime >= 5") != std::string::npos);

    auto bad_ell = run_cli("build --p 29 --ell 5");
    CHECK(bad_ell.code == 2);
    CHECK(bad_ell.out.find("--ell") != std::string::npos);

    auto bad_field = run_cli("build --p 29 --ell 2 --field nope");
    CHECK(bad_field.code == 2);
    CHECK(bad_field.out.find("--field") != std::string::npos);

    auto big_p = run_cli("build --p 2147483659 --ell 2");
    CHECK(big_p.code == 2);
    CHECK(big_p.out.find("2^31") != std::string::npos);

    auto bad_range = run_cli("verify --ell 2 --min 50 --max 20");
    CHECK(bad_range.code == 2);
    CHECK(bad_range.out.find("--max") != std::string::npos);

    auto bad_sigma = run_cli("model --min 5 --max 50 --sigma 0");
    CHECK(bad_sigma.code == 2);
    CHECK(bad_sigma.out.find("--sigma") != std::string::npos);

    CHECK(run_cli("").code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("build emits the requested graph") {
    auto spine71 = run_cli("build --p 71 --ell 2 --field spine");
    CHECK(spine71.code == 0);
    CHECK(count_prefixed(spine71.out, "v ") == 7);

    auto fpbar29 = run_cli("build --p 29 --ell 2 --field fpbar");
    CHECK(fpbar29.code == 0);
    CHECK(count_prefixed(fpbar29.out, "v ") == 3);
    bool has_triple = false;
    for (const auto& l : lines_of(fpbar29.out))
        if (l.rfind("e ", 0) == 0 && l.size() > 2 &&
            l.substr(l.rfind(' ')) == " 3")
            has_triple = true;
    CHECK(has_triple);

    auto dot = run_cli("build --p 29 --ell 2 --field fp --format dot");
    CHECK(dot.code == 0);
    CHECK(dot.out.find("graph") != std::string::npos);

    auto out_path = temp_file("ssigraph_test_build.txt");
    auto to_file = run_cli("build --p 71 --ell 2 --field spine --out " +
                           out_path.string());
    CHECK(to_file.code == 0);
    CHECK(slurp(out_path) == spine71.out);
    CHECK_FALSE(fs::exists(out_path.string() + ".tmp"));
    fs::remove(out_path);
}

TEST_CASE("verify prints one line per prime and resolves open cases") {
    auto r = run_cli("verify --ell 2 --min 60 --max 80");
    CHECK(r.code == 0);
    CHECK(count_prefixed(r.out, "p=") == 5);  // 61 67 71 73 79

    auto l71 = line_containing(r.out, "p=71 ");
    CHECK(l71.find("INDETERMINATE-RESOLVED") != std::string::npos);
    CHECK(l71.find("not attaching") != std::string::npos);

    auto l61 = line_containing(r.out, "p=61 ");
    CHECK(l61.find("PASS") != std::string::npos);

    auto jobs3 = run_cli("verify --ell 2 --min 17 --max 120 --jobs 3");
    auto jobs1 = run_cli("verify --ell 2 --min 17 --max 120 --jobs 1");
    CHECK(jobs3.code == 0);
    CHECK(jobs3.out == jobs1.out);
}

TEST_CASE("survey emits byte-deterministic CSV with the pinned schema") {
    const std::string header =
        "p,ell,n_vertices,n_fp_vertices,radius,diameter,center_size,"
        "center_fp_count,mean_spine_component_diameter,verdict";

    auto f1 = temp_file("ssigraph_test_centers1.csv");
    auto f2 = temp_file("ssigraph_test_centers2.csv");
    CHECK(run_cli("survey centers --ell 2 --min 5 --max 40 --out " +
                  f1.string())
              .code == 0);
    CHECK(run_cli("survey centers --ell 2 --min 5 --max 40 --jobs 2 --out " +
                  f2.string())
              .code == 0);
    auto csv = slurp(f1);
    CHECK(csv == slurp(f2));
    CHECK(csv.find('\r') == std::string::npos);
    auto rows = lines_of(csv);
    REQUIRE(!rows.empty());
    CHECK(rows[0] == header);
    CHECK(csv.find("\n7,2,1,1,0,0,1,1,,\n") != std::string::npos);
    CHECK_FALSE(fs::exists(f1.string() + ".tmp"));
    fs::remove(f1);
    fs::remove(f2);

    auto d = temp_file("ssigraph_test_diameters.csv");
    CHECK(run_cli("survey diameters --ell 2 --min 5 --max 60 --out " +
                  d.string())
              .code == 0);
    auto dcsv = slurp(d);
    auto drows = lines_of(dcsv);
    REQUIRE(drows.size() == 5);  // header + p in {7, 23, 31, 47}
    CHECK(drows[0] == header);
    CHECK(drows[1] == "7,2,1,1,0,0,1,1,0.000000,COMPUTED");
    CHECK(drows[2].rfind("23,2,3,3,", 0) == 0);
    CHECK(drows[2].find(",2.000000,INDETERMINATE-RESOLVED") !=
          std::string::npos);
    CHECK(drows[4].rfind("47,2,", 0) == 0);
    fs::remove(d);
}

TEST_CASE("model output is deterministic for a fixed seed") {
    auto m1 = temp_file("ssigraph_test_model1.csv");
    auto m2 = temp_file("ssigraph_test_model2.csv");
    CHECK(run_cli("model --min 5 --max 100 --seed 42 --out " + m1.string())
              .code == 0);
    CHECK(run_cli("model --min 5 --max 100 --seed 42 --out " + m2.string())
              .code == 0);
    auto csv = slurp(m1);
    CHECK(csv == slurp(m2));
    auto rows = lines_of(csv);
    REQUIRE(rows.size() == 24);  // header + 23 primes in [5, 100]
    CHECK(rows[0] == "p,sampled_center_size,tree_margin_scaled");
    // p = 13 has a single model vertex, so its center size is pinned.
    CHECK(line_containing(csv, "13,1,").rfind("13,1,", 0) == 0);
    fs::remove(m1);
    fs::remove(m2);
}
