// ssigraph: build supersingular isogeny graphs over F_p and its closure,
// check spine structure against the congruence predictions, and run the
// center, diameter and null-model surveys.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ssig/arith.hpp"
#include "ssig/graphs.hpp"
#include "ssig/metrics.hpp"
#include "ssig/nullmodel.hpp"
#include "ssig/oracle.hpp"

namespace {

using namespace ssig;

constexpr const char* kSurveyHeader =
    "p,ell,n_vertices,n_fp_vertices,radius,diameter,center_size,"
    "center_fp_count,mean_spine_component_diameter,verdict";

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 5); p <= hi; ++p)
        if (is_prime_u64(p)) ps.push_back(p);
    return ps;
}

int default_jobs() {
    if (const char* env = std::getenv("SSIGRAPH_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

// Runs fn(i) for i in [0, n) on `jobs` threads.  Tasks are handed out by
// index so callers can slot results into place and emit them in input
// order no matter how the threads interleave.
void run_indexed(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mtx;
    std::string err;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (err.empty()) err = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t nthreads = std::min<std::size_t>(jobs, n);
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (!err.empty()) throw std::runtime_error(err);
}

// Publishes content at path via a temporary plus rename, so an interrupted
// run never leaves a partial file at the target.  Empty path means stdout.
int publish(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) {
            std::cerr << "ssigraph: cannot open " << tmp << " for writing\n";
            return 1;
        }
        os << content;
        os.flush();
        if (!os) {
            std::cerr << "ssigraph: write to " << tmp << " failed\n";
            std::remove(tmp.c_str());
            return 1;
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::cerr << "ssigraph: cannot move " << tmp << " to " << path << "\n";
        std::remove(tmp.c_str());
        return 1;
    }
    return 0;
}

std::string fmt6(double x) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << x;
    return os.str();
}

bool flag_error(const std::string& flag, const std::string& why) {
    std::cerr << "ssigraph: " << flag << ": " << why << "\n";
    return false;
}

bool check_prime(std::uint64_t p, const std::string& flag) {
    if (p < 5 || !is_prime_u64(p)) return flag_error(flag, "p must be prime >= 5");
    if (p >= (std::uint64_t{1} << 31)) return flag_error(flag, "p must be < 2^31");
    return true;
}

bool check_range(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) return flag_error("--max", "must be >= --min");
    if (hi >= (std::uint64_t{1} << 31)) return flag_error("--max", "must be < 2^31");
    return true;
}

int cmd_build(std::uint64_t p, int ell, const std::string& field,
              const std::string& format, const std::string& out) {
    const auto& F = field_context(p);
    std::string text;
    if (field == "fp") {
        auto g = build_fp_graph(F, ell);
        text = format == "dot" ? to_dot(g) : to_text(g);
    } else {
        IsogenyMultigraph g = build_full_graph(F, ell);
        if (field == "spine") g = spine_graph(g);
        text = format == "dot" ? to_dot(g, field) : to_text(g, field);
    }
    return publish(out, text);
}

std::string verify_line(const ConformanceReport& rep) {
    std::ostringstream os;
    os << "p=" << rep.p << " ell=" << rep.ell << " " << rep.verdict();
    if (rep.status == ConformanceReport::Status::kComputed)
        os << ": " << rep.route_reason;
    for (const auto& r : rep.resolutions) os << "; " << r.topic << ": " << r.detail;
    for (const auto& f : rep.failures) os << "; FAILED: " << f;
    return os.str();
}

int cmd_verify(int ell, std::uint64_t lo, std::uint64_t hi, int jobs) {
    auto ps = primes_in(lo, hi);
    std::vector<std::string> lines(ps.size());
    std::atomic<bool> any_fail{false};
    run_indexed(ps.size(), jobs, [&](std::size_t i) {
        auto rep = verify_spine(ps[i], ell);
        if (rep.status == ConformanceReport::Status::kFail) any_fail = true;
        lines[i] = verify_line(rep);
    });
    for (const auto& l : lines) std::cout << l << "\n";
    return any_fail ? 1 : 0;
}

int cmd_survey(const std::string& mode, int ell, std::uint64_t lo,
               std::uint64_t hi, const std::string& out, int jobs) {
    auto ps = primes_in(lo, hi);
    if (mode == "diameters") {
        std::erase_if(ps, [](std::uint64_t p) { return p % 8 != 7; });
    }
    std::vector<std::string> rows(ps.size());
    run_indexed(ps.size(), jobs, [&](std::size_t i) {
        const auto& F = field_context(ps[i]);
        auto full = build_full_graph(F, ell);
        auto row = center_survey_row(full);
        std::ostringstream os;
        os << row.p << "," << row.ell << "," << row.n_vertices << ","
           << row.n_fp_vertices << "," << row.radius << "," << row.diameter
           << "," << row.center_size << "," << row.center_fp_count << ",";
        if (mode == "diameters") {
            os << fmt6(mean_component_diameter(spine_graph(full))) << ","
               << verify_spine(F, ell).verdict();
        } else {
            os << ",";  // inapplicable columns stay empty
        }
        rows[i] = os.str();
    });
    std::string csv = std::string(kSurveyHeader) + "\n";
    for (const auto& r : rows) csv += r + "\n";
    return publish(out, csv);
}

int cmd_model(std::uint64_t lo, std::uint64_t hi, const ModelParams& params,
              const std::string& out) {
    std::string csv = "p,sampled_center_size,tree_margin_scaled\n";
    for (std::uint64_t p : primes_in(lo, hi)) {
        auto d = sample_model(p, params);
        auto margin = tree_margin(d.vertex_count, std::max(0, d.radius));
        csv += std::to_string(p) + "," + std::to_string(d.center_size) + "," +
               fmt6(static_cast<double>(margin) / 12.0) + "\n";
    }
    return publish(out, csv);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supersingular isogeny graph toolkit"};
    app.require_subcommand(1);

    std::uint64_t bp = 0;
    int bell = 2;
    std::string bfield = "fpbar", bformat = "text", bout;
    auto* build = app.add_subcommand("build", "construct one graph and print it");
    build->add_option("--p", bp, "prime p >= 5")->required();
    build->add_option("--ell", bell, "isogeny degree (2 or 3)")->required();
    build->add_option("--field", bfield, "fp, fpbar or spine")
        ->check(CLI::IsMember({"fp", "fpbar", "spine"}));
    build->add_option("--format", bformat, "text or dot")
        ->check(CLI::IsMember({"text", "dot"}));
    build->add_option("--out", bout, "output path (stdout if omitted)");

    int vell = 2, vjobs = default_jobs();
    std::uint64_t vmin = 5, vmax = 0;
    auto* verify = app.add_subcommand(
        "verify", "check spine structure for every prime in a range");
    verify->add_option("--ell", vell, "isogeny degree (2 or 3)")->required();
    verify->add_option("--min", vmin, "lower end of the prime range");
    verify->add_option("--max", vmax, "upper end of the prime range")->required();
    verify->add_option("--jobs", vjobs,
                       "worker threads (default: SSIGRAPH_JOBS or 1)");

    std::string smode, sout;
    int sell = 2, sjobs = default_jobs();
    std::uint64_t smin = 5, smax = 0;
    auto* survey = app.add_subcommand("survey", "emit per-prime metrics as CSV");
    survey->add_option("mode", smode, "centers or diameters")
        ->required()
        ->check(CLI::IsMember({"centers", "diameters"}));
    survey->add_option("--ell", sell, "isogeny degree (2 or 3)")->required();
    survey->add_option("--min", smin, "lower end of the prime range");
    survey->add_option("--max", smax, "upper end of the prime range")->required();
    survey->add_option("--out", sout, "output path (stdout if omitted)");
    survey->add_option("--jobs", sjobs,
                       "worker threads (default: SSIGRAPH_JOBS or 1)");

    ModelParams params;
    std::uint64_t mmin = 5, mmax = 0;
    std::string mout;
    auto* model = app.add_subcommand(
        "model", "sample the null model over a range of primes");
    model->add_option("--min", mmin, "lower end of the prime range");
    model->add_option("--max", mmax, "upper end of the prime range")->required();
    model->add_option("--seed", params.seed, "base seed (per-prime: seed ^ p)");
    model->add_option("--mu-coeff", params.mu_coeff,
                      "mean eccentricity coefficient (mu = coeff * ln p)");
    model->add_option("--sigma", params.sigma, "eccentricity spread");
    model->add_option("--out", mout, "output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) {
            if (bell != 2 && bell != 3) return flag_error("--ell", "must be 2 or 3"), 2;
            if (!check_prime(bp, "--p")) return 2;
            return cmd_build(bp, bell, bfield, bformat, bout);
        }
        if (verify->parsed()) {
            if (vell != 2 && vell != 3) return flag_error("--ell", "must be 2 or 3"), 2;
            if (!check_range(vmin, vmax)) return 2;
            if (vjobs < 1) return flag_error("--jobs", "must be >= 1"), 2;
            return cmd_verify(vell, vmin, vmax, vjobs);
        }
        if (survey->parsed()) {
            if (sell != 2 && sell != 3) return flag_error("--ell", "must be 2 or 3"), 2;
            if (!check_range(smin, smax)) return 2;
            if (sjobs < 1) return flag_error("--jobs", "must be >= 1"), 2;
            return cmd_survey(smode, sell, smin, smax, sout, sjobs);
        }
        if (model->parsed()) {
            if (!(params.sigma > 0)) return flag_error("--sigma", "must be positive"), 2;
            if (!check_range(mmin, mmax)) return 2;
            return cmd_model(mmin, mmax, params, mout);
        }
    } catch (const std::exception& e) {
        std::cerr << "ssigraph: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
