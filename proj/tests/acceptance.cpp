#include "mplex/config.hpp"
#include "mplex/experiment.hpp"
#include "mplex/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace mplex;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail)
{
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

// Runs the checks and reports one line; failing checks are listed underneath.
void checks_criterion(int id, const std::string& title, const std::function<std::vector<CheckResult>()>& run,
                      double time_limit)
{
    const auto t0 = Clock::now();
    std::vector<CheckResult> checks;
    std::string error;
    try {
        checks = run();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double dt = seconds_since(t0);
    std::size_t bad = 0;
    for (const auto& c : checks) bad += !c.passed;
    const bool in_time = time_limit <= 0.0 || dt < time_limit;
    std::ostringstream d;
    d << checks.size() - bad << "/" << checks.size() << " checks, " << dt << " s";
    if (time_limit > 0.0) d << " (limit " << time_limit << " s)";
    if (!error.empty()) d << ", error: " << error;
    report(id, title, error.empty() && bad == 0 && !checks.empty() && in_time, d.str());
    for (const auto& c : checks)
        if (!c.passed) std::printf("    failed: %s: %s\n", c.name.c_str(), c.detail.c_str());
}

std::map<std::string, std::string> read_dir(const fs::path& dir)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[e.path().filename().string()] = s.str();
    }
    return out;
}

}  // namespace

int main()
{
    const fs::path configs = fs::path(MPLEX_SOURCE_DIR) / "configs";

    checks_criterion(1, "oscillating pair: product, period-two limits, oscillation", check_oscillating_pair, 1.0);
    checks_criterion(2, "degree-mismatch pair: SLEM values and strict excess", check_degree_mismatch_pair, 0.0);
    checks_criterion(3, "circulant pair: complete-graph merge and lower bound attained", check_circulant_pair, 0.0);
    checks_criterion(4, "3-node pair: stationary laws and non-interpolation", check_noninterpolating_pair, 0.0);
    checks_criterion(5, "random bounds suite, 200 instances", [] { return check_random_bounds(); }, 60.0);
    checks_criterion(6, "stationary shift identity", [] { return check_stationary_shift(); }, 0.0);
    checks_criterion(7, "stability scalings", check_stability_scalings, 0.0);

    // 8: desk-scale sweeps
    const std::vector<fs::path> desk{configs / "merged_ba_er.json", configs / "switching_regular.json"};
    std::vector<std::pair<ExperimentConfig, ExperimentResult>> first_runs;
    {
        const auto t0 = Clock::now();
        std::size_t points = 0, interval_bad = 0, rate_bad = 0, rate_missing = 0;
        std::vector<std::string> problems;
        std::string error;
        try {
            for (const auto& p : desk) {
                ExperimentConfig cfg = load_config(p);
                ExperimentResult r = run_experiment(cfg);
                for (const auto& gp : r.points) {
                    ++points;
                    const std::string where = p.filename().string() + " @ " + format_double(gp.grid_value);
                    if (!gp.consensus || !gp.interval_lo || !gp.interval_hi) {
                        ++interval_bad;
                        problems.push_back(where + ": no consensus value or interval (status " + gp.status + ")");
                    } else if (*gp.consensus < *gp.interval_lo - 1e-12 || *gp.consensus > *gp.interval_hi + 1e-12) {
                        ++interval_bad;
                        problems.push_back(where + ": consensus " + format_double(*gp.consensus) + " outside [" +
                                           format_double(*gp.interval_lo) + ", " + format_double(*gp.interval_hi) +
                                           "]");
                    }
                    if (!gp.empirical_rate) {
                        ++rate_missing;
                    } else if (!gp.rate_bound || *gp.empirical_rate > *gp.rate_bound + 1e-6) {
                        ++rate_bad;
                        problems.push_back(where + ": rate " + format_double(*gp.empirical_rate) + " above bound " +
                                           (gp.rate_bound ? format_double(*gp.rate_bound) : "none"));
                    }
                }
                first_runs.emplace_back(std::move(cfg), std::move(r));
            }
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double dt = seconds_since(t0);
        std::ostringstream d;
        d << points << " grid points, " << interval_bad << " interval violations, " << rate_bad
          << " rate violations, " << rate_missing << " points without a fitted rate, " << dt << " s (limit 120 s)";
        if (!error.empty()) d << ", error: " << error;
        report(8, "desk-scale merged and switching sweeps", error.empty() && points > 0 && interval_bad == 0 &&
                                                                rate_bad == 0 && dt < 120.0,
               d.str());
        for (const auto& s : problems) std::printf("    %s\n", s.c_str());
    }

    // 9: determinism over every shipped config
    {
        std::size_t compared = 0, differing = 0;
        std::vector<std::string> problems;
        std::string error;
        const fs::path work = fs::temp_directory_path() / "mplex_acceptance";
        try {
            fs::remove_all(work);
            std::vector<fs::path> all;
            for (const auto& e : fs::directory_iterator(configs))
                if (e.path().extension() == ".json") all.push_back(e.path());
            std::sort(all.begin(), all.end());
            for (const auto& p : all) {
                const std::string stem = p.stem().string();
                for (int run = 0; run < 2; ++run) {
                    const ExperimentConfig cfg = load_config(p);
                    write_outputs(cfg, run_experiment(cfg), work / stem / std::to_string(run));
                }
                const auto a = read_dir(work / stem / "0"), b = read_dir(work / stem / "1");
                if (a.size() != b.size()) {
                    ++differing;
                    problems.push_back(stem + ": different file sets");
                }
                for (const auto& [name, bytes] : a) {
                    if (name.size() < 4 || name.substr(name.size() - 4) != ".csv") continue;
                    ++compared;
                    const auto it = b.find(name);
                    if (it == b.end() || it->second != bytes) {
                        ++differing;
                        problems.push_back(stem + "/" + name + " differs between runs");
                    }
                }
            }
            fs::remove_all(work);
        } catch (const std::exception& e) {
            error = e.what();
        }
        std::ostringstream d;
        d << compared << " CSV files compared, " << differing << " differ";
        if (!error.empty()) d << ", error: " << error;
        report(9, "byte-identical CSVs on rerun", error.empty() && compared > 0 && differing == 0, d.str());
        for (const auto& s : problems) std::printf("    %s\n", s.c_str());
    }

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
