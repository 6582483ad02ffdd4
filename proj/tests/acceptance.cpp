// Acceptance gate: eight criteria, one [PASS]/[FAIL] line each on stdout.
// Exit code 0 when all pass, 2 otherwise. Progress goes to stderr.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "unitfreq/orderfind.hpp"
#include "unitfreq/pell.hpp"
#include "unitfreq/report.hpp"
#include "unitfreq/sweep.hpp"

using namespace unitfreq;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::uint64_t count_at(const Histogram& h, std::uint64_t q) {
    const auto it = h.counts.find(q);
    return it == h.counts.end() ? 0 : it->second;
}

double percent_at(const Histogram& h, std::uint64_t q) {
    return 100.0 * static_cast<double>(count_at(h, q)) / static_cast<double>(h.total);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

SweepConfig range_config(std::uint64_t m) {
    SweepConfig cfg;
    cfg.d_min = 3;
    cfg.d_max = m;
    cfg.p_min = 3;
    cfg.p_max = m;
    cfg.workers = 4;
    return cfg;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

}  // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / "unitfreq-acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    std::cerr << "running the m=10000 sweep..." << std::endl;
    const SweepResult m10k = run_sweep(range_config(10'000));
    std::cerr << "m=10000 done: " << m10k.stats.pairs << " pairs in " << fmt(m10k.stats.wall_seconds)
              << "s" << std::endl;
    const Histogram& h1 = m10k.histograms[0];
    const Histogram& h2 = m10k.histograms[1];
    const Histogram& h4 = m10k.histograms[3];

    // 1. case-1 table at m=10000
    {
        const double q1 = percent_at(h1, 1), q2 = percent_at(h1, 2), q3 = percent_at(h1, 3),
                     q12 = percent_at(h1, 12);
        const bool ok = within(q1, 57.3, 0.3) && within(q2, 11.8, 0.3) && within(q3, 9.91, 0.3) &&
                        within(q12, 0.817, 0.3) &&
                        within(static_cast<double>(h1.total), 2'249'621.0, 22'496.21);
        criterion(1, "case-1 percentages and total at m=10000", ok,
                  "q1=" + fmt(q1) + " q2=" + fmt(q2) + " q3=" + fmt(q3) + " q12=" + fmt(q12) +
                      " total=" + std::to_string(h1.total) + " vs 2249621");
    }

    // 2. case-2 table at m=10000
    {
        const double q1 = percent_at(h2, 1), q2 = percent_at(h2, 2), q3 = percent_at(h2, 3);
        const bool ok = within(q1, 56.3, 0.3) && within(q2, 14.5, 0.3) && within(q3, 9.94, 0.3) &&
                        within(static_cast<double>(h2.total), 2'272'057.0, 22'720.57);
        criterion(2, "case-2 percentages and total at m=10000", ok,
                  "q1=" + fmt(q1) + " q2=" + fmt(q2) + " q3=" + fmt(q3) +
                      " total=" + std::to_string(h2.total) + " vs 2272057");
    }

    // 3. case-4 exclusion of q = 4, 8, 12, 16, 20
    {
        const TheoremCheck tc = theorem_check(h4);
        bool zeros = true;
        for (std::uint64_t q : {4ull, 8ull, 12ull, 16ull, 20ull}) zeros = zeros && count_at(h4, q) == 0;
        const bool ok = zeros && tc.pass && tc.anomalies.empty();
        criterion(3, "case-4 counts vanish at q=4,8,12,16,20 at m=10000", ok,
                  std::string("check=") + (tc.pass ? "PASS" : "FAIL") +
                      " anomalies=" + std::to_string(tc.anomalies.size()));
    }

    // 4. expectation values
    {
        std::cerr << "running the m=1000 sweep..." << std::endl;
        const SweepResult m1k = run_sweep(range_config(1'000));
        const ExpectationReport e1k = expectation(m1k.histograms[0], 1'000);
        const ExpectationReport e10k = expectation(h1, 10'000);
        const bool ok = within(e1k.expectation, 3.921, 0.05) && within(e1k.ratio, 0.293, 0.005) &&
                        within(e10k.expectation, 6.086, 0.05);
        criterion(4, "expectation E(1000), its normalizer ratio, and E(10000)", ok,
                  "E(1000)=" + fmt(e1k.expectation) + " ratio=" + fmt(e1k.ratio) +
                      " E(10000)=" + fmt(e10k.expectation));
    }

    // 5. fast order equals the naive oracle for all valid d, p <= 200
    {
        std::cerr << "checking the order oracle on d, p <= 200..." << std::endl;
        const PrimeTables t = build_tables(300);
        std::uint64_t checked = 0, mismatches = 0;
        for (std::uint64_t d : valid_d_in_range(2, 200)) {
            const FieldParams f = make_field(d);
            for (std::uint32_t p : t.primes) {
                if (p < 3 || p > 200 || d % p == 0) continue;
                const UnitResidue u = fundamental_unit_mod_p(f, p);
                if (order_and_quotient(u, d, t).n != naive_order(u, p + 1)) ++mismatches;
                ++checked;
            }
        }
        criterion(5, "order matches the naive oracle for d, p <= 200", mismatches == 0,
                  std::to_string(checked) + " pairs, " + std::to_string(mismatches) + " mismatches");
    }

    // 6. exact units: Pell identity for all valid d <= 10000 plus hand values
    {
        std::cerr << "verifying exact units for d <= 10000..." << std::endl;
        std::uint64_t checked = 0, bad = 0;
        for (std::uint64_t d : valid_d_in_range(2, 10'000)) {
            try {
                const UnitExact u = fundamental_unit_exact(make_field(d));
                const mpz_class lhs =
                    u.x1 * u.x1 - mpz_class(static_cast<unsigned long>(d)) * u.y1 * u.y1;
                if (lhs != u.norm_sign) ++bad;
            } catch (const std::exception&) {
                ++bad;
            }
            ++checked;
        }
        const UnitExact u2 = fundamental_unit_exact(make_field(2));
        const UnitExact u3 = fundamental_unit_exact(make_field(3));
        const UnitExact u7 = fundamental_unit_exact(make_field(7));
        const UnitExact u10 = fundamental_unit_exact(make_field(10));
        const bool hand = u2.x1 == 1 && u2.y1 == 1 && u2.norm_sign == -1 && u3.x1 == 2 &&
                          u3.y1 == 1 && u3.norm_sign == +1 && u7.x1 == 8 && u7.y1 == 3 &&
                          u7.norm_sign == +1 && u10.x1 == 3 && u10.y1 == 1 && u10.norm_sign == -1;
        criterion(6, "Pell identity for every valid d <= 10000 and hand values", bad == 0 && hand,
                  std::to_string(checked) + " units, " + std::to_string(bad) + " failures");
    }

    // 7. divisor law holds for every record of the m=10000 sweep
    {
        std::uint64_t sum = 0;
        for (const Histogram& h : m10k.histograms) sum += h.total;
        const bool ok = m10k.stats.violations == 0 && sum == m10k.stats.pairs;
        criterion(7, "divisor-law recheck over the full m=10000 sweep", ok,
                  std::to_string(m10k.stats.pairs) + " records, " +
                      std::to_string(m10k.stats.violations) + " violations");
    }

    // 8. determinism across worker counts and across an interrupted resume
    {
        std::cerr << "running determinism sweeps at m=2000..." << std::endl;
        std::array<std::string, 3> outs;
        const unsigned workers[3] = {1, 2, 8};
        for (int i = 0; i < 3; ++i) {
            SweepConfig cfg = range_config(2'000);
            cfg.workers = workers[i];
            cfg.chunk_size = 16;
            cfg.output_path = (dir / ("w" + std::to_string(workers[i]) + ".csv")).string();
            run_sweep(cfg);
            outs[static_cast<std::size_t>(i)] = slurp(cfg.output_path);
        }

        SweepConfig part = range_config(2'000);
        part.workers = 2;
        part.chunk_size = 16;
        part.checkpoint_path = (dir / "cp.json").string();
        part.output_path = (dir / "resumed.csv").string();
        const std::uint64_t n_d = valid_d_in_range(part.d_min, part.d_max).size();
        const std::uint64_t n_chunks = (n_d + part.chunk_size - 1) / part.chunk_size;
        part.max_chunks = n_chunks / 2;  // interrupt at 50%
        const SweepResult half = run_sweep(part);
        SweepConfig resume = part;
        resume.max_chunks = 0;
        const SweepResult done = run_sweep(resume);
        const std::string resumed = slurp(resume.output_path);

        const bool ok = !outs[0].empty() && outs[0] == outs[1] && outs[0] == outs[2] &&
                        !half.stats.complete && done.stats.complete && resumed == outs[0];
        criterion(8, "byte-identical outputs for workers 1/2/8 and a 50% interrupt+resume", ok,
                  "bytes=" + std::to_string(outs[0].size()) +
                      " interrupted_at=" + std::to_string(part.max_chunks) + "/" +
                      std::to_string(n_chunks) + " chunks");
    }

    std::cout << (failures == 0 ? "acceptance: all 8 criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 2;
}
