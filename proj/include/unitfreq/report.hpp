#pragma once

// Reporting over sweep histograms: percentage tables with three significant
// figures, the expectation statistic with its log(m)*log(log m) normalizer,
// the case-4 quotient-4 exclusion check, and cross-range convergence drift.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unitfreq/sweep.hpp"

namespace unitfreq {

// 100*count/total rendered to three significant figures with exact rational
// round-half-to-even; a zero count renders as "0.000". Throws
// std::invalid_argument if total == 0.
std::string format_percent(std::uint64_t count, std::uint64_t total);

struct FrequencyRow {
    std::uint64_t q = 0;
    std::uint64_t count = 0;
    double percent = 0.0;       // exact 100*count/total as a double
    std::string percent_str;    // three significant figures
};

struct FrequencyTable {
    int case_j = 0;
    std::vector<FrequencyRow> rows;  // q = 1..top_k, zero-count rows included
    std::uint64_t total = 0;
};

// Throws std::invalid_argument on an empty histogram or top_k == 0.
FrequencyTable frequency_table(const Histogram& h, std::uint64_t top_k);

struct ExpectationReport {
    std::uint64_t m = 0;
    double expectation = 0.0;  // sum over q of q * count[q] / total
    double normalizer = 0.0;   // log(m) * log(log(m)), natural logarithms
    double ratio = 0.0;        // expectation / normalizer
};

// h must be the case-1 histogram accumulated over d, p <= m. Requires
// total > 0 and m >= 16 (so the normalizer is positive).
ExpectationReport expectation(const Histogram& h, std::uint64_t m);

struct TheoremCheck {
    bool pass = true;           // true iff count at q = 4 is zero
    std::uint64_t q4_count = 0;
    // (q, count) for q = 4 (always present) and every other multiple of 4
    // with a nonzero count, ascending in q
    std::vector<std::pair<std::uint64_t, std::uint64_t>> multiples_of_4;
    // multiples of 4 other than 4 itself with nonzero counts; the exclusion
    // is only proved for q = 4, so these are flagged rather than failed
    std::vector<std::uint64_t> anomalies;
};

// Pure and total on any histogram (intended for the case-4 histogram).
TheoremCheck theorem_check(const Histogram& h4);

struct ConvergenceRow {
    int case_j = 0;
    std::uint64_t q = 0;
    std::vector<double> freq_percent;  // one entry per range, in percent
    double max_drift = 0.0;            // max successive absolute difference
};

struct ConvergenceReport {
    std::vector<std::uint64_t> ranges;
    std::uint64_t q_cutoff = 0;
    std::vector<ConvergenceRow> rows;  // cases 1..4, q = 1..q_cutoff
};

// runs: (m, all four histograms) per range, m strictly increasing, at least
// two ranges; histogram slot j must carry case j+1. Throws
// std::invalid_argument otherwise.
ConvergenceReport convergence_report(
    const std::vector<std::pair<std::uint64_t, std::array<Histogram, 4>>>& runs,
    std::uint64_t q_cutoff = 50);

// "norm(eps)=+1, (d/p)=-1" etc.; throws std::invalid_argument unless 1 <= j <= 4.
std::string case_label(int j);

std::string render_frequency_table_text(const FrequencyTable& t);
std::string render_frequency_table_csv(const FrequencyTable& t);
std::string render_expectation_text(const ExpectationReport& r);
std::string render_expectation_csv(const ExpectationReport& r);
std::string render_theorem_text(const TheoremCheck& t);
std::string render_theorem_csv(const TheoremCheck& t);
std::string render_convergence_text(const ConvergenceReport& r);
std::string render_convergence_csv(const ConvergenceReport& r);

}  // namespace unitfreq
