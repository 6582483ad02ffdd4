#include "unitfreq/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace unitfreq {

namespace {

std::ostringstream make_stream() {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    return os;
}

std::string fixed3(double v) {
    auto os = make_stream();
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
}

}  // namespace

std::string format_percent(std::uint64_t count, std::uint64_t total) {
    if (total == 0) throw std::invalid_argument("format_percent: total must be positive");
    if (count == 0) return "0.000";

    // exact rational 100*count/total scaled until it has three digits before
    // rounding, then round half to even
    unsigned __int128 num = static_cast<unsigned __int128>(count) * 100;
    const unsigned __int128 den = total;
    int scale = 0;
    while (num / den < 100) {
        num *= 10;
        ++scale;
    }
    unsigned __int128 digits = num / den;
    const unsigned __int128 rem = num % den;
    if (rem * 2 > den || (rem * 2 == den && (digits & 1))) ++digits;
    if (digits >= 1000) {  // e.g. 9.996 -> 10.0
        digits /= 10;
        --scale;
    }

    const std::string s = std::to_string(static_cast<std::uint64_t>(digits));  // exactly 3 chars
    if (scale <= 0) return s;  // count == total -> "100"
    const int int_digits = 3 - scale;
    if (int_digits > 0) return s.substr(0, int_digits) + "." + s.substr(int_digits);
    return "0." + std::string(scale - 3, '0') + s;
}

FrequencyTable frequency_table(const Histogram& h, std::uint64_t top_k) {
    if (h.total == 0) throw std::invalid_argument("frequency_table: histogram is empty");
    if (top_k == 0) throw std::invalid_argument("frequency_table: top_k must be >= 1");
    FrequencyTable t;
    t.case_j = h.case_j;
    t.total = h.total;
    t.rows.reserve(top_k);
    for (std::uint64_t q = 1; q <= top_k; ++q) {
        const auto it = h.counts.find(q);
        const std::uint64_t c = (it == h.counts.end()) ? 0 : it->second;
        t.rows.push_back({q, c, 100.0 * static_cast<double>(c) / static_cast<double>(h.total),
                          format_percent(c, h.total)});
    }
    return t;
}

ExpectationReport expectation(const Histogram& h, std::uint64_t m) {
    if (h.total == 0) throw std::invalid_argument("expectation: histogram is empty");
    if (m < 16) throw std::invalid_argument("expectation: need m >= 16 for a positive normalizer");
    unsigned __int128 weighted = 0;
    for (const auto& [q, c] : h.counts) weighted += static_cast<unsigned __int128>(q) * c;
    ExpectationReport r;
    r.m = m;
    r.expectation = static_cast<double>(weighted) / static_cast<double>(h.total);
    r.normalizer = std::log(static_cast<double>(m)) * std::log(std::log(static_cast<double>(m)));
    r.ratio = r.expectation / r.normalizer;
    return r;
}

TheoremCheck theorem_check(const Histogram& h4) {
    TheoremCheck t;
    const auto it4 = h4.counts.find(4);
    t.q4_count = (it4 == h4.counts.end()) ? 0 : it4->second;
    t.pass = (t.q4_count == 0);
    t.multiples_of_4.emplace_back(4, t.q4_count);
    for (const auto& [q, c] : h4.counts) {
        if (q % 4 == 0 && q != 4 && c > 0) {
            t.multiples_of_4.emplace_back(q, c);
            t.anomalies.push_back(q);
        }
    }
    return t;
}

ConvergenceReport convergence_report(
    const std::vector<std::pair<std::uint64_t, std::array<Histogram, 4>>>& runs,
    std::uint64_t q_cutoff) {
    if (runs.size() < 2) throw std::invalid_argument("convergence_report: need at least two ranges");
    if (q_cutoff == 0) throw std::invalid_argument("convergence_report: q_cutoff must be >= 1");

    ConvergenceReport rep;
    rep.q_cutoff = q_cutoff;
    rep.ranges.reserve(runs.size());
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (i > 0 && runs[i].first <= runs[i - 1].first)
            throw std::invalid_argument("convergence_report: ranges must be strictly increasing");
        for (int j = 0; j < 4; ++j)
            if (runs[i].second[j].case_j != j + 1)
                throw std::invalid_argument("convergence_report: histogram case mismatch");
        rep.ranges.push_back(runs[i].first);
    }

    rep.rows.reserve(4 * q_cutoff);
    for (int j = 1; j <= 4; ++j) {
        for (std::uint64_t q = 1; q <= q_cutoff; ++q) {
            ConvergenceRow row;
            row.case_j = j;
            row.q = q;
            row.freq_percent.reserve(runs.size());
            for (const auto& [m, hists] : runs) {
                const Histogram& h = hists[j - 1];
                double f = 0.0;
                if (h.total > 0) {
                    const auto it = h.counts.find(q);
                    if (it != h.counts.end())
                        f = 100.0 * static_cast<double>(it->second) / static_cast<double>(h.total);
                }
                row.freq_percent.push_back(f);
            }
            for (std::size_t i = 1; i < row.freq_percent.size(); ++i)
                row.max_drift = std::max(row.max_drift,
                                         std::abs(row.freq_percent[i] - row.freq_percent[i - 1]));
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

std::string case_label(int j) {
    switch (j) {
        case 1: return "norm(eps)=+1, (d/p)=+1";
        case 2: return "norm(eps)=+1, (d/p)=-1";
        case 3: return "norm(eps)=-1, (d/p)=+1";
        case 4: return "norm(eps)=-1, (d/p)=-1";
    }
    throw std::invalid_argument("case_label: case must be 1..4");
}

std::string render_frequency_table_text(const FrequencyTable& t) {
    auto os = make_stream();
    os << "case " << t.case_j << ": " << case_label(t.case_j) << "\n";
    os << std::setw(7) << "q" << "  " << "percent" << "\n";
    for (const FrequencyRow& r : t.rows)
        os << std::setw(7) << r.q << "  " << r.percent_str << "\n";
    os << std::setw(7) << "Values" << "  " << t.total << "\n";
    return os.str();
}

std::string render_frequency_table_csv(const FrequencyTable& t) {
    auto os = make_stream();
    os << "case,q,percent,count,total\n";
    for (const FrequencyRow& r : t.rows)
        os << t.case_j << ',' << r.q << ',' << r.percent_str << ',' << r.count << ',' << t.total
           << "\n";
    return os.str();
}

std::string render_expectation_text(const ExpectationReport& r) {
    auto os = make_stream();
    os << "Ranges = m                  " << r.m << "\n";
    os << "Expectation = E             " << fixed3(r.expectation) << "\n";
    os << "log(m) * log(log(m))        " << fixed3(r.normalizer) << "\n";
    os << "E / (log(m)*log(log(m)))    " << fixed3(r.ratio) << "\n";
    return os.str();
}

std::string render_expectation_csv(const ExpectationReport& r) {
    auto os = make_stream();
    os << "m,expectation,normalizer,ratio\n";
    os << r.m << ',' << fixed3(r.expectation) << ',' << fixed3(r.normalizer) << ','
       << fixed3(r.ratio) << "\n";
    return os.str();
}

std::string render_theorem_text(const TheoremCheck& t) {
    auto os = make_stream();
    os << "case 4 quotient-4 exclusion check: " << (t.pass ? "PASS" : "FAIL") << "\n";
    os << "q=4 count: " << t.q4_count << "\n";
    if (t.anomalies.empty()) {
        os << "nonzero multiples of 4 beyond q=4: none\n";
    } else {
        for (const auto& [q, c] : t.multiples_of_4)
            if (q != 4)
                os << "q=" << q << " count=" << c << " (anomaly: exclusion is proved only for q=4)\n";
    }
    return os.str();
}

std::string render_theorem_csv(const TheoremCheck& t) {
    auto os = make_stream();
    os << "q,count,flag\n";
    for (const auto& [q, c] : t.multiples_of_4) {
        const char* flag = (q == 4) ? (c == 0 ? "ok" : "fail") : "anomaly";
        os << q << ',' << c << ',' << flag << "\n";
    }
    return os.str();
}

std::string render_convergence_text(const ConvergenceReport& r) {
    auto os = make_stream();
    os << "convergence drift, frequencies in percent (q <= " << r.q_cutoff << ")\n";
    os << "ranges:";
    for (std::uint64_t m : r.ranges) os << ' ' << m;
    os << "\n";
    for (const ConvergenceRow& row : r.rows) {
        const bool all_zero =
            std::all_of(row.freq_percent.begin(), row.freq_percent.end(),
                        [](double f) { return f == 0.0; });
        if (all_zero) continue;
        os << "case " << row.case_j << " q=" << row.q << ":";
        for (double f : row.freq_percent) os << ' ' << fixed3(f);
        os << "  (max drift " << fixed3(row.max_drift) << ")\n";
    }
    return os.str();
}

std::string render_convergence_csv(const ConvergenceReport& r) {
    auto os = make_stream();
    os << "case,q,m,freq_percent\n";
    for (const ConvergenceRow& row : r.rows)
        for (std::size_t i = 0; i < r.ranges.size(); ++i)
            os << row.case_j << ',' << row.q << ',' << r.ranges[i] << ','
               << std::fixed << std::setprecision(6) << row.freq_percent[i] << "\n";
    return os.str();
}

}  // namespace unitfreq
