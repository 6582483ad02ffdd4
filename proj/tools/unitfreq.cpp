// unitfreq: fundamental units of Q(sqrt(d)), the order statistic n(p) with its
// quotient q, range sweeps into case histograms, and report rendering.

#include <array>
#include <cstdint>
#include <iostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "unitfreq/arith.hpp"
#include "unitfreq/orderfind.hpp"
#include "unitfreq/pell.hpp"
#include "unitfreq/report.hpp"
#include "unitfreq/sweep.hpp"
#include "unitfreq/version.hpp"

namespace {

const char* sign_str(int s) { return s > 0 ? "+1" : "-1"; }

int cmd_unit(std::uint64_t d) {
    const unitfreq::FieldParams f = unitfreq::make_field(d);
    const unitfreq::CFExpansion cf = unitfreq::cf_expand(f);
    const unitfreq::UnitExact u = unitfreq::fundamental_unit_exact(f);
    std::cout << "x=" << u.x1.get_str() << " y=" << u.y1.get_str() << " norm=" << sign_str(u.norm_sign)
              << " period=" << cf.period << "\n";
    return 0;
}

int cmd_order(std::uint64_t d, std::uint64_t p) {
    const unitfreq::FieldParams f = unitfreq::make_field(d);
    const unitfreq::UnitResidue u = unitfreq::fundamental_unit_mod_p(f, p);
    const unitfreq::PrimeTables tables = unitfreq::build_tables(p + 1);
    const unitfreq::OrderResult r = unitfreq::order_and_quotient(u, d, tables);
    std::cout << "ls=" << sign_str(unitfreq::case_ls(r.key)) << " q0=" << r.q0 << " n=" << r.n
              << " q=" << r.q << "\n";
    return 0;
}

int cmd_sweep(const unitfreq::SweepConfig& config) {
    const unitfreq::SweepResult res = unitfreq::run_sweep(config);
    std::cout << "pairs=" << res.stats.pairs << " violations=" << res.stats.violations
              << " d_done=" << res.stats.d_done << " d_total=" << res.stats.d_total
              << " wall_seconds=" << res.stats.wall_seconds
              << " complete=" << (res.stats.complete ? "true" : "false") << "\n";
    for (const unitfreq::Histogram& h : res.histograms)
        std::cout << "case=" << h.case_j << " total=" << h.total << "\n";
    if (!res.stats.complete && !config.checkpoint_path.empty())
        std::cout << "checkpoint=" << config.checkpoint_path << "\n";
    if (res.stats.complete && !config.output_path.empty())
        std::cout << "out=" << config.output_path << "\n";
    if (res.stats.violations > 0) {
        std::cerr << "error: " << res.stats.violations << " records failed the divisor-law recheck\n";
        return 2;
    }
    return 0;
}

struct ReportArgs {
    std::string mode;
    std::vector<std::string> inputs;
    std::vector<std::uint64_t> ms;
    int case_j = 0;  // 0 = all cases (table mode)
    std::uint64_t top_k = 20;
    std::uint64_t q_cutoff = 50;
    std::string format = "text";
};

int cmd_report(const ReportArgs& args) {
    const bool csv = args.format == "csv";

    if (args.mode == "table") {
        if (args.inputs.size() != 1) {
            std::cerr << "report --mode table takes exactly one --in file\n";
            return 1;
        }
        const auto hists = unitfreq::read_output_csv(args.inputs[0]);
        bool first = true;
        for (int j = 1; j <= 4; ++j) {
            if (args.case_j != 0 && args.case_j != j) continue;
            const unitfreq::FrequencyTable t = unitfreq::frequency_table(hists[j - 1], args.top_k);
            if (csv) {
                std::string out = unitfreq::render_frequency_table_csv(t);
                if (!first) out = out.substr(out.find('\n') + 1);  // keep a single header
                std::cout << out;
            } else {
                if (!first) std::cout << "\n";
                std::cout << unitfreq::render_frequency_table_text(t);
            }
            first = false;
        }
        return 0;
    }

    if (args.mode == "expectation") {
        if (args.inputs.size() != 1 || args.ms.size() != 1) {
            std::cerr << "report --mode expectation takes exactly one --in file and one --m range\n";
            return 1;
        }
        const auto hists = unitfreq::read_output_csv(args.inputs[0]);
        const unitfreq::ExpectationReport r = unitfreq::expectation(hists[0], args.ms[0]);
        std::cout << (csv ? unitfreq::render_expectation_csv(r) : unitfreq::render_expectation_text(r));
        return 0;
    }

    if (args.mode == "theorem") {
        if (args.inputs.size() != 1) {
            std::cerr << "report --mode theorem takes exactly one --in file\n";
            return 1;
        }
        const auto hists = unitfreq::read_output_csv(args.inputs[0]);
        const unitfreq::TheoremCheck t = unitfreq::theorem_check(hists[3]);
        std::cout << (csv ? unitfreq::render_theorem_csv(t) : unitfreq::render_theorem_text(t));
        return t.pass ? 0 : 2;
    }

    // convergence
    if (args.inputs.size() < 2 || args.ms.size() != args.inputs.size()) {
        std::cerr << "report --mode convergence needs >= 2 --in files with one --m per file\n";
        return 1;
    }
    std::vector<std::pair<std::uint64_t, std::array<unitfreq::Histogram, 4>>> runs;
    runs.reserve(args.inputs.size());
    for (std::size_t i = 0; i < args.inputs.size(); ++i)
        runs.emplace_back(args.ms[i], unitfreq::read_output_csv(args.inputs[i]));
    const unitfreq::ConvergenceReport r = unitfreq::convergence_report(runs, args.q_cutoff);
    std::cout << (csv ? unitfreq::render_convergence_csv(r) : unitfreq::render_convergence_text(r));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fundamental-unit order statistics for real quadratic fields"};
    app.set_version_flag("--version", UNITFREQ_VERSION);
    app.require_subcommand(1);

    std::uint64_t unit_d = 0;
    CLI::App* unit_cmd = app.add_subcommand("unit", "fundamental unit of Q(sqrt(d))");
    unit_cmd->add_option("d", unit_d, "squarefree d congruent to 2 or 3 mod 4")->required();

    std::uint64_t order_d = 0, order_p = 0;
    CLI::App* order_cmd = app.add_subcommand("order", "order statistic n(p) and quotient q");
    order_cmd->add_option("d", order_d, "squarefree d congruent to 2 or 3 mod 4")->required();
    order_cmd->add_option("p", order_p, "odd prime not dividing d")->required();

    unitfreq::SweepConfig cfg;
    cfg.workers = std::thread::hardware_concurrency() ? std::thread::hardware_concurrency() : 1;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "accumulate case histograms over a (d, p) range");
    sweep_cmd->add_option("--d-min", cfg.d_min, "lowest d (default 2)");
    sweep_cmd->add_option("--d-max", cfg.d_max, "highest d")->required();
    sweep_cmd->add_option("--p-min", cfg.p_min, "lowest prime (default 3)");
    sweep_cmd->add_option("--p-max", cfg.p_max, "highest prime")->required();
    sweep_cmd->add_option("--workers", cfg.workers, "worker threads")->envname("SWEEP_WORKERS");
    sweep_cmd->add_option("--checkpoint", cfg.checkpoint_path, "checkpoint file (resume if present)");
    sweep_cmd->add_option("--out", cfg.output_path, "output file, written on completion");
    sweep_cmd->add_option("--chunk-size", cfg.chunk_size, "d values per work unit");
    sweep_cmd->add_option("--max-chunks", cfg.max_chunks, "stop after N chunks (0 = run to completion)");
    sweep_cmd->add_option("--checkpoint-every", cfg.checkpoint_every, "chunks between periodic saves");

    ReportArgs rargs;
    CLI::App* report_cmd = app.add_subcommand("report", "render reports from sweep output files");
    report_cmd->add_option("--mode", rargs.mode, "table|expectation|theorem|convergence")
        ->required()
        ->check(CLI::IsMember({"table", "expectation", "theorem", "convergence"}));
    report_cmd->add_option("--in", rargs.inputs, "sweep output file (repeatable)")->required();
    report_cmd->add_option("--m", rargs.ms, "range bound m for the input (repeatable)");
    report_cmd->add_option("--case", rargs.case_j, "restrict table mode to one case (1..4)")
        ->check(CLI::Range(0, 4));
    report_cmd->add_option("--top-k", rargs.top_k, "quotients per table (default 20)");
    report_cmd->add_option("--q-cutoff", rargs.q_cutoff, "convergence quotient cutoff (default 50)");
    report_cmd->add_option("--format", rargs.format, "text|csv (default text)")
        ->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? 0 : 1;
    }

    try {
        if (*unit_cmd) return cmd_unit(unit_d);
        if (*order_cmd) return cmd_order(order_d, order_p);
        if (*sweep_cmd) return cmd_sweep(cfg);
        return cmd_report(rargs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
