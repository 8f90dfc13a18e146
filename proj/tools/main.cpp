#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "powspec/report.hpp"
#include "powspec/sweep.hpp"

namespace {

using namespace powspec;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitInternalFault = 4;

void print_report(const AnalysisReport& rep) {
    std::cout << "F(x) = x^" << rep.d << " over F_" << rep.q << "^2"
              << "  (p=" << rep.p << " m=" << rep.m << " k=" << rep.k << ")\n"
              << "  modulus coefficients (low to high):";
    for (uint32_t c : rep.modulus) std::cout << ' ' << c;
    std::cout << '\n'
              << "  differential spectrum " << spectrum_to_string(rep.differential)
              << "  uniformity " << rep.diff_uniformity << '\n'
              << "  boomerang spectrum    " << spectrum_to_string(rep.boomerang) << "  uniformity "
              << rep.boom_uniformity << '\n'
              << "  locally APN: " << (rep.is_locally_apn ? "yes" : "no")
              << "   branch: " << branch_name(rep.predicted.branch)
              << (rep.degenerate ? "   [degenerate]" : "") << '\n'
              << "  status: " << (rep.pass() ? "pass" : "FAIL") << '\n';
}

int cmd_analyze(uint32_t p, uint32_t m, uint64_t k, const std::string& json_path,
                const std::string& csv_path) {
    const AnalysisReport rep = analyze(p, m, k);
    print_report(rep);
    if (!json_path.empty()) write_report_json(rep, json_path);
    if (!csv_path.empty()) write_report_csv(rep, csv_path);
    return rep.pass() ? kExitPass : kExitMismatch;
}

int cmd_verify(uint32_t p, uint32_t m, uint64_t k) {
    const PowerMapSpec map(p, m, k);
    const FieldCtx ctx = build_field(p, m);
    const auto checks = run_verification(ctx, map);
    bool all = true;
    std::cout << "p=" << p << " m=" << m << " k=" << k
              << "  branch: " << branch_name(closed_form_branch(p, m)) << '\n';
    for (const auto& c : checks) {
        all = all && c.pass;
        std::cout << "  " << (c.pass ? "ok  " : "FAIL") << ' ' << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ')';
        std::cout << '\n';
    }
    return all ? kExitPass : kExitMismatch;
}

int cmd_sweep(const std::vector<uint32_t>& primes, uint32_t m_max, const std::string& k_policy,
              const std::vector<uint64_t>& k_list, const std::string& out_path, unsigned workers) {
    SweepOptions opt;
    opt.primes = primes;
    opt.m_max = m_max;
    if (k_policy == "list") {
        if (k_list.empty())
            throw std::invalid_argument("sweep: --k-policy list requires --k values");
        opt.k_list = k_list;
    } else if (k_policy != "all-coprime") {
        throw std::invalid_argument("sweep: unknown k policy '" + k_policy + "'");
    }
    opt.out_path = out_path;
    opt.workers = workers;
    const SweepResult result = run_sweep(opt, &std::cout);
    return result.failed == 0 ? kExitPass : kExitMismatch;
}

int cmd_dump(uint32_t p, uint32_t m, uint64_t k, const std::string& table,
             const std::string& out_path) {
    const PowerMapSpec map(p, m, k);
    const FieldCtx ctx = build_field(p, m);
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
    if (table == "ddt-row") {
        write_row_csv(out, derivative_histogram(ctx, map));
    } else if (table == "bct-row") {
        write_row_csv(out, boomerang_histogram(ctx, map), 1);
    } else {
        throw std::invalid_argument("dump: unknown table '" + table + "' (ddt-row or bct-row)");
    }
    std::cout << "wrote " << table << " for p=" << p << " m=" << m << " k=" << k << " to "
              << out_path << '\n';
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differential and boomerang spectra of x^{k(q-1)} over F_{q^2}"};
    app.require_subcommand(1);

    uint32_t p = 0, m = 0, m_max = 1;
    uint64_t k = 1;
    unsigned workers = 0;
    std::vector<uint32_t> primes;
    std::vector<uint64_t> k_list;
    std::string json_path, csv_path, out_path, table, k_policy = "all-coprime";

    auto* analyze_cmd = app.add_subcommand("analyze", "spectra and verdicts for one (p, m, k)");
    analyze_cmd->add_option("--p", p, "characteristic (prime)")->required();
    analyze_cmd->add_option("--m", m, "q = p^m")->required();
    analyze_cmd->add_option("--k", k, "exponent factor, coprime to q+1")->required();
    analyze_cmd->add_option("--json", json_path, "write the report as JSON");
    analyze_cmd->add_option("--csv", csv_path, "write the spectra as CSV");

    auto* verify_cmd = app.add_subcommand("verify", "full check battery for one (p, m, k)");
    verify_cmd->add_option("--p", p)->required();
    verify_cmd->add_option("--m", m)->required();
    verify_cmd->add_option("--k", k)->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "verify a (p, m, k) grid on a worker pool");
    sweep_cmd->add_option("--p", primes, "prime list")->required()->delimiter(',');
    sweep_cmd->add_option("--m-max", m_max, "largest m per prime")->required();
    sweep_cmd->add_option("--k-policy", k_policy, "all-coprime (default) or list");
    sweep_cmd->add_option("--k", k_list, "explicit k values for --k-policy list")->delimiter(',');
    sweep_cmd->add_option("--out", out_path, "JSON-lines results file (appended)")->required();
    sweep_cmd->add_option("--workers", workers, "worker threads (default: POWSPEC_WORKERS or all)");

    auto* dump_cmd = app.add_subcommand("dump", "write one b-indexed row as CSV");
    dump_cmd->add_option("--p", p)->required();
    dump_cmd->add_option("--m", m)->required();
    dump_cmd->add_option("--k", k)->required();
    dump_cmd->add_option("--table", table, "ddt-row or bct-row")->required();
    dump_cmd->add_option("--out", out_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
        if (analyze_cmd->parsed()) return cmd_analyze(p, m, k, json_path, csv_path);
        if (verify_cmd->parsed()) return cmd_verify(p, m, k);
        if (sweep_cmd->parsed()) return cmd_sweep(primes, m_max, k_policy, k_list, out_path, workers);
        if (dump_cmd->parsed()) return cmd_dump(p, m, k, table, out_path);
        return kExitBadInput;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    } catch (const powspec::resource_cap_error& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return kExitResourceCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal fault: " << e.what() << '\n';
        return kExitInternalFault;
    }
}
