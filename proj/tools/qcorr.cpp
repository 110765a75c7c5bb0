// qcorr: cumulative correlation measure from the command line.
//
// Exit codes: 0 success, 2 input/parse, 3 resource guard, 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "qcorr/qcorr.hpp"
#include "qcorr/report_json.hpp"

namespace {

using namespace qcorr;

constexpr int kMaxCcmQubits = 12;

struct GlobalOptions {
    std::string unit = "normalized";
    std::string degeneracy = "mixture";
    std::string channel = "paper";
    std::string out;
    std::uint64_t seed = 20140101;
    int threads = 1;

    DistanceUnit distance_unit() const { return unit == "bits" ? DistanceUnit::bits : DistanceUnit::normalized; }
    GroundStatePolicy policy() const {
        GroundStatePolicy p;
        p.mode = degeneracy == "first" ? DegeneracyMode::first_vector : DegeneracyMode::subspace_mixture;
        return p;
    }
    ChannelKind channel_kind() const { return channel == "standard" ? ChannelKind::standard : ChannelKind::paper; }
};

int cmd_ghz(const GlobalOptions& g, std::vector<int> ns, const std::string& mode) {
    const bool closed = mode != "direct";
    const bool direct = mode != "closed";
    if (ns.empty()) {
        for (int n = 2; n <= (direct ? 8 : 10); ++n) ns.push_back(n);
    }
    for (int n : ns) {
        if (n < 2 || (closed && n > 10) || (direct && n > 8)) {
            throw Error(ErrorKind::RangeError, "n=" + std::to_string(n) + " outside the supported range");
        }
    }
    const double scale = unit_factor(g.distance_unit()) / unit_factor(DistanceUnit::normalized);
    if (mode == "both") {
        std::cout << "n,closed,direct,diff\n";
    } else {
        std::cout << "n,ccm\n";
    }
    for (int n : ns) {
        const double c = closed ? ghz_closed_form(n).value * scale : 0.0;
        const double d = direct ? ccm(make_ghz(n).to_density(), g.distance_unit()).value : 0.0;
        std::cout << n << ',';
        if (mode == "both") {
            std::cout << format_fixed9(c) << ',' << format_fixed9(d) << ',' << format_fixed9(std::abs(c - d)) << '\n';
        } else {
            std::cout << format_fixed9(closed ? c : d) << '\n';
        }
    }
    return 0;
}

int cmd_ccm(const GlobalOptions& g, const std::string& path, bool naive, bool report) {
    const DensityOperator rho = as_density(read_qs1_file(path));
    if (rho.num_qubits() > kMaxCcmQubits) throw Error(ErrorKind::TooLarge, "ccm limited to 12 qubits");
    if (naive) {
        std::cout << format_fixed9(ccm_naive(rho, g.distance_unit())) << '\n';
        return 0;
    }
    const CcmReport r = ccm(rho, g.distance_unit());
    if (report) {
        std::cout << to_json(r).dump(2) << '\n';
    } else {
        std::cout << format_fixed9(r.value) << '\n';
    }
    return 0;
}

int cmd_tv(const GlobalOptions& g, const std::string& path) {
    const DensityOperator rho = as_density(read_qs1_file(path));
    std::cout << format_fixed9(multi_information_tv(rho, g.distance_unit())) << '\n';
    return 0;
}

void emit(const GlobalOptions& g, const SweepResult& result) {
    if (g.out.empty()) {
        write_csv(std::cout, result);
    } else {
        write_csv_file(g.out, result);
    }
}

int cmd_check(const GlobalOptions& g, int trials) {
    bool ok = true;
    for (const auto& r : run_property_suite(trials, g.seed)) {
        std::printf("%s %-36s trials=%d failures=%d tol=%.0e\n", r.passed() ? "PASS" : "FAIL", r.name.c_str(),
                    r.trials, r.failures, r.tolerance);
        ok = ok && r.passed();
    }
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cumulative correlation measure for multi-qubit states"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--unit", g.unit, "Distance unit")->check(CLI::IsMember({"bits", "normalized"}));
    app.add_option("--degeneracy", g.degeneracy, "Degenerate ground-space policy")
        ->check(CLI::IsMember({"mixture", "first"}));
    app.add_option("--channel", g.channel, "Noise channel")->check(CLI::IsMember({"paper", "standard"}));
    app.add_option("--out", g.out, "Output CSV path (stdout when omitted)");
    app.add_option("--seed", g.seed, "Seed for randomized checks");
    app.add_option("--threads", g.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    auto* ghz = app.add_subcommand("ghz", "CCM of GHZ states (closed form and/or direct)");
    std::vector<int> ghz_n;
    std::string ghz_mode = "closed";
    ghz->add_option("n", ghz_n, "Qubit counts (default: full table)");
    ghz->add_option("--mode", ghz_mode)->check(CLI::IsMember({"closed", "direct", "both"}));

    auto* ccm_cmd = app.add_subcommand("ccm", "CCM of a QS1 state file");
    std::string ccm_path;
    bool naive = false;
    bool report = false;
    ccm_cmd->add_option("file", ccm_path)->required();
    ccm_cmd->add_flag("--naive", naive, "Use the uncached recursion (n <= 6)");
    ccm_cmd->add_flag("--report", report, "Print the minimizing bipartition tree as JSON");

    auto* tv_cmd = app.add_subcommand("tv", "Multi-information of a QS1 state file");
    std::string tv_path;
    tv_cmd->add_option("file", tv_path)->required();

    SweepConfig sweep;
    std::string model = "xxz";
    double lambda_min = -1.5, lambda_max = 1.5;
    int lambda_steps = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Ground-state sweep over a spin model");
    sweep_cmd->add_option("--model", model)->check(CLI::IsMember({"xxz", "dxxz", "ising"}));
    sweep_cmd->add_option("--spins", sweep.spins, "Spins (per chain for dxxz)");
    sweep_cmd->add_option("--min", sweep.param.min, "Lower bound of delta (lambda for ising)");
    sweep_cmd->add_option("--max", sweep.param.max);
    sweep_cmd->add_option("--steps", sweep.param.steps);
    sweep_cmd->add_option("--lambda-min", lambda_min, "dxxz second-chain anisotropy range");
    sweep_cmd->add_option("--lambda-max", lambda_max);
    sweep_cmd->add_option("--lambda-steps", lambda_steps);
    sweep_cmd->add_flag("--tv", sweep.include_tv, "Add the multi-information column");
    sweep_cmd->add_flag("--derivative", sweep.derivative, "Add the central-difference dccm column");

    SweepConfig noise;
    noise.param = {-1.5, 1.0, 101};
    ParamRange p_range{0.0, 0.04, 5};
    auto* noise_cmd = app.add_subcommand("noise", "XXZ ground states under local noise");
    noise_cmd->add_option("--spins", noise.spins);
    noise_cmd->add_option("--min", noise.param.min);
    noise_cmd->add_option("--max", noise.param.max);
    noise_cmd->add_option("--steps", noise.param.steps);
    noise_cmd->add_option("--p-min", p_range.min);
    noise_cmd->add_option("--p-max", p_range.max);
    noise_cmd->add_option("--p-steps", p_range.steps);
    noise_cmd->add_flag("--tv", noise.include_tv);

    auto* check_cmd = app.add_subcommand("check", "Run the randomized property suite");
    int trials = 200;
    check_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ghz) return cmd_ghz(g, ghz_n, ghz_mode);
        if (*ccm_cmd) return cmd_ccm(g, ccm_path, naive, report);
        if (*tv_cmd) return cmd_tv(g, tv_path);
        if (*check_cmd) return cmd_check(g, trials);
        if (*sweep_cmd) {
            sweep.model = model == "dxxz" ? Model::dxxz : model == "ising" ? Model::ising : Model::xxz;
            if (sweep.model == Model::ising && sweep_cmd->count("--min") == 0) sweep.param = {0.0, 2.0, 101};
            if (sweep.model == Model::dxxz) {
                sweep.param2 = ParamRange{lambda_min, lambda_max, lambda_steps > 0 ? lambda_steps : sweep.param.steps};
            }
            sweep.unit = g.distance_unit();
            sweep.policy = g.policy();
            sweep.threads = g.threads;
            emit(g, run_sweep(sweep));
            return 0;
        }
        if (*noise_cmd) {
            noise.model = Model::xxz;
            noise.noise = p_range;
            noise.channel = g.channel_kind();
            noise.unit = g.distance_unit();
            noise.policy = g.policy();
            noise.threads = g.threads;
            const SweepResult result = run_sweep(noise);
            emit(g, result);
            const NoiseSummary summary = summarize_noise(result);
            std::ostream& log = g.out.empty() ? std::cerr : std::cout;
            for (const auto& peak : summary.peaks) {
                log << "# p=" << format_fixed9(peak.p) << " peak_delta=" << format_fixed9(peak.peak_param)
                    << " peak=" << format_fixed9(peak.peak_value) << " prominence=" << format_fixed9(peak.prominence)
                    << '\n';
            }
            log << "# monotone_in_p=" << (summary.monotone_in_p ? "yes" : "no") << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "qcorr: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "qcorr: " << e.what() << '\n';
        return 4;
    }
    return 2;
}
