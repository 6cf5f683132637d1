#include "commands.hpp"

#include "pconvex/types.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

int env_threads() {
    if (const char* v = std::getenv("PCONVEX_THREADS")) {
        const int t = std::atoi(v);
        if (t >= 1) return t;
    }
    return 1;
}

void add_common(CLI::App* cmd, pconvex::cli::ExperimentCommon& common) {
    cmd->add_option("--seed", common.seed, "RNG seed (required; runs are reproducible per seed)")
        ->required();
    cmd->add_option("--out", common.out_path, "Output file; a .manifest.json sidecar is written");
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", common.threads, "Worker threads (results are independent of this)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-convex bodies: exact gauges, Caratheodory reduction, quasi-norm experiments"};
    app.require_subcommand(1);

    pconvex::cli::GaugeArgs gauge_args;
    auto* gauge_cmd = app.add_subcommand("gauge", "Gauge of a vector in a body, with witness");
    gauge_cmd->add_option("body", gauge_args.body_path, "Body JSON file")->required();
    gauge_cmd->add_option("--vector", gauge_args.vector_text, "Comma-separated coordinates")
        ->required();
    gauge_cmd->add_option("--tol", gauge_args.tol, "Rank/residual tolerance")->capture_default_str();
    gauge_cmd->add_flag("--json", gauge_args.json, "Emit JSON instead of text");

    pconvex::cli::ReduceArgs reduce_args;
    auto* reduce_cmd = app.add_subcommand("reduce", "Caratheodory reduction of a combination");
    reduce_cmd->add_option("body", reduce_args.body_path, "Body JSON file")->required();
    reduce_cmd->add_option("combination", reduce_args.comb_path, "Combination JSON file")->required();
    reduce_cmd->add_flag("--zero", reduce_args.zero, "Treat the combination as a representation of 0");
    reduce_cmd->add_option("--tol", reduce_args.tol, "Tolerance")->capture_default_str();
    reduce_cmd->add_option("--out", reduce_args.out_path, "Write JSON here instead of stdout");

    auto* exp_cmd = app.add_subcommand("experiment", "Seeded experiments emitting CSV/JSON tables");
    exp_cmd->require_subcommand(1);
    const int default_threads = env_threads();

    pconvex::cli::VolumeArgs volume_args;
    volume_args.common.threads = default_threads;
    auto* volume_cmd = exp_cmd->add_subcommand("volume", "Monte Carlo volume vs closed form/bounds");
    volume_cmd->add_option("--n", volume_args.n, "Dimension")->required();
    volume_cmd->add_option("--p", volume_args.p, "Exponent p")->required();
    volume_cmd->add_option("--samples", volume_args.samples, "MC samples")->capture_default_str();
    volume_cmd->add_flag("--gluskin", volume_args.gluskin, "Use a random Gluskin space instead of l_p");
    add_common(volume_cmd, volume_args.common);

    pconvex::cli::Lemma7Args lemma7_args;
    lemma7_args.common.threads = default_threads;
    auto* lemma7_cmd = exp_cmd->add_subcommand("lemma7", "Small-image probability vs volume bound");
    lemma7_cmd->add_option("--n", lemma7_args.n, "Dimension")->capture_default_str();
    lemma7_cmd->add_option("--p", lemma7_args.p, "Exponent p")->required();
    lemma7_cmd->add_option("--t", lemma7_args.t, "Scale t > 0")->required();
    lemma7_cmd->add_option("--trials", lemma7_args.trials, "Sphere-tuple trials")->capture_default_str();
    lemma7_cmd->add_option("--volume-samples", lemma7_args.volume_samples, "MC samples for |Q_p(A')|")
        ->capture_default_str();
    lemma7_cmd->add_option("--map", lemma7_args.map_path, "Linear map JSON (default: identity)");
    lemma7_cmd->add_option("--body", lemma7_args.body_path, "Fixed body JSON (default: random)");
    add_common(lemma7_cmd, lemma7_args.common);

    pconvex::cli::DiameterArgs diameter_args;
    diameter_args.common.threads = default_threads;
    auto* diameter_cmd = exp_cmd->add_subcommand("diameter", "Distance scaling over random pairs");
    diameter_cmd->add_option("--n", diameter_args.n_list, "Comma-separated dimensions")->required();
    diameter_cmd->add_option("--p", diameter_args.p, "Exponent p")->required();
    diameter_cmd->add_option("--pairs", diameter_args.pairs, "Pairs per dimension")->capture_default_str();
    diameter_cmd->add_option("--budget", diameter_args.budget, "Objective evaluations per pair")
        ->capture_default_str();
    diameter_cmd->add_option("--restarts", diameter_args.restarts, "Random restarts")->capture_default_str();
    add_common(diameter_cmd, diameter_args.common);

    pconvex::cli::EnvelopeArgs envelope_args;
    envelope_args.common.threads = default_threads;
    auto* envelope_cmd = exp_cmd->add_subcommand("envelope", "q-envelope sandwich check");
    envelope_cmd->add_option("--n", envelope_args.n, "Dimension")->required();
    envelope_cmd->add_option("--p", envelope_args.p, "Exponent p")->required();
    envelope_cmd->add_option("--q", envelope_args.q, "Envelope exponent q in (p, 1]")->capture_default_str();
    envelope_cmd->add_option("--samples", envelope_args.samples, "Samples per space")->capture_default_str();
    envelope_cmd->add_option("--spaces", envelope_args.spaces, "Random spaces")->capture_default_str();
    add_common(envelope_cmd, envelope_args.common);

    pconvex::cli::AxiomArgs axiom_args;
    axiom_args.common.threads = default_threads;
    auto* axiom_cmd = exp_cmd->add_subcommand("axioms", "p-norm axiom spot checks on random spaces");
    axiom_cmd->add_option("--n", axiom_args.n, "Dimension")->required();
    axiom_cmd->add_option("--p", axiom_args.p, "Exponent p")->required();
    axiom_cmd->add_option("--samples", axiom_args.samples, "Sample pairs per space")->capture_default_str();
    axiom_cmd->add_option("--spaces", axiom_args.spaces, "Random spaces")->capture_default_str();
    add_common(axiom_cmd, axiom_args.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (gauge_cmd->parsed()) return pconvex::cli::run_gauge(gauge_args);
        if (reduce_cmd->parsed()) return pconvex::cli::run_reduce(reduce_args);
        if (volume_cmd->parsed()) return pconvex::cli::run_volume(volume_args);
        if (lemma7_cmd->parsed()) return pconvex::cli::run_lemma7(lemma7_args);
        if (diameter_cmd->parsed()) return pconvex::cli::run_diameter(diameter_args);
        if (envelope_cmd->parsed()) return pconvex::cli::run_envelope(envelope_args);
        if (axiom_cmd->parsed()) return pconvex::cli::run_axioms(axiom_args);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const pconvex::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pconvex::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pconvex::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
