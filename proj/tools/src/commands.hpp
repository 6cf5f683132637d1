#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pconvex::cli {

struct GaugeArgs {
    std::string body_path;
    std::string vector_text;
    double tol = 1e-10;
    bool json = false;
};
int run_gauge(const GaugeArgs& args);

struct ReduceArgs {
    std::string body_path;
    std::string comb_path;
    bool zero = false;
    double tol = 1e-10;
    std::string out_path;  // empty: stdout
};
int run_reduce(const ReduceArgs& args);

/// Flags shared by all experiment subcommands. Stochastic commands
/// require an explicit seed; there is no wall-clock default.
struct ExperimentCommon {
    std::uint64_t seed = 0;
    std::string out_path;  // empty: stdout
    std::string format = "csv";
    int threads = 1;
};

struct VolumeArgs {
    int n = 2;
    double p = 0.5;
    long samples = 1000000;
    bool gluskin = false;
    ExperimentCommon common;
};
int run_volume(const VolumeArgs& args);

struct Lemma7Args {
    int n = 2;
    double p = 0.5;
    double t = 0.1;
    long trials = 10000;
    long volume_samples = 200000;
    std::string map_path;   // empty: identity
    std::string body_path;  // empty: random Gluskin space from seed
    ExperimentCommon common;
};
int run_lemma7(const Lemma7Args& args);

struct DiameterArgs {
    std::string n_list = "2,3";
    double p = 0.5;
    int pairs = 2;
    long budget = 2000;
    int restarts = 8;
    ExperimentCommon common;
};
int run_diameter(const DiameterArgs& args);

struct EnvelopeArgs {
    int n = 2;
    double p = 0.5;
    double q = 1.0;
    long samples = 1000;
    int spaces = 5;
    ExperimentCommon common;
};
int run_envelope(const EnvelopeArgs& args);

struct AxiomArgs {
    int n = 2;
    double p = 0.5;
    long samples = 1000;
    int spaces = 5;
    ExperimentCommon common;
};
int run_axioms(const AxiomArgs& args);

}  // namespace pconvex::cli
