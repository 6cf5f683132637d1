#include "commands.hpp"

#include "serialization.hpp"

#include "pconvex/caratheodory.hpp"
#include "pconvex/combination.hpp"
#include "pconvex/gluskin.hpp"
#include "pconvex/norms.hpp"
#include "pconvex/rng.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace pconvex::cli {

namespace {

constexpr std::uint64_t kStreamCliSpaces = 0x31;
constexpr std::uint64_t kStreamCliChecks = 0x32;

/// Column-ordered result table; values are pre-formatted for CSV and
/// typed for JSON.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(nlohmann::json row) { rows_.push_back(std::move(row)); }

    std::string to_csv() const {
        std::ostringstream out;
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            out << (i ? "," : "") << columns_[i];
        }
        out << "\n";
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                if (i) out << ",";
                const auto& v = row.at(columns_[i]);
                if (v.is_number_float()) {
                    out << format_double(v.get<double>());
                } else if (v.is_string()) {
                    out << v.get<std::string>();
                } else {
                    out << v.dump();
                }
            }
            out << "\n";
        }
        return out.str();
    }

    std::string to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows_) arr.push_back(row);
        return arr.dump(2) + "\n";
    }

private:
    std::vector<std::string> columns_;
    std::vector<nlohmann::json> rows_;
};

void emit(const Table& table, const ExperimentCommon& common, const std::string& command,
          const nlohmann::json& params) {
    const std::string payload = common.format == "json" ? table.to_json() : table.to_csv();
    if (common.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(common.out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + common.out_path);
    out << payload;
    out.close();
    write_manifest(common.out_path + ".manifest.json", command, params, common.seed);
}

PNormedSpace lp_space(int n, double p) {
    std::vector<Vector> gens;
    for (int i = 0; i < n; ++i) gens.push_back(Vector::Unit(n, i));
    return PNormedSpace(PBody(GeneratorSet(n, std::move(gens)), PExponent(p)));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ValidationError("cannot parse integer list entry '" + tok + "'");
        }
    }
    if (out.empty()) throw ValidationError("empty integer list");
    return out;
}

}  // namespace

int run_gauge(const GaugeArgs& args) {
    const BodyFile body = load_body(args.body_path);
    const Vector x = parse_vector(args.vector_text);
    if (x.size() != body.body.dim()) {
        throw ValidationError("vector dimension " + std::to_string(x.size()) +
                              " does not match body dimension " + std::to_string(body.body.dim()));
    }
    const auto [value, witness] = gauge_bruteforce(x, body.body, args.tol);

    if (args.json) {
        nlohmann::json j;
        j["gauge"] = value;
        j["witness"] = combination_to_json(witness);
        j["witness_weight"] = combination_weight(witness, body.body.p());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "gauge = " << format_double(value) << "\n";
        std::cout << "witness (" << witness.support_size() << " terms, weight "
                  << format_double(combination_weight(witness, body.body.p())) << "):\n";
        for (const Term& t : witness.terms()) {
            std::cout << "  " << (t.sign > 0 ? "+" : "-") << format_double(t.lambda) << " * g"
                      << t.index << "\n";
        }
    }
    return 0;
}

int run_reduce(const ReduceArgs& args) {
    const BodyFile body = load_body(args.body_path);
    const PCombination comb = load_combination(args.comb_path);
    if (comb.dim() != body.body.dim()) {
        throw ValidationError("combination dimension does not match body dimension");
    }
    const ReductionResult result =
        args.zero ? caratheodory_zero(comb, body.body.generators(), body.body.p(), args.tol)
                  : caratheodory_reduce(comb, body.body.generators(), body.body.p(), args.tol);

    nlohmann::json j;
    j["weight_before"] = result.weight_before;
    j["weight_after"] = result.weight_after;
    j["iterations"] = result.iterations;
    j["term_count"] = result.combination.support_size();
    j["combination"] = combination_to_json(result.combination);
    const Vector value = eval_combination(result.combination, body.body.generators());
    auto coords = nlohmann::json::array();
    for (int i = 0; i < value.size(); ++i) coords.push_back(value(i));
    j["value"] = std::move(coords);

    if (args.out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out) throw ValidationError("cannot write " + args.out_path);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int run_volume(const VolumeArgs& args) {
    const PExponent p(args.p);
    const PNormedSpace space =
        args.gluskin
            ? random_gluskin_space({args.n, p, CounterRng::word(args.common.seed, kStreamCliSpaces, 0)})
            : lp_space(args.n, args.p);
    const VolumeEstimate est = volume_mc(space, args.samples, args.common.seed, args.common.threads);

    Table table({"n", "p", "body", "samples", "seed", "mean", "std_error", "closed_form",
                 "upper_bound"});
    table.add_row({{"n", args.n},
                   {"p", args.p},
                   {"body", args.gluskin ? "gluskin" : "lp"},
                   {"samples", args.samples},
                   {"seed", args.common.seed},
                   {"mean", est.mean},
                   {"std_error", est.std_error},
                   {"closed_form", ball_volume_lp(args.n, p)},
                   {"upper_bound", volume_upper_bound(space)}});
    emit(table, args.common, "experiment volume",
         {{"n", args.n}, {"p", args.p}, {"samples", args.samples}, {"gluskin", args.gluskin}});
    return 0;
}

int run_lemma7(const Lemma7Args& args) {
    const PExponent p(args.p);
    const PNormedSpace space =
        args.body_path.empty()
            ? random_gluskin_space({args.n, p, CounterRng::word(args.common.seed, kStreamCliSpaces, 1)})
            : PNormedSpace(load_body(args.body_path).body);
    const LinearMap t_map =
        args.map_path.empty() ? LinearMap::identity(space.dim()) : load_map(args.map_path);

    const Lemma7Report rep = lemma7_experiment(t_map, space, args.t, args.trials, args.common.seed,
                                               args.volume_samples, args.common.threads);

    Table table({"n", "p", "t", "threshold", "trials", "seed", "empirical", "empirical_se",
                 "bound", "bound_se", "volume_mean", "volume_se", "vacuous", "within_bound"});
    table.add_row({{"n", space.dim()},
                   {"p", args.p},
                   {"t", rep.t},
                   {"threshold", rep.threshold},
                   {"trials", rep.trials},
                   {"seed", args.common.seed},
                   {"empirical", rep.empirical},
                   {"empirical_se", rep.empirical_std_error},
                   {"bound", rep.bound},
                   {"bound_se", rep.bound_std_error},
                   {"volume_mean", rep.volume.mean},
                   {"volume_se", rep.volume.std_error},
                   {"vacuous", rep.vacuous ? 1 : 0},
                   {"within_bound", rep.within_bound ? 1 : 0}});
    emit(table, args.common, "experiment lemma7",
         {{"n", args.n}, {"p", args.p}, {"t", args.t}, {"trials", args.trials},
          {"volume_samples", args.volume_samples}, {"map", args.map_path},
          {"body", args.body_path}});
    return 0;
}

int run_diameter(const DiameterArgs& args) {
    const std::vector<int> n_values = parse_int_list(args.n_list);
    const std::vector<ScalingRow> rows =
        diameter_experiment(n_values, PExponent(args.p), args.pairs, args.budget, args.common.seed,
                            args.restarts, args.common.threads);

    Table table({"n", "p", "pair", "distance_upper", "reference", "envelope_lb_a",
                 "envelope_lb_b"});
    for (const ScalingRow& row : rows) {
        table.add_row({{"n", row.n},
                       {"p", row.p},
                       {"pair", row.pair_index},
                       {"distance_upper", row.distance_upper},
                       {"reference", row.reference},
                       {"envelope_lb_a", row.envelope_lb_a},
                       {"envelope_lb_b", row.envelope_lb_b}});
    }
    emit(table, args.common, "experiment diameter",
         {{"n", args.n_list}, {"p", args.p}, {"pairs", args.pairs}, {"budget", args.budget},
          {"restarts", args.restarts}});
    return 0;
}

int run_envelope(const EnvelopeArgs& args) {
    const PExponent p(args.p);
    const PExponent q(args.q);
    Table table({"space", "n", "p", "q", "samples", "seed", "max_ratio", "bound", "violations"});
    for (int s = 0; s < args.spaces; ++s) {
        const PNormedSpace space = random_gluskin_space(
            {args.n, p, CounterRng::word(args.common.seed, kStreamCliSpaces, static_cast<std::uint64_t>(s))});
        const SandwichReport rep = envelope_sandwich_check(
            space, q, args.samples,
            CounterRng::word(args.common.seed, kStreamCliChecks, static_cast<std::uint64_t>(s)));
        table.add_row({{"space", s},
                       {"n", args.n},
                       {"p", args.p},
                       {"q", args.q},
                       {"samples", rep.samples},
                       {"seed", args.common.seed},
                       {"max_ratio", rep.max_ratio},
                       {"bound", rep.bound},
                       {"violations", rep.violations}});
    }
    emit(table, args.common, "experiment envelope",
         {{"n", args.n}, {"p", args.p}, {"q", args.q}, {"samples", args.samples},
          {"spaces", args.spaces}});
    return 0;
}

int run_axioms(const AxiomArgs& args) {
    const PExponent p(args.p);
    Table table({"space", "n", "p", "samples", "seed", "positivity_violations",
                 "homogeneity_violations", "triangle_violations", "worst_homogeneity",
                 "worst_triangle"});
    for (int s = 0; s < args.spaces; ++s) {
        const PNormedSpace space = random_gluskin_space(
            {args.n, p, CounterRng::word(args.common.seed, kStreamCliSpaces, static_cast<std::uint64_t>(s))});
        const AxiomReport rep = check_pnorm_axioms(
            space, args.samples,
            CounterRng::word(args.common.seed, kStreamCliChecks, static_cast<std::uint64_t>(s)));
        table.add_row({{"space", s},
                       {"n", args.n},
                       {"p", args.p},
                       {"samples", rep.samples},
                       {"seed", args.common.seed},
                       {"positivity_violations", rep.positivity_violations},
                       {"homogeneity_violations", rep.homogeneity_violations},
                       {"triangle_violations", rep.triangle_violations},
                       {"worst_homogeneity", rep.worst_homogeneity},
                       {"worst_triangle", rep.worst_triangle}});
    }
    emit(table, args.common, "experiment axioms",
         {{"n", args.n}, {"p", args.p}, {"samples", args.samples}, {"spaces", args.spaces}});
    return 0;
}

}  // namespace pconvex::cli
