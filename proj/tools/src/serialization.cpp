#include "serialization.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <vector>

namespace pconvex::cli {

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace

BodyFile load_body(const std::string& path) {
    const nlohmann::json j = load_json(path);
    try {
        const double p = j.at("p").get<double>();
        const int dim = j.at("dim").get<int>();
        std::vector<Vector> points;
        for (const auto& row : j.at("generators")) {
            Vector v(static_cast<int>(row.size()));
            int i = 0;
            for (const auto& entry : row) v(i++) = entry.get<double>();
            points.push_back(std::move(v));
        }
        BodyFile out{PBody(GeneratorSet(dim, std::move(points)), PExponent(p)), std::nullopt};
        if (j.contains("name")) out.name = j.at("name").get<std::string>();
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("invalid body file " + path + ": " + e.what());
    }
}

void save_body(const BodyFile& body, const std::string& path) {
    nlohmann::json j;
    j["p"] = body.body.p().value();
    j["dim"] = body.body.dim();
    auto gens = nlohmann::json::array();
    for (const Vector& g : body.body.generators().points()) {
        auto row = nlohmann::json::array();
        for (int i = 0; i < g.size(); ++i) row.push_back(g(i));
        gens.push_back(std::move(row));
    }
    j["generators"] = std::move(gens);
    if (body.name) j["name"] = *body.name;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << "\n";
}

PCombination load_combination(const std::string& path) {
    const nlohmann::json j = load_json(path);
    try {
        const int dim = j.at("dim").get<int>();
        std::vector<Term> terms;
        for (const auto& t : j.at("terms")) {
            terms.push_back(Term{t.at("index").get<int>(), t.at("sign").get<int>(),
                                 t.at("lambda").get<double>()});
        }
        return PCombination(dim, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("invalid combination file " + path + ": " + e.what());
    }
}

nlohmann::json combination_to_json(const PCombination& comb) {
    nlohmann::json j;
    j["dim"] = comb.dim();
    auto terms = nlohmann::json::array();
    for (const Term& t : comb.terms()) {
        terms.push_back({{"index", t.index}, {"sign", t.sign}, {"lambda", t.lambda}});
    }
    j["terms"] = std::move(terms);
    return j;
}

LinearMap load_map(const std::string& path) {
    const nlohmann::json j = load_json(path);
    try {
        const auto& rows = j.at("matrix");
        const int n = static_cast<int>(rows.size());
        Matrix m(n, n);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n) {
                throw ValidationError("map matrix is not square in " + path);
            }
            int k = 0;
            for (const auto& entry : row) m(i, k++) = entry.get<double>();
            ++i;
        }
        return LinearMap(std::move(m));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("invalid map file " + path + ": " + e.what());
    }
}

Vector parse_vector(const std::string& text) {
    std::vector<double> coords;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
            if (used != tok.size()) throw std::invalid_argument(tok);
            coords.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError("cannot parse vector component '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (coords.empty()) throw ValidationError("empty vector");
    Vector v(static_cast<int>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<int>(i)) = coords[i];
    return v;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& parameters, std::uint64_t seed) {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["version"] = "0.1.0";

    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    j["timestamp"] = stamp;

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

}  // namespace pconvex::cli
