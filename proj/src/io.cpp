#include "whl/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace whl::io {

namespace {

unsigned read_resolution(const json& j)
{
    if (!j.is_object() || !j.contains("resolution")) throw std::invalid_argument("missing \"resolution\"");
    const auto n = j.at("resolution").get<long long>();
    if (n < 0 || n > static_cast<long long>(kMaxResolution)) throw std::invalid_argument("resolution out of range");
    return static_cast<unsigned>(n);
}

VariableExponent exponent_from_formula(unsigned res, const json& formula)
{
    const auto kind = formula.at("kind").get<std::string>();
    if (kind == "affine") return VariableExponent::affine(res, formula.at("a").get<double>(), formula.at("c").get<double>());
    if (kind == "constant") return VariableExponent::constant(res, formula.at("p").get<double>());
    if (kind == "split") {
        return VariableExponent::split(res, formula.at("left").get<double>(), formula.at("right").get<double>());
    }
    throw std::invalid_argument("unknown exponent formula kind '" + kind + "'");
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& spec)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw std::invalid_argument("bad number in exponent spec '" + spec + "'");
        out.push_back(v);
    }
    if (out.size() != expected) throw std::invalid_argument("wrong parameter count in exponent spec '" + spec + "'");
    return out;
}

}  // namespace

VariableExponent exponent_from_json(const json& j)
{
    const unsigned res = read_resolution(j);
    if (j.contains("formula")) return exponent_from_formula(res, j.at("formula"));
    return VariableExponent(res, j.at("values").get<std::vector<double>>());
}

json to_json(const VariableExponent& exp)
{
    return {{"resolution", exp.resolution()}, {"values", std::vector<double>(exp.values().begin(), exp.values().end())}};
}

GridFunction function_from_json(const json& j)
{
    const unsigned res = read_resolution(j);
    return GridFunction(res, j.at("values").get<std::vector<double>>());
}

json to_json(const GridFunction& f)
{
    return {{"resolution", f.resolution()}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

DyadicFiltration filtration_from_json(const json& j)
{
    const unsigned res = read_resolution(j);
    if (j.value("kind", std::string{}) == "dyadic") return DyadicFiltration::dyadic(res);
    return DyadicFiltration(res, j.at("levels").get<std::vector<DyadicFiltration::Partition>>());
}

json to_json(const DyadicFiltration& filt)
{
    json levels = json::array();
    for (unsigned n = 0; n <= filt.depth(); ++n) levels.push_back(filt.level(n));
    return {{"resolution", filt.resolution()}, {"levels", std::move(levels)}};
}

json to_json(const WalshSpectrum& spec)
{
    return {{"resolution", spec.resolution}, {"coefficients", spec.coefficients}};
}

json to_json(const AtomBundle& bundle)
{
    json entries = json::array();
    for (const auto& e : bundle.entries) {
        json tau = json::array();
        for (std::size_t c = 0; c < e.tau.size(); ++c) {
            if (e.tau.is_finite(c)) {
                tau.push_back(e.tau[c]);
            } else {
                tau.push_back(nullptr);
            }
        }
        const auto& a = e.atom.terminal();
        entries.push_back({{"k", e.k},
                           {"mu_k", e.mu},
                           {"tau", std::move(tau)},
                           {"atom", std::vector<double>(a.values().begin(), a.values().end())}});
    }
    return {{"kind", std::string(to_string(bundle.kind))},
            {"resolution", bundle.exponent.resolution()},
            {"mean", bundle.mean},
            {"entries", std::move(entries)}};
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

VariableExponent parse_exponent_spec(const std::string& spec, unsigned resolution)
{
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        const std::string rest = spec.substr(colon + 1);
        if (kind == "const") return VariableExponent::constant(resolution, parse_numbers(rest, 1, spec)[0]);
        if (kind == "affine") {
            const auto v = parse_numbers(rest, 2, spec);
            return VariableExponent::affine(resolution, v[0], v[1]);
        }
        if (kind == "split") {
            const auto v = parse_numbers(rest, 2, spec);
            return VariableExponent::split(resolution, v[0], v[1]);
        }
    }
    auto exp = exponent_from_json(read_json_file(spec));
    if (resolution != 0 && exp.resolution() != resolution) {
        throw std::invalid_argument("exponent file " + spec + " has resolution " + std::to_string(exp.resolution())
                                    + ", expected " + std::to_string(resolution));
    }
    return exp;
}

}  // namespace whl::io
