#include "truthdiscover/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "truthdiscover/io.hpp"
#include "truthdiscover/parallel.hpp"

namespace truthdiscover {

namespace {

template <class T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || p != text.data() + text.size()) {
        throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

template <class T, class Field>
Setter number(Field field) {
    return [field](RunConfig& c, std::string_view k, std::string_view v) { field(c) = parse_number<T>(k, v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = {
        {"prior.damping", number<double>([](RunConfig& c) -> double& { return c.prior.damping; })},
        {"prior.tolerance", number<double>([](RunConfig& c) -> double& { return c.prior.tolerance; })},
        {"prior.max_sweeps", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.prior.max_sweeps; })},

        {"engine.outer_threshold", number<double>([](RunConfig& c) -> double& { return c.engine.outer_threshold; })},
        {"engine.outer_max", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.engine.outer_max; })},
        {"engine.initial_trust", number<double>([](RunConfig& c) -> double& { return c.engine.initial_trust; })},
        {"engine.bp_damping", number<double>([](RunConfig& c) -> double& { return c.engine.bp.damping; })},
        {"engine.bp_tolerance", number<double>([](RunConfig& c) -> double& { return c.engine.bp.tolerance; })},
        {"engine.bp_max_rounds", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.engine.bp.max_rounds; })},
        {"engine.edge_threshold", number<double>([](RunConfig& c) -> double& { return c.engine.field.edge_threshold; })},
        {"engine.coupling", number<double>([](RunConfig& c) -> double& { return c.engine.field.coupling; })},
        {"engine.false_pair_factor", number<double>([](RunConfig& c) -> double& { return c.engine.field.false_pair_factor; })},
        {"engine.clamp", number<double>([](RunConfig& c) -> double& { return c.engine.field.clamp; })},

        {"similarity.numeric_floor", number<double>([](RunConfig& c) -> double& { return c.engine.similarity.numeric_floor; })},
        {"similarity.cross_kind", number<double>([](RunConfig& c) -> double& { return c.engine.similarity.cross_kind_similarity; })},

        {"truthfinder.dampening", number<double>([](RunConfig& c) -> double& { return c.truthfinder.dampening; })},
        {"truthfinder.implication", number<double>([](RunConfig& c) -> double& { return c.truthfinder.implication; })},
        {"truthfinder.base_similarity", number<double>([](RunConfig& c) -> double& { return c.truthfinder.base_similarity; })},
        {"truthfinder.initial_trust", number<double>([](RunConfig& c) -> double& { return c.truthfinder.initial_trust; })},
        {"truthfinder.tolerance", number<double>([](RunConfig& c) -> double& { return c.truthfinder.tolerance; })},
        {"truthfinder.max_iterations", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.truthfinder.max_iterations; })},

        {"synth.n_sources", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.synth.n_sources; })},
        {"synth.n_entities", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.synth.n_entities; })},
        {"synth.n_conflicts", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.synth.n_conflicts; })},
        {"synth.attachment_m", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.synth.attachment_m; })},
        {"synth.reliability_low", number<double>([](RunConfig& c) -> double& { return c.synth.reliability_low; })},
        {"synth.reliability_high", number<double>([](RunConfig& c) -> double& { return c.synth.reliability_high; })},
        {"synth.values_per_conflict", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.synth.values_per_conflict; })},
        {"synth.sameas_fidelity", number<double>([](RunConfig& c) -> double& { return c.synth.sameas_fidelity; })},
        {"synth.seed", number<std::uint64_t>([](RunConfig& c) -> std::uint64_t& { return c.synth.seed; })},
        {"synth.uniform_support",
         [](RunConfig& c, std::string_view k, std::string_view v) { c.synth.uniform_support = parse_bool(k, v); }},

        {"run.input",
         [](RunConfig& c, std::string_view, std::string_view v) {
             c.inputs.clear();
             std::istringstream in{std::string(v)};
             for (std::string path; in >> path;) c.inputs.push_back(path);
         }},
        {"run.policy",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             auto p = parse_source_policy(v);
             if (!p) throw ConfigError("invalid value '" + std::string(v) + "' for " + std::string(k));
             c.policy = *p;
         }},
        {"run.alignment", [](RunConfig& c, std::string_view, std::string_view v) { c.alignment = std::string(v); }},
        {"run.out", [](RunConfig& c, std::string_view, std::string_view v) { c.out = std::string(v); }},
        {"run.gold", [](RunConfig& c, std::string_view, std::string_view v) { c.gold = std::string(v); }},
        {"run.strict", [](RunConfig& c, std::string_view k, std::string_view v) { c.strict = parse_bool(k, v); }},
        {"run.threads",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             auto n = parse_number<unsigned>(k, v);
             if (n == 0) throw ConfigError("run.threads must be at least 1");
             c.engine.threads = n;
         }},
        {"run.seeds", number<std::size_t>([](RunConfig& c) -> std::size_t& { return c.seeds; })},
        {"run.method",
         [](RunConfig& c, std::string_view k, std::string_view v) {
             if (v != "vote" && v != "truthfinder" && v != "all") {
                 throw ConfigError("invalid value '" + std::string(v) + "' for " + std::string(k));
             }
             c.method = std::string(v);
         }},
    };
    return table;
}

std::string_view unquote(std::string_view v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

}  // namespace

RunConfig::RunConfig() { engine.threads = default_threads(); }

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
    auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown configuration key " + std::string(key));
    it->second(cfg, key, value);
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& [k, s] : setters()) out.push_back(k);
    return out;
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
    boost::property_tree::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("configuration key " + section + " is outside a section");
        for (const auto& [key, node] : body) {
            std::string value = node.get_value<std::string>();
            if (auto hash = value.find(" #"); hash != std::string::npos) value.erase(hash);
            while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
            set_config_value(cfg, section + "." + key, unquote(value));
        }
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    apply_config_text(cfg, text);
}

}  // namespace truthdiscover
