#include "truthdiscover/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace truthdiscover {

using nlohmann::ordered_json;

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

namespace {

std::vector<std::string> source_names(const std::vector<SourceId>& ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(id.str());
    return out;
}

}  // namespace

std::string decisions_jsonl(const std::vector<ConflictSet>& sets, const Resolution& res) {
    std::string out;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& set = sets[s];
        const auto& d = res.decisions[s];
        ordered_json objects = ordered_json::array();
        for (std::size_t o = 0; o < set.objects.size(); ++o) {
            objects.push_back({{"value", render(set.objects[o].value)},
                               {"kind", std::string(kind_name(set.objects[o].value.kind()))},
                               {"tau", d.tau[o]},
                               {"sources", source_names(set.objects[o].sources)}});
        }
        ordered_json rec = {{"entity", set.entity.str()},
                            {"predicate", set.predicate.str()},
                            {"chosen", render(d.chosen)},
                            {"kind", std::string(kind_name(d.chosen.kind()))},
                            {"objects", std::move(objects)},
                            {"iterations", res.state.iteration},
                            {"converged", res.converged},
                            {"bp_converged", d.bp_converged}};
        out += rec.dump();
        out += '\n';
    }
    return out;
}

std::string baseline_jsonl(const std::vector<ConflictSet>& sets, const std::vector<BaselineDecision>& decisions,
                           std::size_t iterations, bool converged) {
    std::string out;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& set = sets[s];
        const auto& d = decisions[s];
        ordered_json objects = ordered_json::array();
        for (std::size_t o = 0; o < set.objects.size(); ++o) {
            objects.push_back({{"value", render(set.objects[o].value)},
                               {"kind", std::string(kind_name(set.objects[o].value.kind()))},
                               {"score", d.scores[o]},
                               {"sources", source_names(set.objects[o].sources)}});
        }
        ordered_json rec = {{"method", std::string(method_name(d.method))},
                            {"entity", set.entity.str()},
                            {"predicate", set.predicate.str()},
                            {"chosen", render(d.chosen)},
                            {"kind", std::string(kind_name(d.chosen.kind()))},
                            {"objects", std::move(objects)},
                            {"iterations", iterations},
                            {"converged", converged}};
        out += rec.dump();
        out += '\n';
    }
    return out;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
    std::string out = "iteration,mean_delta_tau,max_delta_tau\n";
    for (const auto& r : rows) {
        out += std::to_string(r.iteration) + "," + format_double(r.mean_delta_tau) + "," + format_double(r.max_delta_tau) + "\n";
    }
    return out;
}

std::string source_trust_tsv(const TrustState& state) {
    std::string out = "source\tnbr\tt\tt_smoothed\n";
    for (std::size_t k = 0; k < state.sources.size(); ++k) {
        out += state.sources[k].str() + "\t" + format_double(state.nbr[k]) + "\t" + format_double(state.t[k]) + "\t" +
               format_double(state.t_smoothed[k]) + "\n";
    }
    return out;
}

std::string prior_tsv(const PriorBeliefs& beliefs) {
    std::vector<std::pair<SourceId, double>> rows(beliefs.br.begin(), beliefs.br.end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::string out = "source\tbr\tnbr\n";
    for (const auto& [id, br] : rows) {
        auto it = beliefs.nbr.find(id);
        double nbr = it == beliefs.nbr.end() ? 0.5 : it->second;
        out += id.str() + "\t" + format_double(br) + "\t" + format_double(nbr) + "\n";
    }
    return out;
}

std::string sbg_tsv(const SourceBeliefGraph& sbg) {
    std::string out = "from\tto\tmultiplicity\n";
    for (const auto& [pair, count] : sbg.edges()) {
        out += pair.first.str() + "\t" + pair.second.str() + "\t" + std::to_string(count) + "\n";
    }
    return out;
}

std::string report_json(const BatchReport& batch, const std::vector<std::string>& trace_files) {
    ordered_json runs = ordered_json::array();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const auto& r = batch.runs[i];
        ordered_json methods = ordered_json::object();
        for (const auto& m : r.methods) {
            if (i == 0) names.push_back(m.method);
            methods[m.method] = {{"accuracy", m.accuracy},
                                 {"seconds", m.seconds},
                                 {"iterations", m.iterations},
                                 {"converged", m.converged}};
        }
        ordered_json run = {{"seed", r.seed},
                            {"conflict_sets", r.conflict_sets},
                            {"gold_keys", r.gold_keys},
                            {"methods", std::move(methods)}};
        if (i < trace_files.size()) run["trace"] = trace_files[i];
        runs.push_back(std::move(run));
    }
    ordered_json mean = ordered_json::object();
    for (const auto& n : names) mean[n] = batch.mean_accuracy(n);
    ordered_json report = {{"mean_accuracy", std::move(mean)}, {"runs", std::move(runs)}};
    return report.dump(2) + "\n";
}

std::string report_table(const BatchReport& batch) {
    std::ostringstream out;
    std::vector<std::string> names;
    if (!batch.runs.empty()) {
        for (const auto& m : batch.runs.front().methods) names.push_back(m.method);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-8s %6s", "seed", "sets");
    out << buf;
    for (const auto& n : names) {
        std::snprintf(buf, sizeof buf, " %14s", n.c_str());
        out << buf;
    }
    out << '\n';
    for (const auto& r : batch.runs) {
        std::snprintf(buf, sizeof buf, "%-8llu %6zu", static_cast<unsigned long long>(r.seed), r.conflict_sets);
        out << buf;
        for (const auto& m : r.methods) {
            std::snprintf(buf, sizeof buf, " %14.4f", m.accuracy);
            out << buf;
        }
        out << '\n';
    }
    std::snprintf(buf, sizeof buf, "%-8s %6s", "mean", "");
    out << buf;
    for (const auto& n : names) {
        std::snprintf(buf, sizeof buf, " %14.4f", batch.mean_accuracy(n));
        out << buf;
    }
    out << '\n';
    return out.str();
}

}  // namespace truthdiscover
