#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "truthdiscover/baselines.hpp"
#include "truthdiscover/engine.hpp"
#include "truthdiscover/evaluation.hpp"
#include "truthdiscover/prior.hpp"

namespace truthdiscover {

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never see a partial file. Creates missing parent directories.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// One JSON object per line and conflict set, in store order.
std::string decisions_jsonl(const std::vector<ConflictSet>& sets, const Resolution& res);
std::string baseline_jsonl(const std::vector<ConflictSet>& sets, const std::vector<BaselineDecision>& decisions,
                           std::size_t iterations, bool converged);

/// `iteration,mean_delta_tau,max_delta_tau`
std::string trace_csv(const std::vector<TraceRow>& rows);

/// `source TAB nbr TAB t TAB t_smoothed`, sorted by source.
std::string source_trust_tsv(const TrustState& state);

/// `source TAB br TAB nbr`, by br descending then source.
std::string prior_tsv(const PriorBeliefs& beliefs);

/// `from TAB to TAB multiplicity`
std::string sbg_tsv(const SourceBeliefGraph& sbg);

/// `trace_files[i]` names the trace of `batch.runs[i]`.
std::string report_json(const BatchReport& batch, const std::vector<std::string>& trace_files);
std::string report_table(const BatchReport& batch);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace truthdiscover
