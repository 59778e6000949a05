#pragma once

#include <string>

#include "sentilens/config.hpp"

namespace sentilens {

// Artifact names inside the work directory. Stages communicate only
// through these files; rerunning a stage overwrites its own outputs and
// leaves the rest alone.
namespace artifact {
inline constexpr const char* kSyntheticDataset = "synthetic_reviews.jsonl";
inline constexpr const char* kTrainSet = "dataset_train.jsonl";
inline constexpr const char* kTestSet = "dataset_test.jsonl";
inline constexpr const char* kVocab = "vocab.json";
inline constexpr const char* kNouns = "nouns.json";
inline constexpr const char* kLexicon = "lexicon.json";
inline constexpr const char* kEmbeddings = "embeddings.txt";
inline constexpr const char* kAspects = "aspects.json";
inline constexpr const char* kModel = "model.ckpt";
inline constexpr const char* kModelConfig = "model.ckpt.json";
inline constexpr const char* kTrainLog = "train_log.jsonl";
inline constexpr const char* kMetricsJson = "metrics.json";
inline constexpr const char* kMetricsCsv = "metrics.csv";
inline constexpr const char* kSweepJson = "sweep.json";
inline constexpr const char* kSweepCsv = "sweep.csv";
inline constexpr const char* kHeatmapJson = "heatmap.json";
inline constexpr const char* kHeatmapCsv = "heatmap.csv";
inline constexpr const char* kAspectReportJson = "aspect_report.json";
inline constexpr const char* kAspectReportCsv = "aspect_report.csv";
inline constexpr const char* kComparison = "aspect_vs_sentiment.json";
inline constexpr const char* kManifest = "manifest.json";
}  // namespace artifact

std::string workdir_path(const PipelineConfig& cfg, const std::string& name);

// Dataset file the preprocess stage reads: paths.dataset if set, else the
// SENTILENS_DATASET environment variable, else a deterministic stand-in
// corpus generated into the work directory.
std::string resolve_dataset(const PipelineConfig& cfg);

void run_preprocess(const PipelineConfig& cfg);
void run_build_lexicon(const PipelineConfig& cfg);
void run_embed(const PipelineConfig& cfg);
void run_train(const PipelineConfig& cfg);
void run_evaluate(const PipelineConfig& cfg);
void run_sweep(const PipelineConfig& cfg);
void run_explain(const PipelineConfig& cfg);
void run_full(const PipelineConfig& cfg);

// Validates the configuration and reports what a run would do without
// touching the filesystem.
void dry_run(const std::string& command, const PipelineConfig& cfg);

// Dispatches one CLI command; every stage failure is annotated with the
// stage name before it propagates.
void run_command(const std::string& command, const PipelineConfig& cfg, bool dry);

}  // namespace sentilens
