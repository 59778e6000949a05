#pragma once

#include <cstdint>
#include <string>

#include "sentilens/model.hpp"

namespace sentilens {

// Binary container: magic "SLCP", format version, dimensions, the
// vocabulary content hash, then every tensor from the fixed enumeration
// as row-major little-endian f32. The training config travels in a JSON
// sidecar next to the file, written by the pipeline.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct CheckpointInfo {
    std::uint32_t format_version = 0;
    int d_x = 0, d_h = 0, d_a = 0;
    std::uint64_t vocab_hash = 0;
};

void save_checkpoint(const std::string& path, const Model& m, std::uint64_t vocab_hash);

// The loaded model's dropout rate is 0; callers resuming training set it
// from their config.
Model load_checkpoint(const std::string& path, CheckpointInfo* info = nullptr);

}  // namespace sentilens
