#pragma once

#include <cstdint>
#include <string>

namespace sentilens {

// Deterministic stand-in review corpus with the skewed star histogram of
// a real instrument-shop dump: 5:6938, 4:2084, 3:772, 2:250, 1:217 per
// 10261 records, scaled by largest remainder for other sizes.
struct SyntheticParams {
    std::int64_t records = 10261;
    std::uint64_t seed = 7;
};

void write_synthetic_dataset(const std::string& path, const SyntheticParams& params);

}  // namespace sentilens
