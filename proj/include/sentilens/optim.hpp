#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sentilens/model.hpp"

namespace sentilens {

enum class OptimizerKind { Adam, Sgd };

std::string optimizer_name(OptimizerKind kind);
OptimizerKind parse_optimizer(const std::string& name);

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::Adam;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Dense update over the fixed tensor enumeration. Zero-gradient entries
// still decay their moments, which is what keeps the update independent
// of which rows a batch happened to touch; the unknown embedding row
// never receives gradient, so it never moves.
class Optimizer {
  public:
    Optimizer(const Model& m, const OptimizerConfig& cfg);

    // Applies one update and bumps the model version.
    void step(Model& m, DenseGrads& g);

  private:
    OptimizerConfig cfg_;
    std::int64_t t_ = 0;
    std::vector<Vec> m1_, m2_;  // Adam moments, one flat vector per tensor
};

}  // namespace sentilens
