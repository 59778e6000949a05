#include "sentilens/optim.hpp"

#include <cmath>

namespace sentilens {

std::string optimizer_name(OptimizerKind kind) {
    return kind == OptimizerKind::Adam ? "adam" : "sgd";
}

OptimizerKind parse_optimizer(const std::string& name) {
    if (name == "adam") return OptimizerKind::Adam;
    if (name == "sgd") return OptimizerKind::Sgd;
    throw UsageError("unknown optimizer: " + name + " (expected adam or sgd)");
}

Optimizer::Optimizer(const Model& m, const OptimizerConfig& cfg) : cfg_(cfg) {
    if (cfg.lr <= 0.0) throw UsageError("learning rate must be positive");
    if (cfg.kind == OptimizerKind::Adam) {
        for_each_param(m, [&](const std::string&, const double*, int rows, int cols) {
            const std::size_t n = static_cast<std::size_t>(rows) * cols;
            m1_.emplace_back(n, 0.0);
            m2_.emplace_back(n, 0.0);
        });
    }
}

void Optimizer::step(Model& m, DenseGrads& g) {
    std::vector<std::pair<double*, std::size_t>> params;
    for_each_param(m, [&](const std::string&, double* data, int rows, int cols) {
        params.emplace_back(data, static_cast<std::size_t>(rows) * cols);
    });
    std::vector<const double*> grads;
    g.visit([&](const std::string&, double* data, int, int) { grads.push_back(data); });
    if (params.size() != grads.size())
        throw std::logic_error("parameter and gradient enumerations diverged");

    if (cfg_.kind == OptimizerKind::Sgd) {
        for (std::size_t i = 0; i < params.size(); ++i) {
            auto [p, n] = params[i];
            axpy(-cfg_.lr, grads[i], p, static_cast<int>(n));
        }
    } else {
        ++t_;
        const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
        for (std::size_t i = 0; i < params.size(); ++i) {
            auto [p, n] = params[i];
            const double* gr = grads[i];
            double* m1 = m1_[i].data();
            double* m2 = m2_[i].data();
            for (std::size_t k = 0; k < n; ++k) {
                m1[k] = cfg_.beta1 * m1[k] + (1.0 - cfg_.beta1) * gr[k];
                m2[k] = cfg_.beta2 * m2[k] + (1.0 - cfg_.beta2) * gr[k] * gr[k];
                const double mhat = m1[k] / bc1;
                const double vhat = m2[k] / bc2;
                p[k] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
            }
        }
    }
    ++m.version;
}

}  // namespace sentilens
