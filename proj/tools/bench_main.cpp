#include <chrono>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sentilens/kernels.hpp"
#include "sentilens/model.hpp"
#include "sentilens/util.hpp"

namespace {

using namespace sentilens;

EncodedCorpus random_corpus(int examples, int min_len, int max_len, int vocab,
                            std::uint64_t seed) {
    Rng rng(derive_seed(seed, "bench-corpus"));
    EncodedCorpus c;
    for (int i = 0; i < examples; ++i) {
        EncodedSentence s;
        const int n =
            min_len + static_cast<int>(rng.uniform_int(
                          static_cast<std::uint64_t>(max_len - min_len + 1)));
        for (int t = 0; t < n; ++t) {
            s.ids.push_back(1 + static_cast<int>(rng.uniform_int(vocab)));
            s.senti.push_back(rng.uniform(0.2, 1.2));
        }
        c.sentences.push_back(std::move(s));
        c.labels.push_back(static_cast<int>(rng.uniform_int(2)));
    }
    return c;
}

// Bitwise comparison; any reordering of floating-point accumulation
// shows up here.
bool grads_identical(DenseGrads& a, DenseGrads& b) {
    bool same = true;
    std::vector<std::pair<double*, std::size_t>> lhs, rhs;
    a.visit([&](const std::string&, double* p, int r, int c) {
        lhs.emplace_back(p, static_cast<std::size_t>(r) * c);
    });
    b.visit([&](const std::string&, double* p, int r, int c) {
        rhs.emplace_back(p, static_cast<std::size_t>(r) * c);
    });
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (std::memcmp(lhs[i].first, rhs[i].first, lhs[i].second * sizeof(double)) != 0)
            same = false;
    return same;
}

double run_timed(const Model& m, const EncodedCorpus& corpus,
                 const std::vector<std::size_t>& idx, BatchOptions opt, int repeats,
                 GradWorkspace& ws, Gradients& g, double& loss_out) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    for (int r = 0; r < repeats; ++r) {
        const BatchResult res = compute_batch(m, corpus, idx, opt, &ws, &g);
        loss_out = res.loss;
    }
    return std::chrono::duration<double, std::milli>(clock::now() - start).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel batch kernel comparison"};
    int examples = 64, min_len = 8, max_len = 40, vocab = 500, d_h = 64, d_a = 64, d_x = 100;
    int repeats = 5, grad_slots = 8;
    std::uint64_t seed = 42;
    app.add_option("--examples", examples, "batch size");
    app.add_option("--min-len", min_len, "shortest sentence");
    app.add_option("--max-len", max_len, "longest sentence");
    app.add_option("--vocab", vocab, "vocabulary size");
    app.add_option("--d-x", d_x, "embedding width");
    app.add_option("--d-h", d_h, "hidden width");
    app.add_option("--d-a", d_a, "attention width");
    app.add_option("--repeats", repeats, "timed repetitions");
    app.add_option("--grad-slots", grad_slots, "reduction slot count");
    app.add_option("--seed", seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    using namespace sentilens;
    ModelInit init;
    init.d_x = d_x;
    init.d_h = d_h;
    init.d_a = d_a;
    init.dropout_rate = 0.4;
    init.seed = seed;
    Model m = init_model(vocab, init);
    const EncodedCorpus corpus = random_corpus(examples, min_len, max_len, vocab, seed);
    std::vector<std::size_t> idx(corpus.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});

    BatchOptions opt;
    opt.train = true;
    opt.mask_seed = derive_seed(seed, "bench-mask");
    opt.grad_slots = grad_slots;

    GradWorkspace ws = make_workspace(m, grad_slots);
    Gradients g_serial = make_gradients(m);
    Gradients g_parallel = make_gradients(m);

    opt.mode = ExecMode::Serial;
    double loss_serial = 0.0;
    const double ms_serial =
        run_timed(m, corpus, idx, opt, repeats, ws, g_serial, loss_serial);

    opt.mode = ExecMode::Parallel;
    double loss_parallel = 0.0;
    const double ms_parallel =
        run_timed(m, corpus, idx, opt, repeats, ws, g_parallel, loss_parallel);

    DenseGrads d_serial = make_dense_grads(m);
    DenseGrads d_parallel = make_dense_grads(m);
    densify(g_serial, d_serial);
    densify(g_parallel, d_parallel);

    const bool loss_same =
        std::memcmp(&loss_serial, &loss_parallel, sizeof(double)) == 0;
    const bool grads_same = grads_identical(d_serial, d_parallel);

    std::cout << "batch " << examples << " examples, len " << min_len << ".." << max_len
              << ", d_x " << d_x << ", d_h " << d_h << ", d_a " << d_a << ", slots "
              << grad_slots << "\n"
              << "serial    " << ms_serial << " ms/batch (loss " << format_double(loss_serial)
              << ")\n"
              << "parallel  " << ms_parallel << " ms/batch (loss "
              << format_double(loss_parallel) << ")\n"
              << "speedup   " << format_double(ms_serial / ms_parallel) << "x\n"
              << "bitwise   loss " << (loss_same ? "identical" : "DIFFERENT") << ", gradients "
              << (grads_same ? "identical" : "DIFFERENT") << "\n";

    if (!loss_same || !grads_same) {
        std::cerr << "error: serial and parallel paths disagree\n";
        return 3;
    }
    return 0;
}
