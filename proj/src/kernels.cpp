#include "sentilens/kernels.hpp"

#include <cmath>

namespace sentilens {

std::string exec_mode_name(ExecMode mode) {
    return mode == ExecMode::Serial ? "serial" : "parallel";
}

ExecMode parse_exec_mode(const std::string& name) {
    if (name == "serial") return ExecMode::Serial;
    if (name == "parallel") return ExecMode::Parallel;
    throw UsageError("unknown execution mode: " + name + " (expected serial or parallel)");
}

EncodedCorpus encode_corpus(const Vocabulary& vocab, const SentimentLexicon& lexicon,
                            const std::vector<LabeledExample>& examples) {
    EncodedCorpus c;
    c.sentences.reserve(examples.size());
    c.labels.reserve(examples.size());
    for (const auto& ex : examples) {
        c.sentences.push_back(encode_tokens(vocab, lexicon, ex.tokens));
        c.labels.push_back(ex.label);
    }
    return c;
}

GradWorkspace make_workspace(const Model& m, int grad_slots) {
    if (grad_slots < 1) throw UsageError("grad_slots must be positive");
    GradWorkspace ws;
    ws.slots.reserve(static_cast<std::size_t>(grad_slots));
    for (int s = 0; s < grad_slots; ++s) ws.slots.push_back(make_gradients(m));
    return ws;
}

namespace {

template <class F>
void run_indexed(std::int64_t n, ExecMode mode, F&& work) {
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) work(i);
    } else {
        for (std::int64_t i = 0; i < n; ++i) work(i);
    }
}

}  // namespace

BatchResult compute_batch(const Model& m, const EncodedCorpus& corpus,
                          const std::vector<std::size_t>& indices, const BatchOptions& opt,
                          GradWorkspace* ws, Gradients* grads) {
    const std::int64_t b = static_cast<std::int64_t>(indices.size());
    if (b == 0) throw UsageError("empty batch");
    const bool want_grads = opt.train && grads != nullptr;
    if (want_grads) {
        if (ws == nullptr) throw UsageError("gradient pass needs a workspace");
        if (static_cast<int>(ws->slots.size()) != opt.grad_slots)
            *ws = make_workspace(m, opt.grad_slots);
    }

    BatchResult res;
    res.p.resize(static_cast<std::size_t>(b));
    res.y.resize(static_cast<std::size_t>(b));
    std::vector<ForwardTrace> traces(want_grads ? static_cast<std::size_t>(b) : 0);

    run_indexed(b, opt.mode, [&](std::int64_t i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        const EncodedSentence& enc = corpus.sentences[indices[ui]];
        std::vector<Vec> mask;
        const std::vector<Vec>* mask_ptr = nullptr;
        if (opt.train && m.dropout_rate > 0.0) {
            Rng rng(derive_seed(opt.mask_seed, "dropout", static_cast<std::uint64_t>(i)));
            mask = draw_dropout_mask(static_cast<int>(enc.ids.size()), 2 * m.d_h,
                                     m.dropout_rate, rng);
            mask_ptr = &mask;
        }
        ForwardTrace t = forward_sentence(m, enc, mask_ptr);
        res.p[ui] = t.p;
        res.y[ui] = static_cast<double>(corpus.labels[indices[ui]]);
        if (want_grads) traces[ui] = std::move(t);
    });

    res.loss = batch_loss(res.y, res.p, opt.loss);
    if (!want_grads) return res;

    const Vec dldp = batch_loss_dp(res.y, res.p, opt.loss);
    const std::int64_t slots = opt.grad_slots;
    const std::int64_t chunk = (b + slots - 1) / slots;
    run_indexed(slots, opt.mode, [&](std::int64_t s) {
        Gradients& g = ws->slots[static_cast<std::size_t>(s)];
        g.zero();
        const std::int64_t lo = s * chunk;
        const std::int64_t hi = std::min(b, lo + chunk);
        for (std::int64_t i = lo; i < hi; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            backward_sentence(m, traces[ui], dldp[ui], g);
        }
    });

    grads->zero();
    for (std::int64_t s = 0; s < slots; ++s)
        grads->add(ws->slots[static_cast<std::size_t>(s)]);
    return res;
}

Vec predict_all(const Model& m, const EncodedCorpus& corpus, ExecMode mode) {
    Vec p(corpus.size());
    run_indexed(static_cast<std::int64_t>(corpus.size()), mode, [&](std::int64_t i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        p[ui] = forward_sentence(m, corpus.sentences[ui], nullptr).p;
    });
    return p;
}

}  // namespace sentilens
