#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sentilens/corpus.hpp"
#include "sentilens/embedding.hpp"
#include "sentilens/lexicon.hpp"
#include "sentilens/linalg.hpp"
#include "sentilens/util.hpp"

namespace sentilens {

// One direction of the recurrent layer. Every gate, the candidate
// included, sees the input, the previous hidden state, and the previous
// cell state through its own full matrix; the output gate also peeks at
// the previous cell state, not the current one.
struct CellParams {
    Mat W_i, U_i, V_i;
    Vec b_i;
    Mat W_f, U_f, V_f;
    Vec b_f;
    Mat W_c, U_c, V_c;
    Vec b_c;
    Mat W_o, U_o, V_o;
    Vec b_o;
};

struct AttentionParams {
    Mat W_a;  // d_a x 2*d_h
    Vec b_a;  // d_a
    Vec u_w;  // d_a
};

struct HeadParams {
    Vec w_o;  // 2*d_h
    double b_o = 0.0;
};

struct Model {
    int d_x = 0;
    int d_h = 0;
    int d_a = 0;
    double dropout_rate = 0.0;
    Mat embedding;  // (vocab+1) x d_x; row 0 is the unknown word and stays zero
    CellParams fwd, bwd;
    AttentionParams attn;
    HeadParams head;
    // Bumped on every parameter update; a trace taken before an update
    // must not feed a backward pass after it.
    std::uint64_t version = 0;
};

struct ModelInit {
    int d_x = 200;
    int d_h = 128;
    int d_a = 128;
    double dropout_rate = 0.4;
    double init_range = 0.08;
    double forget_bias = 1.0;
    std::uint64_t seed = 42;
};

// Random embedding rows; mostly for tests.
Model init_model(int vocab_size, const ModelInit& init);
// Pretrained embedding table; d_x comes from the table.
Model init_model(const EmbeddingTable& embeddings, const ModelInit& init);

// Fixed tensor enumeration shared by the optimizer and the checkpoint
// writer. Biases visit as n x 1; the head bias as 1 x 1.
template <class M, class F>
void for_each_param(M& m, F&& f) {
    f("embedding", m.embedding.a.data(), m.embedding.rows, m.embedding.cols);
    auto cell = [&](const std::string& prefix, auto& c) {
        auto gate = [&](const std::string& g, auto& w, auto& u, auto& v, auto& b) {
            f(prefix + ".W_" + g, w.a.data(), w.rows, w.cols);
            f(prefix + ".U_" + g, u.a.data(), u.rows, u.cols);
            f(prefix + ".V_" + g, v.a.data(), v.rows, v.cols);
            f(prefix + ".b_" + g, b.data(), static_cast<int>(b.size()), 1);
        };
        gate("i", c.W_i, c.U_i, c.V_i, c.b_i);
        gate("f", c.W_f, c.U_f, c.V_f, c.b_f);
        gate("c", c.W_c, c.U_c, c.V_c, c.b_c);
        gate("o", c.W_o, c.U_o, c.V_o, c.b_o);
    };
    cell("fwd", m.fwd);
    cell("bwd", m.bwd);
    f("attn.W_a", m.attn.W_a.a.data(), m.attn.W_a.rows, m.attn.W_a.cols);
    f("attn.b_a", m.attn.b_a.data(), static_cast<int>(m.attn.b_a.size()), 1);
    f("attn.u_w", m.attn.u_w.data(), static_cast<int>(m.attn.u_w.size()), 1);
    f("head.w_o", m.head.w_o.data(), static_cast<int>(m.head.w_o.size()), 1);
    f("head.b_o", &m.head.b_o, 1, 1);
}

struct EncodedSentence {
    std::vector<int> ids;  // 0 for out-of-vocabulary tokens
    Vec senti;             // lexicon weight per token
};

EncodedSentence encode_tokens(const Vocabulary& vocab, const SentimentLexicon& lexicon,
                              const std::vector<std::string>& tokens);

// Per-direction activations, indexed by scan step. The reverse direction
// scans back to front, so its step s covers original position n-1-s.
struct DirTrace {
    std::vector<Vec> gate_i, gate_f, cand, gate_o, c, h;
};

struct ForwardTrace {
    EncodedSentence in;
    std::vector<Vec> x;     // lexicon-weighted embeddings
    DirTrace fw, bw;
    std::vector<Vec> mask;  // empty in eval mode; else 0 or 1/keep per unit
    std::vector<Vec> hhat;  // post-dropout concatenated states
    std::vector<Vec> u;     // tanh attention projections
    Vec z;                  // attention logits
    Vec attn;               // attention weights, sums to 1
    Vec ctx;
    double s = 0.0;
    double p = 0.0;
    std::uint64_t version = 0;
};

// mask == nullptr runs eval mode (no dropout). A supplied mask must hold
// one vector of size 2*d_h per token.
ForwardTrace forward_sentence(const Model& m, const EncodedSentence& in,
                              const std::vector<Vec>* mask);

std::vector<Vec> draw_dropout_mask(int n_tokens, int width, double rate, Rng& rng);

double predict(const Model& m, const Vocabulary& vocab, const SentimentLexicon& lexicon,
               const std::vector<std::string>& tokens);

struct CellGrads {
    Mat W_i, U_i, V_i;
    Vec b_i;
    Mat W_f, U_f, V_f;
    Vec b_f;
    Mat W_c, U_c, V_c;
    Vec b_c;
    Mat W_o, U_o, V_o;
    Vec b_o;
};

// Per-example and per-slot accumulator. Embedding rows stay sparse here;
// the ordered map keeps the merge order independent of touch order.
struct Gradients {
    CellGrads fwd, bwd;
    Mat W_a;
    Vec b_a, u_w;
    Vec w_o;
    double b_o = 0.0;
    std::map<int, Vec> embedding_rows;

    void zero();
    void add(const Gradients& other);
};

Gradients make_gradients(const Model& m);

// Dense form consumed by the optimizer; tensor order matches
// for_each_param over the model exactly.
struct DenseGrads {
    Mat embedding;
    CellGrads fwd, bwd;
    Mat W_a;
    Vec b_a, u_w;
    Vec w_o;
    double b_o = 0.0;

    void zero();

    template <class F>
    void visit(F&& f) {
        f("embedding", embedding.a.data(), embedding.rows, embedding.cols);
        auto cell = [&](const std::string& prefix, CellGrads& c) {
            auto gate = [&](const std::string& g, Mat& w, Mat& u, Mat& v, Vec& b) {
                f(prefix + ".W_" + g, w.a.data(), w.rows, w.cols);
                f(prefix + ".U_" + g, u.a.data(), u.rows, u.cols);
                f(prefix + ".V_" + g, v.a.data(), v.rows, v.cols);
                f(prefix + ".b_" + g, b.data(), static_cast<int>(b.size()), 1);
            };
            gate("i", c.W_i, c.U_i, c.V_i, c.b_i);
            gate("f", c.W_f, c.U_f, c.V_f, c.b_f);
            gate("c", c.W_c, c.U_c, c.V_c, c.b_c);
            gate("o", c.W_o, c.U_o, c.V_o, c.b_o);
        };
        cell("fwd", fwd);
        cell("bwd", bwd);
        f("attn.W_a", W_a.a.data(), W_a.rows, W_a.cols);
        f("attn.b_a", b_a.data(), static_cast<int>(b_a.size()), 1);
        f("attn.u_w", u_w.data(), static_cast<int>(u_w.size()), 1);
        f("head.w_o", w_o.data(), static_cast<int>(w_o.size()), 1);
        f("head.b_o", &b_o, 1, 1);
    }
};

DenseGrads make_dense_grads(const Model& m);
// Scatters sparse accumulators into the dense layout. `out` is zeroed first.
void densify(const Gradients& g, DenseGrads& out);

void backward_sentence(const Model& m, const ForwardTrace& t, double dLdp, Gradients& g);

struct LossConfig {
    bool root_mse = true;    // false: plain mean squared error term
    bool two_term_ce = false;  // true: add the (1-y)ln(1-p) branch
};

double clamp_probability(double p);
double batch_loss(const Vec& y, const Vec& p, const LossConfig& cfg);
// d(loss)/d(p_i); the probability clamp is treated as pass-through.
Vec batch_loss_dp(const Vec& y, const Vec& p, const LossConfig& cfg);

}  // namespace sentilens
