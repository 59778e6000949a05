#include "sentilens/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sentilens {

namespace {

Mat init_mat(int r, int c, double range, Rng& rng) {
    Mat m(r, c);
    for (auto& v : m.a) v = rng.uniform(-range, range);
    return m;
}

Vec init_vec(int n, double range, Rng& rng) {
    Vec v(n);
    for (auto& x : v) x = rng.uniform(-range, range);
    return v;
}

CellParams init_cell(int d_h, int d_x, const ModelInit& init, Rng& rng) {
    CellParams c;
    auto gate = [&](Mat& w, Mat& u, Mat& v, Vec& b, double bias) {
        w = init_mat(d_h, d_x, init.init_range, rng);
        u = init_mat(d_h, d_h, init.init_range, rng);
        v = init_mat(d_h, d_h, init.init_range, rng);
        b.assign(static_cast<std::size_t>(d_h), bias);
    };
    gate(c.W_i, c.U_i, c.V_i, c.b_i, 0.0);
    gate(c.W_f, c.U_f, c.V_f, c.b_f, init.forget_bias);
    gate(c.W_c, c.U_c, c.V_c, c.b_c, 0.0);
    gate(c.W_o, c.U_o, c.V_o, c.b_o, 0.0);
    return c;
}

// Network weights only; the embedding is filled by the callers. Draw
// order is fixed so both init overloads agree on the network part.
Model init_network(const ModelInit& init, Rng& rng) {
    if (init.d_x < 1 || init.d_h < 1 || init.d_a < 1)
        throw UsageError("model dimensions must be positive");
    if (init.dropout_rate < 0.0 || init.dropout_rate >= 1.0)
        throw UsageError("dropout rate must lie in [0,1)");
    Model m;
    m.d_x = init.d_x;
    m.d_h = init.d_h;
    m.d_a = init.d_a;
    m.dropout_rate = init.dropout_rate;
    m.fwd = init_cell(init.d_h, init.d_x, init, rng);
    m.bwd = init_cell(init.d_h, init.d_x, init, rng);
    m.attn.W_a = init_mat(init.d_a, 2 * init.d_h, init.init_range, rng);
    m.attn.b_a.assign(static_cast<std::size_t>(init.d_a), 0.0);
    m.attn.u_w = init_vec(init.d_a, init.init_range, rng);
    m.head.w_o = init_vec(2 * init.d_h, init.init_range, rng);
    m.head.b_o = 0.0;
    return m;
}

CellGrads make_cell_grads(int d_h, int d_x) {
    CellGrads g;
    auto gate = [&](Mat& w, Mat& u, Mat& v, Vec& b) {
        w = Mat(d_h, d_x);
        u = Mat(d_h, d_h);
        v = Mat(d_h, d_h);
        b.assign(static_cast<std::size_t>(d_h), 0.0);
    };
    gate(g.W_i, g.U_i, g.V_i, g.b_i);
    gate(g.W_f, g.U_f, g.V_f, g.b_f);
    gate(g.W_c, g.U_c, g.V_c, g.b_c);
    gate(g.W_o, g.U_o, g.V_o, g.b_o);
    return g;
}

void zero_cell(CellGrads& g) {
    g.W_i.zero(); g.U_i.zero(); g.V_i.zero(); std::fill(g.b_i.begin(), g.b_i.end(), 0.0);
    g.W_f.zero(); g.U_f.zero(); g.V_f.zero(); std::fill(g.b_f.begin(), g.b_f.end(), 0.0);
    g.W_c.zero(); g.U_c.zero(); g.V_c.zero(); std::fill(g.b_c.begin(), g.b_c.end(), 0.0);
    g.W_o.zero(); g.U_o.zero(); g.V_o.zero(); std::fill(g.b_o.begin(), g.b_o.end(), 0.0);
}

void add_cell(CellGrads& g, const CellGrads& o) {
    auto addm = [](Mat& a, const Mat& b) {
        for (std::size_t i = 0; i < a.a.size(); ++i) a.a[i] += b.a[i];
    };
    addm(g.W_i, o.W_i); addm(g.U_i, o.U_i); addm(g.V_i, o.V_i); add_scaled(g.b_i, o.b_i);
    addm(g.W_f, o.W_f); addm(g.U_f, o.U_f); addm(g.V_f, o.V_f); add_scaled(g.b_f, o.b_f);
    addm(g.W_c, o.W_c); addm(g.U_c, o.U_c); addm(g.V_c, o.V_c); add_scaled(g.b_c, o.b_c);
    addm(g.W_o, o.W_o); addm(g.U_o, o.U_o); addm(g.V_o, o.V_o); add_scaled(g.b_o, o.b_o);
}

// Scan one direction. `order[s]` is the original token position covered
// by scan step s; all four preactivations read c_prev, the cell update
// happens after them.
DirTrace scan_direction(const CellParams& p, const std::vector<Vec>& x,
                        const std::vector<int>& order, int d_h) {
    const int n = static_cast<int>(order.size());
    DirTrace tr;
    tr.gate_i.reserve(n); tr.gate_f.reserve(n); tr.cand.reserve(n);
    tr.gate_o.reserve(n); tr.c.reserve(n); tr.h.reserve(n);
    for (int s = 0; s < n; ++s) {
        const Vec& xv = x[static_cast<std::size_t>(order[s])];
        Vec ai = p.b_i, af = p.b_f, ac = p.b_c, ao = p.b_o;
        matvec_add(p.W_i, xv, ai);
        matvec_add(p.W_f, xv, af);
        matvec_add(p.W_c, xv, ac);
        matvec_add(p.W_o, xv, ao);
        if (s > 0) {
            const Vec& h_prev = tr.h[static_cast<std::size_t>(s - 1)];
            const Vec& c_prev = tr.c[static_cast<std::size_t>(s - 1)];
            matvec_add(p.U_i, h_prev, ai); matvec_add(p.V_i, c_prev, ai);
            matvec_add(p.U_f, h_prev, af); matvec_add(p.V_f, c_prev, af);
            matvec_add(p.U_c, h_prev, ac); matvec_add(p.V_c, c_prev, ac);
            matvec_add(p.U_o, h_prev, ao); matvec_add(p.V_o, c_prev, ao);
        }
        Vec gi(d_h), gf(d_h), cand(d_h), go(d_h), c(d_h), h(d_h);
        for (int k = 0; k < d_h; ++k) {
            gi[k] = sigmoid(ai[k]);
            gf[k] = sigmoid(af[k]);
            cand[k] = std::tanh(ac[k]);
            go[k] = sigmoid(ao[k]);
            const double c_prev_k = s > 0 ? tr.c[static_cast<std::size_t>(s - 1)][k] : 0.0;
            c[k] = gf[k] * c_prev_k + gi[k] * cand[k];
            h[k] = go[k] * std::tanh(c[k]);
        }
        tr.gate_i.push_back(std::move(gi));
        tr.gate_f.push_back(std::move(gf));
        tr.cand.push_back(std::move(cand));
        tr.gate_o.push_back(std::move(go));
        tr.c.push_back(std::move(c));
        tr.h.push_back(std::move(h));
    }
    return tr;
}

void backward_direction(const CellParams& p, const DirTrace& tr, const std::vector<Vec>& x,
                        const std::vector<int>& order, const std::vector<Vec>& dh_ext,
                        CellGrads& cg, std::vector<Vec>& dx, int d_h) {
    const int n = static_cast<int>(order.size());
    const Vec zeros(static_cast<std::size_t>(d_h), 0.0);
    Vec dh_rec(static_cast<std::size_t>(d_h), 0.0);
    Vec dc_rec(static_cast<std::size_t>(d_h), 0.0);
    Vec dh(d_h), dc(d_h), da_i(d_h), da_f(d_h), da_c(d_h), da_o(d_h);
    for (int s = n - 1; s >= 0; --s) {
        const std::size_t us = static_cast<std::size_t>(s);
        const Vec& gi = tr.gate_i[us];
        const Vec& gf = tr.gate_f[us];
        const Vec& cand = tr.cand[us];
        const Vec& go = tr.gate_o[us];
        const Vec& c = tr.c[us];
        const Vec& c_prev = s > 0 ? tr.c[us - 1] : zeros;
        const Vec& h_prev = s > 0 ? tr.h[us - 1] : zeros;
        for (int k = 0; k < d_h; ++k) {
            dh[k] = dh_ext[us][k] + dh_rec[k];
            const double tc = std::tanh(c[k]);
            da_o[k] = dh[k] * tc * go[k] * (1.0 - go[k]);
            dc[k] = dc_rec[k] + dh[k] * go[k] * (1.0 - tc * tc);
            da_f[k] = dc[k] * c_prev[k] * gf[k] * (1.0 - gf[k]);
            da_i[k] = dc[k] * cand[k] * gi[k] * (1.0 - gi[k]);
            da_c[k] = dc[k] * gi[k] * (1.0 - cand[k] * cand[k]);
        }
        const Vec& xv = x[static_cast<std::size_t>(order[s])];
        outer_add(cg.W_i, da_i, xv); add_scaled(cg.b_i, da_i);
        outer_add(cg.W_f, da_f, xv); add_scaled(cg.b_f, da_f);
        outer_add(cg.W_c, da_c, xv); add_scaled(cg.b_c, da_c);
        outer_add(cg.W_o, da_o, xv); add_scaled(cg.b_o, da_o);
        if (s > 0) {
            outer_add(cg.U_i, da_i, h_prev); outer_add(cg.V_i, da_i, c_prev);
            outer_add(cg.U_f, da_f, h_prev); outer_add(cg.V_f, da_f, c_prev);
            outer_add(cg.U_c, da_c, h_prev); outer_add(cg.V_c, da_c, c_prev);
            outer_add(cg.U_o, da_o, h_prev); outer_add(cg.V_o, da_o, c_prev);
        }
        Vec& dxv = dx[static_cast<std::size_t>(order[s])];
        matvec_t_add(p.W_i, da_i, dxv);
        matvec_t_add(p.W_f, da_f, dxv);
        matvec_t_add(p.W_c, da_c, dxv);
        matvec_t_add(p.W_o, da_o, dxv);
        if (s > 0) {
            std::fill(dh_rec.begin(), dh_rec.end(), 0.0);
            matvec_t_add(p.U_i, da_i, dh_rec);
            matvec_t_add(p.U_f, da_f, dh_rec);
            matvec_t_add(p.U_c, da_c, dh_rec);
            matvec_t_add(p.U_o, da_o, dh_rec);
            for (int k = 0; k < d_h; ++k) dc_rec[k] = dc[k] * gf[k];
            matvec_t_add(p.V_i, da_i, dc_rec);
            matvec_t_add(p.V_f, da_f, dc_rec);
            matvec_t_add(p.V_c, da_c, dc_rec);
            matvec_t_add(p.V_o, da_o, dc_rec);
        }
    }
}

}  // namespace

Model init_model(int vocab_size, const ModelInit& init) {
    if (vocab_size < 0) throw UsageError("negative vocabulary size");
    Rng rng(derive_seed(init.seed, "model-init"));
    Model m = init_network(init, rng);
    m.embedding = Mat(vocab_size + 1, init.d_x);
    for (int r = 1; r < m.embedding.rows; ++r) {
        double* row = m.embedding.row(r);
        for (int c = 0; c < init.d_x; ++c) row[c] = rng.uniform(-init.init_range, init.init_range);
    }
    return m;
}

Model init_model(const EmbeddingTable& embeddings, const ModelInit& init) {
    ModelInit adjusted = init;
    adjusted.d_x = embeddings.dim();
    Rng rng(derive_seed(init.seed, "model-init"));
    Model m = init_network(adjusted, rng);
    m.embedding = embeddings.table;
    return m;
}

EncodedSentence encode_tokens(const Vocabulary& vocab, const SentimentLexicon& lexicon,
                              const std::vector<std::string>& tokens) {
    EncodedSentence e;
    e.ids.reserve(tokens.size());
    e.senti.reserve(tokens.size());
    for (const auto& tok : tokens) {
        e.ids.push_back(vocab.lookup(tok));
        e.senti.push_back(lexicon.senti(tok));
    }
    return e;
}

std::vector<Vec> draw_dropout_mask(int n_tokens, int width, double rate, Rng& rng) {
    if (rate < 0.0 || rate >= 1.0) throw UsageError("dropout rate must lie in [0,1)");
    const double keep = 1.0 - rate;
    std::vector<Vec> mask(static_cast<std::size_t>(n_tokens));
    for (auto& row : mask) {
        row.resize(static_cast<std::size_t>(width));
        for (auto& v : row) v = rng.uniform() < rate ? 0.0 : 1.0 / keep;
    }
    return mask;
}

ForwardTrace forward_sentence(const Model& m, const EncodedSentence& in,
                              const std::vector<Vec>* mask) {
    const int n = static_cast<int>(in.ids.size());
    if (n == 0) throw DataError("empty token sequence");
    const int two_h = 2 * m.d_h;
    if (mask) {
        if (static_cast<int>(mask->size()) != n)
            throw UsageError("dropout mask length does not match the sentence");
        for (const auto& row : *mask)
            if (static_cast<int>(row.size()) != two_h)
                throw UsageError("dropout mask width does not match the layer");
    }

    ForwardTrace t;
    t.in = in;
    t.version = m.version;
    t.x.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec x(static_cast<std::size_t>(m.d_x), 0.0);
        axpy(in.senti[static_cast<std::size_t>(i)],
             m.embedding.row(in.ids[static_cast<std::size_t>(i)]), x.data(), m.d_x);
        t.x[static_cast<std::size_t>(i)] = std::move(x);
    }

    std::vector<int> fwd_order(static_cast<std::size_t>(n)), bwd_order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        fwd_order[static_cast<std::size_t>(i)] = i;
        bwd_order[static_cast<std::size_t>(i)] = n - 1 - i;
    }
    t.fw = scan_direction(m.fwd, t.x, fwd_order, m.d_h);
    t.bw = scan_direction(m.bwd, t.x, bwd_order, m.d_h);

    if (mask) t.mask = *mask;
    t.hhat.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec h(static_cast<std::size_t>(two_h));
        const Vec& hf = t.fw.h[static_cast<std::size_t>(i)];
        const Vec& hb = t.bw.h[static_cast<std::size_t>(n - 1 - i)];
        std::copy(hf.begin(), hf.end(), h.begin());
        std::copy(hb.begin(), hb.end(), h.begin() + m.d_h);
        if (mask) {
            const Vec& mrow = (*mask)[static_cast<std::size_t>(i)];
            for (int k = 0; k < two_h; ++k) h[static_cast<std::size_t>(k)] *= mrow[static_cast<std::size_t>(k)];
        }
        t.hhat[static_cast<std::size_t>(i)] = std::move(h);
    }

    t.u.resize(static_cast<std::size_t>(n));
    t.z.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec q = m.attn.b_a;
        matvec_add(m.attn.W_a, t.hhat[static_cast<std::size_t>(i)], q);
        for (auto& v : q) v = std::tanh(v);
        t.z[static_cast<std::size_t>(i)] = dot(q, m.attn.u_w);
        t.u[static_cast<std::size_t>(i)] = std::move(q);
    }
    const double zmax = *std::max_element(t.z.begin(), t.z.end());
    t.attn.resize(static_cast<std::size_t>(n));
    double zsum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = std::exp(t.z[static_cast<std::size_t>(i)] - zmax);
        t.attn[static_cast<std::size_t>(i)] = e;
        zsum += e;
    }
    for (auto& v : t.attn) v /= zsum;

    t.ctx.assign(static_cast<std::size_t>(two_h), 0.0);
    for (int i = 0; i < n; ++i)
        axpy(t.attn[static_cast<std::size_t>(i)], t.hhat[static_cast<std::size_t>(i)], t.ctx);
    t.s = dot(m.head.w_o, t.ctx) + m.head.b_o;
    t.p = sigmoid(t.s);
    return t;
}

double predict(const Model& m, const Vocabulary& vocab, const SentimentLexicon& lexicon,
               const std::vector<std::string>& tokens) {
    return forward_sentence(m, encode_tokens(vocab, lexicon, tokens), nullptr).p;
}

void Gradients::zero() {
    zero_cell(fwd);
    zero_cell(bwd);
    W_a.zero();
    std::fill(b_a.begin(), b_a.end(), 0.0);
    std::fill(u_w.begin(), u_w.end(), 0.0);
    std::fill(w_o.begin(), w_o.end(), 0.0);
    b_o = 0.0;
    embedding_rows.clear();
}

void Gradients::add(const Gradients& other) {
    add_cell(fwd, other.fwd);
    add_cell(bwd, other.bwd);
    for (std::size_t i = 0; i < W_a.a.size(); ++i) W_a.a[i] += other.W_a.a[i];
    add_scaled(b_a, other.b_a);
    add_scaled(u_w, other.u_w);
    add_scaled(w_o, other.w_o);
    b_o += other.b_o;
    for (const auto& [id, row] : other.embedding_rows) {
        auto it = embedding_rows.find(id);
        if (it == embedding_rows.end()) {
            embedding_rows.emplace(id, row);
        } else {
            add_scaled(it->second, row);
        }
    }
}

Gradients make_gradients(const Model& m) {
    Gradients g;
    g.fwd = make_cell_grads(m.d_h, m.d_x);
    g.bwd = make_cell_grads(m.d_h, m.d_x);
    g.W_a = Mat(m.d_a, 2 * m.d_h);
    g.b_a.assign(static_cast<std::size_t>(m.d_a), 0.0);
    g.u_w.assign(static_cast<std::size_t>(m.d_a), 0.0);
    g.w_o.assign(static_cast<std::size_t>(2 * m.d_h), 0.0);
    g.b_o = 0.0;
    return g;
}

void DenseGrads::zero() {
    embedding.zero();
    zero_cell(fwd);
    zero_cell(bwd);
    W_a.zero();
    std::fill(b_a.begin(), b_a.end(), 0.0);
    std::fill(u_w.begin(), u_w.end(), 0.0);
    std::fill(w_o.begin(), w_o.end(), 0.0);
    b_o = 0.0;
}

DenseGrads make_dense_grads(const Model& m) {
    DenseGrads d;
    d.embedding = Mat(m.embedding.rows, m.embedding.cols);
    d.fwd = make_cell_grads(m.d_h, m.d_x);
    d.bwd = make_cell_grads(m.d_h, m.d_x);
    d.W_a = Mat(m.d_a, 2 * m.d_h);
    d.b_a.assign(static_cast<std::size_t>(m.d_a), 0.0);
    d.u_w.assign(static_cast<std::size_t>(m.d_a), 0.0);
    d.w_o.assign(static_cast<std::size_t>(2 * m.d_h), 0.0);
    d.b_o = 0.0;
    return d;
}

void densify(const Gradients& g, DenseGrads& out) {
    out.embedding.zero();
    for (const auto& [id, row] : g.embedding_rows)
        std::copy(row.begin(), row.end(), out.embedding.row(id));
    out.fwd = g.fwd;
    out.bwd = g.bwd;
    out.W_a = g.W_a;
    out.b_a = g.b_a;
    out.u_w = g.u_w;
    out.w_o = g.w_o;
    out.b_o = g.b_o;
}

void backward_sentence(const Model& m, const ForwardTrace& t, double dLdp, Gradients& g) {
    if (t.version != m.version)
        throw std::logic_error("forward trace is stale against the current parameters");
    const int n = static_cast<int>(t.in.ids.size());
    const int two_h = 2 * m.d_h;

    const double ds = dLdp * t.p * (1.0 - t.p);
    axpy(ds, t.ctx, g.w_o);
    g.b_o += ds;
    Vec dctx(static_cast<std::size_t>(two_h), 0.0);
    axpy(ds, m.head.w_o, dctx);

    Vec da(static_cast<std::size_t>(n));
    double mix = 0.0;
    for (int j = 0; j < n; ++j) {
        da[static_cast<std::size_t>(j)] = dot(dctx, t.hhat[static_cast<std::size_t>(j)]);
        mix += t.attn[static_cast<std::size_t>(j)] * da[static_cast<std::size_t>(j)];
    }

    std::vector<Vec> dconcat(static_cast<std::size_t>(n));
    Vec dq(static_cast<std::size_t>(m.d_a));
    for (int j = 0; j < n; ++j) {
        const std::size_t uj = static_cast<std::size_t>(j);
        const double dz = t.attn[uj] * (da[uj] - mix);
        axpy(dz, t.u[uj], g.u_w);
        for (int k = 0; k < m.d_a; ++k) {
            const double uv = t.u[uj][static_cast<std::size_t>(k)];
            dq[static_cast<std::size_t>(k)] =
                dz * m.attn.u_w[static_cast<std::size_t>(k)] * (1.0 - uv * uv);
        }
        outer_add(g.W_a, dq, t.hhat[uj]);
        add_scaled(g.b_a, dq);
        Vec dhh(static_cast<std::size_t>(two_h), 0.0);
        axpy(t.attn[uj], dctx, dhh);
        matvec_t_add(m.attn.W_a, dq, dhh);
        if (!t.mask.empty())
            for (int k = 0; k < two_h; ++k)
                dhh[static_cast<std::size_t>(k)] *= t.mask[uj][static_cast<std::size_t>(k)];
        dconcat[uj] = std::move(dhh);
    }

    std::vector<Vec> dh_fw(static_cast<std::size_t>(n)), dh_bw(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vec& src = dconcat[static_cast<std::size_t>(i)];
        dh_fw[static_cast<std::size_t>(i)] = Vec(src.begin(), src.begin() + m.d_h);
        // scan step of the reverse direction that produced this position
        dh_bw[static_cast<std::size_t>(n - 1 - i)] = Vec(src.begin() + m.d_h, src.end());
    }

    std::vector<int> fwd_order(static_cast<std::size_t>(n)), bwd_order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        fwd_order[static_cast<std::size_t>(i)] = i;
        bwd_order[static_cast<std::size_t>(i)] = n - 1 - i;
    }
    std::vector<Vec> dx(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(m.d_x), 0.0));
    backward_direction(m.fwd, t.fw, t.x, fwd_order, dh_fw, g.fwd, dx, m.d_h);
    backward_direction(m.bwd, t.bw, t.x, bwd_order, dh_bw, g.bwd, dx, m.d_h);

    for (int i = 0; i < n; ++i) {
        const int id = t.in.ids[static_cast<std::size_t>(i)];
        if (id == 0) continue;  // the unknown row never trains
        auto it = g.embedding_rows.find(id);
        if (it == g.embedding_rows.end())
            it = g.embedding_rows.emplace(id, Vec(static_cast<std::size_t>(m.d_x), 0.0)).first;
        axpy(t.in.senti[static_cast<std::size_t>(i)], dx[static_cast<std::size_t>(i)], it->second);
    }
}

double clamp_probability(double p) {
    const double lo = 1e-7;
    return std::min(std::max(p, lo), 1.0 - lo);
}

double batch_loss(const Vec& y, const Vec& p, const LossConfig& cfg) {
    if (y.size() != p.size()) throw UsageError("label and prediction counts differ");
    if (y.empty()) throw UsageError("empty batch");
    const double n = static_cast<double>(y.size());
    double se = 0.0, ce = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double pc = clamp_probability(p[i]);
        const double d = y[i] - pc;
        se += d * d;
        if (cfg.two_term_ce) {
            ce -= y[i] * std::log(pc) + (1.0 - y[i]) * std::log(1.0 - pc);
        } else {
            ce -= y[i] * std::log(pc);
        }
    }
    const double mse = se / n;
    const double err = cfg.root_mse ? std::sqrt(mse) : mse;
    return 0.5 * err + 0.5 * ce / n;
}

Vec batch_loss_dp(const Vec& y, const Vec& p, const LossConfig& cfg) {
    if (y.size() != p.size()) throw UsageError("label and prediction counts differ");
    if (y.empty()) throw UsageError("empty batch");
    const double n = static_cast<double>(y.size());
    double rms = 0.0;
    if (cfg.root_mse) {
        double se = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double d = y[i] - clamp_probability(p[i]);
            se += d * d;
        }
        rms = std::sqrt(se / n);
    }
    Vec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double pc = clamp_probability(p[i]);
        double v;
        if (cfg.root_mse) {
            // sqrt is flat only when every residual is zero
            v = rms > 0.0 ? 0.5 * (pc - y[i]) / (n * rms) : 0.0;
        } else {
            v = (pc - y[i]) / n;
        }
        if (cfg.two_term_ce) {
            v += 0.5 * (-y[i] / pc + (1.0 - y[i]) / (1.0 - pc)) / n;
        } else {
            v += -y[i] / (2.0 * n * pc);
        }
        out[i] = v;
    }
    return out;
}

}  // namespace sentilens
