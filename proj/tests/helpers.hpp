#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sentilens/model.hpp"
#include "sentilens/util.hpp"

namespace testing {

using namespace sentilens;

// Fresh directory under the system temp root; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("sentilens_" + tag + "_" + std::to_string(++counter)))
                    .string();
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Plain-loop reference forward pass, written directly from the update
// rules with no shared code with the library kernels. Used as the oracle
// for forward_sentence.
struct RefResult {
    std::vector<Vec> hhat;
    Vec z;
    Vec attn;
    Vec ctx;
    double score = 0.0;
    double p = 0.0;
};

inline double ref_sigmoid(double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

inline Vec ref_affine(const Mat& w, const Vec& x, const Vec& b) {
    Vec y(w.rows, 0.0);
    for (int r = 0; r < w.rows; ++r) {
        double acc = b.empty() ? 0.0 : b[r];
        for (int c = 0; c < w.cols; ++c) acc += w(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

inline std::vector<Vec> ref_scan(const CellParams& cell, const std::vector<Vec>& xs) {
    const int d_h = cell.b_i.size();
    std::vector<Vec> hs;
    Vec h(d_h, 0.0), c(d_h, 0.0);
    for (std::size_t s = 0; s < xs.size(); ++s) {
        auto pre = [&](const Mat& W, const Mat& U, const Mat& V, const Vec& b) {
            Vec a = ref_affine(W, xs[s], b);
            if (s > 0)
                for (int r = 0; r < d_h; ++r) {
                    for (int k = 0; k < d_h; ++k) a[r] += U(r, k) * h[k] + V(r, k) * c[k];
                }
            return a;
        };
        const Vec ai = pre(cell.W_i, cell.U_i, cell.V_i, cell.b_i);
        const Vec af = pre(cell.W_f, cell.U_f, cell.V_f, cell.b_f);
        const Vec ac = pre(cell.W_c, cell.U_c, cell.V_c, cell.b_c);
        const Vec ao = pre(cell.W_o, cell.U_o, cell.V_o, cell.b_o);
        Vec c_next(d_h), h_next(d_h);
        for (int r = 0; r < d_h; ++r) {
            const double ig = ref_sigmoid(ai[r]);
            const double fg = ref_sigmoid(af[r]);
            const double gg = std::tanh(ac[r]);
            const double og = ref_sigmoid(ao[r]);
            c_next[r] = fg * c[r] + ig * gg;
            h_next[r] = og * std::tanh(c_next[r]);
        }
        c = c_next;
        h = h_next;
        hs.push_back(h);
    }
    return hs;
}

inline RefResult ref_forward(const Model& m, const EncodedSentence& in,
                             const std::vector<Vec>* mask) {
    const int n = static_cast<int>(in.ids.size());
    std::vector<Vec> xs(n, Vec(m.d_x, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m.d_x; ++k) xs[i][k] = in.senti[i] * m.embedding(in.ids[i], k);

    const std::vector<Vec> fw = ref_scan(m.fwd, xs);
    std::vector<Vec> xs_rev(xs.rbegin(), xs.rend());
    const std::vector<Vec> bw = ref_scan(m.bwd, xs_rev);

    RefResult r;
    r.hhat.assign(n, Vec(2 * m.d_h, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m.d_h; ++k) {
            r.hhat[i][k] = fw[i][k];
            r.hhat[i][m.d_h + k] = bw[n - 1 - i][k];
        }
        if (mask)
            for (int k = 0; k < 2 * m.d_h; ++k) r.hhat[i][k] *= (*mask)[i][k];
    }

    r.z.resize(n);
    for (int i = 0; i < n; ++i) {
        Vec u = ref_affine(m.attn.W_a, r.hhat[i], m.attn.b_a);
        double acc = 0.0;
        for (int k = 0; k < m.d_a; ++k) acc += std::tanh(u[k]) * m.attn.u_w[k];
        r.z[i] = acc;
    }
    double zmax = r.z[0];
    for (double v : r.z) zmax = std::max(zmax, v);
    r.attn.resize(n);
    double zsum = 0.0;
    for (int i = 0; i < n; ++i) {
        r.attn[i] = std::exp(r.z[i] - zmax);
        zsum += r.attn[i];
    }
    for (int i = 0; i < n; ++i) r.attn[i] /= zsum;

    r.ctx.assign(2 * m.d_h, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < 2 * m.d_h; ++k) r.ctx[k] += r.attn[i] * r.hhat[i][k];

    r.score = m.head.b_o;
    for (int k = 0; k < 2 * m.d_h; ++k) r.score += m.head.w_o[k] * r.ctx[k];
    r.p = ref_sigmoid(r.score);
    return r;
}

// Small random model with every weight free (no zero-initialized biases),
// so gradient checks see no accidental symmetry.
inline Model random_model(int vocab, int d_x, int d_h, int d_a, std::uint64_t seed,
                          double dropout = 0.0) {
    ModelInit init;
    init.d_x = d_x;
    init.d_h = d_h;
    init.d_a = d_a;
    init.dropout_rate = dropout;
    init.init_range = 0.5;
    init.forget_bias = 0.3;
    init.seed = seed;
    Model m = init_model(vocab, init);
    Rng rng(derive_seed(seed, "test-perturb"));
    for_each_param(m, [&](const std::string&, double* p, int rows, int cols) {
        const std::size_t n = static_cast<std::size_t>(rows) * cols;
        for (std::size_t i = 0; i < n; ++i) p[i] += rng.uniform(-0.2, 0.2);
    });
    for (int k = 0; k < d_x; ++k) m.embedding(0, k) = 0.0;  // padding row stays zero
    ++m.version;
    return m;
}

inline EncodedSentence random_sentence(int len, int vocab, Rng& rng) {
    EncodedSentence s;
    for (int i = 0; i < len; ++i) {
        s.ids.push_back(1 + static_cast<int>(rng.uniform_int(vocab)));
        s.senti.push_back(rng.uniform(-1.0, 1.5));
    }
    return s;
}

}  // namespace testing
