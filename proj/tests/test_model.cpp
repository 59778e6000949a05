#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "sentilens/model.hpp"
#include "sentilens/util.hpp"

using namespace sentilens;
using testing::random_model;
using testing::random_sentence;
using testing::ref_forward;
using testing::ref_sigmoid;
using testing::RefResult;

namespace {

struct ParamSlot {
    std::string name;
    double* p;
    std::size_t n;
};

std::vector<ParamSlot> model_slots(Model& m) {
    std::vector<ParamSlot> slots;
    for_each_param(m, [&](const std::string& name, double* p, int rows, int cols) {
        slots.push_back({name, p, static_cast<std::size_t>(rows) * cols});
    });
    return slots;
}

std::vector<ParamSlot> grad_slots(DenseGrads& g) {
    std::vector<ParamSlot> slots;
    g.visit([&](const std::string& name, double* p, int rows, int cols) {
        slots.push_back({name, p, static_cast<std::size_t>(rows) * cols});
    });
    return slots;
}

double loss_at(const Model& m, const EncodedSentence& in, const std::vector<Vec>* mask, double y,
               const LossConfig& cfg) {
    ForwardTrace t = forward_sentence(m, in, mask);
    return batch_loss({y}, {t.p}, cfg);
}

void check_close(const Vec& a, const Vec& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(tol).scale(1.0));
}

}  // namespace

TEST_CASE("forward pass matches a plain-loop reference on random instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Model m = random_model(7, 4, 3, 5, 1000 + seed);
        Rng rng(derive_seed(seed, "fw-oracle"));
        const int len = 1 + static_cast<int>(rng.uniform_int(7));
        EncodedSentence in = random_sentence(len, 7, rng);

        ForwardTrace t = forward_sentence(m, in, nullptr);
        RefResult r = ref_forward(m, in, nullptr);

        for (int i = 0; i < len; ++i) check_close(t.hhat[i], r.hhat[i], 1e-12);
        check_close(t.z, r.z, 1e-12);
        check_close(t.attn, r.attn, 1e-12);
        check_close(t.ctx, r.ctx, 1e-12);
        CHECK(t.s == doctest::Approx(r.score).epsilon(1e-12).scale(1.0));
        CHECK(t.p == doctest::Approx(r.p).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("forward pass with an explicit dropout mask matches the reference") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Model m = random_model(6, 3, 2, 4, 2000 + seed, 0.5);
        Rng rng(derive_seed(seed, "fw-oracle-mask"));
        const int len = 2 + static_cast<int>(rng.uniform_int(4));
        EncodedSentence in = random_sentence(len, 6, rng);
        auto mask = draw_dropout_mask(len, 2 * m.d_h, 0.5, rng);

        ForwardTrace t = forward_sentence(m, in, &mask);
        RefResult r = ref_forward(m, in, &mask);
        for (int i = 0; i < len; ++i) check_close(t.hhat[i], r.hhat[i], 1e-12);
        check_close(t.attn, r.attn, 1e-12);
        CHECK(t.p == doctest::Approx(r.p).epsilon(1e-12).scale(1.0));
        CHECK(t.mask.size() == static_cast<std::size_t>(len));
    }
}

TEST_CASE("all-zero parameters give half-open gates and a 0.5 prediction") {
    Model m = random_model(4, 3, 2, 3, 77);
    for_each_param(m, [](const std::string&, double* p, int rows, int cols) {
        std::fill(p, p + static_cast<std::size_t>(rows) * cols, 0.0);
    });
    ++m.version;
    EncodedSentence in;
    in.ids = {1, 2, 3};
    in.senti = {1.0, 1.0, 1.0};
    ForwardTrace t = forward_sentence(m, in, nullptr);
    for (int s = 0; s < 3; ++s)
        for (int k = 0; k < m.d_h; ++k) {
            CHECK(t.fw.gate_i[s][k] == 0.5);
            CHECK(t.fw.gate_f[s][k] == 0.5);
            CHECK(t.fw.gate_o[s][k] == 0.5);
            CHECK(t.fw.cand[s][k] == 0.0);
            CHECK(t.fw.c[s][k] == 0.0);
            CHECK(t.fw.h[s][k] == 0.0);
        }
    CHECK(t.s == 0.0);
    CHECK(t.p == 0.5);
    for (double a : t.attn) CHECK(a == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("a heavily biased forget gate saturates toward 1") {
    Model m = random_model(4, 3, 2, 3, 78);
    for (auto& b : m.fwd.b_f) b = 20.0;
    for (auto& b : m.bwd.b_f) b = 20.0;
    ++m.version;
    Rng rng(5);
    EncodedSentence in = random_sentence(4, 4, rng);
    ForwardTrace t = forward_sentence(m, in, nullptr);
    for (int s = 0; s < 4; ++s)
        for (int k = 0; k < m.d_h; ++k) {
            CHECK(t.fw.gate_f[s][k] > 1.0 - 1e-6);
            CHECK(t.bw.gate_f[s][k] > 1.0 - 1e-6);
        }
}

TEST_CASE("scalar gates compute the logistic of their preactivation") {
    // d_x = d_h = 1 with a single token: the forget preactivation is
    // exactly W_f * x = 2, so the gate must read sigma(2).
    Model m = random_model(1, 1, 1, 1, 79);
    for_each_param(m, [](const std::string&, double* p, int rows, int cols) {
        std::fill(p, p + static_cast<std::size_t>(rows) * cols, 0.0);
    });
    m.embedding(1, 0) = 1.0;
    m.fwd.W_f(0, 0) = 2.0;
    ++m.version;
    EncodedSentence in;
    in.ids = {1};
    in.senti = {1.0};
    ForwardTrace t = forward_sentence(m, in, nullptr);
    CHECK(t.fw.gate_f[0][0] == doctest::Approx(0.8807970779778823).epsilon(1e-15));
    CHECK(t.fw.gate_f[0][0] == doctest::Approx(0.880797).epsilon(1e-6));
}

TEST_CASE("gates at step two read the previous cell state through their own matrix") {
    // Scalar model with hand-set weights; the step-two preactivations are
    // recomputed here from the recorded step-one state. A cell that peeks
    // at the current state, or skips the peephole, breaks these.
    Model m = random_model(2, 1, 1, 1, 80);
    for_each_param(m, [](const std::string&, double* p, int rows, int cols) {
        std::fill(p, p + static_cast<std::size_t>(rows) * cols, 0.0);
    });
    m.embedding(1, 0) = 1.0;
    m.embedding(2, 0) = -0.5;
    CellParams& c = m.fwd;
    c.W_i(0, 0) = 0.9;  c.U_i(0, 0) = 0.4;  c.V_i(0, 0) = -0.6; c.b_i[0] = 0.1;
    c.W_f(0, 0) = -0.3; c.U_f(0, 0) = 0.8;  c.V_f(0, 0) = 1.7;  c.b_f[0] = 0.2;
    c.W_c(0, 0) = 1.1;  c.U_c(0, 0) = -0.2; c.V_c(0, 0) = 0.5;  c.b_c[0] = 0.0;
    c.W_o(0, 0) = 0.7;  c.U_o(0, 0) = 0.3;  c.V_o(0, 0) = -1.2; c.b_o[0] = -0.1;
    ++m.version;

    EncodedSentence in;
    in.ids = {1, 2};
    in.senti = {1.0, 1.0};
    ForwardTrace t = forward_sentence(m, in, nullptr);

    const double x2 = -0.5;
    const double h1 = t.fw.h[0][0];
    const double c1 = t.fw.c[0][0];
    const double c2 = t.fw.c[1][0];
    REQUIRE(c1 != 0.0);
    REQUIRE(c1 != c2);

    CHECK(t.fw.gate_i[1][0] ==
          doctest::Approx(ref_sigmoid(0.9 * x2 + 0.4 * h1 + (-0.6) * c1 + 0.1)).epsilon(1e-14));
    CHECK(t.fw.gate_f[1][0] ==
          doctest::Approx(ref_sigmoid(-0.3 * x2 + 0.8 * h1 + 1.7 * c1 + 0.2)).epsilon(1e-14));
    CHECK(t.fw.cand[1][0] ==
          doctest::Approx(std::tanh(1.1 * x2 + (-0.2) * h1 + 0.5 * c1)).epsilon(1e-14));
    CHECK(t.fw.gate_o[1][0] ==
          doctest::Approx(ref_sigmoid(0.7 * x2 + 0.3 * h1 + (-1.2) * c1 + (-0.1))).epsilon(1e-14));
    CHECK(c2 == doctest::Approx(t.fw.gate_f[1][0] * c1 +
                                t.fw.gate_i[1][0] * t.fw.cand[1][0]).epsilon(1e-14));
    CHECK(t.fw.h[1][0] == doctest::Approx(t.fw.gate_o[1][0] * std::tanh(c2)).epsilon(1e-14));
}

TEST_CASE("reversing the input and swapping directions mirrors the states") {
    Model m = random_model(6, 3, 2, 3, 81);
    Rng rng(11);
    const int len = 5;
    EncodedSentence in = random_sentence(len, 6, rng);
    EncodedSentence rev;
    rev.ids.assign(in.ids.rbegin(), in.ids.rend());
    rev.senti.assign(in.senti.rbegin(), in.senti.rend());

    Model swapped = m;
    std::swap(swapped.fwd, swapped.bwd);

    ForwardTrace a = forward_sentence(m, in, nullptr);
    ForwardTrace b = forward_sentence(swapped, rev, nullptr);
    for (int i = 0; i < len; ++i) {
        const Vec& ha = a.hhat[len - 1 - i];
        const Vec& hb = b.hhat[i];
        for (int k = 0; k < m.d_h; ++k) {
            CHECK(hb[k] == ha[m.d_h + k]);
            CHECK(hb[m.d_h + k] == ha[k]);
        }
    }
}

TEST_CASE("a single-token sentence gets attention weight exactly 1") {
    Model m = random_model(4, 3, 2, 3, 82);
    Rng rng(13);
    EncodedSentence in = random_sentence(1, 4, rng);
    ForwardTrace t = forward_sentence(m, in, nullptr);
    REQUIRE(t.attn.size() == 1);
    CHECK(t.attn[0] == 1.0);
    CHECK(t.ctx == t.hhat[0]);
}

TEST_CASE("an empty sentence is a data error") {
    Model m = random_model(4, 3, 2, 3, 83);
    EncodedSentence in;
    CHECK_THROWS_AS(forward_sentence(m, in, nullptr), DataError);
}

TEST_CASE("attention weights are positive and sum to 1") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Model m = random_model(9, 3, 3, 4, 3000 + seed);
        Rng rng(derive_seed(seed, "attn-sum"));
        const int len = 1 + static_cast<int>(rng.uniform_int(10));
        EncodedSentence in = random_sentence(len, 9, rng);
        ForwardTrace t = forward_sentence(m, in, nullptr);
        double sum = 0.0;
        for (double a : t.attn) {
            CHECK(a > 0.0);
            sum += a;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("max-shifted attention equals the textbook softmax") {
    // exp(ln 3) / (exp(ln 3) + exp(0)) pins the convention: logits
    // (ln 3, 0) must weight as (0.75, 0.25).
    auto naive = [](const Vec& z) {
        Vec out(z.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            out[i] = std::exp(z[i]);
            sum += out[i];
        }
        for (auto& v : out) v /= sum;
        return out;
    };
    Vec pinned = naive({std::log(3.0), 0.0});
    CHECK(pinned[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(pinned[1] == doctest::Approx(0.25).epsilon(1e-12));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Model m = random_model(6, 3, 2, 4, 4000 + seed);
        Rng rng(derive_seed(seed, "attn-shift"));
        const int len = 2 + static_cast<int>(rng.uniform_int(6));
        EncodedSentence in = random_sentence(len, 6, rng);
        ForwardTrace t = forward_sentence(m, in, nullptr);
        Vec expect = naive(t.z);
        for (std::size_t i = 0; i < expect.size(); ++i)
            CHECK(t.attn[i] == doctest::Approx(expect[i]).epsilon(1e-9));
    }
}

TEST_CASE("equal attention logits spread weight exactly uniformly") {
    Model m = random_model(3, 2, 2, 3, 84);
    // A zero score vector makes every logit 0 no matter what the states
    // look like, so the softmax must come out exactly flat.
    std::fill(m.attn.u_w.begin(), m.attn.u_w.end(), 0.0);
    ++m.version;
    EncodedSentence in;
    in.ids = {2, 1, 2, 2};
    in.senti = {0.8, 1.2, 0.8, 0.8};
    ForwardTrace t = forward_sentence(m, in, nullptr);
    REQUIRE(t.attn.size() == 4);
    for (double a : t.attn) CHECK(a == 0.25);
}

TEST_CASE("hidden states stay strictly inside the unit box") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Model m = random_model(5, 3, 3, 3, 5000 + seed);
        Rng rng(derive_seed(seed, "h-bounds"));
        EncodedSentence in = random_sentence(8, 5, rng);
        // Large sentiment weights push the cell hard; h stays bounded.
        for (auto& s : in.senti) s *= 10.0;
        ForwardTrace t = forward_sentence(m, in, nullptr);
        for (const auto& h : t.fw.h)
            for (double v : h) CHECK(std::abs(v) < 1.0);
        for (const auto& h : t.bw.h)
            for (double v : h) CHECK(std::abs(v) < 1.0);
    }
}

TEST_CASE("dropout masks hold only 0 or the inverse keep rate") {
    Rng rng(21);
    const double rate = 0.4;
    auto mask = draw_dropout_mask(50, 8, rate, rng);
    int zeros = 0, total = 0;
    for (const auto& row : mask)
        for (double v : row) {
            CHECK((v == 0.0 || v == doctest::Approx(1.0 / 0.6).epsilon(1e-12)));
            zeros += v == 0.0 ? 1 : 0;
            ++total;
        }
    const double frac = static_cast<double>(zeros) / total;
    CHECK(frac == doctest::Approx(rate).epsilon(0.2));

    auto keep_all = draw_dropout_mask(3, 4, 0.0, rng);
    for (const auto& row : keep_all)
        for (double v : row) CHECK(v == 1.0);

    CHECK_THROWS_AS(draw_dropout_mask(3, 4, 1.0, rng), UsageError);
    CHECK_THROWS_AS(draw_dropout_mask(3, 4, -0.1, rng), UsageError);
}

TEST_CASE("a mask of the wrong shape is rejected") {
    Model m = random_model(4, 3, 2, 3, 85);
    Rng rng(23);
    EncodedSentence in = random_sentence(3, 4, rng);
    auto short_mask = draw_dropout_mask(2, 2 * m.d_h, 0.3, rng);
    CHECK_THROWS_AS(forward_sentence(m, in, &short_mask), UsageError);
    auto narrow_mask = draw_dropout_mask(3, m.d_h, 0.3, rng);
    CHECK_THROWS_AS(forward_sentence(m, in, &narrow_mask), UsageError);
}

TEST_CASE("eval mode records no mask") {
    Model m = random_model(4, 3, 2, 3, 86);
    Rng rng(25);
    EncodedSentence in = random_sentence(3, 4, rng);
    ForwardTrace t = forward_sentence(m, in, nullptr);
    CHECK(t.mask.empty());
}

TEST_CASE("loss on the anchor points matches the documented values") {
    LossConfig root_one{true, false};

    // y=1, p=0.5: 0.5*sqrt(0.25) + 0.5*ln 2 = 0.25 + 0.34657...
    const double l1 = batch_loss({1.0}, {0.5}, root_one);
    CHECK(l1 == doctest::Approx(0.25 + 0.5 * std::log(2.0)).epsilon(1e-12));
    CHECK(l1 == doctest::Approx(0.596574).epsilon(1e-6).scale(1.0));

    // y=0, p=0.5: the single-term branch scores zero for a zero label.
    CHECK(batch_loss({0.0}, {0.5}, root_one) == doctest::Approx(0.25).epsilon(1e-12));

    // The two-term branch charges the zero label what the one-term
    // branch charges the one label.
    LossConfig root_two{true, true};
    CHECK(batch_loss({0.0}, {0.5}, root_two) == doctest::Approx(l1).epsilon(1e-12));

    // A confident correct prediction costs almost nothing.
    CHECK(batch_loss({1.0}, {1.0}, root_two) < 1e-6);
    CHECK(batch_loss({1.0}, {0.9999999}, root_one) < 1e-6);

    // Plain MSE branch.
    LossConfig mse_one{false, false};
    CHECK(batch_loss({1.0}, {0.5}, mse_one) ==
          doctest::Approx(0.5 * 0.25 + 0.5 * std::log(2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(batch_loss({}, {}, root_one), UsageError);
    CHECK_THROWS_AS(batch_loss({1.0}, {0.5, 0.5}, root_one), UsageError);
    CHECK_THROWS_AS(batch_loss_dp({}, {}, root_one), UsageError);
}

TEST_CASE("probability clamp keeps the loss finite at the extremes") {
    for (const LossConfig cfg : {LossConfig{true, true}, LossConfig{false, true}}) {
        CHECK(std::isfinite(batch_loss({1.0}, {0.0}, cfg)));
        CHECK(std::isfinite(batch_loss({0.0}, {1.0}, cfg)));
        CHECK(clamp_probability(0.0) == 1e-7);
        CHECK(clamp_probability(1.0) == 1.0 - 1e-7);
        CHECK(clamp_probability(0.3) == 0.3);
    }
}

TEST_CASE("loss gradient matches finite differences in all four modes") {
    Rng rng(29);
    for (bool root : {true, false}) {
        for (bool two : {true, false}) {
            LossConfig cfg{root, two};
            Vec y, p;
            for (int i = 0; i < 6; ++i) {
                y.push_back(rng.uniform_int(2) == 0 ? 0.0 : 1.0);
                p.push_back(rng.uniform(0.05, 0.95));
            }
            Vec grad = batch_loss_dp(y, p, cfg);
            const double h = 1e-6;
            for (std::size_t i = 0; i < p.size(); ++i) {
                Vec hi = p, lo = p;
                hi[i] += h;
                lo[i] -= h;
                const double fd = (batch_loss(y, hi, cfg) - batch_loss(y, lo, cfg)) / (2 * h);
                CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
            }
        }
    }
}

TEST_CASE("analytic gradients match central finite differences") {
    const double step = 1e-5;
    const double tol = 1e-4;
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int d_h = 2 + static_cast<int>(seed % 2);
        Model m = random_model(5, 3, d_h, 3, 6000 + seed);
        Rng rng(derive_seed(seed, "fd-check"));
        const int len = 2 + static_cast<int>(rng.uniform_int(5));
        EncodedSentence in = random_sentence(len, 5, rng);
        const double y = rng.uniform_int(2) == 0 ? 0.0 : 1.0;
        const LossConfig cfg{seed % 2 == 0, seed % 3 == 0};

        // Odd seeds exercise the dropout path with a pinned mask.
        std::vector<Vec> mask;
        const std::vector<Vec>* mask_ptr = nullptr;
        if (seed % 2 == 1) {
            mask = draw_dropout_mask(len, 2 * d_h, 0.3, rng);
            mask_ptr = &mask;
        }

        ForwardTrace t = forward_sentence(m, in, mask_ptr);
        Vec dLdp = batch_loss_dp({y}, {t.p}, cfg);
        Gradients g = make_gradients(m);
        backward_sentence(m, t, dLdp[0], g);
        DenseGrads dense = make_dense_grads(m);
        densify(g, dense);

        auto params = model_slots(m);
        auto grads = grad_slots(dense);
        REQUIRE(params.size() == grads.size());
        for (std::size_t s = 0; s < params.size(); ++s) {
            REQUIRE(params[s].name == grads[s].name);
            REQUIRE(params[s].n == grads[s].n);
            for (std::size_t i = 0; i < params[s].n; ++i) {
                // Row 0 of the embedding is the pinned unknown row.
                if (params[s].name == "embedding" && i < static_cast<std::size_t>(m.d_x))
                    continue;
                double* cell = params[s].p + i;
                const double orig = *cell;
                *cell = orig + step;
                const double hi = loss_at(m, in, mask_ptr, y, cfg);
                *cell = orig - step;
                const double lo = loss_at(m, in, mask_ptr, y, cfg);
                *cell = orig;
                const double fd = (hi - lo) / (2 * step);
                const double an = grads[s].p[i];
                const double rel = std::abs(fd - an) / std::max({1.0, std::abs(fd), std::abs(an)});
                if (rel >= tol) {
                    CAPTURE(params[s].name);
                    CAPTURE(i);
                    CAPTURE(fd);
                    CAPTURE(an);
                }
                CHECK(rel < tol);
                ++checked;
            }
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("backward with a zero upstream gradient produces all-zero gradients") {
    Model m = random_model(4, 3, 2, 3, 87);
    Rng rng(31);
    EncodedSentence in = random_sentence(4, 4, rng);
    ForwardTrace t = forward_sentence(m, in, nullptr);
    Gradients g = make_gradients(m);
    backward_sentence(m, t, 0.0, g);
    DenseGrads dense = make_dense_grads(m);
    densify(g, dense);
    dense.visit([](const std::string&, double* p, int rows, int cols) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(rows) * cols; ++i) CHECK(p[i] == 0.0);
    });
}

TEST_CASE("gradients scale linearly with the upstream gradient") {
    Model m = random_model(4, 3, 2, 3, 88);
    Rng rng(33);
    EncodedSentence in = random_sentence(4, 4, rng);
    ForwardTrace t = forward_sentence(m, in, nullptr);
    Gradients g1 = make_gradients(m), g2 = make_gradients(m);
    backward_sentence(m, t, 0.7, g1);
    backward_sentence(m, t, 1.4, g2);
    DenseGrads d1 = make_dense_grads(m), d2 = make_dense_grads(m);
    densify(g1, d1);
    densify(g2, d2);
    auto s1 = grad_slots(d1), s2 = grad_slots(d2);
    for (std::size_t s = 0; s < s1.size(); ++s)
        for (std::size_t i = 0; i < s1[s].n; ++i)
            CHECK(s2[s].p[i] == doctest::Approx(2.0 * s1[s].p[i]).epsilon(1e-12).scale(1e-12));
}

TEST_CASE("only the embedding rows a sentence touches accumulate gradient") {
    Model m = random_model(6, 3, 2, 3, 89);
    EncodedSentence in;
    in.ids = {2, 5, 0, 2};
    in.senti = {1.0, -0.5, 1.0, 0.7};
    ForwardTrace t = forward_sentence(m, in, nullptr);
    Gradients g = make_gradients(m);
    backward_sentence(m, t, 1.0, g);
    CHECK(g.embedding_rows.size() == 2);
    CHECK(g.embedding_rows.count(2) == 1);
    CHECK(g.embedding_rows.count(5) == 1);
    CHECK(g.embedding_rows.count(0) == 0);
}

TEST_CASE("a trace taken before a parameter update cannot flow backward") {
    Model m = random_model(4, 3, 2, 3, 90);
    Rng rng(35);
    EncodedSentence in = random_sentence(3, 4, rng);
    ForwardTrace t = forward_sentence(m, in, nullptr);
    ++m.version;  // simulates an optimizer step
    Gradients g = make_gradients(m);
    CHECK_THROWS_AS(backward_sentence(m, t, 1.0, g), std::logic_error);
}

TEST_CASE("encode_tokens pairs vocabulary ids with lexicon weights") {
    std::vector<LabeledExample> ex{{{"good", "cable", "good"}, 1, 0}};
    Vocabulary vocab = build_vocab(ex, 1);
    SentimentLexicon lex({{"good", 0.5}}, 1.0, {"t"});
    EncodedSentence e = encode_tokens(vocab, lex, {"good", "cable", "mystery"});
    CHECK(e.ids == std::vector<int>{vocab.lookup("good"), vocab.lookup("cable"), 0});
    CHECK(e.senti == Vec{0.5, 1.0, 1.0});
}

TEST_CASE("predict wraps encoding and the eval forward pass") {
    std::vector<LabeledExample> ex{{{"good", "cable"}, 1, 0}};
    Vocabulary vocab = build_vocab(ex, 1);
    SentimentLexicon lex({{"good", 0.5}}, 1.0, {"t"});
    Model m = random_model(vocab.size(), 3, 2, 3, 91);
    const double p = predict(m, vocab, lex, {"good", "cable"});
    ForwardTrace t = forward_sentence(m, encode_tokens(vocab, lex, {"good", "cable"}), nullptr);
    CHECK(p == t.p);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
}
