#include "sentilens/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <map>

namespace sentilens {

namespace {

constexpr char kMagic[4] = {'S', 'L', 'C', 'P'};

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f32(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

struct Cursor {
    const std::string& buf;
    std::size_t pos = 0;
    const std::string& path;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw DataError("truncated checkpoint: " + path);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    float f32() {
        const std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
    std::string bytes(std::size_t n) {
        need(n);
        std::string s = buf.substr(pos, n);
        pos += n;
        return s;
    }
};

struct StoredTensor {
    int rows = 0, cols = 0;
    std::vector<float> data;
    bool consumed = false;
};

CellParams alloc_cell(int d_h, int d_x) {
    CellParams c;
    auto gate = [&](Mat& w, Mat& u, Mat& v, Vec& b) {
        w = Mat(d_h, d_x);
        u = Mat(d_h, d_h);
        v = Mat(d_h, d_h);
        b.assign(static_cast<std::size_t>(d_h), 0.0);
    };
    gate(c.W_i, c.U_i, c.V_i, c.b_i);
    gate(c.W_f, c.U_f, c.V_f, c.b_f);
    gate(c.W_c, c.U_c, c.V_c, c.b_c);
    gate(c.W_o, c.U_o, c.V_o, c.b_o);
    return c;
}

}  // namespace

void save_checkpoint(const std::string& path, const Model& m, std::uint64_t vocab_hash) {
    std::string buf;
    buf.append(kMagic, 4);
    put_u32(buf, kCheckpointVersion);
    put_u32(buf, static_cast<std::uint32_t>(m.d_x));
    put_u32(buf, static_cast<std::uint32_t>(m.d_h));
    put_u32(buf, static_cast<std::uint32_t>(m.d_a));
    put_u64(buf, vocab_hash);

    std::uint32_t count = 0;
    for_each_param(m, [&](const std::string&, const double*, int, int) { ++count; });
    put_u32(buf, count);
    for_each_param(m, [&](const std::string& name, const double* data, int rows, int cols) {
        put_u32(buf, static_cast<std::uint32_t>(name.size()));
        buf += name;
        put_u32(buf, static_cast<std::uint32_t>(rows));
        put_u32(buf, static_cast<std::uint32_t>(cols));
        const std::size_t n = static_cast<std::size_t>(rows) * cols;
        for (std::size_t i = 0; i < n; ++i) put_f32(buf, static_cast<float>(data[i]));
    });

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !out.write(buf.data(), static_cast<std::streamsize>(buf.size())))
        throw DataError("cannot write checkpoint: " + path);
}

Model load_checkpoint(const std::string& path, CheckpointInfo* info) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open checkpoint: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Cursor cur{buf, 0, path};

    if (cur.bytes(4) != std::string(kMagic, 4))
        throw DataError("not a checkpoint file: " + path);
    CheckpointInfo ci;
    ci.format_version = cur.u32();
    if (ci.format_version != kCheckpointVersion)
        throw DataError("unsupported checkpoint version " + std::to_string(ci.format_version) +
                        ": " + path);
    ci.d_x = static_cast<int>(cur.u32());
    ci.d_h = static_cast<int>(cur.u32());
    ci.d_a = static_cast<int>(cur.u32());
    ci.vocab_hash = cur.u64();

    const std::uint32_t count = cur.u32();
    std::map<std::string, StoredTensor> tensors;
    for (std::uint32_t t = 0; t < count; ++t) {
        const std::uint32_t name_len = cur.u32();
        const std::string name = cur.bytes(name_len);
        StoredTensor st;
        st.rows = static_cast<int>(cur.u32());
        st.cols = static_cast<int>(cur.u32());
        const std::size_t n = static_cast<std::size_t>(st.rows) * st.cols;
        st.data.resize(n);
        for (std::size_t i = 0; i < n; ++i) st.data[i] = cur.f32();
        if (!tensors.emplace(name, std::move(st)).second)
            throw DataError("duplicate tensor " + name + " in checkpoint: " + path);
    }
    if (cur.pos != buf.size()) throw DataError("trailing bytes in checkpoint: " + path);

    const auto emb = tensors.find("embedding");
    if (emb == tensors.end()) throw DataError("checkpoint lacks the embedding tensor: " + path);
    if (emb->second.cols != ci.d_x)
        throw DataError("embedding width disagrees with the header: " + path);

    Model m;
    m.d_x = ci.d_x;
    m.d_h = ci.d_h;
    m.d_a = ci.d_a;
    m.dropout_rate = 0.0;
    m.embedding = Mat(emb->second.rows, emb->second.cols);
    m.fwd = alloc_cell(ci.d_h, ci.d_x);
    m.bwd = alloc_cell(ci.d_h, ci.d_x);
    m.attn.W_a = Mat(ci.d_a, 2 * ci.d_h);
    m.attn.b_a.assign(static_cast<std::size_t>(ci.d_a), 0.0);
    m.attn.u_w.assign(static_cast<std::size_t>(ci.d_a), 0.0);
    m.head.w_o.assign(static_cast<std::size_t>(2 * ci.d_h), 0.0);

    for_each_param(m, [&](const std::string& name, double* data, int rows, int cols) {
        auto it = tensors.find(name);
        if (it == tensors.end()) throw DataError("checkpoint lacks tensor " + name + ": " + path);
        StoredTensor& st = it->second;
        if (st.rows != rows || st.cols != cols)
            throw DataError("tensor " + name + " has shape " + std::to_string(st.rows) + "x" +
                            std::to_string(st.cols) + ", expected " + std::to_string(rows) + "x" +
                            std::to_string(cols) + ": " + path);
        for (std::size_t i = 0; i < st.data.size(); ++i) data[i] = static_cast<double>(st.data[i]);
        st.consumed = true;
    });
    for (const auto& [name, st] : tensors)
        if (!st.consumed) throw DataError("unexpected tensor " + name + " in checkpoint: " + path);

    if (info) *info = ci;
    return m;
}

}  // namespace sentilens
