#include "fpp/env_io.hpp"

#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fpp {

namespace {

constexpr char kMagic[4] = {'F', 'P', 'P', 'E'};
constexpr uint16_t kVersion = 1;

template <typename T>
void put_le(std::string& out, T value) {
    auto u = static_cast<std::make_unsigned_t<T>>(value);
    for (size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((u >> (8 * i)) & 0xFF));
}

template <typename T>
T get_le(const std::string& in, size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw std::runtime_error("FPPE: truncated file");
    std::make_unsigned_t<T> u = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
        u |= static_cast<std::make_unsigned_t<T>>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(T);
    return static_cast<T>(u);
}

nlohmann::json provenance_to_json(const Provenance& p) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : p.ops) {
        nlohmann::json o;
        switch (op.kind) {
            case Provenance::Op::Kind::SetEdge:
                o["op"] = "set_edge";
                o["base"] = op.base;
                o["axis"] = op.axis;
                o["value"] = op.value;
                break;
            case Provenance::Op::Kind::Double:
                o["op"] = "double";
                break;
            case Provenance::Op::Kind::Reflect:
                o["op"] = "reflect";
                o["n"] = op.plane_n;
                break;
        }
        ops.push_back(std::move(o));
    }
    return nlohmann::json{{"master_seed", p.master_seed},
                          {"sample_index", p.sample_index},
                          {"dist_id", p.dist_id},
                          {"ops", std::move(ops)}};
}

Provenance provenance_from_json(const nlohmann::json& j) {
    Provenance p;
    p.master_seed = j.value("master_seed", uint64_t{0});
    p.sample_index = j.value("sample_index", uint64_t{0});
    p.dist_id = j.value("dist_id", std::string{});
    for (const auto& o : j.value("ops", nlohmann::json::array())) {
        Provenance::Op op;
        const std::string kind = o.at("op");
        if (kind == "set_edge") {
            op.kind = Provenance::Op::Kind::SetEdge;
            op.base = o.at("base").get<Coords>();
            op.axis = o.at("axis");
            op.value = o.at("value");
        } else if (kind == "double") {
            op.kind = Provenance::Op::Kind::Double;
        } else if (kind == "reflect") {
            op.kind = Provenance::Op::Kind::Reflect;
            op.plane_n = o.at("n");
        } else {
            throw std::runtime_error("FPPE sidecar: unknown op " + kind);
        }
        p.ops.push_back(std::move(op));
    }
    return p;
}

}  // namespace

void save_environment(const Environment& env, const std::string& path) {
    std::string buf;
    buf.append(kMagic, 4);
    put_le<uint16_t>(buf, kVersion);
    put_le<uint16_t>(buf, static_cast<uint16_t>(env.box().dim()));
    for (int k = 0; k < env.box().dim(); ++k) {
        put_le<int64_t>(buf, env.box().lo(k));
        put_le<int64_t>(buf, env.box().hi(k));
    }
    put_le<uint64_t>(buf, env.scale());
    bool overflow = false;
    env.box().for_each_canonical_edge([&](VertexId, int, EdgeSlot slot) {
        const int64_t w = env.weight_slot(slot);
        if (w < 0 || w > std::numeric_limits<uint32_t>::max()) overflow = true;
        put_le<uint32_t>(buf, static_cast<uint32_t>(w));
    });
    if (overflow) throw std::overflow_error("save_environment: weight outside u32 range");

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_environment: cannot open " + path);
    f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!f) throw std::runtime_error("save_environment: write failed");

    std::ofstream sidecar(path + ".json");
    if (!sidecar) throw std::runtime_error("save_environment: cannot open sidecar");
    sidecar << provenance_to_json(env.provenance()).dump(2) << "\n";
}

Environment load_environment(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_environment: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    size_t pos = 0;
    if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0) {
        throw std::runtime_error("load_environment: bad magic");
    }
    pos = 4;
    const auto version = get_le<uint16_t>(buf, pos);
    if (version != kVersion) throw std::runtime_error("load_environment: unsupported version");
    const auto d = get_le<uint16_t>(buf, pos);
    Coords lo(d), hi(d);
    for (int k = 0; k < d; ++k) {
        lo[k] = get_le<int64_t>(buf, pos);
        hi[k] = get_le<int64_t>(buf, pos);
    }
    const auto scale = get_le<uint64_t>(buf, pos);
    Box box(std::move(lo), std::move(hi));
    std::vector<int64_t> w(static_cast<size_t>(box.vertex_count()) * d, -1);
    box.for_each_canonical_edge([&](VertexId, int, EdgeSlot slot) {
        w[static_cast<size_t>(slot)] = get_le<uint32_t>(buf, pos);
    });

    Provenance prov;
    std::ifstream sidecar(path + ".json");
    if (sidecar) {
        nlohmann::json j;
        sidecar >> j;
        prov = provenance_from_json(j);
    }
    return Environment(std::move(box), scale, std::move(w), std::move(prov));
}

}  // namespace fpp
