#include "tensorcomm/json_io.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace tensorcomm {

using nlohmann::json;

namespace {

json triples_to_json(const std::vector<Triple>& v) {
    json arr = json::array();
    for (const Triple& t : v) arr.push_back({t.a, t.b, t.c});
    return arr;
}

std::vector<Triple> triples_from_json(const json& arr) {
    std::vector<Triple> v;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 3) throw ParseError("triple must be a 3-element array");
        v.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    return v;
}

} // namespace

json to_json(const Tensor3& t) {
    json j;
    j["kind"] = "tensor3";
    j["axes"] = {t.axis_size(0), t.axis_size(1), t.axis_size(2)};
    j["support"] = triples_to_json(t.support);
    return j;
}

json to_json(const ColoredTensor& t) {
    json j;
    j["kind"] = "colored";
    j["axes"] = {t.promise.axis_size(0), t.promise.axis_size(1), t.promise.axis_size(2)};
    j["support"] = triples_to_json(t.promise.support);
    j["green"] = triples_to_json(t.green);
    return j;
}

std::string canonical_bytes(const json& j) { return j.dump(); }

Tensor3 tensor_from_json(const json& j) {
    if (j.value("kind", "") != "tensor3" && j.value("kind", "") != "colored")
        throw ParseError("expected kind tensor3 or colored");
    auto axes = j.at("axes");
    if (axes.size() != 3) throw ParseError("axes must have 3 entries");
    return make_tensor({axes[0].get<int>(), axes[1].get<int>(), axes[2].get<int>()},
                       triples_from_json(j.at("support")));
}

ColoredTensor colored_from_json(const json& j) {
    if (j.value("kind", "") == "tensor3") return all_green(tensor_from_json(j));
    if (j.value("kind", "") != "colored") throw ParseError("expected kind colored");
    auto axes = j.at("axes");
    if (axes.size() != 3) throw ParseError("axes must have 3 entries");
    return make_colored({axes[0].get<int>(), axes[1].get<int>(), axes[2].get<int>()},
                        triples_from_json(j.at("support")), triples_from_json(j.at("green")));
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::string tensor_hash(const Tensor3& t) { return sha256_hex(canonical_bytes(to_json(t))); }
std::string tensor_hash(const ColoredTensor& t) { return sha256_hex(canonical_bytes(to_json(t))); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << bytes;
}

} // namespace tensorcomm
