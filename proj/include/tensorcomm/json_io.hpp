#pragma once

#include <string>

#include "json.hpp"

#include "tensorcomm/tensor.hpp"

namespace tensorcomm {

// Canonical tensor JSON:
//   {"kind":"tensor3"|"colored", "axes":[n1,n2,n3],
//    "support":[[a,b,c],...] sorted lex, "green":[[a,b,c],...] (colored only)}
// Serialization is byte-deterministic: keys alphabetical, no whitespace.

nlohmann::json to_json(const Tensor3& t);
nlohmann::json to_json(const ColoredTensor& t);
std::string canonical_bytes(const nlohmann::json& j);

Tensor3 tensor_from_json(const nlohmann::json& j);
ColoredTensor colored_from_json(const nlohmann::json& j);

/// Lowercase hex SHA-256 over the canonical JSON bytes; binds certificates to
/// their subject tensor without embedding it.
std::string tensor_hash(const Tensor3& t);
std::string tensor_hash(const ColoredTensor& t);
std::string sha256_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

} // namespace tensorcomm
