#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "sensilab/core/box.hpp"
#include "sensilab/core/dense_function.hpp"

namespace sensilab {

/// Function files are JSON objects
///   {"name", "arity", "input_alphabet_size", "output_alphabet_size", "table"}
/// where `table` lists f(decode(0)), f(decode(1)), ... as base-|Gamma| digits
/// (0-9 then a-z). Boolean functions may carry "table_hex" instead.
DenseFunction parse_function(const std::string& text);
DenseFunction read_function(const std::filesystem::path& path);
std::string format_function(const DenseFunction& f, bool hex_table = false);
void write_function(const DenseFunction& f, const std::filesystem::path& path,
                    bool hex_table = false);

/// Collection files: {"label", "alphabet_size", "certificates": [[[s,...],...],...]}
/// or a bare list of certificates.
CertificateCollection parse_collection(const std::string& text, int default_alphabet = 2);
CertificateCollection read_collection(const std::filesystem::path& path, int default_alphabet = 2);
nlohmann::json collection_to_json(const CertificateCollection& c);
void write_collection(const CertificateCollection& c, const std::filesystem::path& path);

/// Writes `text` via a temporary file and rename so that no partial file is left on failure.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace sensilab
