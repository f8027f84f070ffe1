#include "sensilab/core/io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "sensilab/core/boolean_function.hpp"
#include "sensilab/core/errors.hpp"

namespace sensilab {
namespace {

using nlohmann::json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(const std::string& text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail_at(const std::string& text, std::size_t offset, const std::string& what) {
  const auto p = position_of(text, offset);
  throw ParseError(what, p.line, p.column);
}

/// Offset of the first character of the string value of `key`, or of the key itself.
std::size_t value_offset(const std::string& text, const std::string& key) {
  const auto k = text.find("\"" + key + "\"");
  if (k == std::string::npos) return 0;
  const auto colon = text.find(':', k);
  if (colon == std::string::npos) return k;
  const auto quote = text.find('"', colon);
  return quote == std::string::npos ? colon : quote + 1;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    fail_at(text, offset, std::string("malformed JSON: ") + e.what());
  }
}

int get_int(const json& j, const char* key, const std::string& text) {
  if (!j.contains(key)) fail_at(text, 0, std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail_at(text, value_offset(text, key), std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DenseFunction parse_function(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail_at(text, 0, "function file must be a JSON object");
  const std::string name = j.value("name", std::string{});
  const int arity = get_int(j, "arity", text);
  const int in_size = get_int(j, "input_alphabet_size", text);
  const int out_size = get_int(j, "output_alphabet_size", text);
  if (arity < 0) fail_at(text, value_offset(text, "arity"), "arity must be non-negative");
  if (in_size < 1 || in_size > kMaxAlphabet || out_size < 1 || out_size > kMaxAlphabet)
    fail_at(text, 0, "alphabet sizes must lie in [1, 256]");
  std::uint64_t length = 0;
  if (!try_power(static_cast<std::uint64_t>(in_size), arity, length) || length > (std::uint64_t{1} << 32))
    fail_at(text, value_offset(text, "arity"), "table too large to read");

  if (j.contains("table_hex")) {
    if (in_size != 2 || out_size != 2) fail_at(text, value_offset(text, "table_hex"), "table_hex requires a Boolean function");
    if (!j["table_hex"].is_string()) fail_at(text, value_offset(text, "table_hex"), "table_hex must be a string");
    try {
      return BooleanFunction::from_hex(arity, j["table_hex"].get<std::string>(), name).to_dense();
    } catch (const Error& e) {
      fail_at(text, value_offset(text, "table_hex"), e.what());
    }
  }
  if (!j.contains("table")) fail_at(text, 0, "missing field \"table\"");
  const auto& t = j["table"];
  std::vector<Symbol> table;
  table.reserve(length);
  const std::size_t base = value_offset(text, "table");
  if (t.is_string()) {
    const auto s = t.get<std::string>();
    if (s.size() != length)
      fail_at(text, base, "table has " + std::to_string(s.size()) + " digits, expected " + std::to_string(length));
    for (std::size_t i = 0; i < s.size(); ++i) {
      const int v = digit_value(s[i]);
      if (v < 0 || v >= out_size)
        fail_at(text, base + i, std::string("table symbol '") + s[i] + "' outside the output alphabet");
      table.push_back(static_cast<Symbol>(v));
    }
  } else if (t.is_array()) {
    if (t.size() != length)
      fail_at(text, base, "table has " + std::to_string(t.size()) + " entries, expected " + std::to_string(length));
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_number_integer() || t[i].get<int>() < 0 || t[i].get<int>() >= out_size)
        fail_at(text, base, "table entry " + std::to_string(i) + " outside the output alphabet");
      table.push_back(static_cast<Symbol>(t[i].get<int>()));
    }
  } else {
    fail_at(text, base, "table must be a string or an array");
  }
  return DenseFunction(name, arity, in_size, out_size, std::move(table));
}

DenseFunction read_function(const std::filesystem::path& path) { return parse_function(slurp(path)); }

std::string format_function(const DenseFunction& f, bool hex_table) {
  json j;
  j["name"] = f.name();
  j["arity"] = f.arity();
  j["input_alphabet_size"] = f.input_alphabet();
  j["output_alphabet_size"] = f.output_alphabet();
  if (hex_table && f.is_boolean()) {
    j["table_hex"] = BooleanFunction::from_dense(f).to_hex();
  } else if (f.output_alphabet() <= 36) {
    std::string s;
    s.reserve(f.size());
    for (Symbol v : f.table()) s += "0123456789abcdefghijklmnopqrstuvwxyz"[v];
    j["table"] = std::move(s);
  } else {
    j["table"] = f.table();
  }
  return j.dump(2) + "\n";
}

void write_function(const DenseFunction& f, const std::filesystem::path& path, bool hex_table) {
  write_text_atomic(path, format_function(f, hex_table));
}

CertificateCollection parse_collection(const std::string& text, int default_alphabet) {
  const json j = parse_json(text);
  CertificateCollection c;
  c.alphabet = default_alphabet;
  const json* list = &j;
  if (j.is_object()) {
    c.label = j.value("label", std::string{});
    if (j.contains("alphabet_size")) c.alphabet = get_int(j, "alphabet_size", text);
    if (!j.contains("certificates")) fail_at(text, 0, "missing field \"certificates\"");
    list = &j["certificates"];
  }
  if (!list->is_array()) fail_at(text, 0, "certificates must be a list");
  if (c.alphabet < 1 || c.alphabet > kMaxAlphabet) fail_at(text, 0, "alphabet size must lie in [1, 256]");
  std::size_t arity = 0;
  for (std::size_t k = 0; k < list->size(); ++k) {
    const json& cert = (*list)[k];
    std::vector<SymbolSet> sets;
    try {
      if (cert.is_string()) {
        const auto p = PartialAssignment::parse(cert.get<std::string>());
        c.certificates.push_back(BoxCertificate::from_partial_assignment(p, c.alphabet));
      } else {
        if (!cert.is_array()) throw InputError("certificate must be a list of symbol lists");
        for (const auto& coord : cert) {
          SymbolSet s;
          if (!coord.is_array()) throw InputError("coordinate set must be a list");
          for (const auto& v : coord) {
            if (!v.is_number_integer()) throw InputError("symbols must be integers");
            const int sym = v.get<int>();
            if (sym < 0 || sym >= c.alphabet) throw InputError("symbol " + std::to_string(sym) + " outside the alphabet");
            s.insert(sym);
          }
          sets.push_back(s);
        }
        c.certificates.emplace_back(c.alphabet, std::move(sets));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(text, 0, "certificate " + std::to_string(k) + ": " + e.what());
    }
    const auto a = static_cast<std::size_t>(c.certificates.back().arity());
    if (k == 0) arity = a;
    else if (a != arity) fail_at(text, 0, "certificate " + std::to_string(k) + " has a different arity");
  }
  return c;
}

CertificateCollection read_collection(const std::filesystem::path& path, int default_alphabet) {
  return parse_collection(slurp(path), default_alphabet);
}

json collection_to_json(const CertificateCollection& c) {
  json certs = json::array();
  for (const auto& b : c.certificates) {
    json sets = json::array();
    for (const auto& s : b.sets()) sets.push_back(s.elements());
    certs.push_back(std::move(sets));
  }
  return json{{"label", c.label}, {"alphabet_size", c.alphabet}, {"certificates", std::move(certs)}};
}

void write_collection(const CertificateCollection& c, const std::filesystem::path& path) {
  write_text_atomic(path, collection_to_json(c).dump() + "\n");
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw InputError("write failed for " + path.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sensilab
