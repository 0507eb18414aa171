#include "tc/group_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tc {

namespace {

Permutation parse_line(std::size_t degree, const std::string& text, std::size_t line, std::size_t offset) {
  try {
    return Permutation::parse_cycles(degree, text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" (line"));
    throw ParseError(msg, line, e.column() + offset);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), line, offset + 1);
  }
}

GroupSpec parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid JSON", line, col);
  }
  if (!j.is_object() || !j.contains("degree") || !j.contains("generators"))
    throw ParseError("JSON group needs \"degree\" and \"generators\"", 1, 1);
  GroupSpec g;
  g.degree = j.at("degree").get<std::size_t>();
  std::size_t k = 0;
  for (const auto& s : j.at("generators")) {
    ++k;
    try {
      g.generators.push_back(Permutation::parse_cycles(g.degree, s.get<std::string>()));
    } catch (const Error& e) {
      throw ParseError("generator " + std::to_string(k) + ": " + e.what(), 1, 1);
    }
  }
  return g;
}

}  // namespace

GroupSpec parse_group(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  GroupSpec g;
  bool have_degree = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t s = raw.find_first_not_of(" \t");
    if (s == std::string::npos || raw[s] == '#') continue;
    if (!have_degree) {
      std::istringstream hs(raw.substr(s));
      std::string word;
      long long n = -1;
      hs >> word >> n;
      std::string rest;
      if (word != "degree" || n < 0 || (hs >> rest))
        throw ParseError("expected header \"degree N\"", line, s + 1);
      g.degree = static_cast<std::size_t>(n);
      have_degree = true;
      continue;
    }
    g.generators.push_back(parse_line(g.degree, raw.substr(s), line, s));
  }
  if (!have_degree) throw ParseError("missing \"degree N\" header", line ? line : 1, 1);
  return g;
}

GroupSpec read_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group(ss.str());
}

PermGroup load_group(const std::string& path) {
  GroupSpec g = read_group_file(path);
  return PermGroup(g.degree, g.generators);
}

std::string format_group(const PermGroup& G) {
  std::string out = "degree " + std::to_string(G.degree()) + "\n";
  for (const auto& g : G.generators()) out += g.to_string() + "\n";
  return out;
}

std::string format_group_json(const PermGroup& G) {
  nlohmann::json j;
  j["degree"] = G.degree();
  j["generators"] = nlohmann::json::array();
  for (const auto& g : G.generators()) j["generators"].push_back(g.to_string());
  return j.dump();
}

}  // namespace tc
