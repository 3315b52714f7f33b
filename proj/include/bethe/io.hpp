#pragma once

// Deterministic machine-readable output (JSON / CSV, floats at 17 significant
// digits) and the plain-text key=value run configuration.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bethe/bae.hpp"
#include "bethe/ybe.hpp"

namespace bethe {

inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// minimal ordered JSON emitter; enough structure for the artifact outputs
struct JsonWriter {
  std::ostringstream os;
  std::vector<bool> first_stack;

  void comma() {
    if (!first_stack.empty()) {
      if (!first_stack.back()) os << ",";
      first_stack.back() = false;
    }
  }
  void begin_obj() { comma(); os << "{"; first_stack.push_back(true); }
  void end_obj() { os << "}"; first_stack.pop_back(); }
  void begin_arr() { comma(); os << "["; first_stack.push_back(true); }
  void end_arr() { os << "]"; first_stack.pop_back(); }
  void key(const std::string& k) { comma(); os << "\"" << k << "\":"; first_stack.back() = true; }
  void value(double x) { comma(); os << fmt17(x); }
  void value(int x) { comma(); os << x; }
  void value(const std::string& s) { comma(); os << "\"" << s << "\""; }
  void value_bool(bool b) { comma(); os << (b ? "true" : "false"); }
  void complex_value(cx z) {
    begin_obj();
    key("re"); value(z.real());
    key("im"); value(z.imag());
    end_obj();
  }
  std::string str() const { return os.str(); }
};

inline std::string to_json(const ResidualReport& rep) {
  JsonWriter w;
  w.begin_obj();
  w.key("equation_id"); w.value(rep.equation_id);
  w.key("seed"); w.value((int)rep.seed);
  w.key("max_relative_residual"); w.value(rep.max_relative_residual);
  w.key("samples"); w.begin_arr();
  for (const auto& s : rep.samples) {
    w.begin_obj();
    w.key("parameters"); w.begin_arr();
    for (cx p : s.parameters) w.complex_value(p);
    w.end_arr();
    w.key("residual"); w.value(s.residual);
    w.key("scale"); w.value(s.scale);
    w.key("relative"); w.value(s.relative());
    w.end_obj();
  }
  w.end_arr();
  w.end_obj();
  return w.str();
}

inline std::string to_json(const BetheRootSet& rs) {
  JsonWriter w;
  w.begin_obj();
  w.key("case"); w.value(rs.case_name);
  w.key("L"); w.value(rs.L);
  w.key("counts"); w.begin_arr();
  for (int c : rs.counts) w.value(c);
  w.end_arr();
  w.key("roots"); w.begin_arr();
  for (const auto& fam : rs.roots) {
    w.begin_arr();
    for (cx v : fam) w.complex_value(v);
    w.end_arr();
  }
  w.end_arr();
  w.key("residual_norm"); w.value(rs.residual_norm);
  w.key("branch_integers"); w.begin_arr();
  for (int b : rs.branch_integers) w.value(b);
  w.end_arr();
  w.key("source"); w.value(rs.source);
  w.end_obj();
  return w.str();
}

// spec sort order: lexicographic (family, re, im); collisions below 1e-8 merge
inline void dedup_sort(std::vector<std::vector<cx>>& fams, double coll = 1e-8) {
  for (auto& f : fams) {
    std::sort(f.begin(), f.end(), [](cx a, cx b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    std::vector<cx> out;
    for (cx z : f) {
      if (!out.empty() && std::abs(out.back() - z) < coll) continue;
      out.push_back(z);
    }
    f = out;
  }
}

// ---------------------------------------------------------------------------
// run configuration: plain-text key=value, command line wins
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string command;
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) != 0; }
  std::string get(const std::string& k, const std::string& dflt = "") const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  double getd(const std::string& k, double dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stod(it->second);
  }
  int geti(const std::string& k, int dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : std::stoi(it->second);
  }
};

// sections ([name]) prefix keys as "name.key"; bare keys are global
inline void parse_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config file not found: " + path);
  std::string line, section;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    auto strip = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      size_t b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = strip(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad config line: " + line);
    std::string k = strip(line.substr(0, eq));
    std::string v = strip(line.substr(eq + 1));
    std::string full = section.empty() ? k : section + "." + k;
    // command line wins: do not overwrite existing keys
    if (!cfg.kv.count(full)) cfg.kv[full] = v;
  }
}

}  // namespace bethe
