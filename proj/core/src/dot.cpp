#include "cofact/dot.hpp"

#include <string>

namespace cofact {

namespace {

std::string escaped(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

std::string label(int i, const std::vector<std::string>& names) {
  if (i >= 0 && i < static_cast<int>(names.size())) return escaped(names[i]);
  return std::to_string(i);
}

void emit_nodes(std::string& out, const FinCategory& c, const char* prefix,
                const std::vector<std::string>& names, const char* indent) {
  for (int o = 0; o < c.objects; ++o) {
    out += indent;
    out += prefix + std::to_string(o) + " [label=\"" + label(o, names) + "\"];\n";
  }
}

void emit_edges(std::string& out, const FinCategory& c, const char* prefix,
                const char* indent) {
  for (int m = 0; m < c.morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    out += indent;
    out += prefix + std::to_string(c.src[m]) + " -> " + prefix + std::to_string(c.tgt[m]) +
           " [label=\"m" + std::to_string(m) + "\"];\n";
  }
}

}  // namespace

std::string category_dot(const CatRef& c, const std::vector<std::string>& object_names) {
  std::string out = "digraph category {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=circle, fontsize=11];\n";
  emit_nodes(out, *c, "o", object_names, "  ");
  emit_edges(out, *c, "o", "  ");
  out += "}\n";
  return out;
}

std::string covering_dot(const FunctorData& p, const std::vector<std::string>& base_names) {
  std::string out = "digraph covering {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=circle, fontsize=11];\n";
  out += "  subgraph cluster_total {\n";
  out += "    label=\"total\";\n";
  out += "    color=royalblue;\n";
  out += "    node [color=royalblue, penwidth=1.6];\n";
  out += "    edge [color=royalblue, penwidth=1.6];\n";
  emit_nodes(out, *p.dom, "t", {}, "    ");
  emit_edges(out, *p.dom, "t", "    ");
  out += "  }\n";
  out += "  subgraph cluster_base {\n";
  out += "    label=\"base\";\n";
  emit_nodes(out, *p.cod, "b", base_names, "    ");
  emit_edges(out, *p.cod, "b", "    ");
  out += "  }\n";
  for (int o = 0; o < p.dom->objects; ++o) {
    out += "  t" + std::to_string(o) + " -> b" + std::to_string(p.obj_map[o]) +
           " [style=dotted, color=gray50, arrowhead=none, constraint=false];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cofact
