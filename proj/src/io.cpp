#include "wb/io.hpp"

#include <fstream>
#include <sstream>

#include "wb/error.hpp"

namespace wb {

namespace {

struct Lines {
  std::vector<std::vector<std::string>> tokens;
  std::vector<int> numbers;
  std::size_t at = 0;

  bool done() const { return at >= tokens.size(); }
  const std::vector<std::string>& peek() const { return tokens[at]; }
  const std::vector<std::string>& take() { return tokens[at++]; }
  int line() const { return done() ? -1 : numbers[at]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(line()) + ": " + msg);
  }
};

Lines tokenize(const std::string& text) {
  Lines out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) {
      out.tokens.push_back(std::move(toks));
      out.numbers.push_back(number);
    }
  }
  return out;
}

// builtin group specs in prefix form: cyclic N | dihedral N | symmetric N |
// product <spec> <spec>
FiniteGroup parse_group_spec(const std::vector<std::string>& toks, std::size_t& pos,
                             const Limits& lim) {
  if (pos >= toks.size()) throw InputError("group: truncated spec");
  std::string kind = toks[pos++];
  auto number = [&]() {
    if (pos >= toks.size()) throw InputError("group: missing parameter after " + kind);
    return std::stoi(toks[pos++]);
  };
  if (kind == "cyclic") return FiniteGroup::cyclic(number());
  if (kind == "dihedral") return FiniteGroup::dihedral(number());
  if (kind == "symmetric") return FiniteGroup::symmetric(number());
  if (kind == "product") {
    FiniteGroup a = parse_group_spec(toks, pos, lim);
    FiniteGroup b = parse_group_spec(toks, pos, lim);
    return FiniteGroup::product(a, b);
  }
  throw InputError("group: unknown kind '" + kind + "'");
}

std::string strip_colon(std::string s) {
  if (!s.empty() && s.back() == ':') s.pop_back();
  return s;
}

} // namespace

FiniteGroup read_group_text(const std::string& text, const Limits& lim) {
  Lines lines = tokenize(text);
  if (lines.done()) throw InputError("group: empty input");
  // builtin spec
  if (lines.peek()[0] == "group" && lines.peek().size() >= 2 && lines.peek()[1] != "table") {
    std::vector<std::string> head = lines.take();
    std::size_t pos = 1;
    FiniteGroup g = parse_group_spec(head, pos, lim);
    if (pos != head.size()) throw InputError("group: trailing tokens in spec");
    if (!lines.done()) lines.fail("group: unexpected extra lines");
    return g;
  }
  // table form
  if (lines.peek()[0] != "group") lines.fail("expected a 'group' line");
  lines.take();
  if (lines.done() || lines.peek()[0] != "elements") lines.fail("group table: expected 'elements'");
  std::vector<std::string> head = lines.take();
  std::vector<std::string> names(head.begin() + 1, head.end());
  int n = static_cast<int>(names.size());
  auto index_of = [&](const std::string& s) {
    for (int i = 0; i < n; ++i)
      if (names[static_cast<std::size_t>(i)] == s) return i;
    throw InputError("group table: unknown element name " + s);
  };
  std::vector<int> table(static_cast<std::size_t>(n) * n, -1);
  for (int r = 0; r < n; ++r) {
    if (lines.done() || lines.peek()[0] != "row") lines.fail("group table: expected a 'row' line");
    std::vector<std::string> row = lines.take();
    if (static_cast<int>(row.size()) != n + 2)
      throw InputError("group table: row must list " + std::to_string(n) + " products");
    int g = index_of(strip_colon(row[1]));
    for (int h = 0; h < n; ++h)
      table[static_cast<std::size_t>(g) * n + h] = index_of(row[static_cast<std::size_t>(h + 2)]);
  }
  if (!lines.done()) lines.fail("group: unexpected extra lines");
  return FiniteGroup::from_table(std::move(names), std::move(table), lim);
}

FiniteGroup read_group_file(const std::string& path, const Limits& lim) {
  return read_group_text(read_text_file(path), lim);
}

FiniteGroup parse_inline_group(const std::string& spec, const Limits& lim) {
  std::vector<std::string> toks;
  {
    std::istringstream in(spec);
    std::string t;
    while (in >> t) toks.push_back(t);
  }
  if (toks.size() == 1) {
    // compact "cyclic20" spelling
    const std::string& s = toks[0];
    std::size_t digits = s.size();
    while (digits > 0 && std::isdigit(static_cast<unsigned char>(s[digits - 1]))) --digits;
    if (digits > 0 && digits < s.size()) toks = {s.substr(0, digits), s.substr(digits)};
  }
  std::size_t pos = 0;
  FiniteGroup g = parse_group_spec(toks, pos, lim);
  if (pos != toks.size()) throw InputError("group: trailing tokens in spec");
  return g;
}

void write_group(std::ostream& os, const FiniteGroup& g) {
  os << "group table\nelements";
  for (int i = 0; i < g.order(); ++i) os << ' ' << g.name(i);
  os << '\n';
  for (int i = 0; i < g.order(); ++i) {
    os << "row " << g.name(i) << ':';
    for (int j = 0; j < g.order(); ++j) os << ' ' << g.name(g.mul(i, j));
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// gain graphs

GainGraphFile read_gaingraph_text(const std::string& text, const Limits& lim) {
  Lines lines = tokenize(text);
  if (lines.done() || lines.peek()[0] != "gaingraph") lines.fail("expected 'gaingraph' header");
  lines.take();

  // group block: one spec line or a table block
  std::string group_text;
  if (lines.done() || lines.peek()[0] != "group") lines.fail("gaingraph: expected a group block");
  {
    std::ostringstream gt;
    auto join = [&](const std::vector<std::string>& toks) {
      for (std::size_t i = 0; i < toks.size(); ++i) gt << (i ? " " : "") << toks[i];
      gt << '\n';
    };
    std::vector<std::string> head = lines.take();
    join(head);
    if (head.size() >= 2 && head[1] == "table") {
      if (lines.done() || lines.peek()[0] != "elements") lines.fail("group table: expected 'elements'");
      std::vector<std::string> elems = lines.take();
      join(elems);
      for (std::size_t r = 1; r + 1 < elems.size() + 1; ++r) {
        if (lines.done() || lines.peek()[0] != "row") lines.fail("group table: expected 'row'");
        join(lines.take());
      }
    }
    group_text = gt.str();
  }

  GainGraphFile out;
  out.gaining.group = read_group_text(group_text, lim);
  GadgetManifest manifest;
  bool has_manifest = false;

  while (!lines.done()) {
    const std::vector<std::string>& t = lines.peek();
    if (t[0] == "vertex") {
      if (t.size() != 2) lines.fail("vertex: expected one name");
      out.gaining.graph.add_vertex(t[1]);
    } else if (t[0] == "edge") {
      if (t.size() != 5) lines.fail("edge: expected label, endpoints, gain");
      int u = out.gaining.graph.vertex_index(t[2]);
      int v = out.gaining.graph.vertex_index(t[3]);
      if (u < 0 || v < 0) lines.fail("edge: unknown endpoint");
      if (u == v) lines.fail("edge: use 'loop' for a loop");
      int e = out.gaining.group.index_of(t[4]);
      if (e < 0) lines.fail("edge: unknown group element " + t[4]);
      out.gaining.graph.add_edge(t[1], u, v);
      out.gaining.gain.push_back(e);
    } else if (t[0] == "loop") {
      if (t.size() != 4) lines.fail("loop: expected label, vertex, gain");
      int u = out.gaining.graph.vertex_index(t[2]);
      if (u < 0) lines.fail("loop: unknown vertex");
      int e = out.gaining.group.index_of(t[3]);
      if (e < 0) lines.fail("loop: unknown group element " + t[3]);
      out.gaining.graph.add_edge(t[1], u, u);
      out.gaining.gain.push_back(e);
    } else if (t[0] == "collection") {
      if (t.size() < 2) lines.fail("collection: expected a name");
      has_manifest = true;
      std::string name = strip_colon(t[1]);
      manifest.collections[name] = std::vector<std::string>(t.begin() + 2, t.end());
    } else if (t[0] == "base-edges:" || t[0] == "base-edges") {
      has_manifest = true;
      manifest.base_edges = std::vector<std::string>(t.begin() + 1, t.end());
    } else if (t[0] == "base-vertices:" || t[0] == "base-vertices") {
      if (t.size() != 3) lines.fail("base-vertices: expected two names");
      has_manifest = true;
      manifest.base_vertices = {t[1], t[2]};
    } else {
      lines.fail("gaingraph: unknown directive '" + t[0] + "'");
    }
    lines.take();
  }
  out.gaining.validate();
  if (has_manifest) out.manifest = std::move(manifest);
  return out;
}

GainGraphFile read_gaingraph_file(const std::string& path, const Limits& lim) {
  return read_gaingraph_text(read_text_file(path), lim);
}

void write_gaingraph(std::ostream& os, const Gaining& g, const GadgetManifest* manifest) {
  os << "gaingraph\n";
  write_group(os, g.group);
  for (const auto& v : g.graph.vertices) os << "vertex " << v << '\n';
  for (int e = 0; e < g.graph.edge_count(); ++e) {
    const auto& edge = g.graph.edges[static_cast<std::size_t>(e)];
    if (edge.is_loop())
      os << "loop " << edge.label << ' ' << g.graph.vertices[static_cast<std::size_t>(edge.u)]
         << ' ' << g.group.name(g.gain[static_cast<std::size_t>(e)]) << '\n';
    else
      os << "edge " << edge.label << ' ' << g.graph.vertices[static_cast<std::size_t>(edge.u)]
         << ' ' << g.graph.vertices[static_cast<std::size_t>(edge.v)] << ' '
         << g.group.name(g.gain[static_cast<std::size_t>(e)]) << '\n';
  }
  if (manifest) {
    for (const auto& [name, members] : manifest->collections) {
      os << "collection " << name << ':';
      for (const auto& m : members) os << ' ' << m;
      os << '\n';
    }
    os << "base-edges:";
    for (const auto& m : manifest->base_edges) os << ' ' << m;
    os << '\n';
    os << "base-vertices: " << manifest->base_vertices.first << ' '
       << manifest->base_vertices.second << '\n';
  }
}

void write_gaingraph_file(const std::string& path, const Gaining& g,
                          const GadgetManifest* manifest) {
  std::ostringstream os;
  write_gaingraph(os, g, manifest);
  write_text_file(path, os.str());
}

// ---------------------------------------------------------------------------
// hypergraphs and matroids

HypergraphFile read_hypergraph_text(const std::string& text, const Limits& lim) {
  Lines lines = tokenize(text);
  if (lines.done()) throw InputError("matroid: empty input");
  std::string header = lines.peek()[0];
  if (header != "matroid" && header != "hypergraph")
    lines.fail("expected 'matroid' or 'hypergraph' header");
  lines.take();
  if (lines.done() || lines.peek()[0] != "ground") lines.fail("expected a 'ground' line");
  std::vector<std::string> head = lines.take();
  std::vector<std::string> ground(head.begin() + 1, head.end());
  int n = static_cast<int>(ground.size());
  if (n > lim.matroid_ground_max) throw BudgetError("matroid: ground above cap");
  auto mask_of = [&](const std::vector<std::string>& toks, std::size_t from, std::size_t to) {
    Mask m = 0;
    for (std::size_t i = from; i < to; ++i) {
      if (toks[i] == "-") continue;
      int e = -1;
      for (int k = 0; k < n; ++k)
        if (ground[static_cast<std::size_t>(k)] == toks[i]) e = k;
      if (e < 0) lines.fail("unknown ground label " + toks[i]);
      m |= bit(e);
    }
    return m;
  };

  bool any_indep = false, any_circuit = false;
  std::vector<Mask> members, circuits;
  while (!lines.done()) {
    const std::vector<std::string>& t = lines.peek();
    if (t[0] == "indep") {
      any_indep = true;
      members.push_back(mask_of(t, 1, t.size()));
    } else if (t[0] == "circuit") {
      any_circuit = true;
      circuits.push_back(mask_of(t, 1, t.size()));
    } else {
      lines.fail("matroid: unknown directive '" + t[0] + "'");
    }
    lines.take();
  }
  if (any_indep && any_circuit) throw InputError("matroid: mix of 'indep' and 'circuit' lines");

  HypergraphFile out;
  out.matroid_header = header == "matroid";
  if (any_circuit) {
    if (!out.matroid_header)
      throw InputError("hypergraph: circuit form requires the 'matroid' header");
    Matroid m = matroid_from_circuits(ground, circuits, lim);
    out.hypergraph = m.independence_hypergraph();
    return out;
  }
  Hypergraph h = Hypergraph::empty_family(ground);
  for (Mask m : members) h.member[static_cast<std::size_t>(m)] = 1;
  if (out.matroid_header && !any_indep && !any_circuit) {
    // no lines at all: the free matroid (no circuits)
    for (auto& b : h.member) b = 1;
  }
  if (out.matroid_header) require_matroid(h, lim);
  out.hypergraph = std::move(h);
  return out;
}

HypergraphFile read_hypergraph_file(const std::string& path, const Limits& lim) {
  return read_hypergraph_text(read_text_file(path), lim);
}

Matroid read_matroid_file(const std::string& path, const Limits& lim) {
  HypergraphFile f = read_hypergraph_file(path, lim);
  return require_matroid(f.hypergraph, lim);
}

void write_matroid(std::ostream& os, const Matroid& m) {
  os << "matroid\nground";
  for (const auto& l : m.ground()) os << ' ' << l;
  os << '\n';
  for (Mask c : circuits_of(m)) os << "circuit " << mask_to_string(c, m.ground()) << '\n';
}

void write_matroid_file(const std::string& path, const Matroid& m) {
  std::ostringstream os;
  write_matroid(os, m);
  write_text_file(path, os.str());
}

void write_hypergraph(std::ostream& os, const Hypergraph& h) {
  os << "hypergraph\nground";
  for (const auto& l : h.ground) os << ' ' << l;
  os << '\n';
  for (Mask x = 0; x <= h.full_mask(); ++x) {
    if (h.contains(x)) os << "indep " << mask_to_string(x, h.ground) << '\n';
    if (h.size() == 0) break;
  }
}

// ---------------------------------------------------------------------------
// coloured systems and complements

namespace {

struct ColouredHeader {
  std::vector<std::string> ground;
  std::vector<std::string> colours;
};

ColouredHeader read_coloured_header(Lines& lines, const char* kind) {
  if (lines.done() || lines.peek()[0] != kind) lines.fail(std::string("expected '") + kind + "' header");
  lines.take();
  ColouredHeader h;
  if (lines.done() || lines.peek()[0] != "ground") lines.fail("expected a 'ground' line");
  {
    std::vector<std::string> t = lines.take();
    h.ground.assign(t.begin() + 1, t.end());
  }
  if (lines.done() || lines.peek()[0] != "colours") lines.fail("expected a 'colours' line");
  {
    std::vector<std::string> t = lines.take();
    h.colours.assign(t.begin() + 1, t.end());
  }
  return h;
}

Mask coloured_mask(const ColouredHeader& h, Lines& lines, const std::vector<std::string>& toks,
                   std::size_t from, std::size_t to) {
  Mask m = 0;
  for (std::size_t i = from; i < to; ++i) {
    if (toks[i] == "-") continue;
    int e = -1;
    for (std::size_t k = 0; k < h.ground.size(); ++k)
      if (h.ground[k] == toks[i]) e = static_cast<int>(k);
    if (e < 0) lines.fail("unknown ground label " + toks[i]);
    m |= bit(e);
  }
  return m;
}

int colour_index(const ColouredHeader& h, Lines& lines, const std::string& name) {
  for (std::size_t k = 0; k < h.colours.size(); ++k)
    if (h.colours[k] == name) return static_cast<int>(k);
  lines.fail("unknown colour name " + name);
}

} // namespace

ColouredSystem read_system_text(const std::string& text, const Limits& lim) {
  Lines lines = tokenize(text);
  ColouredHeader h = read_coloured_header(lines, "system");
  ColouredSystem s;
  s.ground = h.ground;
  s.colours = h.colours;
  std::size_t total = std::size_t{1} << s.ground.size();
  std::vector<int> table(total, -1);
  int default_colour = -1;
  while (!lines.done()) {
    const std::vector<std::string>& t = lines.peek();
    if (t[0] == "colour") {
      if (t.size() < 3) lines.fail("colour: expected subset labels and a colour name");
      Mask m = coloured_mask(h, lines, t, 1, t.size() - 1);
      table[static_cast<std::size_t>(m)] = colour_index(h, lines, t.back());
    } else if (t[0] == "default") {
      if (t.size() != 2) lines.fail("default: expected one colour name");
      default_colour = colour_index(h, lines, t[1]);
    } else {
      lines.fail("system: unknown directive '" + t[0] + "'");
    }
    lines.take();
  }
  s.colour.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    int c = table[i] >= 0 ? table[i] : default_colour;
    if (c < 0)
      throw InputError("system: subset " +
                       mask_to_string(static_cast<Mask>(i), s.ground) +
                       " has no colour and no default is set");
    s.colour[i] = static_cast<std::uint8_t>(c);
  }
  s.check_shape(lim);
  return s;
}

ColouredSystem read_system_file(const std::string& path, const Limits& lim) {
  return read_system_text(read_text_file(path), lim);
}

void write_system(std::ostream& os, const ColouredSystem& s) {
  os << "system\nground";
  for (const auto& l : s.ground) os << ' ' << l;
  os << "\ncolours";
  for (const auto& c : s.colours) os << ' ' << c;
  os << '\n';
  for (Mask x = 0;; ++x) {
    os << "colour " << mask_to_string(x, s.ground) << ' '
       << s.colours[s.colour[static_cast<std::size_t>(x)]] << '\n';
    if (x == s.full_mask()) break;
  }
}

void write_system_file(const std::string& path, const ColouredSystem& s) {
  std::ostringstream os;
  write_system(os, s);
  write_text_file(path, os.str());
}

ColouredComplement read_complement_text(const std::string& text, const Limits& lim) {
  Lines lines = tokenize(text);
  ColouredHeader h = read_coloured_header(lines, "complement");
  ColouredComplement c;
  c.ground = h.ground;
  c.colours = h.colours;
  c.accept.assign((std::size_t{1} << c.ground.size()) * c.colours.size(), 0);
  while (!lines.done()) {
    const std::vector<std::string>& t = lines.peek();
    if (t[0] != "accept") lines.fail("complement: unknown directive '" + t[0] + "'");
    if (t.size() < 3) lines.fail("accept: expected subset labels and a colour name");
    Mask m = coloured_mask(h, lines, t, 1, t.size() - 1);
    int ci = colour_index(h, lines, t.back());
    c.accept[static_cast<std::size_t>(m) * c.colours.size() + static_cast<std::size_t>(ci)] = 1;
    lines.take();
  }
  c.check_shape(lim);
  return c;
}

ColouredComplement read_complement_file(const std::string& path, const Limits& lim) {
  return read_complement_text(read_text_file(path), lim);
}

void write_complement(std::ostream& os, const ColouredComplement& c) {
  os << "complement\nground";
  for (const auto& l : c.ground) os << ' ' << l;
  os << "\ncolours";
  for (const auto& col : c.colours) os << ' ' << col;
  os << '\n';
  for (Mask y = 0;; ++y) {
    for (std::size_t ci = 0; ci < c.colours.size(); ++ci)
      if (c.accepts(y, static_cast<int>(ci)))
        os << "accept " << mask_to_string(y, c.ground) << ' ' << c.colours[ci] << '\n';
    if (y == c.full_mask()) break;
  }
}

void write_complement_file(const std::string& path, const ColouredComplement& c) {
  std::ostringstream os;
  write_complement(os, c);
  write_text_file(path, os.str());
}

Formula read_formula_file(const std::string& path, const Limits& lim) {
  return parse_formula(read_text_file(path), lim);
}

// ---------------------------------------------------------------------------
// conviviality emitters

namespace {

std::string vertex_label(const ConvivialityVertex& v) {
  std::string psi = "[";
  for (std::size_t i = 0; i < v.psi.size(); ++i) {
    if (i) psi += ' ';
    psi += std::to_string(v.psi[i]);
  }
  psi += "]";
  return "(" + std::to_string(v.group.order()) + ", " + psi + ")";
}

} // namespace

std::string conviviality_dot(const ConvivialityGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "// finite restriction: ambient group order " << g.ambient.order() << "\n";
  os << "graph " << name << " {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    os << "  v" << i << " [label=\"" << vertex_label(g.vertices[i]) << "\"];\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t j = i; j < g.vertices.size(); ++j)
      if (g.adjacent(i, j)) os << "  v" << i << " -- v" << j << ";\n";
  os << "}\n";
  return os.str();
}

std::string conviviality_csv(const ConvivialityGraph& g) {
  std::ostringstream os;
  os << "vertex";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) os << ",v" << i;
  os << '\n';
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    os << 'v' << i;
    for (std::size_t j = 0; j < g.vertices.size(); ++j) os << ',' << (g.adjacent(i, j) ? 1 : 0);
    os << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

} // namespace wb
